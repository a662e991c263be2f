"""Verification engine for skew monoidal constructions over finite sets and F_p spaces."""

__version__ = "0.1.0"
