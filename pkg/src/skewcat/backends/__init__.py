"""Concrete computable categories: finite sets and finite-dimensional F_p spaces."""
from .base import Classification, CoequalizerData, CopowerData, HomSetData, Mor, Obj
from .coend import coend, tensor_over
from .enrichment import check_enrichment_identities
from .finset import FINSET, FinSet, fs
from .finvec import FinVec, finvec


def coequalizer(f, g, section=None):
    return f.dom.base.backend.coequalizer(f, g, section)


def coeq_factor(c, h):
    return c.factor(h)


def copower(S, M):
    return M.base.backend.copower_data(S, M)


def hom_set(M, N):
    return M.base.backend.hom_set(M, N)


__all__ = [
    "FINSET", "FinSet", "FinVec", "finvec", "fs", "Mor", "Obj", "CoequalizerData", "CopowerData",
    "HomSetData", "Classification", "coequalizer", "coeq_factor", "copower", "hom_set", "coend",
    "tensor_over", "check_enrichment_identities",
]
