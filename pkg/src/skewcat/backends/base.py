"""Objects, morphisms and the operations shared by both finite backends.

Objects are interned and lazily enumerated: a copower of a huge hom-set is a key,
not a list, until somebody asks for its points.  Morphisms are pointwise functions
from *points* of the domain (set elements, basis labels) to *values* of the
codomain (elements, sparse vectors); equality is decided pointwise.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Any, Callable

from ..core import CapExceeded, InputError, PreconditionError, to_json

ONE = "*"


class Obj:
    __slots__ = ("backend", "key", "_gen", "_points", "_index", "_size", "_sizef", "name")

    def __init__(self, backend, key, gen, sizef=None, name=None):
        self.backend = backend
        self.key = key
        self._gen = gen
        self._sizef = sizef
        self._points = None
        self._index = None
        self._size = None
        self.name = name

    @property
    def points(self):
        if self._points is None:
            n = self.size
            if n > self.backend.max_points:
                raise CapExceeded("enumerating %d points of %s" % (n, self))
            self._points = tuple(self._gen())
            self._size = len(self._points)
        return self._points

    @property
    def size(self):
        if self._size is None:
            self._size = self._sizef() if self._sizef is not None else len(self.points)
        return self._size

    def index(self, p):
        if self._index is None:
            self._index = {x: i for i, x in enumerate(self.points)}
        return self._index[p]

    def __contains__(self, p):
        if self._index is None:
            self._index = {x: i for i, x in enumerate(self.points)}
        return p in self._index

    @property
    def base(self):
        return self

    carrier = base

    def __len__(self):
        return self.size

    def __repr__(self):
        if self.name:
            return self.name
        if self.key[0] in ("set", "vec"):
            return "%s%s" % (self.key[0], list(self.key[1]))
        return "<%s %s>" % (self.key[0], self.size)


class Mor:
    """Morphism with pointwise, memoized evaluation."""

    __slots__ = ("dom", "cod", "fn", "memo", "name")

    def __init__(self, dom, cod, fn, name=None):
        self.dom = dom
        self.cod = cod
        self.fn = fn
        self.memo = {}
        self.name = name

    def __call__(self, p):
        try:
            return self.memo[p]
        except KeyError:
            v = self.memo[p] = self.fn(p)
            return v

    @property
    def backend(self):
        return self.dom.base.backend

    def table(self):
        return tuple(self(p) for p in self.dom.base.points)

    def retype(self, dom, cod):
        """Same underlying map, re-labelled with structured domain/codomain."""
        if dom.base is not self.dom.base or cod.base is not self.cod.base:
            raise InputError("retype must preserve carriers")
        m = Mor(dom, cod, self.fn, self.name)
        m.memo = self.memo
        return m

    def __repr__(self):
        return "Mor(%s: %r -> %r)" % (self.name or "?", self.dom, self.cod)


class Composite(Mor):
    """A morphism built from memoized parts; its own evaluation is not cached."""

    __slots__ = ()

    def __call__(self, p):
        return self.fn(p)


@dataclass
class CoequalizerData:
    f: Any
    g: Any
    Q: Any
    q: Mor
    section: Any = None
    reflexive: bool = False
    _factor: Callable = None

    def factor(self, h):
        return self._factor(h)


@dataclass
class HomSetData:
    source: Any
    target: Any
    morphisms: list


@dataclass
class CopowerData:
    S: Any
    M: Any
    obj: Any
    injections: dict


@dataclass
class Classification:
    mono: bool
    epi: bool
    witness: Any = None

    @property
    def label(self):
        if self.mono and self.epi:
            return "iso"
        if self.mono:
            return "monic-not-epic"
        if self.epi:
            return "epic-not-monic"
        return "neither"


class Backend:
    """Common machinery; subclasses supply the value arithmetic and solvers."""

    tag = "?"

    def __init__(self, max_hom=4096, max_points=200000):
        self.max_hom = max_hom
        self.max_points = max_points
        self._intern = {}

    # -- value arithmetic (overridden) -------------------------------------
    def unit_value(self, p):
        raise NotImplementedError

    def apply(self, g, v):
        raise NotImplementedError

    def relabel(self, v, h):
        raise NotImplementedError

    def pair_value(self, a, b):
        raise NotImplementedError

    # -- construction ------------------------------------------------------
    def make(self, key, gen, sizef=None, name=None):
        try:
            return self._intern[key]
        except KeyError:
            X = self._intern[key] = Obj(self, key, gen, sizef, name)
            return X

    def mor(self, dom, cod, fn, name=None):
        return Mor(dom, cod, fn, name)

    def check_obj(self, X):
        if getattr(X, "base", None) is None or X.base.backend is not self:
            raise InputError("object %r does not belong to backend %s" % (X, self.tag))

    # -- category structure ------------------------------------------------
    def identity(self, X):
        uv = self.unit_value
        return Mor(X, X, uv, "id")

    def compose(self, g, *fs):
        """g ∘ f1 ∘ f2 ∘ ... (rightmost applied first)."""
        out = g
        for f in fs:
            if f.cod.base is not out.dom.base:
                raise InputError("cannot compose %r after %r" % (out, f))
            out = self._compose2(out, f)
        return out

    def _compose2(self, g, f):
        ap = self.apply
        return Mor(f.dom, g.cod, lambda p: ap(g, f(p)))

    def diff(self, f, g):
        if f.dom.base is not g.dom.base or f.cod.base is not g.cod.base:
            raise InputError("comparing non-parallel morphisms %r, %r" % (f, g))
        for p in f.dom.base.points:
            a, b = f(p), g(p)
            if a != b:
                return p, a, b
        return None

    def equal(self, f, g):
        return self.diff(f, g) is None

    # -- copowers (V = finite sets) ---------------------------------------
    @property
    def V(self):
        from .finset import FINSET
        return FINSET

    def copower(self, S, M):
        M = M.base
        return self.make(("cop", S, M), lambda: [(s, x) for s in S.points for x in M.base.points],
                         lambda: S.size * M.base.size)

    def copower_data(self, S, M):
        return CopowerData(S, M, self.copower(S, M), {s: self.inj(S, M, s) for s in S.points})

    def inj(self, S, M, s):
        uv = self.unit_value
        return Mor(M, self.copower(S, M), lambda x: uv((s, x)), "in")

    def copair(self, S, M, Y, family):
        """The map S⊗M → Y whose restriction along in_s is family(s)."""
        cache = {}

        def fn(p):
            s, x = p
            m = cache.get(s)
            if m is None:
                m = cache[s] = family(s)
            return m(x)

        return Mor(self.copower(S, M), Y, fn, "copair")

    def copower_map(self, sigma, f):
        """sigma ⊗ f : S⊗M → S'⊗M' for a set map sigma and a morphism f."""
        rl = self.relabel

        def fn(p):
            s, x = p
            t = sigma(s)
            return rl(f(x), lambda l: (t, l))

        return Mor(self.copower(sigma.dom.base, f.dom.base), self.copower(sigma.cod.base, f.cod.base), fn)

    def assoc(self, U, W, M):
        """a: U⊗(W⊗M) → (U×W)⊗M."""
        V, uv = self.V, self.unit_value
        UW = V.copower(U, W)
        return Mor(self.copower(U, self.copower(W, M)), self.copower(UW, M),
                   lambda p: uv(((p[0], p[1][0]), p[1][1])), "a")

    def assoc_inv(self, U, W, M):
        V, uv = self.V, self.unit_value
        UW = V.copower(U, W)
        return Mor(self.copower(UW, M), self.copower(U, self.copower(W, M)),
                   lambda p: uv((p[0][0], (p[0][1], p[1]))), "a^-1")

    def lunit(self, M):
        """l: M → 1⊗M."""
        uv = self.unit_value
        return Mor(M, self.copower(self.V.one(), M), lambda x: uv((ONE, x)), "l")

    def lunit_inv(self, M):
        uv = self.unit_value
        return Mor(self.copower(self.V.one(), M), M, lambda p: uv(p[1]), "l^-1")

    # -- homs --------------------------------------------------------------
    def hom_size(self, M, N):
        raise NotImplementedError

    def hom_points(self, M, N):
        raise NotImplementedError

    def hom(self, M, N):
        """The hom *set* M(M,N) as an object of V; points are canonical descriptors."""
        M, N = M.base, N.base
        return self.V.make(("hom", self, M, N), lambda: self.hom_points(M, N),
                           lambda: self.hom_size(M, N))

    def hom_set(self, M, N):
        n = self.hom_size(M.base, N.base)
        if n > self.max_hom:
            raise CapExceeded("hom(%r, %r) has %d > %d morphisms" % (M, N, n, self.max_hom))
        H = self.hom(M, N)
        return HomSetData(M, N, [self.hom_mor(M, N, d) for d in H.points])

    def hom_point(self, f):
        return tuple(f(x) for x in f.dom.base.points)

    def hom_mor(self, M, N, d):
        Mb = M.base
        return Mor(M, N, lambda x: d[Mb.index(x)], "h")

    def hom_map(self, R, f):
        """Hom(R, f): Hom(R, M) → Hom(R, M') as a set map."""
        ap = self.apply
        return Mor(self.hom(R, f.dom), self.hom(R, f.cod), lambda d: tuple(ap(f, v) for v in d), "H")

    def ev(self, M, N):
        """ev: Hom(M,N)⊗M → N."""
        Mb = M.base
        return Mor(self.copower(self.hom(M, N), M), N, lambda p: p[0][Mb.index(p[1])], "ev")

    def coev(self, M, S):
        """coev: S → Hom(M, S⊗M), s ↦ in_s."""
        uv, pts = self.unit_value, M.base.points
        return Mor(S, self.hom(M, self.copower(S, M)), lambda s: tuple(uv((s, x)) for x in pts), "coev")

    def chi(self, S, M, N):
        """The strength χ: S × Hom(M,N) → Hom(M, S⊗N), (s, f) ↦ in_s∘f."""
        rl = self.relabel
        V = self.V
        return Mor(V.copower(S, self.hom(M, N)), self.hom(M, self.copower(S, N)),
                   lambda p: tuple(rl(v, lambda l: (p[0], l)) for v in p[1]), "chi")

    def comp_map(self, L, M, N):
        """Backend composition as a set map c: Hom(M,N) × Hom(L,M) → Hom(L,N)."""
        V, ap = self.V, self.apply

        def fn(p):
            g = self.hom_mor(M, N, p[0])
            return tuple(ap(g, v) for v in p[1])

        return Mor(V.copower(self.hom(M, N), self.hom(L, M)), self.hom(L, N), fn, "c")

    def id_point(self, M):
        return tuple(self.unit_value(x) for x in M.base.points)

    # -- colimits and classification (overridden) --------------------------
    def coequalizer(self, f, g, section=None, choice="min"):
        raise NotImplementedError

    def factor_through_epi(self, e, h):
        raise NotImplementedError

    def classify(self, f):
        raise NotImplementedError

    def is_iso(self, f):
        c = self.classify(f)
        return c.mono and c.epi

    def inverse(self, f):
        if not self.is_iso(f):
            raise PreconditionError("not invertible", self.classify(f).witness)
        return self.factor_through_epi(f, self.identity(f.dom))

    def find_section(self, f, g):
        raise NotImplementedError

    def _check_pair(self, f, g):
        if f.dom.base is not g.dom.base or f.cod.base is not g.cod.base:
            raise InputError("coequalizer of non-parallel pair")

    def _coequalizer_witness(self, h, f, g):
        d = self.diff(self.compose(h, f), self.compose(h, g))
        if d is not None:
            p, a, b = d
            raise PreconditionError("morphism does not coequalize the pair",
                                    {"point": to_json(p), "lhs": to_json(a), "rhs": to_json(b)})

    # -- universe support --------------------------------------------------
    def product_points(self, *objs):
        return itertools.product(*(X.base.points for X in objs))


def is_coequalizer(B, e, f, g):
    """Whether ``e`` is a coequalizer of (f, g): it coequalizes and the comparison is iso.

    Returns ``(verdict, witness)``.
    """
    d = B.diff(B.compose(e, f), B.compose(e, g))
    if d is not None:
        p, a, b = d
        return False, {"reason": "does not coequalize", "point": to_json(p), "lhs": to_json(a), "rhs": to_json(b)}
    c = B.coequalizer(f, g)
    k = c.factor(e)
    cl = B.classify(k)
    if cl.mono and cl.epi:
        return True, None
    return False, {"reason": "comparison %s" % cl.label, "detail": cl.witness}
