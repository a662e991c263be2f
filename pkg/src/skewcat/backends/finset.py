"""Finite sets: quotients via union-find."""
from __future__ import annotations

import itertools

from ..core import CapExceeded, InputError, PreconditionError, to_json
from .base import ONE, Backend, Classification, CoequalizerData, Composite, Mor


class UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, i):
        root = i
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[i] != root:
            self.parent[i], i = root, self.parent[i]
        return root

    def union(self, i, j):
        ri, rj = self.find(i), self.find(j)
        if ri != rj:
            # keep the smaller index as root so classes remember their minimum
            if rj < ri:
                ri, rj = rj, ri
            self.parent[rj] = ri


class FinSet(Backend):
    tag = "finset"

    def unit_value(self, p):
        return p

    def apply(self, g, v):
        return g(v)

    def relabel(self, v, h):
        return h(v)

    def pair_value(self, a, b):
        return (a, b)

    def _compose2(self, g, f):
        return Composite(f.dom, g.cod, lambda p: g(f(p)))

    def copower_map(self, sigma, f):
        return Composite(self.copower(sigma.dom.base, f.dom.base), self.copower(sigma.cod.base, f.cod.base),
                   lambda p: (sigma(p[0]), f(p[1])))

    # -- objects -----------------------------------------------------------
    def explicit(self, labels, name=None):
        labels = tuple(labels)
        if len(set(labels)) != len(labels):
            raise InputError("duplicate labels in %r" % (labels,))
        return self.make(("set", labels), lambda: labels, lambda: len(labels), name)

    def one(self):
        return self.explicit((ONE,))

    def empty(self):
        return self.explicit(())

    def from_dict(self, table, dom, cod):
        return Mor(dom, cod, lambda x: table[x])

    def table_mor(self, dom, cod, table):
        """Morphism from a tuple of output labels in domain order."""
        table = tuple(table)
        if len(table) != dom.size or any(y not in cod for y in table):
            raise InputError("bad function table %r" % (table,))
        return Mor(dom, cod, lambda x: table[dom.index(x)])

    # V-level helpers (this backend doubles as V)
    def product(self, U, W):
        return self.copower(U, W)

    def terminal(self):
        return self.one()

    def to_terminal(self, X):
        return Mor(X, self.one(), lambda x: ONE)

    def proj1(self, U, W):
        return Mor(self.copower(U, W), U, lambda p: p[0], "p1")

    def proj2(self, U, W):
        return Mor(self.copower(U, W), W, lambda p: p[1], "p2")

    def pair(self, f, g):
        if f.dom.base is not g.dom.base:
            raise InputError("pairing maps with different domains")
        return Mor(f.dom, self.copower(f.cod, g.cod), lambda x: (f(x), g(x)), "pair")

    def prod_map(self, f, g):
        return self.copower_map(f, g)

    def swap(self, U, W):
        return Mor(self.copower(U, W), self.copower(W, U), lambda p: (p[1], p[0]), "s")

    def runit(self, U):
        """r: U×1 → U."""
        return Mor(self.copower(U, self.one()), U, lambda p: p[0], "r")

    def hom_size(self, M, N):
        return N.size ** M.size

    def hom_points(self, M, N):
        return itertools.product(N.points, repeat=M.size)

    def coproduct(self, objs):
        objs = tuple(objs)
        return self.make(("coprod", objs), lambda: [(i, x) for i, X in enumerate(objs) for x in X.base.points],
                         lambda: sum(X.base.size for X in objs))

    def coproj(self, objs, i):
        objs = tuple(objs)
        return Mor(objs[i], self.coproduct(objs), lambda x: (i, x))

    def cotuple(self, objs, Y, maps):
        objs = tuple(objs)
        return Mor(self.coproduct(objs), Y, lambda p: maps[p[0]](p[1]))

    # monoidal product used by weighted colimits
    def vtensor(self, A, B):
        return self.copower(A, B)

    def vtensor_mor(self, f, g):
        return Mor(self.copower(f.dom, g.dom), self.copower(f.cod, g.cod), lambda p: (f(p[0]), g(p[1])))

    # -- solvers -----------------------------------------------------------
    def coequalizer(self, f, g, section=None, choice="min"):
        self._check_pair(f, g)
        C = f.cod.base
        pts = C.points
        uf = UnionFind(len(pts))
        idx = C.index
        for x in f.dom.base.points:
            uf.union(idx(f(x)), idx(g(x)))
        classes = {}
        for i in range(len(pts)):
            classes.setdefault(uf.find(i), []).append(i)
        rep_of = {}
        reps = []
        for members in classes.values():
            r = members[0] if choice == "min" else members[-1]
            reps.append(r)
            for i in members:
                rep_of[pts[i]] = pts[r]
        reps.sort()
        Q = self.explicit(tuple(pts[r] for r in reps))
        q = Mor(f.cod, Q, lambda y: rep_of[y], "q")
        if section is None:
            section = self.find_section(f, g)
            reflexive = section is not None
        else:
            reflexive = self.equal(self.compose(f, section), self.identity(C)) and \
                self.equal(self.compose(g, section), self.identity(C))

        def factor(h):
            if h.dom.base is not C:
                raise InputError("factor: domain mismatch")
            self._coequalizer_witness(h, f, g)
            return Mor(Q, h.cod, lambda r: h(r), "factor")

        return CoequalizerData(f, g, Q, q, section, reflexive, factor)

    def find_section(self, f, g):
        C = f.cod.base
        pre = {}
        for x in f.dom.base.points:
            y = f(x)
            if y == g(x) and y not in pre:
                pre[y] = x
        if len(pre) != C.size:
            return None
        return Mor(C, f.dom, lambda y: pre[y], "s")

    def factor_through_epi(self, e, h):
        if e.dom.base is not h.dom.base:
            raise InputError("factor_through_epi: domain mismatch")
        pre = {}
        for x in e.dom.base.points:
            pre.setdefault(e(x), x)
        for y in e.cod.base.points:
            if y not in pre:
                raise PreconditionError("not epi", {"missing": to_json(y)})
        hbar = Mor(e.cod, h.cod, lambda y: h(pre[y]), "factor")
        for x in e.dom.base.points:
            a, b = hbar(e(x)), h(x)
            if a != b:
                raise PreconditionError("morphism not constant on fibres",
                                        {"point": to_json(x), "lhs": to_json(a), "rhs": to_json(b)})
        return hbar

    def classify(self, f):
        seen = {}
        mono = True
        witness = None
        for x in f.dom.base.points:
            y = f(x)
            if y in seen:
                if mono:
                    witness = {"collision": [to_json(seen[y]), to_json(x)], "image": to_json(y)}
                mono = False
            else:
                seen[y] = x
        epi = len(seen) == f.cod.base.size
        if not epi and witness is None:
            missing = next(y for y in f.cod.base.points if y not in seen)
            witness = {"missing": to_json(missing)}
        return Classification(mono, epi, witness)

    def describe(self, X):
        return {"labels": [to_json(x) for x in X.base.points]}


FINSET = FinSet()


def fs(*labels):
    """Shorthand for an explicit finite set."""
    if len(labels) == 1 and isinstance(labels[0], (list, tuple)):
        labels = labels[0]
    return FINSET.explicit(labels)
