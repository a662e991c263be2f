"""Finite-dimensional F_p vector spaces with labelled bases.

Vectors are frozensets of ``(basis label, coefficient)`` pairs with nonzero
coefficients, so they are hashable and canonical.  Quotients are cokernels computed
by Gaussian elimination over F_p.
"""
from __future__ import annotations

import itertools

from ..core import InputError, PreconditionError, to_json
from .base import ONE, Backend, Classification, CoequalizerData, Mor


def vec(d, p):
    return frozenset((l, c % p) for l, c in d.items() if c % p)


def rref(rows, ncols, p, order=None):
    """Reduced row echelon form; returns (rows, pivot columns).

    ``order`` permutes the preference of pivot columns (used for alternative complements).
    """
    rows = [list(r) for r in rows]
    cols = list(order) if order is not None else list(range(ncols))
    pivots = []
    r = 0
    for c in cols:
        piv = next((i for i in range(r, len(rows)) if rows[i][c] % p), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], p - 2, p)
        rows[r] = [(v * inv) % p for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] % p:
                k = rows[i][c]
                rows[i] = [(a - k * b) % p for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


class FinVec(Backend):
    def __init__(self, p=2, **kw):
        if p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
            raise InputError("finvec needs a prime, got %r" % p)
        super().__init__(**kw)
        self.p = p
        self.tag = "finvec(%d)" % p

    # -- values --------------------------------------------------------------
    def unit_value(self, x):
        return frozenset(((x, 1),))

    def apply(self, g, v):
        p = self.p
        acc = {}
        for l, c in v:
            for l2, c2 in g(l):
                acc[l2] = (acc.get(l2, 0) + c * c2) % p
        return frozenset((l, c) for l, c in acc.items() if c)

    def relabel(self, v, h):
        p = self.p
        acc = {}
        for l, c in v:
            k = h(l)
            acc[k] = (acc.get(k, 0) + c) % p
        return frozenset((l, c) for l, c in acc.items() if c)

    def pair_value(self, a, b):
        p = self.p
        acc = {}
        for la, ca in a:
            for lb, cb in b:
                k = (la, lb)
                acc[k] = (acc.get(k, 0) + ca * cb) % p
        return frozenset((l, c) for l, c in acc.items() if c)

    def coords(self, v, X):
        row = [0] * X.base.size
        for l, c in v:
            row[X.base.index(l)] = c
        return row

    def from_coords(self, row, X):
        pts = X.base.points
        return frozenset((pts[i], c % self.p) for i, c in enumerate(row) if c % self.p)

    def vectors(self, X):
        pts = X.base.points
        for cs in itertools.product(range(self.p), repeat=len(pts)):
            yield frozenset((pts[i], c) for i, c in enumerate(cs) if c)

    # -- objects -------------------------------------------------------------
    def explicit(self, labels, name=None):
        labels = tuple(labels)
        if len(set(labels)) != len(labels):
            raise InputError("duplicate basis labels")
        return self.make(("vec", labels), lambda: labels, lambda: len(labels), name)

    def space(self, n):
        if n < 0:
            raise InputError("negative dimension")
        return self.explicit(tuple(range(n)))

    def matrix_mor(self, dom, cod, rows):
        """Morphism from a row-major cod×dom matrix."""
        rows = [list(r) for r in rows]
        if len(rows) != cod.size or any(len(r) != dom.size for r in rows):
            raise InputError("matrix shape mismatch")
        if any(not (0 <= x < self.p) for r in rows for x in r):
            raise InputError("matrix entries must lie in [0, p)")
        cols = {x: self.from_coords([rows[i][j] for i in range(cod.size)], cod)
                for j, x in enumerate(dom.points)}
        return Mor(dom, cod, lambda x: cols[x])

    def matrix(self, f):
        D, C = f.dom.base, f.cod.base
        cols = [self.coords(f(x), C) for x in D.points]
        return [[cols[j][i] for j in range(D.size)] for i in range(C.size)]

    def one(self):
        return self.explicit(())

    def terminal(self):
        return self.explicit(())

    def to_terminal(self, X):
        return Mor(X, self.terminal(), lambda x: frozenset())

    def product(self, M, N):
        """Direct sum (biproduct)."""
        return self.make(("sum", M, N), lambda: [(0, x) for x in M.base.points] + [(1, y) for y in N.base.points],
                         lambda: M.base.size + N.base.size)

    def proj1(self, M, N):
        return Mor(self.product(M, N), M, lambda p: self.unit_value(p[1]) if p[0] == 0 else frozenset())

    def proj2(self, M, N):
        return Mor(self.product(M, N), N, lambda p: self.unit_value(p[1]) if p[0] == 1 else frozenset())

    def pair(self, f, g):
        rl = self.relabel

        def fn(x):
            return rl(f(x), lambda l: (0, l)) | rl(g(x), lambda l: (1, l))

        return Mor(f.dom, self.product(f.cod, g.cod), fn)

    def prod_map(self, f, g):
        rl = self.relabel

        def fn(p):
            if p[0] == 0:
                return rl(f(p[1]), lambda l: (0, l))
            return rl(g(p[1]), lambda l: (1, l))

        return Mor(self.product(f.dom, g.dom), self.product(f.cod, g.cod), fn)

    def hom_size(self, M, N):
        return self.p ** (M.size * N.size)

    def hom_points(self, M, N):
        vs = list(self.vectors(N))
        return itertools.product(vs, repeat=M.size)

    def coproduct(self, objs):
        objs = tuple(objs)
        return self.make(("coprod", objs), lambda: [(i, x) for i, X in enumerate(objs) for x in X.base.points],
                         lambda: sum(X.base.size for X in objs))

    def coproj(self, objs, i):
        objs = tuple(objs)
        return Mor(objs[i], self.coproduct(objs), lambda x: self.unit_value((i, x)))

    def cotuple(self, objs, Y, maps):
        objs = tuple(objs)
        return Mor(self.coproduct(objs), Y, lambda p: maps[p[0]](p[1]))

    def vtensor(self, A, B):
        return self.make(("tens", A, B), lambda: [(a, b) for a in A.base.points for b in B.base.points],
                         lambda: A.base.size * B.base.size)

    def vtensor_mor(self, f, g):
        pv = self.pair_value
        return Mor(self.vtensor(f.dom, g.dom), self.vtensor(f.cod, g.cod), lambda ab: pv(f(ab[0]), g(ab[1])))

    # -- solvers -------------------------------------------------------------
    def coequalizer(self, f, g, section=None, choice="min"):
        self._check_pair(f, g)
        p = self.p
        C = f.cod.base
        n = C.size
        rows = []
        for x in f.dom.base.points:
            a, b = self.coords(f(x), C), self.coords(g(x), C)
            rows.append([(u - v) % p for u, v in zip(a, b)])
        order = None if choice == "min" else list(range(n - 1, -1, -1))
        red, pivots = rref(rows, n, p, order)
        pivset = set(pivots)
        free = [j for j in range(n) if j not in pivset]
        pts = C.points
        Q = self.explicit(tuple(pts[j] for j in free))
        image = {}
        for j in free:
            image[pts[j]] = self.unit_value(pts[j])
        for row, c in zip(red, pivots):
            # e_c ≡ -(sum over free columns of row entries)
            image[pts[c]] = frozenset((pts[k], (-row[k]) % p) for k in free if row[k] % p)
        q = Mor(f.cod, Q, lambda y: image[y], "q")
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

    def _solver(self, e):
        """Return solve(target coords) -> domain coords or None."""
        p = self.p
        D, C = e.dom.base, e.cod.base
        m, n = C.size, D.size
        A = self.matrix(e)
        aug = [A[i] + [1 if k == i else 0 for k in range(m)] for i in range(m)]
        red, pivots = rref(aug, n + m, p, order=list(range(n)))
        pivots = [c for c in pivots if c < n]

        def solve(b):
            # P b, where P is the right block of the reduced augmented matrix
            pb = [sum(row[n + i] * b[i] for i in range(m)) % p for row in red]
            x = [0] * n
            for r, c in enumerate(pivots):
                x[c] = pb[r]
            # verify
            got = [sum(A[i][j] * x[j] for j in range(n)) % p for i in range(m)]
            if got != [v % p for v in b]:
                return None
            return x

        return solve

    def factor_through_epi(self, e, h):
        if e.dom.base is not h.dom.base:
            raise InputError("factor_through_epi: domain mismatch")
        D, C = e.dom.base, e.cod.base
        solve = self._solver(e)
        img = {}
        for i, y in enumerate(C.points):
            x = solve([1 if k == i else 0 for k in range(C.size)])
            if x is None:
                raise PreconditionError("not epi", {"missing": to_json(y)})
            acc = {}
            for j, c in enumerate(x):
                if c:
                    for l, v in h(D.points[j]):
                        acc[l] = acc.get(l, 0) + c * v
            img[y] = vec(acc, self.p)
        hbar = Mor(e.cod, h.cod, lambda y: img[y], "factor")
        d = self.diff(self.compose(hbar, e), h)
        if d is not None:
            pt, a, b = d
            raise PreconditionError("morphism does not vanish on the kernel",
                                    {"point": to_json(pt), "lhs": to_json(a), "rhs": to_json(b)})
        return hbar

    def rank(self, f):
        A = self.matrix(f)
        red, piv = rref(A, f.dom.base.size, self.p) if A else ([], [])
        return len(piv)

    def classify(self, f):
        D, C = f.dom.base, f.cod.base
        r = self.rank(f) if D.size and C.size else 0
        mono, epi = r == D.size, r == C.size
        witness = None
        if not mono:
            # a kernel vector: null space of the matrix
            A = self.matrix(f)
            red, piv = rref(A, D.size, self.p) if A else ([], [])
            freecol = next(j for j in range(D.size) if j not in piv)
            x = [0] * D.size
            x[freecol] = 1
            for row, c in zip(red, piv):
                x[c] = (-row[freecol]) % self.p
            witness = {"kernel": to_json(self.from_coords(x, D))}
        elif not epi:
            solve = self._solver(f) if D.size else (lambda b: None)
            for i, y in enumerate(C.points):
                if solve([1 if k == i else 0 for k in range(C.size)]) is None:
                    witness = {"missing": to_json(y)}
                    break
        return Classification(mono, epi, witness)

    def find_section(self, f, g):
        """A common section of (f, g) if one exists."""
        D, C = f.dom.base, f.cod.base
        p = self.p
        n, m = D.size, C.size
        F, G = self.matrix(f), self.matrix(g)
        A = F + G  # stacked 2m × n
        cols = {}
        for i, y in enumerate(C.points):
            b = [1 if k == i else 0 for k in range(m)] * 2
            aug = [A[r] + [b[r]] for r in range(2 * m)]
            red, piv = rref(aug, n + 1, p, order=list(range(n + 1)))
            if n in piv:
                return None
            x = [0] * n
            for row, c in zip(red, piv):
                x[c] = row[n]
            cols[y] = self.from_coords(x, D)
        return Mor(C, f.dom, lambda y: cols[y], "s")

    def describe(self, X):
        return {"dim": X.base.size}


_CACHE = {}


def finvec(p=2):
    if p not in _CACHE:
        _CACHE[p] = FinVec(p)
    return _CACHE[p]
