"""Brute-force reference computations, written without the engine.

Maps are dicts, sets are tuples, and every construction is spelled out pointwise.
"""
from itertools import product


def all_maps(A, B):
    """Every function A -> B as a tuple of images in A's order."""
    return list(product(B, repeat=len(A)))


def compose(g, f):
    return {x: g[y] for x, y in f.items()}


def classify(f, cod):
    image = set(f.values())
    mono = len(image) == len(f)
    epi = image == set(cod)
    if mono and epi:
        return "iso"
    if mono:
        return "monic-not-epic"
    if epi:
        return "epic-not-monic"
    return "neither"


class DotOracle:
    """M.N = Set(R, M) x N with the canonical coherences, as literal dicts."""

    def __init__(self, R):
        self.R = tuple(R)

    def H(self, M):
        return all_maps(self.R, M)

    def tensor(self, M, N):
        return [(f, n) for f in self.H(M) for n in N]

    def tmap(self, f, g, M, N):
        # f: M -> M', g: N -> N' as dicts
        return {(h, n): (tuple(f[v] for v in h), g[n]) for h, n in self.tensor(M, N)}

    def ident(self, X):
        return {x: x for x in X}

    def eta(self, M):
        idR = self.R
        return {m: (idR, m) for m in M}

    def eps(self, M):
        return {(f, r): f[self.R.index(r)] for f, r in self.tensor(M, self.R)}

    def gamma(self, L, M, N):
        # L.(M.N) -> (L.M).N, (f, (g, n)) |-> (r |-> (f, g r), n)
        out = {}
        for f in self.H(L):
            for g, n in self.tensor(M, N):
                out[(f, (g, n))] = (tuple((f, v) for v in g), n)
        return out


def dot_labels(R, objects):
    """Invertibility labels of eta, eps and gamma over a list of sets."""
    D = DotOracle(R)
    eta = [classify(D.eta(M), D.tensor(D.R, M)) for M in objects]
    eps = [classify(D.eps(M), M) for M in objects]
    gamma = {}
    for i, L in enumerate(objects):
        for j, M in enumerate(objects):
            for k, N in enumerate(objects):
                cod = D.tensor(D.tensor(L, M), N)
                gamma[(i, j, k)] = classify(D.gamma(L, M, N), cod)
    return eta, eps, gamma


def smp2_smc4_verdicts(R, objects):
    """Direct evaluation of the fourth axiom for M *2 N := M . T N with T = R . -.

    Returns {(i, j): holds} over all pairs of ``objects``.
    """
    D = DotOracle(R)
    R = D.R

    def T(X):
        return D.tensor(R, X)

    def Tm(g, X):
        return D.tmap(D.ident(R), g, R, X)

    def tensor2(M, N):
        return D.tensor(M, T(N))

    def tmap2(f, g, M, N):
        return D.tmap(f, Tm(g, N), M, T(N))

    def eta2(M):
        return compose(D.eta(T(M)), D.eta(M))

    def eps2(M):
        return compose(D.eps(M), D.tmap(D.ident(M), D.eps(R), M, T(R)))

    def gamma2(L, M, N):
        inner = D.tmap(D.ident(L), D.gamma(R, M, T(N)), L, D.tensor(R, D.tensor(M, T(N))))
        return compose(D.gamma(L, T(M), T(N)), inner)

    out = {}
    for i, M in enumerate(objects):
        for j, N in enumerate(objects):
            step1 = tmap2(D.ident(M), eta2(N), M, N)
            step2 = gamma2(M, R, N)
            step3 = tmap2(eps2(M), D.ident(N), tensor2(M, R), N)
            lhs = compose(step3, compose(step2, step1))
            out[(i, j)] = all(lhs[x] == x for x in tensor2(M, N))
    return out


def eta_epi_dot(R, M):
    return classify(DotOracle(R).eta(M), DotOracle(R).tensor(tuple(R), M)) == "iso"


# -- monoids and actions -------------------------------------------------------


def endo_monoid(R):
    """All self-maps of R as tuples; composition (g after f)."""
    R = tuple(R)
    elems = all_maps(R, R)

    def mult(g, f):
        return tuple(g[R.index(f[i])] for i in range(len(R)))

    return elems, mult, R


def left_actions(R, X):
    """Monoid homomorphisms End(R) -> End(X): left actions e.x on the set X."""
    elems, mult, ident = endo_monoid(R)
    X = tuple(X)
    ends = all_maps(X, X)
    count = 0
    for choice in product(ends, repeat=len(elems)):
        phi = dict(zip(elems, choice))
        if phi[ident] != X:
            continue
        ok = True
        for g in elems:
            for f in elems:
                lhs = phi[mult(g, f)]
                rhs = tuple(phi[g][X.index(phi[f][i])] for i in range(len(X)))
                if lhs != rhs:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            count += 1
    return count


class UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[ra] = rb

    def classes(self):
        return len({self.find(x) for x in self.parent})


def coequalizer_size(dom, f, g, cod):
    uf = UnionFind(cod)
    for x in dom:
        uf.union(f[x], g[x])
    return uf.classes()


def hom_tensor_size(R, N, M, act):
    """|Set(R, N) (x)_E M| for a left action act[(e, m)] of E = End(R) on M."""
    elems, mult, _ = endo_monoid(R)
    R = tuple(R)
    fs = all_maps(R, N)
    pts = [(f, m) for f in fs for m in M]
    uf = UnionFind(pts)
    for f in fs:
        for e in elems:
            fe = tuple(f[R.index(e[i])] for i in range(len(R)))
            for m in M:
                uf.union((fe, m), (f, act[(e, m)]))
    return uf.classes()


def orbit_tensor_size(U, V, elems, ract, lact):
    """|U (x)_E V| for a right action ract[(u, e)] and a left action lact[(e, v)]."""
    pts = [(u, v) for u in U for v in V]
    uf = UnionFind(pts)
    for u in U:
        for e in elems:
            for v in V:
                uf.union((ract[(u, e)], v), (u, lact[(e, v)]))
    return uf.classes()


def dense(R, M, N):
    """Is Set(M, N) -> E-maps(Set(R, M), Set(R, N)) a bijection?  Counted exhaustively."""
    elems, mult, _ = endo_monoid(R)
    R = tuple(R)
    HM, HN = all_maps(R, M), all_maps(R, N)

    def pre(h, e):
        return tuple(h[R.index(e[i])] for i in range(len(R)))

    # backtracking; a partial table is pruned once a constraint between assigned points fails
    def extend(table, k):
        if k == len(HM):
            return 1
        total = 0
        h = HM[k]
        for val in HN:
            table[h] = val
            if all(table[pre(g, e)] == pre(table[g], e)
                   for g in HM[:k + 1] for e in elems if pre(g, e) in table):
                total += extend(table, k + 1)
            del table[h]
        return total

    equivariant = extend({}, 0)
    images = set()
    for f in all_maps(M, N):
        images.add(tuple(tuple(f[M.index(h[i])] for i in range(len(R))) for h in HM))
    return equivariant == len(images) == len(N) ** len(M)


# -- linear algebra over F_p ---------------------------------------------------


def rank_mod_p(rows, p):
    rows = [list(r) for r in rows]
    rank, col = 0, 0
    ncols = len(rows[0]) if rows else 0
    while rank < len(rows) and col < ncols:
        piv = next((i for i in range(rank, len(rows)) if rows[i][col] % p), None)
        if piv is None:
            col += 1
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][col], p - 2, p)
        rows[rank] = [(v * inv) % p for v in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col] % p:
                c = rows[i][col]
                rows[i] = [(a - c * b) % p for a, b in zip(rows[i], rows[rank])]
        rank += 1
        col += 1
    return rank


def coend_size_walking_arrow(P_vals, P_act, F0, F1, Fmor_act):
    """|P (*) F| over the walking arrow 0 -> 1, by union-find.

    P is contravariant (P(1) -> P(0) via P_act), F covariant (F(0) -> F(1) via Fmor_act).
    """
    pts = [(0, x, y) for x in P_vals[0] for y in F0] + [(1, x, y) for x in P_vals[1] for y in F1]
    uf = UnionFind(pts)
    for x in P_vals[1]:
        for y in F0:
            uf.union((0, P_act[x], y), (1, x, Fmor_act[y]))
    return uf.classes()
