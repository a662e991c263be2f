"""Skew monoidal structures over the backends, their axiom suites and the two builders.

Orientation is right-skew throughout:

    gamma_{L,M,N}: L*(M*N) -> (L*M)*N,   eta_M: M -> R*M,   eps_M: M*R -> M.

Copowers by finite sets play the role of the V-action; the strengths Gamma, Gamma'
are always the canonical maps assembled from copower injections.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .core import (CheckReport, NatFamily, Skip, Tamper, check_naturality, merge_reports, mismatch,
                   naturality_tuples, run_tuples, single, to_json)
from .backends.base import ONE, Composite, Mor, is_coequalizer


class SkewStructure:
    """Tensor, unit and coherence families; subclasses provide the raw components.

    Components are cached per object tuple and pass through the optional ``tamper``
    (used to inject single-entry corruptions).
    """

    kind = "custom"
    prefix = ""  # tamper family namespace

    def __init__(self, cat, unit, name="S", r1=None, r2=None, tamper=None, prefix=None):
        if prefix is not None:
            self.prefix = prefix
        self.cat = cat
        self.unit = unit
        self.name = name
        self.r1 = r1
        self.r2 = r2
        self.tamper = Tamper() if tamper is None else tamper
        self._cache = {}

    # -- subclass hooks ----------------------------------------------------
    def _tensor(self, X, Y):
        raise NotImplementedError

    def _tmap(self, f, g):
        raise NotImplementedError

    def _gamma(self, L, M, N):
        raise NotImplementedError

    def _eta(self, M):
        raise NotImplementedError

    def _eps(self, M):
        raise NotImplementedError

    # -- public API --------------------------------------------------------
    @property
    def backend(self):
        return self.cat

    def _cached(self, family, objs, build):
        key = (family,) + tuple(objs)
        try:
            return self._cache[key]
        except KeyError:
            m = build()
            if isinstance(m, Composite):
                # cached components are reused across tuples, so they memoize
                m = Mor(m.dom, m.cod, m.fn, m.name)
            m = self.tamper.apply(self.prefix + family, objs, m)
            self._cache[key] = m
            return m

    def tensor(self, X, Y):
        key = ("tensor", X, Y)
        if key not in self._cache:
            self._cache[key] = self._tensor(X, Y)
        return self._cache[key]

    def tmap(self, f, g):
        return self._tmap(f, g)

    def id(self, X):
        return self.cat.identity(X)

    def compose(self, g, *fs):
        return self.cat.compose(g, *fs)

    def gamma(self, L, M, N):
        return self._cached("gamma", (L, M, N), lambda: self._gamma(L, M, N))

    def eta(self, M):
        return self._cached("eta", (M,), lambda: self._eta(M))

    def eps(self, M):
        return self._cached("eps", (M,), lambda: self._eps(M))

    def Gamma(self, S, M, N):
        """Gamma_{S,M,N}: S.(M*N) -> (S.M)*N, restricted along in_s it is in_s * N."""
        B = self.cat

        def build():
            target = self.tensor(B.copower(S, M), N)
            return B.copair(S, self.tensor(M, N), target,
                            lambda s: self.tmap(B.inj(S, M, s), self.id(N)))

        return self._cached("Gamma", (S, M, N), build)

    def Gamma_p(self, S, M, N):
        """Gamma'_{S,M,N}: S.(M*N) -> M*(S.N), restricted along in_s it is M * in_s."""
        B = self.cat

        def build():
            target = self.tensor(M, B.copower(S, N))
            return B.copair(S, self.tensor(M, N), target,
                            lambda s: self.tmap(self.id(M), B.inj(S, N, s)))

        return self._cached("Gamma_p", (S, M, N), build)

    # derived data
    def T(self, M):
        return self.tensor(self.unit, M)

    def mu(self, M):
        """mu_M = (eps_R * M) o gamma_{R,R,M}."""
        R = self.unit
        return self._cached("mu", (M,), lambda: self.compose(self.tmap(self.eps(R), self.id(M)), self.gamma(R, R, M)))

    def mu2(self, N, M):
        """mu_{N,M} = (eps_N * M) o gamma_{N,R,M}: N*TM -> N*M."""
        R = self.unit
        return self._cached("mu2", (N, M), lambda: self.compose(self.tmap(self.eps(N), self.id(M)), self.gamma(N, R, M)))

    def describe(self):
        return {"name": self.name, "kind": self.kind, "r1": self.r1, "r2": self.r2}


class FunctionalStructure(SkewStructure):
    """A structure given by plain procedures (used for derived structures)."""

    def __init__(self, cat, unit, tensor, tmap, gamma, eta, eps, name="S", **kw):
        super().__init__(cat, unit, name, **kw)
        self._t, self._tm, self._g, self._h, self._e = tensor, tmap, gamma, eta, eps

    def _tensor(self, X, Y):
        return self._t(X, Y)

    def _tmap(self, f, g):
        return self._tm(f, g)

    def _gamma(self, L, M, N):
        return self._g(L, M, N)

    def _eta(self, M):
        return self._h(M)

    def _eps(self, M):
        return self._e(M)


class CartesianStructure(SkewStructure):
    """Product tensor with the terminal object as unit (direct sum and 0 for finvec)."""

    kind = "cartesian"

    def __init__(self, backend, **kw):
        # direct sums do not commute with copowers, so only the set case is exact
        kw.setdefault("r1", backend.tag == "finset")
        kw.setdefault("r2", backend.tag == "finset")
        super().__init__(backend, backend.terminal(), "cartesian", **kw)

    def _tensor(self, X, Y):
        return self.cat.product(X.base, Y.base)

    def _tmap(self, f, g):
        return self.cat.prod_map(f, g)

    def _gamma(self, L, M, N):
        B = self.cat
        MN = B.product(M, N)
        p1, p2 = B.proj1(L, MN), B.proj2(L, MN)
        inner = B.pair(p1, B.compose(B.proj1(M, N), p2))
        return B.pair(inner, B.compose(B.proj2(M, N), p2))

    def _eta(self, M):
        B = self.cat
        return B.pair(B.to_terminal(M), B.identity(M))

    def _eps(self, M):
        return self.cat.proj1(M, self.unit)


class DotStructure(SkewStructure):
    """M.N := Hom(R, M) . N, the structure determined by the position of R alone."""

    kind = "dot"

    def __init__(self, backend, R, **kw):
        kw.setdefault("r1", False)
        kw.setdefault("r2", True)
        super().__init__(backend, R, "dot", **kw)
        backend.hom_set(R, R)  # E must be enumerable

    def H(self, M):
        return self.cat.hom(self.unit, M)

    def Hmap(self, f):
        return self.cat.hom_map(self.unit, f)

    @property
    def E(self):
        return self.H(self.unit)

    def i_R(self):
        V = self.cat.V
        idp = self.cat.id_point(self.unit)
        return Mor(V.one(), self.E, lambda _: idp, "i_R")

    def _tensor(self, X, Y):
        return self.cat.copower(self.H(X), Y)

    def _tmap(self, f, g):
        return self.cat.copower_map(self.Hmap(f), g)

    def _gamma(self, L, M, N):
        B = self.cat
        HL, HM = self.H(L), self.H(M)
        return B.compose(B.copower_map(B.chi(HL, self.unit, M), B.identity(N)), B.assoc(HL, HM, N))

    def _eta(self, M):
        B = self.cat
        return B.compose(B.copower_map(self.i_R(), B.identity(M)), B.lunit(M))

    def _eps(self, M):
        return self.cat.ev(self.unit, M)

    # H is skew monoidal into (Set, x, 1)
    def H_functor(self):
        B = self.cat
        V = B.V
        return SkewFunctor(
            name="H", obj=self.H, mor=self.Hmap,
            K2=lambda M, N: B.chi(self.H(M), self.unit, N),
            K0=self.i_R(),
            src=self, tgt=build_cartesian(V))


def build_cartesian(backend, **kw):
    return CartesianStructure(backend, **kw)


def build_dot(backend, R, **kw):
    return DotStructure(backend, R, **kw)


# ---------------------------------------------------------------------------
# axiom suites


def smc1(S, K, L, M, N):
    t, tm, idm, c = S.tensor, S.tmap, S.id, S.compose
    lhs = c(tm(S.gamma(K, L, M), idm(N)), S.gamma(K, t(L, M), N), tm(idm(K), S.gamma(L, M, N)))
    rhs = c(S.gamma(t(K, L), M, N), S.gamma(K, L, t(M, N)))
    return mismatch(lhs, rhs)


def smc2(S, M, N):
    return mismatch(S.compose(S.gamma(S.unit, M, N), S.eta(S.tensor(M, N))), S.tmap(S.eta(M), S.id(N)))


def smc3(S, M, N):
    return mismatch(S.compose(S.eps(S.tensor(M, N)), S.gamma(M, N, S.unit)), S.tmap(S.id(M), S.eps(N)))


def smc4(S, M, N):
    lhs = S.compose(S.tmap(S.eps(M), S.id(N)), S.gamma(M, S.unit, N), S.tmap(S.id(M), S.eta(N)))
    return mismatch(lhs, S.id(S.tensor(M, N)))


def smc5(S):
    return mismatch(S.compose(S.eps(S.unit), S.eta(S.unit)), S.id(S.unit))


SMC_NAMES = ("SMC1", "SMC2", "SMC3", "SMC4", "SMC5")


def smc_checks(S, u, pool=None, kind="obj", names=SMC_NAMES):
    """The five skew monoidality axioms as separate reports."""
    pool = u.objects if pool is None else pool
    return [
        run_tuples(names[0], u.refs(4, kind, pool), lambda *a: smc1(S, *a)),
        run_tuples(names[1], u.refs(2, kind, pool), lambda *a: smc2(S, *a)),
        run_tuples(names[2], u.refs(2, kind, pool), lambda *a: smc3(S, *a)),
        run_tuples(names[3], u.refs(2, kind, pool), lambda *a: smc4(S, *a)),
        single(names[4], lambda: smc5(S), ref=[["unit"]]),
    ]


def naturality_families(S):
    t, tm, idm = S.tensor, S.tmap, S.id
    R = S.unit
    return [
        NatFamily("gamma", 3, S.gamma, lambda f, g, h: tm(f, tm(g, h)), lambda f, g, h: tm(tm(f, g), h), S.cat),
        NatFamily("eta", 1, S.eta, lambda f: f, lambda f: tm(idm(R), f), S.cat),
        NatFamily("eps", 1, S.eps, lambda f: tm(f, idm(R)), lambda f: f, S.cat),
    ]


def naturality_checks(S, u, pool=None, mors=None, max_dom=None):
    """Naturality of gamma, eta, eps over universe morphisms."""
    out = []
    mors = u.morphisms(S.cat) if mors is None else mors
    if max_dom is not None:
        mors = [(r, f) for r, f in mors if f.dom.base.size <= max_dom and f.cod.base.size <= max_dom]
    for nu in naturality_families(S):
        out.append(check_naturality(nu, u, "nat-" + nu.name, naturality_tuples(nu, u, pool, mors)))
    return out


def check_smc_axioms(S, u, pool=None, kind="obj", naturality=True):
    reps = smc_checks(S, u, pool, kind)
    if naturality and pool is None:
        reps += naturality_checks(S, u)
    out = merge_reports("smc", reps)
    out.info["axioms"] = {r.check: {"status": r.status, "checked": r.checked, "skipped": r.skipped} for r in reps}
    return out


def _vsets(u):
    from .backends.finset import FINSET
    return u.vsets or [FINSET.empty(), FINSET.one(), FINSET.explicit(("u", "v"))]


def strength_checks(S, u):
    """sma-6 .. sma-15 plus the three axioms of the copower action (act-1 .. act-3)."""
    B = S.cat
    V = B.V
    R = S.unit
    t, tm, idm, c = S.tensor, S.tmap, S.id, S.compose
    G, Gp = S.Gamma, S.Gamma_p
    cop, cmap, a, ainv, l = B.copower, B.copower_map, B.assoc, B.assoc_inv, B.lunit
    I = V.one()
    vs = _vsets(u)
    objs = u.objects

    def Vact(U, f):  # U . f
        return cmap(V.identity(U), f)

    def sma6(U, W, M, N):
        lhs = c(G(V.product(U, W), M, N), a(U, W, t(M, N)))
        rhs = c(tm(a(U, W, M), idm(N)), G(U, cop(W, M), N), Vact(U, G(W, M, N)))
        return mismatch(lhs, rhs)

    def sma7(M, N):
        return mismatch(c(G(I, M, N), l(t(M, N))), tm(l(M), idm(N)))

    def sma8(U, W, M, N):
        lhs = c(Gp(V.product(U, W), M, N), a(U, W, t(M, N)))
        rhs = c(tm(idm(M), a(U, W, N)), Gp(U, M, cop(W, N)), Vact(U, Gp(W, M, N)))
        return mismatch(lhs, rhs)

    def sma9(M, N):
        return mismatch(c(Gp(I, M, N), l(t(M, N))), tm(idm(M), l(N)))

    def sma10(U, W, M, N):
        MN = t(M, N)
        lhs = c(Gp(U, cop(W, M), N), Vact(U, G(W, M, N)))
        rhs = c(G(W, M, cop(U, N)), Vact(W, Gp(U, M, N)), ainv(W, U, MN), cmap(V.swap(U, W), idm(MN)), a(U, W, MN))
        return mismatch(lhs, rhs)

    def sma11(W, L, M, N):
        lhs = c(S.gamma(cop(W, L), M, N), G(W, L, t(M, N)))
        rhs = c(tm(G(W, L, M), idm(N)), G(W, t(L, M), N), Vact(W, S.gamma(L, M, N)))
        return mismatch(lhs, rhs)

    def sma12(W, L, M, N):
        lhs = c(S.gamma(L, cop(W, M), N), tm(idm(L), G(W, M, N)), Gp(W, L, t(M, N)))
        rhs = c(tm(Gp(W, L, M), idm(N)), G(W, t(L, M), N), Vact(W, S.gamma(L, M, N)))
        return mismatch(lhs, rhs)

    def sma13(W, L, M, N):
        lhs = c(S.gamma(L, M, cop(W, N)), tm(idm(L), Gp(W, M, N)), Gp(W, L, t(M, N)))
        rhs = c(Gp(W, t(L, M), N), Vact(W, S.gamma(L, M, N)))
        return mismatch(lhs, rhs)

    def sma14(W, M):
        return mismatch(c(Gp(W, R, M), Vact(W, S.eta(M))), S.eta(cop(W, M)))

    def sma15(W, M):
        return mismatch(c(S.eps(cop(W, M)), G(W, M, R)), Vact(W, S.eps(M)))

    # the copower action itself: pentagon and two triangles
    def act1(U, W, X, M):
        UW, WX = V.product(U, W), V.product(W, X)
        lhs = c(a(UW, X, M), a(U, W, cop(X, M)))
        rhs = c(cmap(V.assoc(U, W, X), idm(M)), a(U, WX, M), Vact(U, a(W, X, M)))
        return mismatch(lhs, rhs)

    def act2(W, M):
        return mismatch(c(a(I, W, M), l(cop(W, M))), cmap(V.lunit(W), idm(M)))

    def act3(U, M):
        return mismatch(c(cmap(V.runit(U), idm(M)), a(U, I, M), Vact(U, l(M))), idm(cop(U, M)))

    def mixed(pattern):
        """Tuples mixing vsets ('v') and objects ('o') in the given order."""
        import itertools
        pools = [vs if p == "v" else objs for p in pattern]
        kinds = ["vset" if p == "v" else "obj" for p in pattern]
        for idx in itertools.product(*(range(len(pl)) for pl in pools)):
            yield [[k, i] for k, i in zip(kinds, idx)], tuple(pl[i] for pl, i in zip(pools, idx))

    return [
        run_tuples("sma-6", mixed("vvoo"), sma6),
        run_tuples("sma-7", mixed("oo"), sma7),
        run_tuples("sma-8", mixed("vvoo"), sma8),
        run_tuples("sma-9", mixed("oo"), sma9),
        run_tuples("sma-10", mixed("vvoo"), sma10),
        run_tuples("sma-11", mixed("vooo"), sma11),
        run_tuples("sma-12", mixed("vooo"), sma12),
        run_tuples("sma-13", mixed("vooo"), sma13),
        run_tuples("sma-14", mixed("vo"), sma14),
        run_tuples("sma-15", mixed("vo"), sma15),
        run_tuples("act-1", mixed("vvvo"), act1),
        run_tuples("act-2", mixed("vo"), act2),
        run_tuples("act-3", mixed("vo"), act3),
    ]


def check_strength_axioms(S, u):
    reps = strength_checks(S, u)
    out = merge_reports("strengths", reps)
    out.info["axioms"] = {r.check: {"status": r.status, "checked": r.checked, "skipped": r.skipped} for r in reps}
    return out


# ---------------------------------------------------------------------------
# invertibility


@dataclass
class InvertibilityScan:
    families: dict = field(default_factory=dict)   # family -> {tuple key: label}
    witnesses: dict = field(default_factory=dict)  # family -> {tuple key: witness}
    skipped: list = field(default_factory=list)

    @property
    def monoidal(self):
        return all(lab == "iso" for fam in self.families.values() for lab in fam.values())

    def labels(self, family):
        return set(self.families.get(family, {}).values())

    def find(self, family, label):
        """First (tuple key, witness) with the given classification, or None."""
        for k, lab in self.families.get(family, {}).items():
            if lab == label:
                return k, self.witnesses[family].get(k)
        return None

    def to_dict(self):
        return {"families": self.families, "witnesses": self.witnesses, "skipped": self.skipped,
                "monoidal": self.monoidal}


def _key(refs):
    return ",".join("%s%d" % (r[0][0], r[1]) for r in refs)


def invertibility_scan(S, u, pool=None, kind="obj", families=("gamma", "eta", "eps")):
    from .core import CapExceeded
    pool = u.objects if pool is None else pool
    scan = InvertibilityScan()
    arity = {"gamma": 3, "eta": 1, "eps": 1}
    comp = {"gamma": S.gamma, "eta": S.eta, "eps": S.eps}
    B = S.cat
    for fam in families:
        scan.families[fam], scan.witnesses[fam] = {}, {}
        for refs, objs in u.refs(arity[fam], kind, pool):
            k = _key(refs)
            try:
                cl = B.classify(comp[fam](*objs))
            except CapExceeded as exc:
                scan.skipped.append([fam, k, str(exc)])
                continue
            scan.families[fam][k] = cl.label
            scan.witnesses[fam][k] = cl.witness
    return scan


def scan_report(scan, check_id="invertibility", expect_iso=()):
    """A report that fails when a family listed in ``expect_iso`` has a non-iso component."""
    for fam in expect_iso:
        for k, lab in scan.families.get(fam, {}).items():
            if lab != "iso":
                return CheckReport(check_id, "fail", {"family": fam, "tuple": k, "label": lab,
                                                      "detail": to_json(scan.witnesses[fam][k])},
                                   checked=sum(len(v) for v in scan.families.values()))
    rep = CheckReport(check_id, checked=sum(len(v) for v in scan.families.values()),
                      skipped=len(scan.skipped))
    rep.info["summary"] = {fam: sorted(set(v.values())) for fam, v in scan.families.items()}
    rep.info["monoidal"] = scan.monoidal
    return rep


# ---------------------------------------------------------------------------
# skew monoidal functors


class SkewFunctor:
    """K with K2_{M,N}: KM *' KN -> K(M*N) and K0: R' -> KR."""

    def __init__(self, name, obj, mor, K2, K0, src, tgt):
        self.name, self.obj, self.mor = name, obj, mor
        self._K2, self.K0 = K2, K0
        self.src, self.tgt = src, tgt
        self._cache = {}

    def K2(self, M, N):
        if (M, N) not in self._cache:
            self._cache[(M, N)] = self._K2(M, N)
        return self._cache[(M, N)]


def check_skew_functor(K, u, pool=None, kind="obj", check_id=None):
    """Hexagon and the two unit tetragons for a skew monoidal functor."""
    check_id = check_id or "skew-functor:%s" % K.name
    S, T = K.src, K.tgt
    pool = u.objects if pool is None else pool
    F, Fm = K.obj, K.mor
    c = T.compose

    def hexagon(L, M, N):
        lhs = c(Fm(S.gamma(L, M, N)), K.K2(L, S.tensor(M, N)), T.tmap(T.id(F(L)), K.K2(M, N)))
        rhs = c(K.K2(S.tensor(L, M), N), T.tmap(K.K2(L, M), T.id(F(N))), T.gamma(F(L), F(M), F(N)))
        return mismatch(lhs, rhs)

    def unit_left(M):
        lhs = c(K.K2(S.unit, M), T.tmap(K.K0, T.id(F(M))), T.eta(F(M)))
        return mismatch(lhs, Fm(S.eta(M)))

    def unit_right(M):
        lhs = c(Fm(S.eps(M)), K.K2(M, S.unit), T.tmap(T.id(F(M)), K.K0))
        return mismatch(lhs, T.eps(F(M)))

    reps = [
        run_tuples(check_id + ":hexagon", u.refs(3, kind, pool), hexagon),
        run_tuples(check_id + ":eta", u.refs(1, kind, pool), unit_left),
        run_tuples(check_id + ":eps", u.refs(1, kind, pool), unit_right),
    ]
    return merge_reports(check_id, reps)


# ---------------------------------------------------------------------------
# exactness spot checks


def sample_reflexive_pairs(B, u, count=3):
    """Reflexive pairs 2.Y ==> Y built from (id, id) and (id, h) with common section in_0."""
    from .backends.finset import FINSET
    two = FINSET.explicit((0, 1))
    out = []
    for Y in sorted(u.objects, key=lambda X: -X.base.size):
        if len(out) >= count:
            break
        try:
            endos = B.hom_set(Y, Y).morphisms
        except Exception:
            continue
        for h in endos:
            if B.equal(h, B.identity(Y)):
                continue
            d0 = B.copair(two, Y, Y, lambda s: B.identity(Y))
            d1 = B.copair(two, Y, Y, lambda s, h=h: B.identity(Y) if s == 0 else h)
            out.append((Y, d0, d1, B.inj(two, Y, 0)))
            if len(out) >= count:
                break
    return out


def exactness_report(S, u, count=3):
    """Spot-check the declared r1/r2 flags.

    r2: Gamma' iso on samples and M*- sends sampled reflexive coequalizers to coequalizers.
    r1: Gamma iso on samples and -*M does so.  A declared flag that is contradicted fails.
    """
    B = S.cat
    pairs = sample_reflexive_pairs(B, u, count)
    vs = _vsets(u)
    observed = {}

    def gamma_iso(which):
        fam = S.Gamma_p if which == "r2" else S.Gamma
        for i, W in enumerate(vs):
            for j, M in enumerate(u.objects):
                for k, N in enumerate(u.objects):
                    cl = B.classify(fam(W, M, N))
                    if cl.label != "iso":
                        return {"tuple": [["vset", i], ["obj", j], ["obj", k]], "label": cl.label,
                                "detail": to_json(cl.witness)}
        return None

    def preserves(which):
        for n, (Y, d0, d1, s) in enumerate(pairs):
            e = B.coequalizer(d0, d1, section=s).q
            for j, M in enumerate(u.objects):
                if which == "r2":
                    f = lambda m: S.tmap(S.id(M), m)
                else:
                    f = lambda m: S.tmap(m, S.id(M))
                ok, w = is_coequalizer(B, f(e), f(d0), f(d1))
                if not ok:
                    return {"sample": n, "tuple": [["obj", j]], "detail": w}
        return None

    reps = []
    for flag in ("r1", "r2"):
        declared = getattr(S, flag)
        w = gamma_iso(flag) or preserves(flag)
        observed[flag] = w is None
        if declared and w is not None:
            reps.append(CheckReport("exactness:" + flag, "fail", dict(w, declared=True), checked=1))
        else:
            r = CheckReport("exactness:" + flag, checked=1)
            r.info = {"declared": declared, "observed": w is None, "witness": w}
            reps.append(r)
    out = merge_reports("exactness", reps)
    out.info["observed"] = observed
    out.info["samples"] = len(pairs)
    return out
