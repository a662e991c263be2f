"""Modules over a skew monoidal category: the monad T = R*-, its algebras and the horizontal tensor.

For a T-algebra A = (M, alpha) and an object N the horizontal tensor N#A is the
coequalizer of mu_{N,M}, N*alpha : N*TM ==> N*M (reflexive via N*eta_M).  When N
carries an algebra structure the quotient inherits an action psi, and the
coherences gamma-bar, eta-bar, eps-bar are obtained by unique factorization.
"""
from __future__ import annotations

import itertools

from .core import (CapExceeded, CheckReport, InputError, PreconditionError, Skip, StructuralError,
                   check_naturality, merge_reports, mismatch, naturality_tuples, run_tuples, single, to_json)
from .backends.base import Mor, is_coequalizer
from .skewmon import (FunctionalStructure, SkewFunctor, SkewStructure, check_skew_functor, invertibility_scan,
                      smc1, smc3, smc4, smc_checks)


class TAlgebra:
    """An object with an action TM -> M.  Interned, so identity is equality."""

    __slots__ = ("carrier", "action", "name", "key", "free_on")

    def __init__(self, carrier, action, key, name=None, free_on=None):
        self.carrier = carrier
        self.action = action
        self.key = key
        self.name = name
        self.free_on = free_on

    @property
    def base(self):
        return self.carrier.base

    @property
    def size(self):
        return self.carrier.base.size

    @property
    def points(self):
        return self.carrier.base.points

    def __repr__(self):
        return self.name or "Alg(%r)" % (self.carrier,)


def is_algebra(X):
    return isinstance(X, TAlgebra)


def carrier(X):
    return X.carrier if isinstance(X, TAlgebra) else X


class Monad:
    """T = R*-, mu_M = (eps_R * M) o gamma_{R,R,M}, unit eta."""

    def __init__(self, S):
        self.S = S
        self.R = S.unit
        self.nested = isinstance(S.cat, AlgebraCategory)

    def _obj(self, M):
        # over a category of algebras its objects are algebras too; strip only our own layer
        if self.nested:
            return M.carrier if is_algebra(M) and is_algebra(M.carrier) else M
        return carrier(M)

    def T(self, M):
        return self.S.tensor(self.R, self._obj(M))

    def Tmap(self, f):
        return self.S.tmap(self.S.id(self.R), f)

    def mu(self, M):
        return self.S.mu(self._obj(M))

    def eta(self, M):
        return self.S.eta(self._obj(M))

    def check_laws(self, u, pool=None):
        S = self.S
        pool = u.objects if pool is None else pool
        c = S.compose

        def assoc(M):
            return mismatch(c(self.mu(M), self.Tmap(self.mu(M))), c(self.mu(M), self.mu(self.T(M))))

        def units(M):
            TM = self.T(M)
            return mismatch(c(self.mu(M), self.Tmap(self.eta(M))), S.id(TM)) or \
                mismatch(c(self.mu(M), self.eta(TM)), S.id(TM))

        reps = [run_tuples("monad:assoc", u.refs(1, "obj", pool), assoc),
                run_tuples("monad:unit", u.refs(1, "obj", pool), units)]
        return merge_reports("monad", reps)


def canonical_monad(S):
    return Monad(S)


class AlgebraCategory:
    """M^T: algebras are interned by (carrier, action table); morphisms are carrier maps."""

    def __init__(self, monad):
        self.monad = monad
        self.S = monad.S
        self.B = monad.S.cat
        self.nested = isinstance(self.B, AlgebraCategory)
        self._algs = {}

    def __getattr__(self, name):
        # everything not algebra-specific is the ambient backend's
        return getattr(self.__dict__["B"], name)

    def algebra(self, M, action, name=None, validate=True, free_on=None):
        if not self.nested:
            M = carrier(M)
        key = (M, action.table())
        A = self._algs.get(key)
        if A is None:
            if validate:
                w = self.algebra_witness(M, action)
                if w is not None:
                    raise StructuralError("action is not a T-algebra", w)
            A = TAlgebra(M, action.retype(self.monad.T(M), M), key, name, free_on)
            self._algs[key] = A
        return A

    def algebra_witness(self, M, action):
        B, T = self.B, self.monad
        if is_algebra(M) and hasattr(B, "is_morphism"):
            # algebras over a category of algebras: the action must live in that category
            w = B.is_morphism(action, T.T(M), M)
            if w:
                return dict(w, law="inner-morphism")
        w = mismatch(B.compose(action, T.eta(M)), B.identity(M))
        if w:
            return dict(w, law="unit")
        w = mismatch(B.compose(action, T.mu(M)), B.compose(action, T.Tmap(action)))
        return dict(w, law="assoc") if w else None

    def free(self, M):
        T = self.monad
        return self.algebra(T.T(M), T.mu(M), name="F(%r)" % (M,), validate=False, free_on=M)

    def is_morphism(self, f, A, A2):
        """Witness that f: A -> A2 fails to be an algebra morphism, or None."""
        B, T = self.B, self.monad
        return mismatch(B.compose(f, A.action), B.compose(A2.action, T.Tmap(f)))

    def lift(self, f, A, A2, what="morphism"):
        w = self.is_morphism(f, A, A2)
        if w is not None:
            raise StructuralError("%s is not a T-algebra morphism" % what, w)
        return f.retype(A, A2)

    # category protocol
    def identity(self, X):
        return self.B.identity(X)

    def compose(self, g, *fs):
        return self.B.compose(g, *fs)

    def diff(self, f, g):
        return self.B.diff(f, g)

    def equal(self, f, g):
        return self.B.equal(f, g)

    def hom_set(self, A, A2):
        from .backends.base import HomSetData
        if not is_algebra(A):
            return self.B.hom_set(A, A2)
        ms = [f.retype(A, A2) for f in self.B.hom_set(A.carrier, A2.carrier).morphisms
              if self.is_morphism(f, A, A2) is None]
        return HomSetData(A, A2, ms)

    def classify(self, f):
        return self.B.classify(f)

    def coequalizer(self, f, g, section=None, choice="min"):
        """Coequalizer of algebra morphisms, created by the forgetful functor.

        The quotient action is the unique factorization of q o alpha through T(q);
        this needs T to preserve the epimorphism q, which holds for both backends.
        """
        c = self.B.coequalizer(f, g, section=section, choice=choice)
        X = f.cod
        if not is_algebra(X):
            return c
        T = self.monad
        try:
            act = self.B.factor_through_epi(T.Tmap(c.q), self.B.compose(c.q, X.action))
        except PreconditionError as exc:
            raise StructuralError("quotient action is not well defined", exc.witness)
        Q = self.algebra(c.Q, act.retype(T.T(c.Q), c.Q))
        inner = c._factor

        def factor(h):
            m = inner(h)
            return m.retype(Q, h.cod)

        return type(c)(c.f, c.g, Q, c.q.retype(X, Q), c.section, c.reflexive, factor)


def enumerate_algebras(monad, M, cap=4096, category=None):
    """All T-algebra structures on M, in a deterministic order.

    Candidates are restricted by the unit law alpha o eta_M = id before the cap applies.
    """
    cat = category or AlgebraCategory(monad)
    B = cat.B
    if not cat.nested:
        M = carrier(M)
    TM = monad.T(M)
    eta = monad.eta(M)
    fixed = {}
    for x in M.base.points:
        y = eta(x)
        if B.tag == "finset":
            if y in fixed and fixed[y] != x:
                return []
            fixed[y] = x
    free_pts = [p for p in TM.base.points if p not in fixed]
    if B.tag == "finset":
        n = M.base.size ** len(free_pts)
        if n > cap:
            raise CapExceeded("%d candidate actions on %r" % (n, M))
        out = []
        for choice in itertools.product(M.base.points, repeat=len(free_pts)):
            table = dict(fixed)
            table.update(zip(free_pts, choice))
            a = Mor(TM, M, table.__getitem__)
            if cat.algebra_witness(M, a) is None:
                out.append(cat.algebra(M, a, validate=False))
        return out
    n = B.hom_size(TM.base, M.base)
    if n > cap:
        raise CapExceeded("%d candidate actions on %r" % (n, M))
    return [cat.algebra(M, a, validate=False) for a in B.hom_set(TM, M).morphisms
            if cat.algebra_witness(M, a) is None]


# ---------------------------------------------------------------------------
# the horizontal tensor


class HotEntry:
    """N#A with its presenting coequalizer; ``obj`` is an algebra when N is one."""

    def __init__(self, N, A, coeq, obj, pi, psi=None):
        self.N, self.A, self.coeq, self.obj, self.pi, self.psi = N, A, coeq, obj, pi, psi

    @property
    def Q(self):
        return self.coeq.Q


class EMStructure(SkewStructure):
    """(M^T, #, R-bar, gamma-bar, eta-bar, eps-bar), also acting on M from the right.

    The first tensor argument may be a plain object (the action M x M^T -> M) or an algebra.
    """

    kind = "em"
    prefix = "em."

    def __init__(self, S, algebras=None, tamper=None, choice="min"):
        self.S = S
        self.monad = Monad(S)
        self.alg_cat = AlgebraCategory(self.monad)
        self.choice = choice
        B = S.cat
        Rbar = self.alg_cat.algebra(S.unit, S.eps(S.unit), name="Rbar")
        super().__init__(self.alg_cat, Rbar, "em(%s)" % S.name, r1=None, r2=S.r2, tamper=tamper)
        self.algebras = list(algebras or [])
        self._hot = {}
        self.B = B

    # -- the tensor -------------------------------------------------------
    def hot(self, X, A):
        key = (X, A)
        e = self._hot.get(key)
        if e is None:
            e = self._hot[key] = self._build_hot(X, A)
        return e

    def _build_hot(self, X, A):
        S, B, T = self.S, self.B, self.monad
        if not is_algebra(A):
            raise InputError("second argument of the horizontal tensor must be an algebra")
        N, M = carrier(X), A.carrier
        f = S.mu2(N, M)
        g = S.tmap(S.id(N), A.action.retype(T.T(M), M))
        section = S.tmap(S.id(N), S.eta(M))
        c = B.coequalizer(f, g, section=section, choice=self.choice)
        pi = self.tamper.apply("em.pi", (X, A), c.q)
        if not is_algebra(X):
            return HotEntry(X, A, c, c.Q, pi)
        # psi o T(pi) = pi o (beta * M) o gamma_{R,N,M}
        beta = X.action.retype(T.T(N), N)
        ract = B.compose(S.tmap(beta, S.id(M)), S.gamma(S.unit, N, M))
        Tpi = T.Tmap(c.q)
        try:
            psi = B.factor_through_epi(Tpi, B.compose(pi, ract))
        except PreconditionError as exc:
            raise StructuralError("psi is not well defined", exc.witness)
        psi = self.tamper.apply("em.psi", (X, A), psi)
        obj = self.alg_cat.algebra(c.Q, psi, name="(%r#%r)" % (X, A))
        return HotEntry(X, A, c, obj, pi, psi)

    def pi(self, X, A):
        e = self.hot(X, A)
        return e.pi.retype(self.S.tensor(carrier(X), A.carrier), e.obj)

    def _tensor(self, X, A):
        return self.hot(X, A).obj

    def _tmap(self, f, g):
        """f # g, the unique map with (f#g) o pi = pi o (f * g)."""
        X, X2, A, A2 = f.dom, f.cod, g.dom, g.cod
        e, e2 = self.hot(X, A), self.hot(X2, A2)
        h = self.B.compose(e2.pi, self.S.tmap(f, g))
        try:
            m = e.coeq.factor(h)
        except PreconditionError as exc:
            raise StructuralError("f # g does not factor", exc.witness)
        return m.retype(e.obj, e2.obj)

    # -- coherences -------------------------------------------------------
    def _gamma(self, X, A, C):
        """gamma-bar by factoring pi o (pi * L) o gamma through the diagonal coequalizer."""
        S, B, T = self.S, self.B, self.monad
        N, M, L = carrier(X), A.carrier, C.carrier
        AC = self.hot(A, C)
        outer = self.hot(X, AC.obj)
        # diagonal of the first 3x3 diagram: N*T(M*TL) ==> N*(M*L) -> N#(A#C)
        e = B.compose(outer.pi, S.tmap(S.id(N), AC.pi))
        d0 = B.compose(S.mu2(N, S.tensor(M, L)), S.tmap(S.id(N), T.Tmap(S.mu2(M, L))))
        alpha = A.action.retype(T.T(M), M)
        beta = C.action.retype(T.T(L), L)
        d1 = S.tmap(S.id(N), B.compose(S.tmap(alpha, beta), S.gamma(S.unit, M, T.T(L))))
        ok, w = is_coequalizer(B, e, d0, d1)
        if not ok:
            raise StructuralError("diagonal of the presentation is not a coequalizer", w)
        XA = self.hot(X, A)
        lower = self.hot(XA.obj, C)
        h = B.compose(lower.pi, S.tmap(XA.pi, S.id(L)), S.gamma(N, M, L))
        try:
            g = B.factor_through_epi(e, h)
        except PreconditionError as exc:
            raise StructuralError("associator does not factor", exc.witness)
        src, tgt = outer.obj, lower.obj
        if is_algebra(X):
            return self.alg_cat.lift(g.retype(src.carrier, tgt.carrier), src, tgt, "gamma-bar")
        return g.retype(src, tgt)

    def _eta(self, A):
        S, B = self.S, self.B
        entry = self.hot(self.unit, A)
        m = B.compose(entry.pi, S.eta(A.carrier))
        return self.alg_cat.lift(m.retype(A.carrier, entry.obj.carrier), A, entry.obj, "eta-bar")

    def _eps(self, X):
        S, B = self.S, self.B
        N = carrier(X)
        entry = self.hot(X, self.unit)
        try:
            m = entry.coeq.factor(S.eps(N))
        except PreconditionError as exc:
            raise StructuralError("eps does not factor through the coequalizer", exc.witness)
        if is_algebra(X):
            return self.alg_cat.lift(m.retype(entry.obj.carrier, N), entry.obj, X, "eps-bar")
        return m.retype(entry.obj, X)

    def i_map(self, A):
        """The isomorphism i: R#A -> A with i o pi = alpha."""
        entry = self.hot(self.unit, A)
        m = entry.coeq.factor(A.action.retype(self.monad.T(A.carrier), A.carrier))
        return m.retype(entry.obj, A)

    # -- j ----------------------------------------------------------------
    def j(self, N, M):
        """j_{N,M}: N # FM -> N * M with j o pi = mu_{N,M}."""
        FM = self.alg_cat.free(M)
        e = self.hot(N, FM)
        m = e.coeq.factor(self.S.mu2(carrier(N), M))
        return m.retype(e.obj, self.S.tensor(carrier(N), M))


def build_em_structure(S, algebras=None, tamper=None, choice="min"):
    return EMStructure(S, algebras, tamper, choice)


def ract(em, A, N):
    """A > N = (M*N, (alpha*N) o gamma_{R,M,N}), validated."""
    S, B, T = em.S, em.B, em.monad
    M = A.carrier
    act = B.compose(S.tmap(A.action.retype(T.T(M), M), S.id(N)), S.gamma(S.unit, M, N))
    return em.alg_cat.algebra(S.tensor(M, N), act)


def horizontal_tensor(em, X, A):
    return em.hot(X, A)


def j_iso(em, N, M):
    """j with its verification: iso, j o pi = mu, the split fork identities, and the size."""
    S, B, T = em.S, em.B, em.monad
    j = em.j(N, M)
    FM = em.alg_cat.free(M)
    e = em.hot(N, FM)
    out = {"size": e.Q.base.size}
    cl = B.classify(j)
    if cl.label != "iso":
        raise StructuralError("j is %s" % cl.label, cl.witness)
    w = mismatch(B.compose(j, e.pi), S.mu2(N, M))
    if w:
        raise StructuralError("j o pi != mu", w)
    # N*T^2M ==> N*TM -> N*M split by s = N*eta_M and t = N*T(eta_M)
    TM = T.T(M)
    d0, d1 = S.mu2(N, TM), S.tmap(S.id(N), T.mu(M))
    ee = S.mu2(N, M)
    s = S.tmap(S.id(N), T.eta(M))
    t = S.tmap(S.id(N), T.Tmap(T.eta(M)))
    for name, lhs, rhs in [
        ("fork", B.compose(ee, d0), B.compose(ee, d1)),
        ("e.s=1", B.compose(ee, s), S.id(S.tensor(N, M))),
        ("d1.t=1", B.compose(d1, t), S.id(S.tensor(N, TM))),
        ("d0.t=s.e", B.compose(d0, t), B.compose(s, ee)),
    ]:
        w = mismatch(lhs, rhs)
        if w:
            raise StructuralError("split fork identity %s fails" % name, w)
    return j, out


# ---------------------------------------------------------------------------
# the theorem suite


HOT_NAMES = ("hot-pentagon", "hot-SMC2", "hot-SMC3", "hot-SMC4", "hot-SMC5")


def _mixed(u, pattern, algs):
    pools = [u.objects if p == "o" else algs for p in pattern]
    kinds = ["obj" if p == "o" else "alg" for p in pattern]
    for idx in itertools.product(*(range(len(pl)) for pl in pools)):
        yield [[k, i] for k, i in zip(kinds, idx)], tuple(pl[i] for pl, i in zip(pools, idx))


def em_checks(em, u, algs=None):
    algs = em.algebras if algs is None else algs
    B = em.B
    reps = smc_checks(em, u, pool=algs, kind="alg", names=HOT_NAMES)
    # M as a right M^T-actegory
    reps += [
        run_tuples("ract-1", _mixed(u, "oaaa", algs), lambda *a: smc1(em, *a)),
        run_tuples("ract-2", _mixed(u, "oa", algs), lambda *a: smc4(em, *a)),
        run_tuples("ract-3", _mixed(u, "oa", algs), lambda *a: smc3(em, *a)),
    ]

    def eta_inverse(A):
        i = em.i_map(A)
        eb = em.eta(A)
        return mismatch(B.compose(i, eb), B.identity(A)) or mismatch(B.compose(eb, i), B.identity(em.tensor(em.unit, A)))

    reps.append(run_tuples("eta-bar-invertible", u.refs(1, "alg", algs), eta_inverse))
    return reps


def check_em_theorem(em, u, algs=None):
    reps = em_checks(em, u, algs)
    out = merge_reports("em", reps)
    out.info["axioms"] = {r.check: {"status": r.status, "checked": r.checked, "skipped": r.skipped} for r in reps}
    return out


def em_extra_checks(em, u, algs=None, count=3):
    """Invariants beyond the axioms: i o eta-bar = id, j naturality sample, reflexive coequalizer preservation."""
    algs = em.algebras if algs is None else algs
    B, S, T = em.B, em.S, em.monad

    def presentation_iso(A):
        # canonical presentation and R#A coequalize the same pair
        c = em.hot(em.unit, A).coeq
        k = c.factor(A.action.retype(T.T(A.carrier), A.carrier))
        cl = B.classify(k)
        return None if cl.label == "iso" else {"label": cl.label, "detail": to_json(cl.witness)}

    def preserves(X, A):
        # X # - applied to the canonical presentation F T M ==> F M -> A
        M = A.carrier
        FM, FTM = em.alg_cat.free(M), em.alg_cat.free(T.T(M))
        mu = T.mu(M).retype(FTM, FM)
        Ta = T.Tmap(A.action.retype(T.T(M), M)).retype(FTM, FM)
        alpha = A.action.retype(FM, A)
        f = lambda m: em.tmap(em.id(X), m)
        ok, w = is_coequalizer(B, f(alpha), f(mu), f(Ta))
        return None if ok else w

    reps = [run_tuples("presentation-iso", u.refs(1, "alg", algs), presentation_iso)]
    sample = list(_mixed(u, "oa", algs))[:count] + list(_mixed(u, "aa", algs))[:count]
    reps.append(run_tuples("hot-preserves-reflexive-coequalizers", sample, preserves))
    return reps


# ---------------------------------------------------------------------------
# the square structure


def smp2_structure(S):
    """M *2 N := M * TN with gamma2 = gamma_{L,TM,TN} o (L * gamma_{R,M,TN})."""
    R = S.unit
    T = lambda X: S.tensor(R, X)
    Tm = lambda f: S.tmap(S.id(R), f)
    c = S.compose
    return FunctionalStructure(
        S.cat, R,
        tensor=lambda M, N: S.tensor(M, T(N)),
        tmap=lambda f, g: S.tmap(f, Tm(g)),
        gamma=lambda L, M, N: c(S.gamma(L, T(M), T(N)), S.tmap(S.id(L), S.gamma(R, M, T(N)))),
        eta=lambda M: c(S.eta(T(M)), S.eta(M)),
        eps=lambda M: c(S.eps(M), S.tmap(S.id(M), S.eps(R))),
        name="smp2(%s)" % S.name, tamper=S.tamper, prefix="smp2.")


def smp2_check(S, u):
    """Per-axiom verdicts for the square structure plus the conditional SMC4 claim.

    For each pair (M, N) the SMC4 verdict is recorded together with whether eta is epi
    at N and TN; a pair where both are epi but SMC4 fails contradicts the claim.
    """
    S2 = smp2_structure(S)
    reps = smc_checks(S2, u, names=("smp2-SMC1", "smp2-SMC2", "smp2-SMC3", "smp2-SMC4", "smp2-SMC5"))
    B = S.cat
    epi = {}

    def eta_epi(X):
        if X not in epi:
            epi[X] = B.classify(S.eta(X)).epi
        return epi[X]

    verdicts = {}
    contradiction = None
    for refs, (M, N) in u.refs(2):
        w = smc4(S2, M, N)
        k = ",".join(str(r[1]) for r in refs)
        cond = eta_epi(N) and eta_epi(S.tensor(S.unit, N))
        verdicts[k] = {"smc4": w is None, "eta_epi": cond}
        if cond and w is not None and contradiction is None:
            contradiction = dict(w, tuple=refs)
    # SMC4 is allowed to fail; it is reported as information, not as a failure
    smc4_rep = reps[3]
    info_rep = CheckReport("smp2-SMC4-verdicts", checked=len(verdicts))
    info_rep.info = {"verdicts": verdicts, "smc4_status": smc4_rep.status, "smc4_witness": smc4_rep.witness}
    cond_rep = CheckReport("smp2-SMC4-when-eta-epi", "fail" if contradiction else "pass", contradiction,
                           checked=sum(1 for v in verdicts.values() if v["eta_epi"]))
    nat = check_naturality(
        _gamma2_nat(S2), u, "smp2-nat-gamma")
    core = [r for i, r in enumerate(reps) if i != 3]
    return core + [info_rep, cond_rep, nat], S2


def _gamma2_nat(S2):
    from .core import NatFamily
    tm = S2.tmap
    return NatFamily("gamma2", 3, S2.gamma, lambda f, g, h: tm(f, tm(g, h)), lambda f, g, h: tm(tm(f, g), h), S2.cat)


# ---------------------------------------------------------------------------
# the forgetful functor


def G_functor(em):
    S, B = em.S, em.B

    def mor(f):
        return f.retype(carrier(f.dom), carrier(f.cod))

    return SkewFunctor(
        name="G", obj=carrier, mor=mor,
        K2=lambda A, C: em.hot(A, C).pi.retype(S.tensor(A.carrier, C.carrier), em.hot(A, C).Q),
        K0=B.identity(S.unit), src=em, tgt=S)


def forgetful_G_check(em, u, algs=None):
    algs = em.algebras if algs is None else algs
    S = em.S

    def strict(X, A):
        # G(X # A) is literally the object-level X # A
        left = em.tensor(X, A).carrier.base
        right = em.tensor(carrier(X), A).base
        if left is not right:
            return {"lhs": repr(left), "rhs": repr(right)}
        return None

    reps = [run_tuples("G-strict", _mixed(u, "aa", algs), strict),
            check_skew_functor(G_functor(em), u, pool=algs, kind="alg", check_id="G")]
    out = merge_reports("forg-G", reps)
    return out


def j_iso_report(em, u, pool=None, check_id="j-iso"):
    """j is iso at every pair, with |N # FM| = |Hom(R, N)| . |M| and the split fork identities."""
    pool = u.objects if pool is None else pool
    B = em.B
    R = em.S.unit

    def check(N, M):
        j, out = j_iso(em, N, M)
        expected = B.hom_size(R.base, carrier(N).base) * M.base.size
        if out["size"] != expected:
            return {"size": out["size"], "expected": expected}
        return None

    return run_tuples(check_id, u.refs(2, "obj", pool), check)
