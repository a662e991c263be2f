"""Lifting skew monoidal functors to module categories, and the structure on E-objects.

A skew monoidal functor K: M -> M' induces the monad morphism
kappa_M = K2_{R,M} o (K0 * KM): R' *' KM -> K(R * M), and with it a lift
K-bar: M^T -> M'^T' on algebras.  The same routine gives Forg (from sigma) and
phi-bar (from the forgetful functor of E-objects with the product *_q).
"""
from __future__ import annotations

from .core import (PreconditionError, StructuralError, merge_reports, mismatch, run_tuples, single, to_json)
from .backends.base import Mor
from .modcat import build_em_structure, carrier, enumerate_algebras, is_algebra
from .skewmon import SkewFunctor, SkewStructure, check_skew_functor, naturality_checks, smc_checks
from .underlying import eobject_witness, sigma_map


# ---------------------------------------------------------------------------
# the E and E^op actions of the appendix


class Actions:
    """rho, lambda_1 and lambda_2 on M*N for objects or E-objects M, N."""

    def __init__(self, S, dot):
        self.S, self.dot = S, dot
        self.B = S.cat
        self.E = dot.E
        self._memo = {}

    def _cached(self, key, build):
        m = self._memo.get(key)
        if m is None:
            m = self._memo[key] = build()
        return m

    def _lam(self, A):
        return A.action.retype(self.B.copower(self.E, A.carrier.base), A.carrier.base)

    def sigma(self, N):
        return self._cached(("sigma", N), lambda: self._sigma(N))

    def _sigma(self, N):
        return sigma_map(self.S, self.dot, self.S.unit, N).retype(self.B.copower(self.E, N), self.S.T(N))

    def rho(self, M, N):
        """mu_{M,N} o (M * sigma_N) o Gamma'_{E,M,N}."""
        S = self.S
        return self._cached(("rho", M, N), lambda: S.compose(S.mu2(M, N), S.tmap(S.id(M), self.sigma(N)),
                                                             S.Gamma_p(self.E, M, N)))

    def lambda1(self, A, N):
        S = self.S
        return self._cached(("lambda1", A, N), lambda: S.compose(S.tmap(self._lam(A), S.id(N)),
                                                                 S.Gamma(self.E, A.carrier.base, N)))

    def lambda2(self, M, A):
        S = self.S
        return self._cached(("lambda2", M, A), lambda: S.compose(S.tmap(S.id(M), self._lam(A)),
                                                                 S.Gamma_p(self.E, M, A.carrier.base)))

    # three objects: actions on L*(M*N) and on (L*M)*N
    def three(self, A, C, D):
        S, E = self.S, self.E
        L, M, N = A.carrier.base, C.carrier.base, D.carrier.base
        MN, LM = S.tensor(M, N), S.tensor(L, M)
        idL, idN = S.id(L), S.id(N)
        c = S.compose
        acts = {
            "rho1": self.rho(L, MN),
            "rho2": c(S.tmap(idL, self.rho(M, N)), S.Gamma_p(E, L, MN)),
            "rho'1": c(S.tmap(self.rho(L, M), idN), S.Gamma(E, LM, N)),
            "rho'2": self.rho(LM, N),
            "lambda1": c(S.tmap(self._lam(A), S.id(MN)), S.Gamma(E, L, MN)),
            "lambda2": c(S.tmap(idL, S.tmap(self._lam(C), idN)), S.tmap(idL, S.Gamma(E, M, N)), S.Gamma_p(E, L, MN)),
            "lambda3": c(S.tmap(idL, S.tmap(S.id(M), self._lam(D))), S.tmap(idL, S.Gamma_p(E, M, N)),
                         S.Gamma_p(E, L, MN)),
            "lambda'1": c(S.tmap(S.tmap(self._lam(A), S.id(M)), idN), S.tmap(S.Gamma(E, L, M), idN), S.Gamma(E, LM, N)),
            "lambda'2": c(S.tmap(S.tmap(idL, self._lam(C)), idN), S.tmap(S.Gamma_p(E, L, M), idN), S.Gamma(E, LM, N)),
            "lambda'3": c(S.tmap(S.id(LM), self._lam(D)), S.Gamma_p(E, LM, N)),
        }
        return acts


def commute_witness(B, E, X, kappa, lam):
    """kappa o (E.lam) = lam o (E.kappa) o a^-1 o (s.X) o a, pointwise kappa(e, lam(e', x)) = lam(e', kappa(e, x))."""
    V = B.V
    lhs = B.compose(kappa, B.copower_map(V.identity(E), lam))
    rhs = B.compose(lam, B.copower_map(V.identity(E), kappa), B.assoc_inv(E, E, X),
                    B.copower_map(V.swap(E, E), B.identity(X)), B.assoc(E, E, X))
    return mismatch(lhs, rhs)


def rho_lambda_actions(S, us, u, eobjs=None, check_id="rho-lambda"):
    """Validity and commutation of the actions, and the intertwining identities of gamma, eta, eps."""
    eobjs = us.eobjects if eobjs is None else eobjs
    dot = us.dot
    B, E = S.cat, dot.E
    ac = Actions(S, dot)
    Rb = us.unit

    seen = {}

    def valid(name, X, act, op):
        key = (X, op, act.table())
        if key not in seen:
            frozen = Mor(act.dom, act.cod, dict(zip(act.dom.base.points, key[2])).__getitem__)
            seen[key] = eobject_witness(dot, X, frozen, op=op)
        w = seen[key]
        return dict(w, action=name) if w else None

    def two(A, C):
        M, N = A.carrier.base, C.carrier.base
        X = S.tensor(M, N)
        rho, l1, l2 = ac.rho(M, N), ac.lambda1(A, N), ac.lambda2(M, C)
        for name, act, op in (("rho", rho, True), ("lambda1", l1, False), ("lambda2", l2, False)):
            w = valid(name, X, act, op)
            if w:
                return w
        for pair, (k, l) in (("lambda1|rho", (l1, rho)), ("lambda2|rho", (l2, rho)), ("lambda1|lambda2", (l1, l2))):
            w = commute_witness(B, E, X, k, l)
            if w:
                return dict(w, relation=pair)
        return None

    def three(A, C, D):
        acts = ac.three(A, C, D)
        L, M, N = A.carrier.base, C.carrier.base, D.carrier.base
        g = S.gamma(L, M, N)
        Eg = B.copower_map(B.V.identity(E), g)
        for i in ("rho1", "rho2", "lambda1", "lambda2", "lambda3"):
            j = i[:-1] + "'" + i[-1]
            for name in (i, j):
                X = S.tensor(L, S.tensor(M, N)) if name == i else S.tensor(S.tensor(L, M), N)
                w = valid(name, X, acts[name], name.startswith("rho"))
                if w:
                    return w
            w = mismatch(B.compose(g, acts[i]), B.compose(acts[j], Eg))
            if w:
                return dict(w, relation="gamma o %s = %s o E.gamma" % (i, j))
        return None

    def unit_relations(A):
        M = A.carrier.base
        lamM = ac._lam(A)
        Eeta = B.copower_map(B.V.identity(E), S.eta(M))
        w = mismatch(B.compose(ac.rho(S.unit, M), Eeta), B.compose(ac.lambda1(Rb, M), Eeta))
        if w:
            return dict(w, relation="eta-lambda1-rho")
        w = mismatch(B.compose(ac.lambda2(S.unit, A), Eeta), B.compose(S.eta(M), lamM))
        if w:
            return dict(w, relation="lambda2-eta")
        w = mismatch(B.compose(S.eps(M), ac.rho(M, S.unit)), B.compose(S.eps(M), ac.lambda2(M, Rb)))
        if w:
            return dict(w, relation="eps-rho")
        w = mismatch(B.compose(S.eps(M), ac.lambda1(A, S.unit)),
                     B.compose(lamM, B.copower_map(B.V.identity(E), S.eps(M))))
        return dict(w, relation="eps-lambda1") if w else None

    reps = [
        run_tuples(check_id + ":pairs", u.refs(2, "eob", eobjs), two),
        run_tuples(check_id + ":triples", u.refs(3, "eob", eobjs), three),
        run_tuples(check_id + ":units", u.refs(1, "eob", eobjs), unit_relations),
    ]
    return merge_reports(check_id, reps)


# ---------------------------------------------------------------------------
# the product *_q on E-objects


def _eob(X):
    """The E-object under a T_q-algebra (T_q-algebras are algebras over E-objects)."""
    return X.carrier if is_algebra(X) and is_algebra(X.carrier) else X


class QEntry:
    def __init__(self, coeq, obj):
        self.coeq, self.obj = coeq, obj


class QStructure(SkewStructure):
    """(E-objects, *_q, R-bar) with phi_2 = q the defining property of the coherences."""

    kind = "smpq"
    prefix = "q."

    def __init__(self, S, us, eobjects=None, tamper=None):
        self.S, self.us = S, us
        self.actions = Actions(S, us.dot)
        self.B = S.cat
        super().__init__(us.cat, us.unit, "q(%s)" % S.name, r1=None, r2=S.r2, tamper=tamper)
        self.eobjects = list(us.eobjects if eobjects is None else eobjects)
        self._q = {}

    def q_entry(self, X, A):
        """q_{M,N}: M*N -> M *_q N coequalizing rho and lambda_2; X may be a plain object."""
        key = (X, A)
        e = self._q.get(key)
        if e is None:
            e = self._q[key] = self._build_q(X, A)
        return e

    def _build_q(self, X, A):
        S, B, E = self.S, self.B, self.us.E
        M, N = carrier(X).base if is_algebra(X) else X, A.carrier.base
        MN = S.tensor(M, N)
        f, g = self.actions.rho(M, N), self.actions.lambda2(M, A)
        section = B.compose(B.copower_map(self.us.dot.i_R(), B.identity(MN)), B.lunit(MN))
        c = B.coequalizer(f, g, section=section)
        q = self.tamper.apply("q.q", (X, A), c.q)
        if q is not c.q:
            c = type(c)(c.f, c.g, c.Q, q, c.section, c.reflexive, c._factor)
        if not is_algebra(X):
            return QEntry(c, c.Q)
        l1 = self.actions.lambda1(X, N)
        try:
            lam = B.factor_through_epi(B.copower_map(B.V.identity(E), q), B.compose(q, l1))
        except PreconditionError as exc:
            raise StructuralError("lambda_1 does not descend to the quotient", exc.witness)
        obj = self.us.eobject(c.Q.base, lam.retype(B.copower(E, c.Q.base), c.Q.base), name="(%r*q%r)" % (X, A))
        return QEntry(c, obj)

    def q(self, X, A):
        e = self.q_entry(X, A)
        return e.coeq.q.retype(self.S.tensor(carrier(X), A.carrier), e.obj.carrier if is_algebra(e.obj) else e.obj)

    def _lift(self, m, src, tgt, what):
        if is_algebra(src):
            return self.us.cat.lift(m.retype(src.carrier, tgt.carrier), src, tgt, what)
        return m.retype(src, tgt)

    def _tensor(self, X, A):
        return self.q_entry(X, A).obj

    def _tmap(self, f, g):
        e, e2 = self.q_entry(_eob(f.dom), _eob(g.dom)), self.q_entry(_eob(f.cod), _eob(g.cod))
        fb, gb = f.retype(f.dom.base, f.cod.base), g.retype(g.dom.base, g.cod.base)
        h = self.B.compose(e2.coeq.q, self.S.tmap(fb, gb))
        try:
            m = e.coeq.factor(h)
        except PreconditionError as exc:
            raise StructuralError("f *q g does not factor", exc.witness)
        return self._lift(m, e.obj, e2.obj, "f *q g")

    def _gamma(self, A, C, D):
        S, B = self.S, self.B
        L, M, N = A.carrier.base, C.carrier.base, D.carrier.base
        inner = self.q_entry(C, D)
        outer = self.q_entry(A, inner.obj)
        e = B.compose(outer.coeq.q, S.tmap(S.id(L), inner.coeq.q))
        lm = self.q_entry(A, C)
        low = self.q_entry(lm.obj, D)
        h = B.compose(low.coeq.q, S.tmap(lm.coeq.q, S.id(N)), S.gamma(L, M, N))
        try:
            m = B.factor_through_epi(e, h)
        except PreconditionError as exc:
            raise StructuralError("gamma^q does not factor", exc.witness)
        return self._lift(m, outer.obj, low.obj, "gamma^q")

    def _eta(self, A):
        e = self.q_entry(self.unit, A)
        m = self.B.compose(e.coeq.q, self.S.eta(A.carrier.base))
        return self._lift(m, A, e.obj, "eta^q")

    def _eps(self, A):
        e = self.q_entry(A, self.unit)
        try:
            m = e.coeq.factor(self.S.eps(A.carrier.base))
        except PreconditionError as exc:
            raise StructuralError("eps^q does not factor", exc.witness)
        return self._lift(m, e.obj, A, "eps^q")

    # -- the second strength ---------------------------------------------
    def copower_eobject(self, W, A):
        """W.N with e.(w, n) = (w, lambda(e, n))."""
        B = self.B
        V = B.V
        E = self.us.E
        N = A.carrier.base
        act = B.compose(B.copower_map(V.identity(W), self.actions._lam(A)), B.assoc_inv(W, E, N),
                        B.copower_map(V.swap(E, W), B.identity(N)), B.assoc(E, W, N))
        return self.us.eobject(B.copower(W, N), act.retype(B.copower(E, B.copower(W, N)), B.copower(W, N)))

    def Gamma_q_p(self, W, A, C):
        """Gamma'^q_{W,M,N}: W.(M *q N) -> M *q (W.N), from q o Gamma' = Gamma'^q o (W.q)."""
        S, B = self.S, self.B
        M, N = A.carrier.base, C.carrier.base
        e = self.q_entry(A, C)
        WC = self.copower_eobject(W, C)
        e2 = self.q_entry(A, WC)
        h = B.compose(e2.coeq.q, S.Gamma_p(W, M, N))
        try:
            return B.factor_through_epi(B.copower_map(B.V.identity(W), e.coeq.q), h)
        except PreconditionError as exc:
            raise StructuralError("Gamma'^q does not factor", exc.witness)


def build_smpq(S, us, eobjects=None, tamper=None):
    return QStructure(S, us, eobjects, tamper)


def phi_functor(Q):
    """The forgetful phi: E-objects -> M with phi_2 = q and phi_0 = id_R."""
    S = Q.S

    def mor(f):
        return f.retype(carrier(f.dom).base if is_algebra(f.dom) else f.dom,
                        carrier(f.cod).base if is_algebra(f.cod) else f.cod)

    return SkewFunctor(name="phi", obj=lambda X: X.carrier.base, mor=mor,
                       K2=lambda A, C: Q.q_entry(A, C).coeq.q.retype(S.tensor(A.carrier.base, C.carrier.base),
                                                                  Q.q_entry(A, C).obj.carrier.base),
                       K0=S.cat.identity(S.unit), src=Q, tgt=S)


def smpq_checks(Q, u, eobjs=None, vsets=None, check_id="smpq"):
    eobjs = Q.eobjects if eobjs is None else eobjs
    vsets = u.vsets if vsets is None else vsets
    B = Q.B
    reps = smc_checks(Q, u, pool=eobjs, kind="eob", names=tuple("%s:SMC%d" % (check_id, i) for i in range(1, 6)))
    mors = []
    for i, A in enumerate(eobjs):
        for j, C in enumerate(eobjs):
            for k, f in enumerate(Q.cat.hom_set(A, C).morphisms):
                mors.append((["emor", i, j, k], f))
    for r in naturality_checks(Q, u, pool=eobjs, mors=mors):
        r.check = check_id + ":" + r.check
        reps.append(r)

    def unit_shared():
        if Q.unit is not Q.us.em.unit:
            return {"unit": repr(Q.unit), "dot-unit": repr(Q.us.em.unit)}
        return None

    def gamma_p_iso(W, A, C):
        m = Q.Gamma_q_p(W, A, C)
        cl = B.classify(m)
        return None if cl.mono and cl.epi else {"classification": cl.label, "detail": to_json(cl.witness)}

    def vtuples():
        for iw, W in enumerate(vsets):
            for ia, A in enumerate(eobjs):
                for ic, C in enumerate(eobjs):
                    yield [["vset", iw], ["eob", ia], ["eob", ic]], (W, A, C)

    reps += [
        single(check_id + ":unit-is-Rbar", unit_shared, ref=[["unit"]]),
        run_tuples(check_id + ":Gamma'q-iso", vtuples(), gamma_p_iso),
        check_skew_functor(phi_functor(Q), u, pool=eobjs, kind="eob", check_id=check_id + ":phi-skew-functor"),
    ]
    out = merge_reports(check_id, reps)
    out.info["axioms"] = {r.check: r.status for r in reps}
    return out


# ---------------------------------------------------------------------------
# the generic lift


class LiftedFunctor:
    """K-bar(M, alpha) = (KM, K(alpha) o kappa_M) with K-bar_2 by factorization through pi'."""

    def __init__(self, K, em, em2):
        self.K, self.em, self.em2 = K, em, em2
        self.S, self.S2 = em.S, em2.S
        self._K2 = {}
        self._kappa = {}

    def kappa(self, M):
        """kappa_M = K2_{R,M} o (K0 *' KM): R' *' KM -> K(R * M)."""
        k = self._kappa.get(M)
        if k is None:
            K, S2 = self.K, self.S2
            k = self._kappa[M] = S2.compose(K.K2(self.S.unit, M), S2.tmap(K.K0, S2.id(K.obj(M))))
        return k

    def obj(self, A):
        K, M = self.K, A.carrier
        act = self.S2.compose(K.mor(A.action), self.kappa(M))
        KM = K.obj(M)
        return self.em2.alg_cat.algebra(KM, act.retype(self.S2.T(KM), KM), name="%s(%r)" % (K.name, A))

    def mor(self, f):
        return self.em2.alg_cat.lift(self.K.mor(f.retype(f.dom.carrier, f.cod.carrier)), self.obj(f.dom),
                                     self.obj(f.cod), "lifted morphism")

    def K2(self, X, A):
        key = (X, A)
        if key in self._K2:
            return self._K2[key]
        K, S, S2 = self.K, self.S, self.S2
        entry = self.em.hot(X, A)
        M, N = X.carrier, A.carrier
        pi = entry.coeq.q.retype(S.tensor(M, N), entry.obj.carrier)
        h = S2.compose(K.mor(pi), K.K2(M, N))
        src_entry = self.em2.hot(self.obj(X), self.obj(A))
        try:
            m = src_entry.coeq.factor(h)
        except PreconditionError as exc:
            raise StructuralError("K(pi) o K2 does not factor through pi'", exc.witness)
        src, tgt = src_entry.obj, self.obj(entry.obj)
        m = self.em2.alg_cat.lift(m.retype(src.carrier, tgt.carrier), src, tgt, "%s-bar_2" % K.name)
        self._K2[key] = m
        return m

    @property
    def K0(self):
        src, tgt = self.em2.unit, self.obj(self.em.unit)
        return self.em2.alg_cat.lift(self.K.K0.retype(src.carrier, tgt.carrier), src, tgt, "%s-bar_0" % self.K.name)

    def functor(self):
        return SkewFunctor(name=self.K.name + "-bar", obj=self.obj, mor=self.mor, K2=self.K2, K0=self.K0,
                           src=self.em, tgt=self.em2)


def lift_functor(K, em, em2):
    return LiftedFunctor(K, em, em2)


def lift_checks(L, u, algs=None, base_pool=None, base_kind="obj", check_id=None):
    """The base functor equations, kappa as a monad morphism, strictness over the base and the lifted equations."""
    check_id = check_id or "lift:%s" % L.K.name
    algs = L.em.algebras if algs is None else algs
    base_pool = u.objects if base_pool is None else base_pool
    K, S, S2 = L.K, L.S, L.S2

    def kappa_unit(M):
        return mismatch(S2.compose(L.kappa(M), S2.eta(K.obj(M))), K.mor(S.eta(M)))

    def kappa_mult(M):
        lhs = S2.compose(L.kappa(M), S2.mu(K.obj(M)))
        rhs = S2.compose(K.mor(S.mu(M)), L.kappa(S.T(M)), S2.tmap(S2.id(S2.unit), L.kappa(M)))
        return mismatch(lhs, rhs)

    def strict(A):
        KA = L.obj(A)
        if KA.carrier is not K.obj(A.carrier):
            return {"carrier": repr(KA.carrier), "expected": repr(K.obj(A.carrier))}
        return None

    def defining(X, A):
        entry = L.em.hot(X, A)
        pi = entry.coeq.q.retype(S.tensor(X.carrier, A.carrier), entry.obj.carrier)
        lhs = S2.compose(L.K2(X, A), L.em2.hot(L.obj(X), L.obj(A)).coeq.q)
        return mismatch(lhs, S2.compose(K.mor(pi), K.K2(X.carrier, A.carrier)))

    reps = [
        check_skew_functor(K, u, pool=base_pool, kind=base_kind, check_id=check_id + ":base"),
        run_tuples(check_id + ":kappa-unit", u.refs(1, base_kind, base_pool), kappa_unit),
        run_tuples(check_id + ":kappa-mult", u.refs(1, base_kind, base_pool), kappa_mult),
        run_tuples(check_id + ":strict-square", u.refs(1, "alg", algs), strict),
        run_tuples(check_id + ":defining-square", u.refs(2, "alg", algs), defining),
        check_skew_functor(L.functor(), u, pool=algs, kind="alg", check_id=check_id + ":lifted"),
    ]
    return merge_reports(check_id, reps)


def compare_lifts(L, F, u, algs, check_id="lift:Sigma=Forg"):
    """The lift of Sigma agrees with Forg on objects and strength components exactly."""
    B = L.S2.cat

    def objects(A):
        if L.obj(A) is not F.obj(A):
            return {"lift": repr(L.obj(A)), "forg": repr(F.obj(A))}
        return None

    def strengths(X, A):
        return mismatch(L.K2(X, A), F.K2(X, A))

    reps = [run_tuples(check_id + ":objects", u.refs(1, "alg", algs), objects),
            run_tuples(check_id + ":K2", u.refs(2, "alg", algs), strengths),
            single(check_id + ":K0", lambda: mismatch(L.K0, F.K0))]
    del B
    return merge_reports(check_id, reps)


# ---------------------------------------------------------------------------
# phi-bar


def barphi_build(S, us, em, Q=None, cap=4096):
    """T_q-algebras on the E-object universe and the lift phi-bar into M^T."""
    Q = Q or build_smpq(S, us)
    emq = build_em_structure(Q)
    qalgs = []
    for A in Q.eobjects:
        qalgs += enumerate_algebras(emq.monad, A, cap=cap, category=emq.alg_cat)
    emq.algebras = qalgs
    return Q, emq, lift_functor(phi_functor(Q), emq, em)


def barphi_check(S, us, em, u, Q=None, check_id="barphi"):
    """phi-bar is fully faithful, essentially surjective on the universes, and strong."""
    Q, emq, L = barphi_build(S, us, em, Q)
    qalgs, algs = emq.algebras, em.algebras
    B = S.cat

    def full_faithful(X, Y):
        hs = emq.alg_cat.hom_set(X, Y).morphisms
        images = {L.mor(f).table() for f in hs}
        if len(images) != len(hs):
            return {"faithful": False, "homs": len(hs), "images": len(images)}
        target = em.alg_cat.hom_set(L.obj(X), L.obj(Y)).morphisms
        if len(target) != len(images):
            return {"full": False, "homs": len(hs), "target": len(target)}
        return None

    images = {}
    for X in qalgs:
        images.setdefault(L.obj(X).carrier, []).append(L.obj(X))

    def ess_surj(A):
        for C in images.get(A.carrier, ()) + [c for k, v in images.items() if k is not A.carrier for c in v]:
            if C.carrier.size != A.carrier.size:
                continue
            for f in em.alg_cat.hom_set(C, A).morphisms:
                if B.is_iso(f):
                    return None
        return {"algebra": repr(A), "hit": False}

    def strong(X, A):
        cl = B.classify(L.K2(X, A))
        return None if cl.mono and cl.epi else {"classification": cl.label, "detail": to_json(cl.witness)}

    def unit_identity():
        return mismatch(L.K0, B.identity(S.unit))

    universe_algs = [A for A in algs if A.carrier.size <= max((X.carrier.carrier.size for X in qalgs), default=0)]
    reps = [
        lift_checks(L, u, algs=qalgs, base_pool=Q.eobjects, base_kind="eob", check_id=check_id + ":lift"),
        run_tuples(check_id + ":fully-faithful", u.refs(2, "qalg", qalgs), full_faithful),
        run_tuples(check_id + ":essentially-surjective", u.refs(1, "alg", universe_algs), ess_surj),
        run_tuples(check_id + ":phibar2-invertible", u.refs(2, "qalg", qalgs), strong),
        single(check_id + ":phibar0-identity", unit_identity),
    ]
    out = merge_reports(check_id, reps)
    out.info["qalgebras"] = len(qalgs)
    out.info["subchecks"] = {r.check: r.status for r in reps}
    return out, (Q, emq, L)
