from oracles import endo_monoid, hom_tensor_size

from skewcat.backends import FINSET, fs
from skewcat.core import Tamper, TestUniverse
from skewcat.liftq import barphi_check, build_smpq, compare_lifts, lift_checks, lift_functor, smpq_checks
from skewcat.modcat import build_em_structure, enumerate_algebras, Monad
from skewcat.skewmon import build_dot
from skewcat.underlying import Forg, build_underlying, sigma_functor

R2 = fs("r", "s")
OBJS = [fs(), fs("a"), fs("a", "b")]


def setup(tamper=None, max_carrier=1):
    S = build_dot(FINSET, R2)
    us = build_underlying(FINSET, R2, OBJS, max_carrier=max_carrier)
    return S, us, build_smpq(S, us, tamper=tamper)


def test_q_tensor_matches_orbit_oracle():
    S, us, Q = setup(max_carrier=2)
    E = endo_monoid(R2.points)[0]
    for X in OBJS:
        for A in us.eobjects:
            M = A.carrier
            act = {(e, m): A.action((e, m)) for e in E for m in M.points}
            assert Q.q_entry(X, A).coeq.Q.size == hom_tensor_size(R2.points, X.points, M.points, act)


def test_q_structure_axioms():
    S, us, Q = setup()
    rep = smpq_checks(Q, TestUniverse(OBJS))
    assert rep.status == "pass"


def test_tampered_quotient_fails():
    tamper = Tamper()
    S, us, Q = setup(tamper, max_carrier=2)
    A, C = us.eobjects[2], us.eobjects[3]
    # a shift needs a quotient with at least two points
    assert build_smpq(S, us).q_entry(A, C).coeq.Q.size > 1
    tamper.shift("q.q", (A, C), 0)
    rep = smpq_checks(Q, TestUniverse(OBJS))
    assert rep.status == "fail" and rep.witness is not None


def test_barphi_equivalence():
    S, us, Q = setup()
    em = build_em_structure(S, [A for M in OBJS[:2] for A in enumerate_algebras(Monad(S), M)])
    rep, _ = barphi_check(S, us, em, TestUniverse(OBJS), Q)
    assert rep.status == "pass"


def test_lift_of_sigma_agrees_with_forg():
    S, us, _ = setup()
    em = build_em_structure(S, [A for M in OBJS[:2] for A in enumerate_algebras(Monad(S), M)])
    L = lift_functor(sigma_functor(S, us.dot), em, us.em)
    u = TestUniverse(OBJS)
    assert lift_checks(L, u, em.algebras).status == "pass"
    assert compare_lifts(L, Forg(em, us), u, em.algebras).status == "pass"
