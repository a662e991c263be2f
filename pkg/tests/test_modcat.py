import pytest

from oracles import endo_monoid, hom_tensor_size, left_actions

from skewcat.backends import FINSET, fs
from skewcat.core import StructuralError, TestUniverse
from skewcat.modcat import (Monad, build_em_structure, check_em_theorem, enumerate_algebras, j_iso,
                            j_iso_report, ract, smp2_check)
from skewcat.skewmon import build_cartesian, build_dot

R2 = fs("r", "s")
CARRIERS = [fs(), fs("a"), fs("a", "b")]


def test_monad_multiplication_is_composition():
    S = build_dot(FINSET, R2)
    T = Monad(S)
    elems, mult, _ = endo_monoid(R2.points)
    mu = T.mu(fs("a"))
    for g in elems:
        for f in elems:
            # T(T{a}) point (g, (f, a)) goes to (g o f, a)
            assert mu((g, (f, "a"))) == (mult(g, f), "a")
    assert T.check_laws(TestUniverse(CARRIERS)).status == "pass"


def test_algebra_counts_match_oracle():
    T = Monad(build_dot(FINSET, R2))
    counts = [len(enumerate_algebras(T, M)) for M in CARRIERS]
    assert counts == [left_actions(R2.points, M.points) for M in CARRIERS] == [1, 1, 5]


def test_one_algebra_on_each_carrier_when_monoidal():
    for S in (build_cartesian(FINSET), build_dot(FINSET, fs("*"))):
        assert [len(enumerate_algebras(Monad(S), M)) for M in CARRIERS] == [1, 1, 1]


def test_empty_unit_has_one_algebra_per_carrier():
    # End(empty) is trivial, so every set carries exactly one action
    T = Monad(build_dot(FINSET, fs()))
    assert [len(enumerate_algebras(T, M)) for M in CARRIERS] == [1, 1, 1]


def em_for_dot():
    S = build_dot(FINSET, R2)
    algs = [A for M in CARRIERS for A in enumerate_algebras(Monad(S), M)]
    return build_em_structure(S, algs), algs


def test_hot_sizes_match_orbit_oracle():
    em, algs = em_for_dot()
    for N in CARRIERS:
        for A in algs:
            M = A.carrier
            act = {(e, m): A.action((e, m)) for e in endo_monoid(R2.points)[0] for m in M.points}
            assert em.hot(N, A).Q.size == hom_tensor_size(R2.points, N.points, M.points, act)
    # E acting on {a, b} as it acts on R = {r, s}: frozen sizes 2 and 1
    ab, E = fs("a", "b"), endo_monoid(R2.points)[0]
    rename = dict(zip(R2.points, ab.points))
    natural = [A for A in algs if A.carrier is ab and all(
        A.action((e, x)) == rename[e[ab.index(x)]] for e in E for x in ab.points)]
    assert len(natural) == 1
    assert em.hot(ab, natural[0]).Q.size == 2
    assert em.hot(fs("*"), natural[0]).Q.size == 1


def test_ract_of_free_algebra():
    em, _ = em_for_dot()
    F = em.alg_cat.free(fs("a"))
    A = ract(em, F, fs("x"))
    # T{a} has 4 points and Hom(R, T{a}) has 16
    assert F.carrier.size == 4
    assert A.carrier.size == 16


def test_j_isomorphism():
    em, _ = em_for_dot()
    _, info = j_iso(em, fs("a", "b"), fs("x", "y"))
    assert info["size"] == 8
    assert j_iso_report(em, TestUniverse(CARRIERS)).status == "pass"


def test_em_theorem_passes_on_dot():
    em, algs = em_for_dot()
    # algebras on carriers of size <= 1 keep the pentagon small; the full run is an acceptance test
    small = [A for A in algs if A.carrier.size <= 1]
    rep = check_em_theorem(em, TestUniverse(CARRIERS), small)
    assert rep.status == "pass"


def test_tampered_pi_breaks_j():
    from skewcat.core import Tamper
    S = build_dot(FINSET, R2)
    N, M = fs("a", "b"), fs("x")
    assert j_iso(build_em_structure(S), N, M)[1]["size"] == 4
    tamper = Tamper()
    bad = build_em_structure(S, tamper=tamper)
    tamper.shift("em.pi", (N, bad.alg_cat.free(M)), 0)
    with pytest.raises(StructuralError):
        j_iso(bad, N, M)


def test_square_structure_smc4_matches_eta_epi():
    S = build_dot(FINSET, R2)
    reps, _ = smp2_check(S, TestUniverse(CARRIERS))
    by = {r.check: r for r in reps}
    for name in ("smp2-SMC1", "smp2-SMC2", "smp2-SMC3", "smp2-SMC5", "smp2-SMC4-when-eta-epi"):
        assert by[name].status == "pass", name
    verdicts = by["smp2-SMC4-verdicts"].info["verdicts"]
    assert {k for k, v in verdicts.items() if not v["smc4"]} == {"1,1", "1,2", "2,1", "2,2"}
