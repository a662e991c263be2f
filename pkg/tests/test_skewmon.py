from oracles import DotOracle, classify, dot_labels

from skewcat.backends import FINSET, finvec, fs
from skewcat.core import Tamper, TestUniverse
from skewcat.skewmon import (build_cartesian, build_dot, check_smc_axioms, check_strength_axioms,
                             invertibility_scan, naturality_checks, smc3, smc_checks)

R2 = fs("r", "s")


def universe(*objs):
    return TestUniverse(list(objs), vsets=[fs(), fs("v"), fs("v", "w")])


def test_dot_tensor_size():
    S = build_dot(FINSET, R2)
    M, N = fs("a", "b"), fs("x")
    assert S.tensor(M, N).size == len(DotOracle(R2.points).tensor(M.points, N.points)) == 4
    assert S.tensor(fs(), N).size == 0
    assert S.tensor(M, fs()).size == 0


def test_dot_eta_and_eps_match_oracle():
    S = build_dot(FINSET, R2)
    D = DotOracle(R2.points)
    for M in (fs(), fs("a"), fs("a", "b")):
        assert S.eps(M).table() == tuple(D.eps(M.points)[p] for p in S.eps(M).dom.points)
        assert [S.eta(M)(m) for m in M.points] == [D.eta(M.points)[m] for m in M.points]


def test_dot_scan_matches_oracle_labels():
    objs = [fs(), fs("a"), fs("a", "b")]
    S = build_dot(FINSET, R2)
    scan = invertibility_scan(S, universe(*objs))
    eta, eps, gamma = dot_labels(R2.points, [o.points for o in objs])
    assert [scan.families["eta"]["o%d" % i] for i in range(3)] == eta
    assert [scan.families["eps"]["o%d" % i] for i in range(3)] == eps
    assert {k: scan.families["gamma"]["o%d,o%d,o%d" % k] for k in gamma} == gamma
    # eps at the empty set is a bijection between empty sets
    assert eps[0] == "iso"


def test_singleton_unit_is_cartesian():
    objs = [fs(), fs("a"), fs("a", "b")]
    S = build_dot(FINSET, fs("*"))
    assert invertibility_scan(S, universe(*objs)).monoidal
    for M in objs:
        for N in objs:
            assert S.tensor(M, N).size == build_cartesian(FINSET).tensor(M, N).size


def test_cartesian_axioms_and_strengths():
    u = universe(fs(), fs("a"), fs("a", "b"))
    S = build_cartesian(FINSET)
    assert check_smc_axioms(S, u).status == "pass"
    assert check_strength_axioms(S, u).status == "pass"
    assert invertibility_scan(S, u).monoidal


def test_dot_axioms_and_strengths():
    u = universe(fs(), fs("a"), fs("a", "b"))
    S = build_dot(FINSET, R2)
    rep = check_smc_axioms(S, u)
    assert rep.status == "pass"
    assert [rep.info["axioms"]["SMC%d" % i]["checked"] for i in range(1, 6)] == [81, 9, 9, 9, 1]
    assert check_strength_axioms(S, u).status == "pass"


def test_dot_over_finvec():
    V = finvec(2)
    u = TestUniverse([V.space(0), V.space(1)], vsets=[fs(), fs("v")])
    S = build_dot(V, V.space(1))
    assert check_smc_axioms(S, u).status == "pass"


def test_constant_eps_fails_smc3():
    M = fs("a", "b")
    S = build_dot(FINSET, R2, tamper=Tamper().table("eps", (M,), (0,) * 8))
    assert classify({p: S.eps(M)(p) for p in S.eps(M).dom.points}, M.points) == "neither"
    assert smc3(S, fs("x"), M) is not None
    rep = [r for r in smc_checks(S, universe(fs("a"), M)) if r.check == "SMC3"][0]
    assert rep.status == "fail" and rep.witness["tuple"]


def test_shifted_gamma_prime_fails_strengths():
    W, M = fs("v", "w"), fs("a", "b")
    S = build_dot(FINSET, R2, tamper=Tamper().shift("Gamma_p", (W, M, M), 0))
    rep = check_strength_axioms(S, universe(M))
    assert rep.status == "fail"
    failing = [k for k, v in rep.info["axioms"].items() if v["status"] == "fail"]
    assert "sma-8" in failing or "sma-10" in failing


def test_non_natural_eta_fails_naturality():
    M = fs("a", "b")
    S = build_dot(FINSET, R2, tamper=Tamper().shift("eta", (M,), 0))
    reps = {r.check: r for r in naturality_checks(S, universe(fs("a"), M))}
    assert reps["nat-eta"].status == "fail"
    assert reps["nat-eps"].status == "pass"
