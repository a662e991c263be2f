from oracles import dense, endo_monoid, hom_tensor_size

from skewcat.backends import FINSET, fs
from skewcat.core import TestUniverse
from skewcat.underlying import EMonoid, build_underlying, density_check

R2 = fs("r", "s")
OBJS = [fs(), fs("a"), fs("a", "b")]


def test_endomorphism_monoid():
    E = EMonoid(FINSET, R2)
    elems, mult, ident = endo_monoid(R2.points)
    assert sorted(E.elements) == sorted(elems)
    assert all(E.mult(g, f) == mult(g, f) for g in elems for f in elems)
    assert E.check_laws().status == "pass"


def test_density_matches_oracle():
    for R in (R2, fs("*"), fs()):
        rep = density_check(FINSET, R, TestUniverse(OBJS))
        expected = all(dense(R.points, M.points, N.points) for M in OBJS for N in OBJS)
        assert (rep.status == "pass") == expected
        assert rep.info["dense_on_u"] == expected


def test_empty_unit_is_not_dense():
    rep = density_check(FINSET, fs(), TestUniverse(OBJS))
    assert rep.status == "fail"
    # Hom(empty, -) is constant: no map {a} -> empty, yet one equivariant map between the Homs
    assert rep.witness["tuple"] == [["obj", 1], ["obj", 0]]
    assert rep.witness["full"] is False


def test_tensor_over_e_matches_oracle():
    us = build_underlying(FINSET, R2, OBJS)
    assert len(us.eobjects) == 7
    E = endo_monoid(R2.points)[0]
    for X in OBJS:
        for A in us.eobjects:
            M = A.carrier
            act = {(e, m): A.action((e, m)) for e in E for m in M.points}
            size = hom_tensor_size(R2.points, X.points, M.points, act)
            assert us.tau(X, A).Q.size == size
            assert us.tensor(X, A).carrier.size == size


def test_tensor_over_e_carries_an_action():
    us = build_underlying(FINSET, R2, OBJS)
    for A in us.eobjects:
        for C in us.eobjects:
            T = us.tau_eobject(A, C)
            assert T.carrier.size == us.tau(A, C).Q.size


def test_free_eobject_is_unit_tensor():
    us = build_underlying(FINSET, R2, OBJS)
    F = us.free(fs("x"))
    assert F.carrier.size == 4
    assert us.tensor(us.unit, F).carrier.size == 4
