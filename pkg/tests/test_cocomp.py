from itertools import product

from oracles import all_maps, coend_size_walking_arrow

from skewcat.backends import FINSET, fs
from skewcat.backends.base import Mor
from skewcat.core import FiniteCategory
from skewcat.cocomp import (CoendTensor, ColimitPresheaf, Diagram, category_report, co_yoneda_check,
                            constant_diagram, constant_presheaf, dim_bound_fixture, enumerate_diagrams,
                            enumerate_presheaves, identity_nat, rank1_fixture, representable,
                            weighted_colimit, well_behaved_check, yoneda_diagram)
from skewcat.skewmon import invertibility_scan

ARROW = FiniteCategory.walking_arrow()


def sizes(G):
    return {c: tuple(G.val[c].obj[d].size for d in ARROW.objects) for c in ARROW.objects}


def test_category_report():
    assert category_report(ARROW).status == "pass"


def test_presheaf_count_on_walking_arrow():
    # P(1) -> P(0) for |P(0)|, |P(1)| <= 2: sum of a ** b
    expected = sum(len(all_maps(range(b), range(a))) for a in range(3) for b in range(3))
    Ps = enumerate_presheaves(ARROW, 2)
    assert len(Ps) == expected == 11
    assert all(P.witness() is None for P in Ps)


def test_representables():
    assert representable(ARROW, "0").sizes() == (1, 0)
    assert representable(ARROW, "1").sizes() == (1, 1)


def test_co_yoneda():
    Ps = enumerate_presheaves(ARROW, 1)
    diagrams = [yoneda_diagram(ARROW)] + [constant_diagram(ARROW, P) for P in Ps]
    assert co_yoneda_check(ARROW, diagrams).status == "pass"


def covariant_functors(max_size=2):
    for a, b in product(range(max_size + 1), repeat=2):
        F0, F1 = tuple(range(a)), tuple(range(b))
        for img in all_maps(F0, F1):
            yield F0, F1, dict(zip(F0, img))


def test_weighted_colimit_matches_oracle():
    for P in enumerate_presheaves(ARROW, 2):
        P_vals = {0: P.obj["0"].points, 1: P.obj["1"].points}
        P_act = {x: P.act["f"](x) for x in P_vals[1]}
        for F0, F1, Fm in covariant_functors():
            objs = {"0": FINSET.explicit(F0), "1": FINSET.explicit(F1)}
            mors = {"id0": FINSET.identity(objs["0"]), "id1": FINSET.identity(objs["1"]),
                    "f": Mor(objs["0"], objs["1"], Fm.__getitem__)}
            col = weighted_colimit(P, objs.__getitem__, mors.__getitem__)
            assert col.Q.size == coend_size_walking_arrow(P_vals, P_act, F0, F1, Fm)


def test_yoneda_is_a_unit_for_the_bimodule_tensor():
    S = CoendTensor(ARROW)
    Y = yoneda_diagram(ARROW)
    assert sizes(S.tensor(Y, Y)) == sizes(Y)
    for G in enumerate_diagrams(ARROW, enumerate_presheaves(ARROW, 1)):
        assert sizes(S.tensor(Y, G)) == sizes(G)


def test_tensor_with_constant_empty_is_empty():
    S = CoendTensor(ARROW)
    empty = constant_diagram(ARROW, constant_presheaf(ARROW, fs()))
    for G in (yoneda_diagram(ARROW), empty):
        assert set(sizes(S.tensor(empty, G)).values()) == {(0, 0)}


def test_acu_with_yoneda_is_monoidal():
    Ps = enumerate_presheaves(ARROW, 1)
    Y = yoneda_diagram(ARROW)
    S = CoendTensor(ARROW, J=Y)
    fun = [Y] + [constant_diagram(ARROW, P) for P in Ps]
    rep = well_behaved_check(S, Ps, fun)
    assert rep.info["verdicts"] == {"wb-0": True, "wb-1": True, "wb-2": True, "wb-3": True}

    class U:
        objects = fun

        def refs(self, n, kind="fun", pool=None):
            for idx in product(range(len(fun)), repeat=n):
                yield [[kind, i] for i in idx], tuple(fun[i] for i in idx)

    assert invertibility_scan(S, U(), kind="fun").monoidal


def test_collapsed_J_is_not_fully_faithful():
    Ps = enumerate_presheaves(ARROW, 1)
    point = constant_presheaf(ARROW, fs("*"))
    J = Diagram(ARROW, {c: point for c in ARROW.objects}, {f: identity_nat(point) for f in ARROW.morphisms},
                name="collapsed")
    rep = well_behaved_check(CoendTensor(ARROW, J=J), Ps, [J])
    assert rep.info["verdicts"]["wb-1"] is False
    assert rep.status == "fail"


def test_colimit_presheaf_is_functorial():
    Y = yoneda_diagram(ARROW)
    for P in enumerate_presheaves(ARROW, 2):
        col = ColimitPresheaf(P, Y).presheaf
        assert col.witness() is None
        assert col.sizes() == P.sizes()


def test_self_cocompleteness_fixtures():
    rep, (C, W, diagrams) = rank1_fixture(FINSET, fs("r", "s"))
    assert rep.status == "pass"
    assert rep.info["subchecks"]["sc-rank1:UxV=E"] == "pass"
    dim, _ = dim_bound_fixture()
    assert dim.status == "fail"
    assert dim.witness["colimit"]["dims"] == [4] and dim.witness["weight"]["dims"] == [2]
