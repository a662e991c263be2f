import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import endo_monoid

from skewcat.backends import FINSET, fs
from skewcat.backends.base import Mor
from skewcat.core import (CapExceeded, FiniteCategory, FunctorData, InputError, Tamper, TestUniverse,
                          check_category_laws, check_functoriality, mismatch, run_tuples, single, to_json)


def small_universe():
    return TestUniverse([fs(), fs("a"), fs("a", "b")])


def test_finset_category_laws():
    assert check_category_laws(FINSET, small_universe()).status == "pass"


def test_mutated_composition_breaks_laws():
    class BadCompose:
        def __getattr__(self, name):
            return getattr(FINSET, name)

        def compose(self, g, *fs_):
            h = FINSET.compose(g, *fs_)
            pts = h.cod.base.points
            return Mor(h.dom, h.cod, lambda p: pts[0] if len(pts) > 1 and h(p) != pts[0] else h(p))

    rep = check_category_laws(BadCompose(), small_universe())
    assert rep.status == "fail" and rep.witness is not None


def test_walking_arrow_and_trivial_laws():
    assert FiniteCategory.trivial().check_laws() is None
    C = FiniteCategory.walking_arrow()
    assert C.check_laws() is None
    assert C.hom("0", "1") == ("f",) and C.hom("1", "0") == ()
    assert C.compose("id1", "f") == "f"
    with pytest.raises(InputError):
        C.compose("f", "f")


def test_broken_category_table_detected():
    C = FiniteCategory.walking_arrow()
    d = C.to_dict()
    d["compose"] = [[g, f, "id0" if (g, f) == ("f", "id0") else gf] for g, f, gf in d["compose"]]
    assert FiniteCategory.from_dict(d).check_laws() == {"unit": "f"}


def test_category_dict_round_trip():
    C = FiniteCategory.walking_arrow()
    C2 = FiniteCategory.from_dict(json.loads(json.dumps(C.to_dict())))
    assert C2.to_dict() == C.to_dict()


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 3))
def test_endomorphism_monoid_is_a_category(n):
    elems, mult, ident = endo_monoid(tuple(range(n)))
    C = FiniteCategory.from_monoid(elems, mult, ident)
    assert C.check_laws() is None
    assert len(C.morphisms) == n ** n


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 5), st.integers(0, 24), st.integers(1, 4))
def test_perturbed_table_verdict_matches_brute_force(n, k, bump):
    # Z/n with addition perturbed at one entry away from the unit
    a, b = 1 + k % (n - 1), 1 + (k // 5) % (n - 1)

    def mult(g, f):
        return (g + f + bump) % n if (g, f) == (a, b) else (g + f) % n

    els = range(n)
    assoc = all(mult(x, mult(y, z)) == mult(mult(x, y), z) for x in els for y in els for z in els)
    C = FiniteCategory.from_monoid(els, mult, 0)
    assert (C.check_laws() is None) == assoc


def test_functoriality():
    u = small_universe()
    ident = FunctorData(FINSET, FINSET, lambda X: X, lambda f: f, "id")
    assert check_functoriality(ident, u).status == "pass"
    one = fs("*")
    const = FunctorData(FINSET, FINSET, lambda X: X,
                        lambda f: Mor(f.dom, f.cod, lambda p, f=f: f.cod.base.points[0]), "const")
    rep = check_functoriality(const, u)
    assert rep.status == "fail"
    assert one.size == 1


def test_run_tuples_records_first_failure():
    rep = run_tuples("demo", [([["obj", i]], (i,)) for i in range(5)],
                     lambda i: {"bad": i} if i >= 3 else None)
    assert rep.status == "fail"
    assert rep.witness["tuple"] == [["obj", 3]]
    assert single("whole", lambda: None).status == "pass"


def test_tamper_shift_and_table():
    X = fs("a", "b", "c")
    f = FINSET.identity(X)
    t = Tamper().shift("eta", (X,), 0)
    g = t.apply("eta", (X,), f)
    assert g("a") == "b" and g("b") == "b"
    assert mismatch(g, f) == {"point": "a", "lhs": "b", "rhs": "a"}
    assert t.apply("eps", (X,), f) is f
    h = Tamper().table("eta", (X,), (2, 2, 2)).apply("eta", (X,), f)
    assert h.table() == ("c", "c", "c")


def test_to_json():
    assert to_json(("a", ("b", 1))) == ["a", ["b", 1]]
    assert to_json(frozenset({("x", 1), ("y", 2)})) == {"vec": [["x", 1], ["y", 2]]}
    assert to_json({1: (True,)}) == {"1": [True]}


def test_universe_caps():
    with pytest.raises(CapExceeded):
        TestUniverse([fs("a", "b", "c")], max_object_size=2)
    with pytest.raises(InputError):
        TestUniverse([fs("a")], max_hom=0)
    u = TestUniverse([fs("a", "b", "c")], max_hom=5)
    # Hom of size 27 is over the cap and silently dropped from quantification
    assert u.morphisms(type(FINSET)(max_hom=5)) == []
