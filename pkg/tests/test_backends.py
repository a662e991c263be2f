import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import coequalizer_size, endo_monoid, orbit_tensor_size, rank_mod_p

from skewcat.backends import FINSET, coend, finvec, fs, tensor_over
from skewcat.backends.base import Mor, is_coequalizer
from skewcat.backends.enrichment import check_enrichment_identities
from skewcat.core import CapExceeded, FiniteCategory, InputError, PreconditionError, TestUniverse


def test_objects_are_interned():
    assert fs("a", "b") is fs("a", "b")
    assert fs("a", "b") is not fs("b", "a")


def test_duplicate_labels_rejected():
    with pytest.raises(InputError):
        fs("a", "a")


def test_coequalizer_of_equal_maps_is_identity():
    X = fs("a", "b")
    c = FINSET.coequalizer(FINSET.identity(X), FINSET.identity(X))
    assert c.Q.size == 2
    assert c.reflexive
    assert all(c.q(x) == x for x in X.points)


def test_coequalizer_two_classes():
    D, C = fs("x", "y"), fs("a", "b", "c")
    f = FINSET.table_mor(D, C, ("a", "b"))
    g = FINSET.table_mor(D, C, ("b", "b"))
    c = FINSET.coequalizer(f, g)
    assert c.Q.size == 2
    assert c.q("a") == c.q("b") != c.q("c")
    assert is_coequalizer(FINSET, c.q, f, g)


def test_coequalizer_finvec_rank():
    V = finvec(2)
    X = V.space(2)
    f = V.matrix_mor(X, X, [[1, 0], [0, 0]])
    g = V.matrix_mor(X, X, [[0, 0], [0, 0]])
    assert V.coequalizer(f, g).Q.size == 1


def test_factor_through_quotient():
    X = fs("a", "b")
    c = FINSET.coequalizer(FINSET.identity(X), FINSET.identity(X))
    hbar = c.factor(c.q)
    assert FINSET.equal(hbar, FINSET.identity(c.Q)) or all(hbar(x) == x for x in c.Q.points)


def test_factor_rejects_non_coequalizing_map():
    D, C = fs("x"), fs("a", "b")
    f = FINSET.table_mor(D, C, ("a",))
    g = FINSET.table_mor(D, C, ("b",))
    c = FINSET.coequalizer(f, g)
    with pytest.raises(PreconditionError):
        c.factor(FINSET.identity(C))


def test_copower_sizes():
    assert FINSET.copower(fs(), fs("a", "b")).size == 0
    assert FINSET.copower(fs("s", "t", "u"), fs("a", "b")).size == 6
    V = finvec(2)
    assert V.copower(fs(), V.space(2)).size == 0
    assert V.copower(fs("s", "t", "u"), V.space(2)).size == 6


def test_copower_of_singleton_is_injection_iso():
    M = fs("a", "b")
    S = fs("s")
    assert FINSET.is_iso(FINSET.inj(S, M, "s"))


def test_hom_sets():
    X = fs("a", "b")
    maps = {f.table() for f in FINSET.hom_set(X, X).morphisms}
    assert maps == {("a", "b"), ("b", "a"), ("a", "a"), ("b", "b")}
    assert len(FINSET.hom_set(fs(), X).morphisms) == 1
    V = finvec(2)
    assert len(V.hom_set(V.space(1), V.space(1)).morphisms) == 2


def test_hom_cap():
    B = type(FINSET)(max_hom=10)
    with pytest.raises(CapExceeded):
        B.hom_set(B.explicit(("a", "b", "c")), B.explicit(("a", "b", "c")))


def test_classification_labels():
    X, Y = fs("a", "b"), fs("a", "b", "c")
    assert FINSET.classify(FINSET.table_mor(X, Y, ("a", "b"))).label == "monic-not-epic"
    assert FINSET.classify(FINSET.table_mor(Y, X, ("a", "b", "b"))).label == "epic-not-monic"
    assert FINSET.classify(FINSET.table_mor(X, X, ("b", "a"))).label == "iso"
    cl = FINSET.classify(FINSET.table_mor(Y, Y, ("a", "a", "b")))
    assert cl.label == "neither" and cl.witness["image"] == "a"


def test_enrichment_identities_finset():
    u = TestUniverse([fs(), fs("a"), fs("a", "b"), fs("a", "b", "c")], vsets=[fs(), fs("v"), fs("v", "w")])
    assert check_enrichment_identities(FINSET, u).status == "pass"


def test_enrichment_identities_finvec():
    V = finvec(2)
    u = TestUniverse([V.space(0), V.space(1), V.space(2)], vsets=[fs(), fs("v"), fs("v", "w")])
    assert check_enrichment_identities(V, u).status == "pass"


def test_enrichment_catches_mutated_ev():
    u = TestUniverse([fs("a"), fs("a", "b")], vsets=[fs("v")])

    def bad_ev(M, N):
        ev = FINSET.ev(M, N)
        pts = ev.dom.points
        return Mor(ev.dom, ev.cod, lambda p: N.points[-1] if p == pts[0] and N.size > 1 and ev(p) != N.points[-1]
                   else ev(p))

    rep = check_enrichment_identities(FINSET, u, ev=bad_ev)
    assert rep.status == "fail" and rep.witness is not None


def test_coend_trivial_category():
    C = FiniteCategory.trivial()
    X = fs("a", "b", "c")
    data = coend(C, lambda c, d: X, lambda f, g: FINSET.identity(X), FINSET)
    assert data.Q.size == 3


def test_tensor_over_matches_orbit_oracle():
    R = fs("r", "s")
    E = FINSET.hom(R, R)
    elems, mult, _ = endo_monoid(("r", "s"))
    U = E
    rho = FINSET.comp_map(R, R, R)  # (u, e) -> u o e
    # V = R with e . v = e(v)
    V = R
    lam = Mor(FINSET.copower(E, V), V, lambda p: p[0][R.index(p[1])])
    c = tensor_over(U, rho, E, V, lam)
    ract = {(u, e): mult(u, e) for u in elems for e in elems}
    lact = {(e, v): e[("r", "s").index(v)] for e in elems for v in ("r", "s")}
    assert c.Q.size == orbit_tensor_size(elems, ("r", "s"), elems, ract, lact)
    # U free of rank one: U (x)_E V = V
    assert c.Q.size == V.size


# -- properties ----------------------------------------------------------------

small = st.integers(min_value=1, max_value=5)


@st.composite
def parallel_pairs(draw):
    n, m = draw(st.integers(0, 5)), draw(small)
    f = draw(st.lists(st.integers(0, m - 1), min_size=n, max_size=n))
    g = draw(st.lists(st.integers(0, m - 1), min_size=n, max_size=n))
    return n, m, f, g


@settings(max_examples=60, deadline=None)
@given(parallel_pairs())
def test_coequalizer_property(pair):
    n, m, f, g = pair
    D, C = FINSET.explicit(tuple(range(n))), FINSET.explicit(tuple(range(m)))
    fm, gm = FINSET.table_mor(D, C, f), FINSET.table_mor(D, C, g)
    c = FINSET.coequalizer(fm, gm)
    assert c.Q.size == coequalizer_size(range(n), dict(enumerate(f)), dict(enumerate(g)), range(m))
    assert FINSET.equal(FINSET.compose(c.q, fm), FINSET.compose(c.q, gm))
    assert FINSET.classify(c.q).epi
    # universality: q factors through itself as the identity
    assert all(c.factor(c.q)(x) == x for x in c.Q.points)


@st.composite
def matrix_pairs(draw):
    p = draw(st.sampled_from([2, 3]))
    n, m = draw(st.integers(0, 3)), draw(st.integers(1, 3))
    A = [draw(st.lists(st.integers(0, p - 1), min_size=n, max_size=n)) for _ in range(m)]
    Bm = [draw(st.lists(st.integers(0, p - 1), min_size=n, max_size=n)) for _ in range(m)]
    return p, n, m, A, Bm


@settings(max_examples=40, deadline=None)
@given(matrix_pairs())
def test_finvec_coequalizer_dimension(data):
    p, n, m, A, Bm = data
    V = finvec(p)
    X, Y = V.space(n), V.space(m)
    f, g = V.matrix_mor(X, Y, A), V.matrix_mor(X, Y, Bm)
    diff = [[(a - b) % p for a, b in zip(ra, rb)] for ra, rb in zip(A, Bm)]
    r = rank_mod_p(diff, p) if n else 0
    c = V.coequalizer(f, g)
    assert c.Q.size == m - r
    assert V.equal(V.compose(c.q, f), V.compose(c.q, g))
    assert V.rank(f) == (rank_mod_p(A, p) if n else 0)
