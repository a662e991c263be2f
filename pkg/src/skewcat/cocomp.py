"""Presheaves over a small category, weighted colimits and self-cocomplete subcategories.

Presheaves take values in the enriching backend (finite sets, or F_p-spaces for the
linear examples); a small category is enriched freely, so hom objects have the
morphism labels as points (or as a basis).  The tensor of functors C -> presheaves
is computed pointwise as a coend, both for the bimodule category E-bar(W) and for
the skew structure on [C, M] determined by a functor J: C -> M.
"""
from __future__ import annotations

import itertools

from .core import (CapExceeded, CheckReport, FiniteCategory, InputError, PreconditionError, StructuralError,
                   merge_reports, mismatch, run_tuples, single, to_json)
from .backends import FINSET
from .backends.base import Mor
from .backends.coend import coend
from .skewmon import SkewStructure, invertibility_scan, scan_report, smc_checks

SmallCategory = FiniteCategory


def category_report(C, check_id="category-laws"):
    return single(check_id, C.check_laws, ref=[["category", C.name]])


# ---------------------------------------------------------------------------
# presheaves and natural transformations


class Presheaf:
    """P: C^op -> V.  ``act[f]`` for f: c -> d is the map P(d) -> P(c)."""

    def __init__(self, C, obj, act, backend=FINSET, name=None):
        self.C, self.B = C, backend
        self.obj = dict(obj)
        self.act = dict(act)
        self.name = name

    def __call__(self, c):
        return self.obj[c]

    def __repr__(self):
        return self.name or "PSh(%s)" % ",".join(str(self.obj[c].size) for c in self.C.objects)

    def sizes(self):
        return tuple(self.obj[c].size for c in self.C.objects)

    def witness(self):
        C, B = self.C, self.B
        for c in C.objects:
            w = mismatch(self.act[C.ident[c]], B.identity(self.obj[c]))
            if w:
                return dict(w, law="identity", object=c)
        for f in C.morphisms:
            for g in C.homs_from(C.tgt[f]):
                w = mismatch(self.act[C.compose(g, f)], B.compose(self.act[f], self.act[g]))
                if w:
                    return dict(w, law="composition", morphisms=[f, g])
        return None

    def relabel(self, tag):
        """An isomorphic copy with every label x renamed to (tag, x)."""
        B = self.B
        obj = {c: B.explicit(tuple((tag, x) for x in X.points)) for c, X in self.obj.items()}
        act = {}
        for f, m in self.act.items():
            d, c = self.C.tgt[f], self.C.src[f]
            act[f] = Mor(obj[d], obj[c], lambda x, m=m: B.relabel(m(x[1]), lambda l: (tag, l)))
        return Presheaf(self.C, obj, act, B, name="%r'" % (self,))


class NatTrans:
    def __init__(self, dom, cod, comps):
        self.dom, self.cod = dom, cod
        self.comps = dict(comps)
        self.key = tuple(self.comps[c].table() for c in dom.C.objects)

    def __getitem__(self, c):
        return self.comps[c]

    def compose_after(self, other):
        """self o other."""
        B = self.dom.B
        return NatTrans(other.dom, self.cod, {c: B.compose(self.comps[c], other.comps[c]) for c in self.dom.C.objects})

    def natural_witness(self):
        C, B = self.dom.C, self.dom.B
        for f in C.morphisms:
            c, d = C.src[f], C.tgt[f]
            w = mismatch(B.compose(self.cod.act[f], self.comps[d]), B.compose(self.comps[c], self.dom.act[f]))
            if w:
                return dict(w, morphism=f)
        return None

    def is_iso(self):
        return all(self.dom.B.is_iso(m) for m in self.comps.values())


def identity_nat(P):
    return NatTrans(P, P, {c: P.B.identity(P.obj[c]) for c in P.C.objects})


def nat_homs(P, Q, cap=20000):
    """All natural transformations P -> Q by enumeration of componentwise maps."""
    C, B = P.C, P.B
    per = []
    total = 1
    for c in C.objects:
        n = B.hom_size(P.obj[c].base, Q.obj[c].base)
        total *= n
        if total > cap:
            raise CapExceeded("%d candidate transformations %r -> %r" % (total, P, Q))
        per.append(B.hom_set(P.obj[c], Q.obj[c]).morphisms)
    out = []
    for choice in itertools.product(*per):
        t = NatTrans(P, Q, dict(zip(C.objects, choice)))
        if t.natural_witness() is None:
            out.append(t)
    return out


def representable(C, c, backend=FINSET):
    """Y c = C(-, c) with precomposition."""
    B = backend
    obj = {d: B.explicit(C.hom(d, c)) for d in C.objects}
    act = {}
    for f in C.morphisms:
        d1, d2 = C.src[f], C.tgt[f]
        act[f] = Mor(obj[d2], obj[d1], lambda g, f=f: B.unit_value(C.compose(g, f)))
    return Presheaf(C, obj, act, B, name="Y%s" % c)


def constant_presheaf(C, X, backend=FINSET, name=None):
    B = backend
    return Presheaf(C, {c: X for c in C.objects}, {f: B.identity(X) for f in C.morphisms}, B, name=name)


def enumerate_presheaves(C, max_size=2, backend=FINSET, cap=20000):
    """All presheaves with values {0..k-1}, k <= max_size, on every object (sets only)."""
    B = backend
    if B is not FINSET:
        raise InputError("presheaf enumeration is implemented for finite sets")
    nonid = [f for f in C.morphisms if f != C.ident[C.src[f]]]
    out = []
    for sizes in itertools.product(range(max_size + 1), repeat=len(C.objects)):
        obj = {c: B.explicit(tuple(range(k))) for c, k in zip(C.objects, sizes)}
        maps = [B.hom_set(obj[C.tgt[f]], obj[C.src[f]]).morphisms for f in nonid]
        count = 1
        for m in maps:
            count *= max(len(m), 1)
        if count > cap:
            raise CapExceeded("%d candidate presheaf structures" % count)
        for choice in itertools.product(*maps):
            act = {C.ident[c]: B.identity(obj[c]) for c in C.objects}
            act.update(zip(nonid, choice))
            P = Presheaf(C, obj, act, B)
            if P.witness() is None:
                out.append(P)
    return out


# ---------------------------------------------------------------------------
# functors C -> presheaves (bimodules)


class Diagram:
    """G: C -> [C^op, V] with flattened carrier ``base`` of points (c, d, x)."""

    def __init__(self, C, val, mor, name=None):
        self.C = C
        self.val = dict(val)
        self.mor = dict(mor)
        self.name = name
        B = FINSET
        self.base = B.explicit(tuple((c, d, x) for c in C.objects for d in C.objects
                                     for x in self.val[c].obj[d].points))
        self.size = self.base.size

    def __repr__(self):
        return self.name or "Diag(%s)" % ",".join(repr(self.val[c]) for c in self.C.objects)

    @property
    def points(self):
        return self.base.points

    def witness(self):
        C = self.C
        for c in C.objects:
            w = self.val[c].witness()
            if w:
                return dict(w, value=c)
            if self.mor[C.ident[c]].key != identity_nat(self.val[c]).key:
                return {"law": "identity", "object": c}
        for f in C.morphisms:
            w = self.mor[f].natural_witness()
            if w:
                return dict(w, law="natural", morphism=f)
            for g in C.homs_from(C.tgt[f]):
                if self.mor[C.compose(g, f)].key != self.mor[g].compose_after(self.mor[f]).key:
                    return {"law": "composition", "morphisms": [f, g]}
        return None


def flatten_map(X, Y, comps):
    """A morphism of diagrams from components comps[(c, d)]: X(c)(d) -> Y(c)(d)."""
    return Mor(X, Y, lambda p: (p[0], p[1], comps[(p[0], p[1])](p[2])))


def component(m, c, d):
    X, Y = m.dom, m.cod

    def fn(x):
        y = m((c, d, x))
        if y[:2] != (c, d):
            raise StructuralError("map of diagrams leaves its component", {"point": to_json((c, d, x)),
                                                                         "image": to_json(y)})
        return y[2]

    return Mor(X.val[c].obj[d], Y.val[c].obj[d], fn)


def yoneda_diagram(C, backend=FINSET):
    val = {c: representable(C, c, backend) for c in C.objects}
    mor = {}
    for f in C.morphisms:
        c1, c2 = C.src[f], C.tgt[f]
        mor[f] = NatTrans(val[c1], val[c2], {d: Mor(val[c1].obj[d], val[c2].obj[d],
                                                     lambda g, f=f: C.compose(f, g)) for d in C.objects})
    return Diagram(C, val, mor, name="Y")


def constant_diagram(C, P, name=None):
    idn = identity_nat(P)
    return Diagram(C, {c: P for c in C.objects}, {f: idn for f in C.morphisms}, name=name or "const(%r)" % (P,))


def enumerate_diagrams(C, values, cap=20000):
    """Functors C -> presheaves with object values drawn from ``values``."""
    nonid = [f for f in C.morphisms if f != C.ident[C.src[f]]]
    out = []
    for assign in itertools.product(values, repeat=len(C.objects)):
        val = dict(zip(C.objects, assign))
        choices = [nat_homs(val[C.src[f]], val[C.tgt[f]], cap) for f in nonid]
        count = 1
        for ch in choices:
            count *= max(len(ch), 1)
        if count > cap:
            raise CapExceeded("%d candidate diagrams" % count)
        for choice in itertools.product(*choices):
            mor = {C.ident[c]: identity_nat(val[c]) for c in C.objects}
            mor.update(zip(nonid, choice))
            D = Diagram(C, val, mor)
            if D.witness() is None:
                out.append(D)
    return out


# ---------------------------------------------------------------------------
# weighted colimits


def weighted_colimit(U, F_obj, F_mor, backend=None):
    """U * F = coend of U(c) (x) F(d) for a presheaf U and a functor F: C -> backend."""
    B = backend or U.B
    C = U.C
    return coend(C, lambda c, d: B.vtensor(U.obj[c], F_obj(d)),
                 lambda f, g: B.vtensor_mor(U.act[f], F_mor(g)), B)


class ColimitPresheaf:
    """U * G for G: C -> presheaves, as a presheaf with the coend data at every D."""

    def __init__(self, U, G):
        self.U, self.G = U, G
        C, B = U.C, U.B
        self.data = {}
        for D in C.objects:
            self.data[D] = weighted_colimit(U, lambda c, D=D: G.val[c].obj[D], lambda g, D=D: G.mor[g][D], B)
        obj = {D: self.data[D].Q for D in C.objects}
        self.presheaf = Presheaf(C, obj, {}, B, name="(%r*%r)" % (U, G))
        for h in C.morphisms:
            D1, D2 = C.src[h], C.tgt[h]
            inj1 = self.data[D1].injections
            maps = {c: B.compose(inj1[c], B.vtensor_mor(B.identity(U.obj[c]), G.val[c].act[h])) for c in C.objects}
            self.presheaf.act[h] = self.factor(D2, maps, obj[D1])

    def _diag(self, D):
        C, B = self.U.C, self.U.B
        return [B.vtensor(self.U.obj[c], self.G.val[c].obj[D]) for c in C.objects]

    def inj(self, D, c, u, x):
        """The class [u, x] (sets only)."""
        return self.data[D].injections[c]((u, x))

    def factor(self, D, maps, cod):
        """The map out of (U*G)(D) whose restriction along the injection at c is maps[c]."""
        B = self.U.B
        h = B.cotuple(self._diag(D), cod, [maps[c] for c in self.U.C.objects])
        return self.data[D].factor(h)


def co_yoneda_check(C, diagrams, backend=FINSET, check_id="co-yoneda"):
    """Y c * G = G c for every c, by the map [g, x] -> G(g)(x) being iso."""
    B = backend

    def check(G):
        for c in C.objects:
            col = ColimitPresheaf(representable(C, c, B), G)
            for D in C.objects:
                maps = {}
                for c2 in C.objects:
                    src = B.vtensor(col.U.obj[c2], G.val[c2].obj[D])
                    maps[c2] = Mor(src, G.val[c].obj[D], lambda p, c2=c2: G.mor[p[0]][D](p[1]))
                m = col.factor(D, maps, G.val[c].obj[D])
                if not B.is_iso(m):
                    return {"object": c, "at": D, "classification": B.classify(m).label}
        return None

    return run_tuples(check_id, (([["diag", i]], (G,)) for i, G in enumerate(diagrams)), check)


# ---------------------------------------------------------------------------
# self-cocomplete subcategories


class SubcategoryW:
    """A full replete subcategory of presheaves: a membership oracle and generators."""

    def __init__(self, name, member, generators, describe=None):
        self.name, self.member, self.generators = name, member, list(generators)
        self.describe = describe or (lambda P: {"sizes": list(P.sizes())})


def all_presheaves(C, generators):
    return SubcategoryW("all", lambda P: True, generators)


def rank1_free(C, generators):
    """Right E-sets isomorphic to E_E (C one-object): some u with e -> u.e bijective."""
    (o,) = C.objects
    els = C.hom(o, o)

    def member(P):
        X = P.obj[o]
        if X.size != len(els):
            return False
        for u in X.points:
            if len({P.act[e](u) for e in els}) == len(els):
                return True
        return False

    return SubcategoryW("rank-1-free", member, generators)


def dim_below(C, n, generators):
    return SubcategoryW("dim<%d" % n, lambda P: all(X.size < n for X in P.obj.values()), generators,
                        describe=lambda P: {"dims": list(P.sizes())})


def self_cocomplete_check(C, W, diagrams, backend=FINSET, check_id="self-cocomplete"):
    """(sc-1) representables belong to W; (sc-2) U*F belongs to W for U in W and F: C -> W.

    Repleteness of the oracle is tested on relabelled copies of the generators.
    """
    B = backend
    reps = []

    def sc1(c):
        Y = representable(C, c, B)
        return None if W.member(Y) else {"representable": c, "value": W.describe(Y)}

    reps.append(run_tuples(check_id + ":sc-1", (([["obj", c]], (c,)) for c in C.objects), sc1))

    def replete(P):
        return None if W.member(P) == W.member(P.relabel("r")) else {"presheaf": repr(P)}

    reps.append(run_tuples(check_id + ":replete", (([["gen", i]], (P,)) for i, P in enumerate(W.generators)), replete))
    in_W = [F for F in diagrams if all(W.member(F.val[c]) for c in C.objects)]

    def sc2(U, F):
        col = ColimitPresheaf(U, F).presheaf
        if W.member(col):
            return None
        return {"weight": W.describe(U), "diagram": [W.describe(F.val[c]) for c in C.objects],
                "colimit": W.describe(col), "W": W.name}

    def pairs():
        for i, U in enumerate(W.generators):
            for j, F in enumerate(in_W):
                yield [["gen", i], ["diag", j]], (U, F)

    reps.append(run_tuples(check_id + ":sc-2", pairs(), sc2))
    out = merge_reports(check_id, reps)
    out.info["diagrams_in_W"] = len(in_W)
    out.info["subchecks"] = {r.check: r.status for r in reps}
    return out


def eobW_lemma_check(C, W, diagrams, check_id="eobW-lemma"):
    """(i) U*F in W for all generators U  <=>  (ii) F c in W for all c."""

    def check(F):
        ii = all(W.member(F.val[c]) for c in C.objects)
        i = all(W.member(ColimitPresheaf(U, F).presheaf) for U in W.generators)
        return None if i == ii else {"(i)": i, "(ii)": ii}

    return run_tuples(check_id, (([["diag", k]], (F,)) for k, F in enumerate(diagrams)), check)


# ---------------------------------------------------------------------------
# tensor products of functors C -> presheaves


class CoendTensor(SkewStructure):
    """Skew structure on functors C -> presheaves with (F (x) G)(B) = weight(F B) * G.

    With ``J`` None the weight is F B itself and the unit is Yoneda: this is the
    bimodule tensor of E-bar(W).  With a functor J: C -> presheaves the weight is
    J_*(F B) = Hom(J-, F B) and the unit is J: the structure on [C, M].
    """

    kind = "coend"
    prefix = "acu."

    def __init__(self, C, J=None, name=None, cap=20000, tamper=None):
        self.C, self.J, self.cap = C, J, cap
        self.Bv = FINSET
        unit = J if J is not None else yoneda_diagram(C)
        super().__init__(FINSET, unit, name or ("acu" if J is not None else "eobW"), tamper=tamper)
        self._weights = {}
        self._cols = {}
        self._homs = {}

    # -- J_* ------------------------------------------------------------------
    def homs(self, c, P):
        """Hom(J c, P) as a list and an index by key."""
        key = (c, id(P))
        h = self._homs.get(key)
        if h is None:
            lst = nat_homs(self.J.val[c], P, self.cap)
            h = self._homs[key] = (lst, {t.key: t for t in lst}, P)
        return h

    def Jstar(self, P):
        """J_*(P) = Hom(J-, P) with precomposition by J(f)."""
        key = id(P)
        got = self._weights.get(key)
        if got is not None:
            return got[0]
        C, B = self.C, self.Bv
        obj, act = {}, {}
        for c in C.objects:
            obj[c] = B.explicit(tuple(t.key for t in self.homs(c, P)[0]))
        for f in C.morphisms:
            c1, c2 = C.src[f], C.tgt[f]
            idx = self.homs(c1, P)[1]
            lst2 = self.homs(c2, P)[1]
            act[f] = Mor(obj[c2], obj[c1], lambda k, f=f, lst2=lst2, idx=idx: idx[lst2[k].compose_after(self.J.mor[f]).key].key)
        W = Presheaf(C, obj, act, B, name="J*(%r)" % (P,))
        self._weights[key] = (W, P)
        return W

    def weight(self, P):
        return P if self.J is None else self.Jstar(P)

    def colimit(self, P, G):
        key = (id(P), G)
        got = self._cols.get(key)
        if got is None:
            got = self._cols[key] = (ColimitPresheaf(self.weight(P), G), P)
        return got[0]

    # -- structure -----------------------------------------------------------
    def _tensor(self, F, G):
        C = self.C
        cols = {b: self.colimit(F.val[b], G) for b in C.objects}
        val = {b: cols[b].presheaf for b in C.objects}
        mor = {}
        for f in C.morphisms:
            b1, b2 = C.src[f], C.tgt[f]
            mor[f] = NatTrans(val[b1], val[b2], {D: self._induced(cols[b1], cols[b2], D, F.mor[f], None)
                                                  for D in C.objects})
        return Diagram(C, val, mor, name="(%r(x)%r)" % (F, G))

    def _weight_map(self, t, c, elem):
        """The action of a transformation t: P -> P' on weight elements at c."""
        if self.J is None:
            return t[c](elem)
        lst, idx, P = self.homs(c, t.dom)
        lst2, idx2, _ = self.homs(c, t.cod)
        return t.compose_after(idx[elem]).key

    def _induced(self, col, col2, D, t, g):
        """[u, x] -> [t.u, g(x)] from col = weight(P)*G to col2 = weight(P')*G'."""
        C, B = self.C, self.Bv
        maps = {}
        for c in C.objects:
            src = B.vtensor(col.U.obj[c], col.G.val[c].obj[D])
            gm = (lambda x, c=c: x) if g is None else component(g, c, D)
            maps[c] = Mor(src, col2.presheaf.obj[D],
                          lambda p, c=c, gm=gm: col2.inj(D, c, self._weight_map(t, c, p[0]) if t else p[0], gm(p[1])))
        return col.factor(D, maps, col2.presheaf.obj[D])

    def _tmap(self, f, g):
        F, F2, G, G2 = f.dom, f.cod, g.dom, g.cod
        X, Y = self.tensor(F, G), self.tensor(F2, G2)
        comps = {}
        for b in self.C.objects:
            t = NatTrans(F.val[b], F2.val[b], {d: component(f, b, d) for d in self.C.objects})
            col, col2 = self.colimit(F.val[b], G), self.colimit(F2.val[b], G2)
            for D in self.C.objects:
                comps[(b, D)] = self._induced(col, col2, D, t, g)
        return flatten_map(X, Y, comps)

    def _eps(self, F):
        """(F (x) unit)(b)(D) -> F(b)(D): [u, y] -> u evaluated at y."""
        C, B = self.C, self.Bv
        X = self.tensor(F, self.unit)
        comps = {}
        for b in C.objects:
            col = self.colimit(F.val[b], self.unit)
            P = F.val[b]
            for D in C.objects:
                maps = {}
                for c in C.objects:
                    src = B.vtensor(col.U.obj[c], self.unit.val[c].obj[D])
                    if self.J is None:
                        fn = (lambda p, P=P, D=D: P.act[p[1]](p[0]))
                    else:
                        idx = self.homs(c, P)[1]
                        fn = (lambda p, idx=idx, D=D: idx[p[0]][D](p[1]))
                    maps[c] = Mor(src, P.obj[D], fn)
                comps[(b, D)] = col.factor(D, maps, P.obj[D])
        return flatten_map(X, F, comps)

    def _unit_weight_identity(self, b):
        if self.J is None:
            return self.C.ident[b]
        return identity_nat(self.J.val[b]).key

    def _eta(self, G):
        C = self.C
        X = self.tensor(self.unit, G)
        comps = {}
        for b in C.objects:
            col = self.colimit(self.unit.val[b], G)
            e = self._unit_weight_identity(b)
            for D in C.objects:
                comps[(b, D)] = Mor(G.val[b].obj[D], col.presheaf.obj[D], lambda x, col=col, D=D, b=b, e=e: col.inj(D, b, e, x))
        return flatten_map(G, X, comps)

    def _gamma(self, F, G, H):
        """[u, [v, h]] -> [[u, v], h] (bimodules) or [y -> [u, v(y)], h] (J-weights)."""
        C, B = self.C, self.Bv
        GH = self.tensor(G, H)
        FG = self.tensor(F, G)
        src, tgt = self.tensor(F, GH), self.tensor(FG, H)
        comps = {}
        for b in C.objects:
            outer = self.colimit(F.val[b], GH)
            inner = {c: self.colimit(G.val[c], H) for c in C.objects}
            fg = self.colimit(F.val[b], G)
            target = self.colimit(FG.val[b], H)
            for D in C.objects:
                maps = {}
                for c1 in C.objects:
                    dom = B.vtensor(outer.U.obj[c1], GH.val[c1].obj[D])
                    maps[c1] = Mor(dom, target.presheaf.obj[D],
                                   lambda p, c1=c1, D=D, b=b: self._gamma_point(p, c1, D, b, inner[c1], fg, target, FG))
                comps[(b, D)] = outer.factor(D, maps, target.presheaf.obj[D])
        return flatten_map(src, tgt, comps)

    def _gamma_point(self, p, c1, D, b, inner, fg, target, FG):
        u, z = p
        # z is a class representative of the inner coend: (index of c2, (v, h))
        i2, (v, h) = z
        c2 = self.C.objects[i2]
        if self.J is None:
            w = fg.inj(c2, c1, u, v)
        else:
            w = self._comparison_key(fg, FG.val[b], c1, c2, u, v)
        return target.inj(D, c2, w, h)

    def _comparison_key(self, col, P, c1, c2, u, v):
        """The transformation J c2 -> P = (U*G), y -> [u, v(y)], as a key of Hom(J c2, P)."""
        C = self.C
        vt = self.homs(c2, col.G.val[c1])[1][v]
        comps = {}
        for D in C.objects:
            comps[D] = Mor(self.J.val[c2].obj[D], col.presheaf.obj[D],
                           lambda y, D=D: col.inj(D, c1, u, vt[D](y)))
        t = NatTrans(self.J.val[c2], col.presheaf, comps)
        idx = self.homs(c2, P)[1]
        if t.key not in idx:
            raise StructuralError("comparison is not natural", {"weight": to_json(u)})
        return t.key


def functor_universe(C, presheaves, J=None, extra=()):
    """J (if given), Yoneda, the constant diagrams on the listed presheaves, and extras."""
    out = []
    if J is not None:
        out.append(J)
    Y = yoneda_diagram(C)
    if J is None or J.base is not Y.base:
        out.append(Y)
    out += [constant_diagram(C, P) for P in presheaves]
    out += list(extra)
    return out


# ---------------------------------------------------------------------------
# well-behavedness and monoidality


def jstar_comparison(S, P, G, D):
    """J_{U,G} at D for U = J_* P: (U * J_*G)(D) -> J_*(U * G)(D)."""
    B = S.Bv
    C = S.C
    U = S.Jstar(P)
    JG = Diagram(C, {c: S.Jstar(G.val[c]) for c in C.objects},
                 {f: _jstar_nat(S, G.mor[f]) for f in C.morphisms}, name="J*(%r)" % (G,))
    left = ColimitPresheaf(U, JG)
    right = S.colimit(P, G)
    tgt = S.Jstar(right.presheaf)
    maps = {}
    for c in C.objects:
        src = B.vtensor(U.obj[c], JG.val[c].obj[D])
        maps[c] = Mor(src, tgt.obj[D], lambda p, c=c: S._comparison_key(right, right.presheaf, c, D, p[0], p[1]))
    return left.factor(D, maps, tgt.obj[D])


def _jstar_nat(S, t):
    """J_*(t): J_*P -> J_*P' by postcomposition."""
    C = S.C
    U, U2 = S.Jstar(t.dom), S.Jstar(t.cod)
    comps = {}
    for c in C.objects:
        idx, idx2 = S.homs(c, t.dom)[1], S.homs(c, t.cod)[1]
        comps[c] = Mor(U.obj[c], U2.obj[c], lambda k, idx=idx: t.compose_after(idx[k]).key)
    return NatTrans(U, U2, comps)


def well_behaved_check(S, presheaves, diagrams, weights=None, check_id="well-behaved"):
    """wb-0..wb-3 for J on the finite universes.

    ``presheaves`` is the object universe of M, ``diagrams`` the functors C -> M,
    ``weights`` the objects of M whose J_* serve as weights (default: presheaves).
    """
    C, J = S.C, S.J
    weights = presheaves if weights is None else weights
    reps = []

    def wb0(P, G):
        S.colimit(P, G).presheaf
        return None

    def pairs(ws, ds):
        for i, P in enumerate(ws):
            for j, G in enumerate(ds):
                yield [["obj", i], ["diag", j]], (P, G)

    reps.append(run_tuples(check_id + ":wb-0", pairs(weights, diagrams), wb0))

    def wb1(c, d):
        homs = C.hom(c, d)
        images = {J.mor[f].key for f in homs}
        if len(images) != len(homs):
            return {"faithful": False, "objects": [c, d]}
        target = nat_homs(J.val[c], J.val[d], S.cap)
        if len(target) != len(images):
            return {"full": False, "objects": [c, d], "homs": len(homs), "transformations": len(target)}
        return None

    reps.append(run_tuples(check_id + ":wb-1", (([["obj", c], ["obj", d]], (c, d))
                                                for c in C.objects for d in C.objects), wb1))

    def wb2(P, Q):
        homs = nat_homs(P, Q, S.cap)
        images = {_jstar_nat(S, t).key for t in homs}
        if len(images) != len(homs):
            return {"faithful": False}
        target = nat_homs(S.Jstar(P), S.Jstar(Q), S.cap)
        if len(target) != len(images):
            return {"full": False, "homs": len(homs), "transformations": len(target)}
        return None

    reps.append(run_tuples(check_id + ":wb-2", ((([["obj", i], ["obj", j]]), (P, Q))
                                                for i, P in enumerate(presheaves) for j, Q in enumerate(presheaves)),
                           wb2))

    def wb3(P, G):
        for D in C.objects:
            m = jstar_comparison(S, P, G, D)
            cl = S.Bv.classify(m)
            if not (cl.mono and cl.epi):
                return {"at": D, "classification": cl.label, "detail": to_json(cl.witness)}
        return None

    reps.append(run_tuples(check_id + ":wb-3", pairs(weights, diagrams), wb3))
    out = merge_reports(check_id, reps)
    out.info["verdicts"] = {r.check.split(":")[-1]: r.status == "pass" for r in reps}
    return out


def acu_build(C, J, max_size=2, extra_presheaves=(), cap=20000):
    """The structure on [C, M] for M = presheaves with values of size <= max_size."""
    S = CoendTensor(C, J, cap=cap)
    return S


class _Univ:
    """Minimal universe adapter so SMC and scan helpers can quantify over functors."""

    def __init__(self, items):
        self.objects = items

    def refs(self, n, kind="fun", pool=None):
        pool = self.objects if pool is None else pool
        for idx in itertools.product(range(len(pool)), repeat=n):
            yield [[kind, i] for i in idx], tuple(pool[i] for i in idx)


def acu_monoidality_report(S, functors, wb, check_id="acu-monoidality", smc_pool=None):
    """Invertibility scan with the conditional implications of wb-1, wb-2, wb-3, and J_*(F(x)G) = J_*F (x) J_*G."""
    u = _Univ(functors)
    scan = invertibility_scan(S, u, kind="fun")
    verdicts = wb.info.get("verdicts", {})
    labels = {fam: sorted(scan.labels(fam)) for fam in ("gamma", "eta", "eps")}

    def implies(flag, fam):
        def fn():
            if not verdicts.get(flag):
                return None
            for k, lab in scan.families[fam].items():
                if lab != "iso":
                    return {"implication": "%s => %s iso" % (flag, fam), "component": k, "label": lab,
                            "detail": to_json(scan.witnesses[fam][k])}
            return None
        return fn

    reps = [single(check_id + ":wb-%d=>%s" % (i, fam), implies("wb-%d" % i, fam), ref=[["scan", fam]])
            for i, fam in ((1, "eta"), (2, "eps"), (3, "gamma"))]
    if S.J is not None and all(verdicts.get(k) for k in ("wb-1", "wb-2", "wb-3")):
        reps.append(scan_report(scan, check_id + ":monoidal", expect_iso=("gamma", "eta", "eps")))

        def bimodule_iso(F, G):
            C = S.C
            for b in C.objects:
                for D in C.objects:
                    m = jstar_comparison(S, F.val[b], G, D)
                    if not S.Bv.is_iso(m):
                        return {"at": [b, D], "classification": S.Bv.classify(m).label}
            return None

        reps.append(run_tuples(check_id + ":Jstar-strong", u.refs(2), bimodule_iso))
    if smc_pool is not None:
        for r in smc_checks(S, u, pool=smc_pool, kind="fun",
                            names=tuple("%s:SMC%d" % (check_id, i) for i in range(1, 6))):
            reps.append(r)
    out = merge_reports(check_id, reps)
    out.info["scan"] = labels
    out.info["monoidal_on_u"] = all(lab == ["iso"] for lab in labels.values())
    out.info["wb"] = verdicts
    out.info["subchecks"] = {r.check: {"status": r.status, "checked": r.checked} for r in reps}
    return out


def eobW_monoidal(C, W, diagrams, check_id="eobW"):
    """E-bar(W): bimodules valued in W with the coend tensor; coherences must be invertible."""
    S = CoendTensor(C, None)
    inW = [F for F in diagrams if all(W.member(F.val[c]) for c in C.objects)]
    u = _Univ(inW)

    def closed(F, G):
        T = S.tensor(F, G)
        return None if all(W.member(T.val[c]) for c in C.objects) else {"tensor": repr(T)}

    reps = [run_tuples(check_id + ":closed", u.refs(2), closed),
            eobW_lemma_check(C, W, diagrams, check_id + ":lemma")]
    reps += smc_checks(S, u, pool=inW, kind="fun", names=tuple("%s:SMC%d" % (check_id, i) for i in range(1, 6)))
    scan = invertibility_scan(S, u, kind="fun")
    reps.append(scan_report(scan, check_id + ":invertible", expect_iso=("gamma", "eta", "eps")))
    out = merge_reports(check_id, reps)
    out.info["bimodules"] = len(inW)
    out.info["subchecks"] = {r.check: r.status for r in reps}
    return out, S


# ---------------------------------------------------------------------------
# fixtures


def monoid_category(B, R):
    """The one-object category of E = Hom(R, R), with labels the hom points."""
    E = B.hom(R, R).points
    c = B.comp_map(R, R, R)
    return FiniteCategory.from_monoid(E, lambda g, f: c((g, f)), B.id_point(R), name="E")


def right_E_sets(C, max_size=2):
    return enumerate_presheaves(C, max_size)


def rank1_fixture(B, R, check_id="sc-rank1"):
    """C = E, W = rank-1 free right E-sets: self-cocomplete with U (x)_E V = E_E."""
    C = monoid_category(B, R)
    (o,) = C.objects
    Y = representable(C, o)
    W = rank1_free(C, [Y, Y.relabel("g")])
    diagrams = enumerate_diagrams(C, [Y])
    rep = self_cocomplete_check(C, W, diagrams, check_id=check_id)

    def quotient(F):
        col = ColimitPresheaf(Y, F).presheaf
        return None if col.obj[o].size == len(C.hom(o, o)) and W.member(col) else {"size": col.obj[o].size}

    qrep = run_tuples(check_id + ":UxV=E", (([["diag", i]], (F,)) for i, F in enumerate(diagrams)), quotient)
    out = merge_reports(check_id, [rep, qrep])
    out.info.update(rep.info)
    out.info["subchecks"] = dict(rep.info["subchecks"], **{qrep.check: qrep.status})
    out.info["bimodules"] = len(diagrams)
    return out, (C, W, diagrams)


def dim_bound_fixture(p=2, n=3, check_id="sc-dim-bound"):
    """C trivial over F_p-spaces, W = dimension < n, F = E^2 with equal actions."""
    from .backends import finvec
    V = finvec(p)
    C = FiniteCategory.trivial()
    gens = [constant_presheaf(C, V.space(k), V, name="F%d^%d" % (p, k)) for k in range(n)]
    W = dim_below(C, n, gens)
    E2 = constant_presheaf(C, V.space(2), V, name="E^2")
    F = Diagram(C, {"*": E2}, {"id": identity_nat(E2)}, name="E^2")
    rep = self_cocomplete_check(C, W, [F], backend=V, check_id=check_id)
    return rep, (C, W, F)


def diagram_morphisms(F, G, cap=20000):
    """Transformations F -> G: a natural family of presheaf maps F c -> G c."""
    C = F.C
    per = [nat_homs(F.val[c], G.val[c], cap) for c in C.objects]
    out = []
    for choice in itertools.product(*per):
        t = dict(zip(C.objects, choice))
        if all(G.mor[f].compose_after(t[C.src[f]]).key == t[C.tgt[f]].compose_after(F.mor[f]).key
               for f in C.morphisms):
            comps = {(c, d): t[c][d] for c in C.objects for d in C.objects}
            out.append(flatten_map(F, G, comps))
    return out


def functor_naturality(S, functors, check_id="acu-naturality", max_mors=40):
    """Naturality of eta and eps along every transformation between functors of the universe."""
    B = S.cat
    mors = []
    for i, F in enumerate(functors):
        for j, G in enumerate(functors):
            for k, m in enumerate(diagram_morphisms(F, G)):
                mors.append(([["fun", i], ["fun", j], ["mor", k]], m))
    mors = mors[:max_mors]
    R = S.unit

    def eta(m):
        return mismatch(B.compose(S.eta(m.cod), m), B.compose(S.tmap(S.id(R), m), S.eta(m.dom)))

    def eps(m):
        return mismatch(B.compose(m, S.eps(m.dom)), B.compose(S.eps(m.cod), S.tmap(m, S.id(R))))

    reps = [run_tuples(check_id + ":eta", ((r, (m,)) for r, m in mors), eta),
            run_tuples(check_id + ":eps", ((r, (m,)) for r, m in mors), eps)]
    out = merge_reports(check_id, reps)
    out.info["morphisms"] = len(mors)
    return out
