"""Fixture interpretation and the named check suites run by the command line."""
from __future__ import annotations

import os
from functools import cached_property

from .backends import FINSET, finvec
from .core import FiniteCategory, InputError, Tamper, TestUniverse, merge_reports
from .skewmon import (build_cartesian, build_dot, check_smc_axioms, check_strength_axioms, exactness_report,
                      invertibility_scan, scan_report)
from . import cocomp, liftq, modcat, underlying

SKEW_SUITES = ("smc", "strengths", "em", "smp2", "underlying", "forg", "cocomp", "acu", "smpq", "barphi", "lift")
SUITES_BY_KIND = {
    "cartesian": SKEW_SUITES,
    "dot": SKEW_SUITES,
    "presheaf": ("cocomp", "acu"),
    "linear": ("cocomp",),
}
ALL_SUITES = SKEW_SUITES


def cap_override(value):
    """Caps are raised (never lowered) by SKEWCAT_CAP_OVERRIDE."""
    env = os.environ.get("SKEWCAT_CAP_OVERRIDE")
    if not env:
        return value
    try:
        return max(value, int(env))
    except ValueError:
        raise InputError("SKEWCAT_CAP_OVERRIDE must be an integer, got %r" % env)


def named_category(spec):
    if spec == "trivial":
        return FiniteCategory.trivial()
    if spec == "walking_arrow":
        return FiniteCategory.walking_arrow()
    if isinstance(spec, dict) and "endomorphisms_of" in spec:
        return cocomp.monoid_category(FINSET, FINSET.explicit(tuple(spec["endomorphisms_of"])))
    if isinstance(spec, dict):
        return FiniteCategory.from_dict(spec)
    raise InputError("unknown category %r" % (spec,))


class Context:
    """Everything a suite needs, built lazily from a fixture document."""

    def __init__(self, doc):
        self.doc = doc
        st = doc["structure"]
        self.kind = st["kind"]
        uni = doc.get("universe", {})
        caps = uni.get("caps", {})
        self.max_hom = cap_override(caps.get("max_hom", 4096))
        self.count_cap = cap_override(caps.get("count", 20000))
        self.max_carrier = uni.get("max_carrier", 2)
        self.algebra_carrier = uni.get("algebra_carrier", 2)
        self.seed = doc.get("seed", 0)
        self._refs = {}
        self.tamper = Tamper(keyfn=self.ref_of)
        for m in doc.get("mutations", []):
            key = tuple(tuple(r) for r in m["objects"])
            if "table" in m:
                self.tamper.table(m["family"], key, m["table"])
            else:
                self.tamper.shift(m["family"], key, m.get("entry", 0), m.get("shift", 1))

    # -- reference bookkeeping for mutations --------------------------------
    def register(self, kind, pool):
        for i, X in enumerate(pool):
            self._refs.setdefault(id(X), (kind, i))
        return pool

    def ref_of(self, X):
        return self._refs.get(id(X), ("?", repr(X)))

    # -- skew fixtures -------------------------------------------------------
    @cached_property
    def backend(self):
        b = self.doc.get("backend", {"kind": "finset"})
        if b["kind"] == "finset":
            FINSET.max_hom = self.max_hom
            return FINSET
        if b["kind"] == "finvec":
            return finvec(b.get("p", 2))
        raise InputError("unknown backend %r" % b["kind"])

    @cached_property
    def R(self):
        st = self.doc["structure"]
        if self.kind == "cartesian":
            return FINSET.one()
        return FINSET.explicit(tuple(st["R"]))

    @cached_property
    def S(self):
        if self.kind == "cartesian":
            S = build_cartesian(self.backend, tamper=self.tamper)
        elif self.kind == "dot":
            S = build_dot(self.backend, self.R, tamper=self.tamper)
        else:
            raise InputError("structure %r has no skew monoidal base" % self.kind)
        self._refs.setdefault(id(S.unit), ("unit",))
        return S

    @cached_property
    def objects(self):
        uni = self.doc.get("universe", {})
        objs = [self.backend.explicit(tuple(labels)) for labels in uni.get("objects", [])]
        if self.kind in ("cartesian", "dot"):
            self.register("hom", [self.backend.hom(self.R, X) for X in objs])
        return self.register("obj", objs)

    @cached_property
    def vsets(self):
        uni = self.doc.get("universe", {})
        return self.register("vset", [FINSET.explicit(tuple(labels)) for labels in uni.get("vsets", [])])

    @cached_property
    def u(self):
        u = TestUniverse(self.objects, vsets=self.vsets, max_hom=self.max_hom,
                         max_object_size=cap_override(self.doc.get("universe", {}).get("max_object_size", 4)),
                         seed=self.seed)
        u.algebras = self.algebras
        u.eobjects = self.us.eobjects
        return u

    @cached_property
    def em(self):
        em = modcat.build_em_structure(self.S, tamper=self.tamper)
        self._refs.setdefault(id(em.unit), ("alg-unit",))
        return em

    @cached_property
    def algebras(self):
        algs = []
        for X in self.objects:
            if X.base.size <= self.algebra_carrier:
                algs += modcat.enumerate_algebras(self.em.monad, X, cap=self.max_hom, category=self.em.alg_cat)
        self.em.algebras = algs
        return self.register("alg", algs)

    @cached_property
    def us(self):
        us = underlying.build_underlying(self.backend, self.R, self.objects, max_carrier=self.max_carrier,
                                         cap=self.max_hom, tamper=self.tamper)
        self.register("eob", us.eobjects)
        self._refs.setdefault(id(us.unit), ("eob-unit",))
        return us

    @cached_property
    def forg(self):
        self.u
        return underlying.forg(self.em, self.us)

    @cached_property
    def Q(self):
        self.u
        Q = liftq.build_smpq(self.S, self.us, tamper=self.tamper)
        return Q

    @cached_property
    def density(self):
        return underlying.density_check(self.backend, self.R, self.u)

    # -- presheaf fixtures ---------------------------------------------------
    @cached_property
    def C(self):
        if self.kind in ("cartesian", "dot"):
            return cocomp.monoid_category(FINSET, self.R)
        if self.kind == "presheaf":
            return named_category(self.doc["structure"].get("category", "walking_arrow"))
        raise InputError("structure %r has no small category" % self.kind)

    @cached_property
    def presheaves(self):
        size = self.doc["structure"].get("max_size", 2 if self.kind == "presheaf" else 1)
        return self.register("psh", cocomp.enumerate_presheaves(self.C, size, cap=self.count_cap))

    def _by_sizes(self, sizes):
        return next(P for P in self.presheaves if P.sizes() == sizes)

    @cached_property
    def J(self):
        spec = self.doc["structure"].get("J", "yoneda")
        if spec == "yoneda":
            return cocomp.yoneda_diagram(self.C)
        if spec == "collapsed":
            term = self._by_sizes((1,) * len(self.C.objects))
            return cocomp.constant_diagram(self.C, term, name="J-collapsed")
        raise InputError("unknown J %r" % spec)

    @cached_property
    def functors(self):
        n = len(self.C.objects)
        consts = [self._by_sizes((0,) * n), self._by_sizes((1,) * n)]
        extra = []
        k = self.doc["structure"].get("extra_functors", 0)
        if k:
            small = [P for P in self.presheaves if sum(P.sizes()) <= 2]
            ds = cocomp.enumerate_diagrams(self.C, small, cap=self.count_cap)
            step = max(1, len(ds) // k)
            extra = ds[::step][:k]
        return self.register("fun", cocomp.functor_universe(self.C, consts, J=self.J, extra=extra))

    @cached_property
    def acu(self):
        self.functors
        return cocomp.CoendTensor(self.C, self.J, cap=self.count_cap, tamper=self.tamper)


# ---------------------------------------------------------------------------
# suites


def suite_smc(ctx):
    S, u = ctx.S, ctx.u
    reps = [check_smc_axioms(S, u), modcat.Monad(S).check_laws(u), exactness_report(S, u)]
    scan = invertibility_scan(S, u)
    expect = ("gamma", "eta", "eps") if ctx.doc.get("expect_monoidal") else ()
    reps.append(scan_report(scan, "invertibility", expect_iso=expect))
    out = merge_reports("smc", reps)
    out.info["axioms"] = reps[0].info["axioms"]
    out.info["scan"] = scan.to_dict()
    out.info["subchecks"] = {r.check: r.status for r in reps}
    return out


def suite_strengths(ctx):
    return check_strength_axioms(ctx.S, ctx.u)


def suite_em(ctx):
    em, u = ctx.em, ctx.u
    algs = ctx.algebras
    reps = modcat.em_checks(em, u, algs) + modcat.em_extra_checks(em, u, algs)
    reps += [modcat.j_iso_report(em, u), modcat.forgetful_G_check(em, u, algs)]
    scan = invertibility_scan(em, u, pool=algs, kind="alg")
    reps.append(scan_report(scan, "em-invertibility",
                            expect_iso=("gamma", "eta", "eps") if ctx.doc.get("expect_monoidal") else ("eta",)))
    out = merge_reports("em", reps)
    out.info["algebras"] = len(algs)
    out.info["axioms"] = {r.check: {"status": r.status, "checked": r.checked} for r in reps}
    out.info["scan"] = {fam: sorted(set(v.values())) for fam, v in scan.families.items()}
    return out


def suite_smp2(ctx):
    reps, _ = modcat.smp2_check(ctx.S, ctx.u)
    out = merge_reports("smp2", reps)
    out.info["axioms"] = {r.check: {"status": r.status, "checked": r.checked} for r in reps}
    out.info["smc4_verdicts"] = next(r.info for r in reps if r.check == "smp2-SMC4-verdicts")
    return out


def suite_underlying(ctx):
    us, u = ctx.us, ctx.u
    dens = ctx.density
    reps = [us.monoid.check_laws(), dens,
            underlying.uot_via_J_crosscheck(us, u, dense=dens.status == "pass"),
            underlying.sigma_checks(ctx.S, us.dot, u),
            underlying.lambda_identity_report(ctx.S, us.dot, u)]
    out = merge_reports("underlying", reps)
    out.info["eobjects"] = len(us.eobjects)
    out.info["dense_on_u"] = dens.info.get("dense_on_u")
    out.info["crosscheck"] = reps[2].info
    out.info["subchecks"] = {r.check: r.status for r in reps}
    return out


def suite_forg(ctx):
    F, u = ctx.forg, ctx.u
    reps = [underlying.forg_checks(F, u, ctx.algebras),
            underlying.strongness_report(F, u),
            underlying.lambda_second_row(ctx.S, u),
            underlying.adjunction_checks(F, ctx.Q, u, ctx.us.eobjects, ctx.algebras)]
    out = merge_reports("forg", reps)
    out.info["strongness"] = reps[1].info
    out.info["subchecks"] = {r.check: r.status for r in reps}
    return out


def suite_smpq(ctx):
    reps = [liftq.rho_lambda_actions(ctx.S, ctx.us, ctx.u), liftq.smpq_checks(ctx.Q, ctx.u)]
    out = merge_reports("smpq", reps)
    out.info["subchecks"] = {r.check: r.status for r in reps}
    return out


def suite_barphi(ctx):
    rep, _ = liftq.barphi_check(ctx.S, ctx.us, ctx.em, ctx.u, ctx.Q)
    return rep


def suite_lift(ctx):
    algs = ctx.algebras
    L = liftq.lift_functor(underlying.sigma_functor(ctx.S, ctx.us.dot), ctx.em, ctx.us.em)
    reps = [liftq.lift_checks(L, ctx.u, algs), liftq.compare_lifts(L, ctx.forg, ctx.u, algs)]
    out = merge_reports("lift", reps)
    out.info["subchecks"] = {r.check: r.status for r in reps}
    return out


def suite_cocomp(ctx):
    if ctx.kind == "linear":
        st = ctx.doc["structure"]
        rep, (_, W, _) = cocomp.dim_bound_fixture(st.get("p", 2), st.get("bound", 3))
        out = merge_reports("cocomp", [rep])
        out.info["W"] = W.name
        out.info["self_cocomplete"] = rep.info
        return out
    C = ctx.C
    reps = [cocomp.category_report(C)]
    W_spec = ctx.doc["structure"].get("W", "rank1-free" if ctx.kind != "presheaf" else "all")
    if W_spec == "rank1-free":
        rep, (C, W, ds) = cocomp.rank1_fixture(FINSET, ctx.R if ctx.kind != "presheaf" else
                                               FINSET.explicit(tuple(ctx.doc["structure"]["category"]["endomorphisms_of"])))
    else:
        W = cocomp.all_presheaves(C, ctx.presheaves)
        ds = ctx.functors
        rep = cocomp.self_cocomplete_check(C, W, ds)
    reps.append(rep)
    reps.append(cocomp.co_yoneda_check(C, ds))
    eob, _ = cocomp.eobW_monoidal(C, W, ds)
    reps.append(eob)
    out = merge_reports("cocomp", reps)
    out.info["W"] = W.name
    out.info["subchecks"] = {r.check: r.status for r in reps}
    out.info["self_cocomplete"] = rep.info
    return out


def suite_acu(ctx):
    S, funs = ctx.acu, ctx.functors
    wb = cocomp.well_behaved_check(S, ctx.presheaves, funs)
    pool = funs[:ctx.doc["structure"].get("smc_pool", 3)]
    reps = [wb, cocomp.functor_naturality(S, funs),
            cocomp.acu_monoidality_report(S, funs, wb, smc_pool=pool)]
    out = merge_reports("acu", reps)
    out.info["wb"] = wb.info["verdicts"]
    out.info["monoidality"] = reps[2].info
    out.info["functors"] = [repr(F) for F in funs]
    out.info["subchecks"] = {r.check: r.status for r in reps}
    return out


SUITE_FUNCS = {
    "smc": suite_smc, "strengths": suite_strengths, "em": suite_em, "smp2": suite_smp2,
    "underlying": suite_underlying, "forg": suite_forg, "cocomp": suite_cocomp, "acu": suite_acu,
    "smpq": suite_smpq, "barphi": suite_barphi, "lift": suite_lift,
}


def run_suite(doc, name):
    ctx = Context(doc)
    if name not in SUITES_BY_KIND[ctx.kind]:
        raise InputError("suite %r does not apply to a %r fixture" % (name, ctx.kind))
    return SUITE_FUNCS[name](ctx)
