"""Law-checking substrate: errors, reports, universes, functors and natural families.

Everything here is backend-agnostic.  A *category* is any object exposing
``identity``, ``compose``, ``diff`` and ``hom_set``; both concrete backends and the
derived algebra categories satisfy that protocol.
"""
from __future__ import annotations

import contextvars
import itertools
import json
import time
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Sequence


class SkewcatError(Exception):
    """Base class for engine errors."""


class InputError(SkewcatError):
    """Malformed descriptor or fixture."""


class CapExceeded(SkewcatError):
    """An enumeration would exceed a configured size cap."""


class PreconditionError(SkewcatError):
    """A factorization or construction precondition failed."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class StructuralError(SkewcatError):
    """A constructed datum failed re-validation (e.g. a lifted action is not an algebra)."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class Skip(Exception):
    """Raised inside a tuple check to mark the tuple as skipped."""


def to_json(label):
    """Convert an element label or value into plain JSON data."""
    if isinstance(label, (str, int, bool)) or label is None:
        return label
    if isinstance(label, tuple):
        return [to_json(x) for x in label]
    if isinstance(label, frozenset):
        items = [[to_json(l), c] for l, c in label]
        items.sort(key=lambda it: json.dumps(it, sort_keys=True))
        return {"vec": items}
    if isinstance(label, list):
        return [to_json(x) for x in label]
    if isinstance(label, dict):
        return {str(k): to_json(v) for k, v in label.items()}
    return repr(label)


def mismatch(f, g):
    """Witness dict for the first point where two parallel morphisms differ, or None."""
    d = f.dom.base.backend.diff(f, g)
    if d is None:
        return None
    p, a, b = d
    return {"point": to_json(p), "lhs": to_json(a), "rhs": to_json(b)}


@dataclass
class CheckReport:
    check: str
    status: str = "pass"
    witness: dict | None = None
    checked: int = 0
    skipped: int = 0
    skip_reasons: list = field(default_factory=list)
    info: dict = field(default_factory=dict)
    timing: float = 0.0

    def __post_init__(self):
        if (self.status == "fail") != (self.witness is not None):
            raise ValueError("status fail iff witness present")

    @property
    def passed(self):
        return self.status != "fail"

    def to_dict(self):
        return {
            "check": self.check,
            "status": self.status,
            "witness": self.witness,
            "checked": self.checked,
            "skipped": self.skipped,
            "skip_reasons": self.skip_reasons,
            "info": self.info,
            "timing": round(self.timing, 4),
        }


# (check id, tuple ref) restricting one check to a single tuple when replaying a witness
REPLAY = contextvars.ContextVar("skewcat_replay", default=None)


def run_tuples(check_id, tuples, fn, info=None, stop_at_first=True):
    """Run ``fn`` over tuples; ``fn`` returns None on pass or a witness dict on failure.

    Each tuple is ``(ref, args)`` where ``ref`` is a JSON-able locator recorded in the
    witness so that the failure can be replayed.
    """
    t0 = time.perf_counter()
    rep = CheckReport(check_id, info=dict(info or {}))
    witness = None
    target = REPLAY.get()
    if target is not None and target[0] == check_id and target[1] is not None:
        tuples = [(ref, args) for ref, args in tuples if ref == target[1]]
        rep.info["replayed"] = target[1]
    for ref, args in tuples:
        try:
            w = fn(*args)
        except Skip as exc:
            rep.skipped += 1
            if len(rep.skip_reasons) < 3:
                rep.skip_reasons.append(str(exc))
            continue
        except CapExceeded as exc:
            rep.skipped += 1
            if len(rep.skip_reasons) < 3:
                rep.skip_reasons.append("cap: %s" % exc)
            continue
        except (PreconditionError, StructuralError) as exc:
            w = {"error": str(exc), "detail": to_json(exc.witness)}
        rep.checked += 1
        if w is not None and witness is None:
            witness = dict(w)
            witness["tuple"] = ref
            if stop_at_first:
                break
    if witness is not None:
        rep.status = "fail"
        rep.witness = witness
    elif rep.checked == 0 and rep.skipped > 0:
        rep.status = "skipped"
    rep.timing = time.perf_counter() - t0
    return rep


def single(check_id, fn, ref=None, info=None):
    """Run a check with no tuple structure (its replay locator is ``[["whole"]]`` by default)."""
    return run_tuples(check_id, [(ref if ref is not None else [["whole"]], ())], fn, info=info)


@dataclass
class TestUniverse:
    """Declared finite universe over which all quantification happens."""

    objects: list
    vsets: list = field(default_factory=list)
    algebras: list | None = None
    eobjects: list | None = None
    max_hom: int = 4096
    max_object_size: int = 4
    seed: int = 0

    __test__ = False  # not a pytest class

    def __post_init__(self):
        if self.max_hom <= 0 or self.max_object_size <= 0:
            raise InputError("caps must be positive")
        for X in self.objects:
            if X.base.size > self.max_object_size:
                raise CapExceeded("object %r exceeds max-object-size %d" % (X, self.max_object_size))

    def refs(self, n, kind="obj", pool=None):
        """All n-tuples of (ref, object) drawn from a pool."""
        pool = self.objects if pool is None else pool
        for idx in itertools.product(range(len(pool)), repeat=n):
            yield [[kind, i] for i in idx], tuple(pool[i] for i in idx)

    def morphisms(self, cat):
        """All universe morphisms as (ref, mor) pairs, within the hom cap."""
        out = []
        for i, X in enumerate(self.objects):
            for j, Y in enumerate(self.objects):
                try:
                    hs = cat.hom_set(X, Y)
                except CapExceeded:
                    continue
                for k, f in enumerate(hs.morphisms):
                    out.append((["mor", i, j, k], f))
        return out


# ---------------------------------------------------------------------------
# functors and natural families


@dataclass
class FunctorData:
    dom: Any
    cod: Any
    obj: Callable
    mor: Callable
    name: str = "F"


@dataclass
class BifunctorData:
    dom1: Any
    dom2: Any
    cod: Any
    obj: Callable
    mor: Callable  # (f, g) -> f (x) g
    name: str = "tensor"


@dataclass
class NatFamily:
    """A natural family indexed by object tuples.

    ``source``/``target`` take objects to objects, ``source_mor``/``target_mor``
    take a tuple of morphisms (one per index) to a morphism.
    """

    name: str
    arity: int
    component: Callable
    source_mor: Callable
    target_mor: Callable
    category: Any


def check_category_laws(cat, u: TestUniverse, check_id="category-laws"):
    """Associativity on composable triples and unit laws on all universe morphisms."""
    mors = u.morphisms(cat)
    by_dom = {}
    for ref, f in mors:
        by_dom.setdefault(f.dom, []).append((ref, f))

    def units(f):
        w = mismatch(cat.compose(f, cat.identity(f.dom)), f)
        return w or mismatch(cat.compose(cat.identity(f.cod), f), f)

    def triples():
        for rf, f in mors:
            for rg, g in by_dom.get(f.cod, ()):
                for rh, h in by_dom.get(g.cod, ()):
                    yield [rf, rg, rh], (f, g, h)

    def assoc(f, g, h):
        return mismatch(cat.compose(h, cat.compose(g, f)), cat.compose(cat.compose(h, g), f))

    r1 = run_tuples(check_id + ":unit", [([rf], (f,)) for rf, f in mors], units)
    r2 = run_tuples(check_id + ":assoc", triples(), assoc)
    return merge_reports(check_id, [r1, r2])


def merge_reports(check_id, reports):
    """Fold several reports into one (first failure wins)."""
    out = CheckReport(check_id)
    for r in reports:
        out.checked += r.checked
        out.skipped += r.skipped
        for reason in r.skip_reasons:
            if len(out.skip_reasons) < 3:
                out.skip_reasons.append(reason)
        out.timing += r.timing
        if r.status == "fail" and out.witness is None:
            out.witness = dict(r.witness)
            out.witness.setdefault("subcheck", r.check)
            out.status = "fail"
    if out.status == "pass" and out.checked == 0 and out.skipped:
        out.status = "skipped"
    return out


def check_functoriality(F: FunctorData, u: TestUniverse, check_id=None):
    check_id = check_id or "functoriality:%s" % F.name
    mors = u.morphisms(F.dom)

    def ident(X):
        return mismatch(F.mor(F.dom.identity(X)), F.cod.identity(F.obj(X)))

    def comp(f, g):
        return mismatch(F.mor(F.dom.compose(g, f)), F.cod.compose(F.mor(g), F.mor(f)))

    pairs = [([rf, rg], (f, g)) for rf, f in mors for rg, g in mors if g.dom == f.cod]
    r1 = run_tuples(check_id + ":id", [(["obj", i], (X,)) for i, X in enumerate(u.objects)], ident)
    r2 = run_tuples(check_id + ":comp", pairs, comp)
    return merge_reports(check_id, [r1, r2])


def check_bifunctoriality(B: BifunctorData, u: TestUniverse, check_id=None):
    """Functorial in each argument separately plus interchange."""
    check_id = check_id or "bifunctoriality:%s" % B.name
    cat = B.cod
    mors = u.morphisms(B.dom1)
    objs = list(enumerate(u.objects))
    idm = B.dom1.identity

    def left(f, g, Y):
        return mismatch(B.mor(B.dom1.compose(g, f), idm(Y)),
                        cat.compose(B.mor(g, idm(Y)), B.mor(f, idm(Y))))

    def right(f, g, X):
        return mismatch(B.mor(idm(X), B.dom2.compose(g, f)),
                        cat.compose(B.mor(idm(X), g), B.mor(idm(X), f)))

    def inter(f, g):
        a = cat.compose(B.mor(f, idm(g.cod)), B.mor(idm(f.dom), g))
        b = cat.compose(B.mor(idm(f.cod), g), B.mor(f, idm(g.dom)))
        return mismatch(a, B.mor(f, g)) or mismatch(b, B.mor(f, g))

    pairs = [(rf, f, rg, g) for rf, f in mors for rg, g in mors if g.dom == f.cod]
    r1 = run_tuples(check_id + ":left", ([[rf, rg, ["obj", j]], (f, g, Y)] for rf, f, rg, g in pairs for j, Y in objs), left)
    r2 = run_tuples(check_id + ":right", ([[rf, rg, ["obj", j]], (f, g, X)] for rf, f, rg, g in pairs for j, X in objs), right)
    r3 = run_tuples(check_id + ":interchange", ([[rf, rg], (f, g)] for rf, f in mors for rg, g in mors), inter)
    return merge_reports(check_id, [r1, r2, r3])


def naturality_tuples(nu: NatFamily, u: TestUniverse, pool=None, mors=None):
    """Morphism tuples varying one index at a time (identities elsewhere).

    Naturality of a multi-indexed family over functors built from bifunctors is
    equivalent to naturality in each index separately.
    """
    pool = u.objects if pool is None else pool
    mors = u.morphisms(nu.category) if mors is None else mors
    cat = nu.category
    n = nu.arity
    for k in range(n):
        for ref, f in mors:
            for rest in itertools.product(range(len(pool)), repeat=n - 1):
                args, refs = [], []
                it = iter(rest)
                for pos in range(n):
                    if pos == k:
                        args.append(f)
                        refs.append(ref)
                    else:
                        i = next(it)
                        args.append(cat.identity(pool[i]))
                        refs.append(["id", i])
                yield refs, tuple(args)


def check_naturality(nu: NatFamily, u: TestUniverse, check_id=None, tuples=None):
    check_id = check_id or "naturality:%s" % nu.name
    cat = nu.category

    def square(*fs):
        srcs = tuple(f.dom for f in fs)
        tgts = tuple(f.cod for f in fs)
        lhs = cat.compose(nu.component(*tgts), nu.source_mor(*fs))
        rhs = cat.compose(nu.target_mor(*fs), nu.component(*srcs))
        return mismatch(lhs, rhs)

    return run_tuples(check_id, tuples if tuples is not None else naturality_tuples(nu, u), square)


# ---------------------------------------------------------------------------
# small finite categories


class FiniteCategory:
    """A finite category given by tables.

    ``homs[(a, b)]`` lists morphism labels from ``a`` to ``b``; ``comp[(g, f)]`` is the
    label of g∘f; ``ident[a]`` is the identity label.  Labels are globally unique.
    """

    def __init__(self, objects, homs, comp, ident, name="C"):
        self.objects = tuple(objects)
        self.homs = {k: tuple(v) for k, v in homs.items()}
        self.comp = dict(comp)
        self.ident = dict(ident)
        self.name = name
        self.src, self.tgt = {}, {}
        for (a, b), fs in self.homs.items():
            for f in fs:
                self.src[f], self.tgt[f] = a, b
        for a in self.objects:
            for b in self.objects:
                self.homs.setdefault((a, b), ())

    @property
    def morphisms(self):
        return tuple(self.src)

    def hom(self, a, b):
        return self.homs[(a, b)]

    def compose(self, g, f):
        if self.tgt[f] != self.src[g]:
            raise InputError("not composable: %r after %r" % (g, f))
        return self.comp[(g, f)]

    def check_laws(self):
        """Witness of a failed category law, or None."""
        for f in self.morphisms:
            a, b = self.src[f], self.tgt[f]
            if self.compose(f, self.ident[a]) != f or self.compose(self.ident[b], f) != f:
                return {"unit": f}
        for f in self.morphisms:
            for g in self.homs_from(self.tgt[f]):
                for h in self.homs_from(self.tgt[g]):
                    if self.compose(h, self.compose(g, f)) != self.compose(self.compose(h, g), f):
                        return {"assoc": [f, g, h]}
        return None

    def homs_from(self, a):
        return [f for f in self.morphisms if self.src[f] == a]

    @classmethod
    def trivial(cls):
        return cls(["*"], {("*", "*"): ["id"]}, {("id", "id"): "id"}, {"*": "id"}, name="1")

    @classmethod
    def walking_arrow(cls):
        homs = {("0", "0"): ["id0"], ("1", "1"): ["id1"], ("0", "1"): ["f"]}
        comp = {("id0", "id0"): "id0", ("id1", "id1"): "id1", ("f", "id0"): "f", ("id1", "f"): "f"}
        return cls(["0", "1"], homs, comp, {"0": "id0", "1": "id1"}, name="arrow")

    @classmethod
    def from_monoid(cls, elements, mult, unit, name="E"):
        """One-object category of a finite monoid; ``mult(g, f)`` is g∘f."""
        els = list(elements)
        comp = {(g, f): mult(g, f) for g in els for f in els}
        return cls(["*"], {("*", "*"): els}, comp, {"*": unit}, name=name)

    def to_dict(self):
        return {
            "objects": list(self.objects),
            "morphisms": [[f, self.src[f], self.tgt[f]] for f in self.morphisms],
            "compose": [[g, f, gf] for (g, f), gf in sorted(self.comp.items())],
            "identity": dict(self.ident),
        }

    @classmethod
    def from_dict(cls, d):
        homs = {}
        for f, a, b in d["morphisms"]:
            homs.setdefault((a, b), []).append(f)
        comp = {(g, f): gf for g, f, gf in d["compose"]}
        return cls(d["objects"], homs, comp, d["identity"], name=d.get("name", "C"))


def first(xs: Iterable, pred: Callable):
    for x in xs:
        if pred(x):
            return x
    return None


def pairwise(seq: Sequence):
    return list(itertools.product(seq, repeat=2))


class Tamper:
    """Single-entry corruptions of named component families (mutation testing).

    Entries are keyed by ``(family, objects)``; each either shifts the output at one
    domain point to another codomain point or replaces the whole table.
    """

    def __init__(self, keyfn=None):
        self.entries = {}
        self.keyfn = keyfn  # maps an object to a hashable locator; identity when None

    def __bool__(self):
        return bool(self.entries)

    def shift(self, family, objs, entry, shift=1):
        self.entries[(family, tuple(objs))] = ("shift", entry, shift)
        return self

    def table(self, family, objs, table):
        self.entries[(family, tuple(objs))] = ("table", tuple(table))
        return self

    def apply(self, family, objs, mor):
        key = tuple(objs) if self.keyfn is None else tuple(self.keyfn(o) for o in objs)
        spec = self.entries.get((family, key))
        if spec is None:
            return mor
        B = mor.dom.base.backend
        dom, cod = mor.dom.base.points, mor.cod.base.points
        if spec[0] == "table":
            vals = {x: B.unit_value(cod[i]) for x, i in zip(dom, spec[1])}
        else:
            _, entry, shift = spec
            vals = {}
            if dom:
                x = dom[entry % len(dom)]
                old = mor(x)
                if hasattr(B, "p"):
                    bump = B.unit_value(cod[shift % len(cod)])
                    new = frozenset(_vadd(old, bump, B.p).items())
                else:
                    new = cod[(mor.cod.base.index(old) + shift) % len(cod)]
                vals[x] = new

        def fn(p, _m=mor, _v=vals):
            return _v[p] if p in _v else _m(p)

        out = type(mor)(mor.dom, mor.cod, fn, (mor.name or "") + "~")
        return out


def _vadd(a, b, p):
    acc = {}
    for l, c in list(a) + list(b):
        acc[l] = (acc.get(l, 0) + c) % p
    return {l: c for l, c in acc.items() if c}
