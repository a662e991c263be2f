"""Command line: validate fixtures, run check suites, replay witnesses, materialize demos."""
from __future__ import annotations

import argparse
import json
import os
import shutil
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from importlib import resources

import jsonschema

from . import __version__
from .core import REPLAY, SkewcatError, merge_reports
from .suites import ALL_SUITES, SUITES_BY_KIND, Context, SUITE_FUNCS

EXIT_PASS, EXIT_FAIL, EXIT_INPUT = 0, 1, 2

DEMOS = ("cartesian", "dot1", "dot2", "acu-arrow", "rank1-monoid", "broken-gamma", "dim-bound-counterexample")

_labels = {"type": "array", "items": {"type": ["string", "integer"]}}
_ref = {"type": "array", "minItems": 1, "prefixItems": [{"type": "string"}], "items": {"type": "integer"}}

FIXTURE_SCHEMA = {
    "type": "object",
    "required": ["structure"],
    "properties": {
        "name": {"type": "string"},
        "description": {"type": "string"},
        "backend": {"type": "object", "required": ["kind"], "properties": {
            "kind": {"enum": ["finset", "finvec"]}, "p": {"type": "integer", "minimum": 2}}},
        "structure": {"type": "object", "required": ["kind"], "properties": {
            "kind": {"enum": ["cartesian", "dot", "presheaf", "linear"]},
            "R": _labels,
            "category": {},
            "J": {"enum": ["yoneda", "collapsed"]},
            "W": {"enum": ["all", "rank1-free"]},
            "max_size": {"type": "integer", "minimum": 0},
            "extra_functors": {"type": "integer", "minimum": 0},
            "smc_pool": {"type": "integer", "minimum": 1},
            "p": {"type": "integer", "minimum": 2},
            "bound": {"type": "integer", "minimum": 1}}},
        "universe": {"type": "object", "properties": {
            "objects": {"type": "array", "items": _labels},
            "vsets": {"type": "array", "items": _labels},
            "max_carrier": {"type": "integer", "minimum": 0},
            "algebra_carrier": {"type": "integer", "minimum": 0},
            "max_object_size": {"type": "integer", "minimum": 1},
            "caps": {"type": "object", "properties": {
                "max_hom": {"type": "integer", "minimum": 1},
                "count": {"type": "integer", "minimum": 1}}}}},
        "suites": {"type": "array", "items": {"enum": list(ALL_SUITES)}},
        "seed": {"type": "integer"},
        "expect_monoidal": {"type": "boolean"},
        "mutations": {"type": "array", "items": {
            "type": "object", "required": ["family", "objects"],
            "properties": {"family": {"type": "string"}, "objects": {"type": "array", "items": _ref},
                           "entry": {"type": "integer", "minimum": 0}, "shift": {"type": "integer", "minimum": 1},
                           "table": {"type": "array", "items": {"type": "integer", "minimum": 0}}}}},
    },
}


class UsageError(Exception):
    pass


def load_fixture(path):
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise UsageError("cannot read %s: %s" % (path, exc))
    except json.JSONDecodeError as exc:
        raise UsageError("%s is not valid JSON: %s" % (path, exc))
    validate_doc(doc)
    return doc


def validate_doc(doc):
    try:
        jsonschema.validate(doc, FIXTURE_SCHEMA)
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise UsageError("schema violation at %s: %s" % (where, exc.message))
    kind = doc["structure"]["kind"]
    if kind == "dot" and "R" not in doc["structure"]:
        raise UsageError("dot structure needs R")
    for s in doc.get("suites", []):
        if s not in SUITES_BY_KIND[kind]:
            raise UsageError("suite %r does not apply to a %s fixture" % (s, kind))
    # well-formedness: objects and categories build
    try:
        ctx = Context(doc)
        if kind in ("cartesian", "dot"):
            ctx.objects, ctx.vsets, ctx.S
        elif kind == "presheaf":
            w = ctx.C.check_laws()
            if w:
                raise UsageError("category laws fail: %s" % json.dumps(w))
    except SkewcatError as exc:
        raise UsageError(str(exc))


def default_suites(doc):
    return list(doc.get("suites") or SUITES_BY_KIND[doc["structure"]["kind"]])


def _run_group(doc, names, replay=None):
    """Run several suites sharing one fixture context (a worker unit)."""
    token = REPLAY.set(replay) if replay else None
    try:
        ctx = Context(doc)
        out = []
        for name in names:
            t0 = time.perf_counter()
            try:
                rep = SUITE_FUNCS[name](ctx)
            except SkewcatError as exc:
                from .core import CheckReport, to_json
                rep = CheckReport(name, "fail", {"error": type(exc).__name__, "message": str(exc),
                                                 "detail": to_json(getattr(exc, "witness", None))})
            rep.timing = time.perf_counter() - t0
            d = rep.to_dict()
            d["suite"] = name
            out.append(d)
        return out
    finally:
        if token is not None:
            REPLAY.reset(token)


def run_check(doc, suites, jobs=1, replay=None):
    jobs = max(1, min(jobs, len(suites)))
    if jobs == 1:
        results = _run_group(doc, suites, replay)
    else:
        groups = [suites[i::jobs] for i in range(jobs)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_run_group, [doc] * jobs, groups, [replay] * jobs))
        by_name = {d["suite"]: d for part in parts for d in part}
        results = [by_name[s] for s in suites]
    return results


def build_report(doc, results, seed, wall):
    counts = {"pass": 0, "fail": 0, "skipped": 0}
    for r in results:
        counts[r["status"]] = counts.get(r["status"], 0) + 1
    return {
        "fixture": doc.get("name"),
        "summary": dict(counts, total=len(results)),
        "reports": results,
        "environment": {"version": __version__, "seed": seed, "wall_time": round(wall, 3)},
    }


def _witness_target(w):
    if "reports" in w:
        failing = [r for r in w["reports"] if r["status"] == "fail"]
        if not failing:
            raise UsageError("report contains no failing check")
        r = failing[0]
        return r["suite"], r["witness"]
    if "suite" not in w or "witness" not in w:
        raise UsageError("witness file needs 'suite' and 'witness' (or a full report)")
    return w["suite"], w["witness"]


def cmd_check(args):
    doc = load_fixture(args.file)
    suites = default_suites(doc)
    if args.suite:
        suites = [s.strip() for s in args.suite.split(",") if s.strip()]
        for s in suites:
            if s not in SUITE_FUNCS:
                raise UsageError("unknown suite %r" % s)
            if s not in SUITES_BY_KIND[doc["structure"]["kind"]]:
                raise UsageError("suite %r does not apply to a %s fixture" % (s, doc["structure"]["kind"]))
    if args.seed is not None:
        doc["seed"] = args.seed
    seed = doc.get("seed", 0)
    jobs = args.jobs if args.jobs is not None else (os.cpu_count() or 1)
    if args.replay_witness:
        return replay(doc, args.replay_witness, args.out)
    t0 = time.perf_counter()
    results = run_check(doc, suites, jobs)
    report = build_report(doc, results, seed, time.perf_counter() - t0)
    for r in results:
        line = "%-12s %-7s checked=%d skipped=%d" % (r["suite"], r["status"], r["checked"], r["skipped"])
        if r["status"] == "fail":
            line += "  witness=" + json.dumps(r["witness"], sort_keys=True)
        print(line)
    if args.out:
        write_json(args.out, report)
    return EXIT_FAIL if report["summary"]["fail"] else EXIT_PASS


def replay(doc, path, out=None):
    try:
        with open(path, encoding="utf-8") as fh:
            w = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError("cannot read witness %s: %s" % (path, exc))
    suite, witness = _witness_target(w)
    if suite not in SUITES_BY_KIND[doc["structure"]["kind"]]:
        raise UsageError("witness suite %r does not apply to this fixture" % suite)
    target = (witness.get("subcheck", suite), witness.get("tuple"))
    results = run_check(doc, [suite], 1, replay=target)
    got = results[0]
    same = got["status"] == "fail" and _strip(got["witness"]) == _strip(witness)
    print("replay %s %s tuple=%s: %s" % (suite, target[0], json.dumps(target[1]),
                                          "reproduced" if same else "not reproduced"))
    if out:
        write_json(out, {"suite": suite, "target": list(target), "reproduced": same, "report": got})
    return EXIT_FAIL if same else EXIT_PASS


def _strip(w):
    return {k: v for k, v in (w or {}).items() if k != "subcheck"}


def cmd_validate(args):
    doc = load_fixture(args.file)
    print("valid: %s (%s, suites: %s)" % (doc.get("name", args.file), doc["structure"]["kind"],
                                         ",".join(default_suites(doc))))
    return EXIT_PASS


def fixture_path(name):
    return resources.files("skewcat").joinpath("fixtures", name + ".json")


def cmd_demo(args):
    if args.name not in DEMOS:
        raise UsageError("unknown demo %r (choose from %s)" % (args.name, ", ".join(DEMOS)))
    src = fixture_path(args.name)
    dest = os.path.join(os.getcwd(), args.name + ".json")
    with resources.as_file(src) as p:
        shutil.copyfile(p, dest)
    print("wrote %s" % dest)
    ns = argparse.Namespace(file=dest, suite=None, jobs=args.jobs, seed=None, out=args.out, replay_witness=None)
    return cmd_check(ns)


def write_json(path, data):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(data, fh, indent=2, sort_keys=True)
        fh.write("\n")


def build_parser():
    p = argparse.ArgumentParser(prog="skewcat", description=__doc__)
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="cmd", required=True)
    v = sub.add_parser("validate", help="check a fixture against the schema")
    v.add_argument("file")
    c = sub.add_parser("check", help="run check suites on a fixture")
    c.add_argument("file")
    c.add_argument("--suite", help="comma separated suite names")
    c.add_argument("--jobs", type=int, help="worker processes (default: cpu count)")
    c.add_argument("--seed", type=int)
    c.add_argument("--out", help="write the JSON report here")
    c.add_argument("--replay-witness", help="re-run one failing tuple from a witness or report file")
    d = sub.add_parser("demo", help="materialize a bundled fixture and check it")
    d.add_argument("name")
    d.add_argument("--jobs", type=int)
    d.add_argument("--out")
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_PASS
    if getattr(args, "jobs", None) is not None and args.jobs < 1:
        print("error: --jobs must be positive", file=sys.stderr)
        return EXIT_INPUT
    handler = {"validate": cmd_validate, "check": cmd_check, "demo": cmd_demo}[args.cmd]
    try:
        return handler(args)
    except UsageError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_INPUT
    except SkewcatError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
