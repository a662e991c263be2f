import json
import os
import subprocess
import sys

from conftest import fixture_file, load

import skewcat


def skewcat_cmd(*args, cwd=None, env=None):
    full_env = dict(os.environ)
    full_env.pop("SKEWCAT_CAP_OVERRIDE", None)
    full_env.update(env or {})
    return subprocess.run([sys.executable, "-m", "skewcat.cli", *args], capture_output=True, text=True,
                          cwd=cwd, env=full_env)


def write(tmp_path, name, doc):
    path = tmp_path / name
    path.write_text(json.dumps(doc), encoding="utf-8")
    return str(path)


def test_validate_bundled_fixtures():
    for name in ("cartesian", "dot1", "dot2", "acu-arrow", "rank1-monoid", "broken-gamma",
                 "dim-bound-counterexample"):
        res = skewcat_cmd("validate", fixture_file(name))
        assert res.returncode == 0, (name, res.stderr)
        assert res.stdout.startswith("valid:")


def test_validate_rejects_negative_cap(tmp_path):
    doc = load("cartesian")
    doc["universe"]["caps"] = {"max_hom": -1}
    res = skewcat_cmd("validate", write(tmp_path, "neg.json", doc))
    assert res.returncode == 2
    assert "max_hom" in res.stderr


def test_validate_names_unknown_suite(tmp_path):
    doc = load("cartesian")
    doc["suites"] = ["smc", "no-such-suite"]
    res = skewcat_cmd("validate", write(tmp_path, "bad.json", doc))
    assert res.returncode == 2
    assert "no-such-suite" in res.stderr


def test_usage_errors(tmp_path):
    assert skewcat_cmd("validate", str(tmp_path / "missing.json")).returncode == 2
    (tmp_path / "junk.json").write_text("{not json", encoding="utf-8")
    assert skewcat_cmd("validate", str(tmp_path / "junk.json")).returncode == 2
    assert skewcat_cmd("frobnicate").returncode == 2
    assert skewcat_cmd("check", fixture_file("cartesian"), "--jobs", "0").returncode == 2
    res = skewcat_cmd("check", fixture_file("cartesian"), "--suite", "smc,bogus")
    assert res.returncode == 2 and "bogus" in res.stderr
    res = skewcat_cmd("check", fixture_file("acu-arrow"), "--suite", "em")
    assert res.returncode == 2
    assert skewcat_cmd("demo", "no-such-demo").returncode == 2


def test_check_cartesian_is_deterministic(tmp_path):
    outs = []
    for i in range(2):
        out = tmp_path / ("r%d.json" % i)
        res = skewcat_cmd("check", fixture_file("cartesian"), "--jobs", "1", "--seed", "7", "--out", str(out))
        assert res.returncode == 0, res.stdout + res.stderr
        report = json.loads(out.read_text())
        assert report["summary"]["fail"] == 0
        assert report["environment"]["seed"] == 7
        assert report["environment"]["version"] == skewcat.__version__
        report["environment"].pop("wall_time")
        for r in report["reports"]:
            r.pop("timing")
        outs.append(json.dumps(report, sort_keys=True))
    assert outs[0] == outs[1]


def test_check_with_parallel_jobs_matches_serial(tmp_path):
    reports = []
    for jobs in ("1", "2"):
        out = tmp_path / ("j%s.json" % jobs)
        res = skewcat_cmd("check", fixture_file("dot1"), "--suite", "smc,strengths", "--jobs", jobs,
                          "--out", str(out))
        assert res.returncode == 0
        rep = json.loads(out.read_text())["reports"]
        reports.append([{k: v for k, v in r.items() if k != "timing"} for r in rep])
    assert reports[0] == reports[1]


def test_check_dot2_smc_and_em(tmp_path):
    out = tmp_path / "dot2.json"
    res = skewcat_cmd("check", fixture_file("dot2"), "--suite", "smc,em", "--jobs", "1", "--out", str(out))
    assert res.returncode == 0, res.stdout
    by = {r["suite"]: r for r in json.loads(out.read_text())["reports"]}
    axioms = by["smc"]["info"]["axioms"]
    assert {k: axioms[k]["checked"] for k in ("SMC1", "SMC2", "SMC3", "SMC4", "SMC5")} == \
        {"SMC1": 256, "SMC2": 16, "SMC3": 16, "SMC4": 16, "SMC5": 1}
    assert by["em"]["info"]["axioms"]["hot-pentagon"]["checked"] == 7 ** 4


def test_demo_broken_gamma_and_replay(tmp_path):
    res = skewcat_cmd("demo", "broken-gamma", "--out", "report.json", cwd=tmp_path)
    assert res.returncode == 1
    assert (tmp_path / "broken-gamma.json").exists()
    report = json.loads((tmp_path / "report.json").read_text())
    (failing,) = [r for r in report["reports"] if r["status"] == "fail"]
    assert failing["suite"] == "smc" and failing["witness"]["tuple"]
    # the witness replays on the broken fixture ...
    res = skewcat_cmd("check", "broken-gamma.json", "--replay-witness", "report.json", "--out", "replay.json",
                      cwd=tmp_path)
    assert res.returncode == 1 and "reproduced" in res.stdout
    assert json.loads((tmp_path / "replay.json").read_text())["reproduced"] is True
    # ... and not on the intact structure
    res = skewcat_cmd("check", fixture_file("dot2"), "--replay-witness", "report.json", cwd=tmp_path)
    assert res.returncode == 0 and "not reproduced" in res.stdout


def test_demo_dim_bound_fails_on_sc2(tmp_path):
    res = skewcat_cmd("demo", "dim-bound-counterexample", "--out", "report.json", cwd=tmp_path)
    assert res.returncode == 1
    (rep,) = json.loads((tmp_path / "report.json").read_text())["reports"]
    assert rep["witness"]["subcheck"] == "sc-dim-bound:sc-2"


def test_demo_cartesian_passes(tmp_path):
    assert skewcat_cmd("demo", "cartesian", cwd=tmp_path).returncode == 0


def test_dot2_fixture_passes_every_suite(runs):
    # same runner and exit rule as "skewcat demo dot2", without a second minute-long run
    assert all(r["status"] == "pass" for r in runs("dot2").results)


def test_cap_override(tmp_path):
    doc = load("dot1")
    doc["universe"]["caps"] = {"max_hom": 2}
    doc["suites"] = ["smc"]
    path = write(tmp_path, "capped.json", doc)
    out = tmp_path / "capped.report.json"
    res = skewcat_cmd("check", path, "--out", str(out), "--jobs", "1")
    capped = json.loads(out.read_text())["reports"][0]
    res = skewcat_cmd("check", path, "--out", str(out), "--jobs", "1", env={"SKEWCAT_CAP_OVERRIDE": "4096"})
    assert res.returncode == 0
    raised = json.loads(out.read_text())["reports"][0]
    assert raised["skipped"] < capped["skipped"] or raised["checked"] > capped["checked"]
    res = skewcat_cmd("check", path, env={"SKEWCAT_CAP_OVERRIDE": "lots"})
    assert res.returncode == 2 and "SKEWCAT_CAP_OVERRIDE" in res.stderr
