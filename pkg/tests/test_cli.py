"""Campaign determinism, exit codes, report format, and the eval commands."""

import json
import re

import pytest

from qpslab.campaigns import CampaignConfig, UsageError, eval_command, run_suite
from qpslab.cli import main
from qpslab.conventions import CONVENTIONS_HASH


def strip_timestamp(text: str) -> str:
    return re.sub(r'"generated_at": "[^"]*"', '"generated_at": ""', text)


def test_report_deterministic_apart_from_timestamp():
    cfg = lambda: CampaignConfig(suite="cartan-dirac", group="sl2",
                                 samples=4, seed=42)
    r1 = run_suite(cfg())
    r2 = run_suite(cfg())
    assert strip_timestamp(r1.to_json()) == strip_timestamp(r2.to_json())
    assert r1.summary["failed"] == r1.summary["total"] - r1.summary["passed"]


def test_jobs_do_not_change_the_report():
    base = run_suite(CampaignConfig(suite="lemma-kernel", group="sl2",
                                    samples=6, seed=5))
    par = run_suite(CampaignConfig(suite="lemma-kernel", group="sl2",
                                   samples=6, seed=5, jobs=2))
    a, b = json.loads(base.to_json()), json.loads(par.to_json())
    a["generated_at"] = b["generated_at"] = ""
    a["config"]["jobs"] = b["config"]["jobs"] = 1
    assert a == b


def test_report_schema_fields():
    rep = run_suite(CampaignConfig(suite="regact", group="sl2", samples=2, seed=1))
    data = json.loads(rep.to_json())
    assert data["schema"] == "qpslab/1"
    assert data["conventions_hash"] == CONVENTIONS_HASH
    assert set(data["summary"]) == {"total", "passed", "failed"}
    for rec in data["checks"]:
        assert {"check_id", "passed", "point", "point_index"} <= set(rec)


def test_cli_exit_codes(tmp_path, capsys):
    rpt = tmp_path / "r.json"
    assert main(["verify", "cartan-dirac", "--group", "sl2", "--samples", "2",
                 "--seed", "3", "--report", str(rpt)]) == 0
    assert rpt.exists()
    # corrupted conventions must fail (negative control)
    assert main(["verify", "dorfman-closure", "--group", "sl2", "--samples", "1",
                 "--corrupt", "sigma-half", "--report", str(rpt)]) == 1
    # a structurally corrupted sigma breaks the kernel criterion, with witnesses
    assert main(["verify", "lemma-kernel", "--group", "sl2", "--samples", "2",
                 "--corrupt", "sigma-ad-flip", "--report", str(rpt)]) == 1
    data = json.loads(rpt.read_text())
    assert any("witness" in rec for rec in data["checks"])
    # usage errors
    assert main(["verify", "gs-theorem1", "--backend", "float"]) == 2
    assert main(["verify", "cartan-dirac", "--samples", "0"]) == 2
    with pytest.raises(SystemExit) as exc:
        main(["verify", "no-such-suite"])
    assert exc.value.code == 2
    capsys.readouterr()


def test_cli_env_default_group(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("QPSLAB_DEFAULT_GROUP", "gl2")
    rpt = tmp_path / "r.json"
    assert main(["verify", "regact", "--samples", "1", "--report", str(rpt)]) == 0
    data = json.loads(rpt.read_text())
    assert data["config"]["group"] == "gl2"
    # explicit flag wins
    assert main(["verify", "regact", "--samples", "1", "--group", "sl2",
                 "--report", str(rpt)]) == 0
    data = json.loads(rpt.read_text())
    assert data["config"]["group"] == "sl2"
    capsys.readouterr()


IDENTITY2 = {
    "group": "sl2", "rows": 2, "cols": 2,
    "entries": [["1", "0"], ["0", "0"], ["0", "0"], ["1", "0"]],
}


def test_eval_kappa():
    out = eval_command("kappa", IDENTITY2)
    assert out == {"group": "sl2", "kappa": ["2"]}


def test_eval_steinberg():
    unip = {"rows": 2, "cols": 2,
            "entries": [["1", "0"], ["1", "0"], ["0", "0"], ["1", "0"]]}
    ident = {"rows": 2, "cols": 2,
             "entries": [["1", "0"], ["0", "0"], ["0", "0"], ["1", "0"]]}
    out = eval_command("steinberg", {"group": "sl2", "g": unip, "t": ident})
    assert out == {"member": True}


def test_eval_fiber_enum():
    diag = {"group": "sl2", "rows": 2, "cols": 2,
            "entries": [["2", "0"], ["0", "0"], ["0", "0"], ["1/2", "0"]]}
    out = eval_command("fiber-enum", diag)
    assert out["count"] == 2
    assert all(r < 1e-8 for r in out["residuals"])


def test_eval_leaf_form():
    from qpslab.gspringer import sample_gspoint
    from qpslab.prng import SplitMix64
    from qpslab.liegroup import context

    pt = sample_gspoint(context("sl2"), SplitMix64(9))
    out = eval_command("leaf-form", pt.to_json())
    assert out["checks"]["passed"]
    assert out["matrix"]["rows"] == 2


def test_eval_unknown_kind():
    with pytest.raises(UsageError):
        eval_command("nope", {})


def test_cli_eval_file_errors(tmp_path, capsys):
    assert main(["eval", "kappa", str(tmp_path / "missing.json")]) == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{}")
    assert main(["eval", "kappa", str(bad)]) == 2
    # non-regular input to fiber-enum is an input error
    unip = tmp_path / "unip.json"
    unip.write_text(json.dumps({
        "group": "sl2", "rows": 2, "cols": 2,
        "entries": [["1", "0"], ["1", "0"], ["0", "0"], ["1", "0"]],
    }))
    assert main(["eval", "fiber-enum", str(unip)]) == 2
    capsys.readouterr()


def test_matio_accepts_plain_numbers_for_floats():
    from qpslab.matio import mat_from_json, mat_to_json
    from qpslab.linalg import FLOAT

    m = mat_from_json({"rows": 1, "cols": 2, "entries": [0.5, [1, -2]]})
    assert m.backend == FLOAT
    assert m.entry(0, 0) == 0.5 and m.entry(0, 1) == 1 - 2j
    exact = mat_from_json({"rows": 1, "cols": 1, "entries": [["3/4", "0"]]})
    round_trip = mat_from_json(mat_to_json(exact))
    assert round_trip == exact
    with pytest.raises(ValueError):
        mat_from_json({"rows": 2, "cols": 2, "entries": []})
