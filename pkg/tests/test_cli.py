from __future__ import annotations

import io
import json
import subprocess
import sys

import pytest

from prefcycles import complex as cx
from prefcycles.cli import run
from prefcycles.social_choice import borda_table, random_iia_table


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_table1_text():
    code, out, _ = call("table1")
    assert code == 0
    assert "KleinBottle" in out and out.rstrip().endswith("PASS")


def test_model_classify():
    code, out, _ = call("model", "--kind", "contradictory-realised", "--classify")
    assert code == 0 and out.strip() == "ProjectivePlane"


def test_model_double_cover_is_a_sphere():
    code, out, _ = call("model", "--kind", "contradictory-realised", "--double-cover")
    assert code == 0 and "Sphere" in out and "chi=2" in out


@pytest.mark.parametrize("argv", [
    ("enumerate", "--what", "weak", "--format", "json"),
    ("nerve", "--cover", "U", "--format", "json"),
    ("export", "--kind", "contradictory-unrealised"),
    ("export", "--cover", "V", "--format", "off"),
    ("arrow-check", "--format", "json"),
])
def test_output_is_deterministic(argv):
    first, second = call(*argv), call(*argv)
    assert first[0] == 0 and first == second


def test_enumerate_counts():
    assert json.loads(call("enumerate", "--what", "weak", "--format", "json")[1])["count"] == 13
    assert len(call("enumerate", "--what", "strict")[1].splitlines()) == 6


def test_arrow_check_json():
    code, out, _ = call("arrow-check", "--swf", "pairwise-majority", "--individuals", "3", "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert data["orientable"] is False and data["non_dictatorship"] is True and data["theorem_holds"] is True
    assert data["surface"]["tag"] == "ProjectivePlane"


def test_arrow_check_strict_reading_reports_a_failed_verdict():
    code, out, _ = call("arrow-check", "--cycles", "strict", "--format", "json")
    assert code == 0 and json.loads(out)["theorem_holds"] is False


def test_arrow_check_dictator():
    code, out, _ = call("arrow-check", "--swf", "dictator:1")
    assert code == 0 and "surface: Annulus" in out and "theorem_holds: True" in out


def test_arrow_check_lookup_table(tmp_path):
    path = tmp_path / "swf.json"
    path.write_text(json.dumps(random_iia_table(2, 3, seed=1).to_json()))
    code, out, _ = call("arrow-check", "--swf", f"table:{path}", "--format", "json")
    assert code == 0 and json.loads(out)["theorem_holds"]


def test_precondition_failure_exits_one_with_json_certificate(tmp_path):
    path = tmp_path / "borda.json"
    path.write_text(json.dumps(borda_table(2).to_json()))
    code, out, err = call("arrow-check", "--swf", f"table:{path}", "--error-json")
    assert code == 1 and out == ""
    data = json.loads(err)
    assert data["error"] == "precondition" and data["certificate"]


def test_semantic_error_exits_one():
    code, _, err = call("puncture", "--kind", "contradictory-realised", "--remove", "1<2<3<1")
    assert code == 1 and err.startswith("error (semantic)") and "valid-unrealised" in err


@pytest.mark.parametrize("argv", [
    ("model", "--kind", "bogus"),
    ("frobnicate",),
    ("puncture", "--remove", "1<2<3"),
    ("arrow-check", "--triple", "1,x,3"),
])
def test_usage_errors_exit_two(argv):
    assert call(*argv)[0] == 2


def test_puncture_classify():
    code, out, _ = call("puncture", "--kind", "contradictory-realised", "--remove", "1<2<3", "--classify")
    assert code == 0 and out.strip() == "MobiusStrip"
    code, out, _ = call("puncture", "--kind", "valid-realised", "--remove", "1<2<3<1,1<3<2<1", "--classify")
    assert out.strip() == "Annulus"


def test_out_file_and_classify_round_trip(tmp_path):
    path = tmp_path / "klein.json"
    code, out, _ = call("export", "--kind", "contradictory-unrealised", "--out", str(path))
    assert code == 0 and out == ""
    assert cx.from_json(json.loads(path.read_text())).counts == (3, 9, 6)
    code, out, _ = call("classify", "--input", str(path))
    assert code == 0 and "KleinBottle" in out


def test_dot_and_off_exports():
    assert call("export", "--cover", "U", "--format", "dot")[1].lstrip().startswith(("graph", "digraph"))
    off = call("export", "--kind", "valid-realised", "--format", "off")[1].splitlines()
    assert off[0] == "OFF"


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "prefcycles", "table1"], capture_output=True, text=True)
    assert proc.returncode == 0 and "PASS" in proc.stdout
