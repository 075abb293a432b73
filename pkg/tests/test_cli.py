import io
import json
import subprocess
import sys
from importlib import resources

import pytest

from hyperkit.cli import run
from hyperkit.dsl import parse
from hyperkit.build import check_document
from hyperkit.report import Report


def data(name):
    return str(resources.files("hyperkit").joinpath("data", name))


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code, rep = run(list(argv), out, err)
    return code, rep, out.getvalue(), err.getvalue()


@pytest.mark.parametrize("name, code", [
    ("sign.hyp", 0), ("sign_field.hyp", 0), ("krasner.hyp", 0), ("convolution.hyp", 0), ("two_inverses.hyp", 1),
    ("gf4_valuation.hyp", 1),
])
def test_check_corpus(name, code):
    assert call("check", data(name))[0] == code


def test_two_inverses_names_h3():
    _, rep, _, _ = call("check", data("two_inverses.hyp"))
    assert [c.name for c in rep.checks if not c.ok] and all("H3" in c.name for c in rep.checks if not c.ok)


def test_convolve_witness():
    code, rep, _, _ = call("convolve", data("convolution.hyp"), "--format", "json")
    assert code == 1
    failed = [c for c in rep.checks if not c.ok]
    assert failed[0].witness == {"x": "1", "left": -8, "right": -6}


def test_syntax_error_exit_2(tmp_path):
    p = tmp_path / "bad.hyp"
    p.write_text("hypergroup X { elements: a\n identity: a\n table:\n }\n")
    code, rep, _, err = call("check", str(p))
    assert code == 2 and rep is None
    assert "1:12: missing cell a*a" in err


def test_usage_errors(tmp_path):
    assert call("check", str(tmp_path / "nope.hyp"))[0] == 2
    assert call("frobnicate")[0] == 2
    assert call("quotient", "--ring", "zmod:5", "--subgroup", "1,2")[0] == 2
    assert call("decompose", "--padic", "4")[0] == 2


def test_gf4_valuation_decompose():
    code, rep, _, _ = call("decompose", data("gf4_valuation.hyp"))
    assert code == 1
    assert {c.name for c in rep.checks if not c.ok} == {
        "W: G linear order", "W: v: codomain linearly ordered", "W: decomposition"}
    assert rep.find("W: w = h∘v").ok and rep.find("W: O_v = O_w").ok
    _, rep, _, _ = call("check", data("gf4_valuation.hyp"))
    assert rep.find("W: valuation hyperring").witness == ["t"]
    assert rep.find("W: G linear order").witness == ["1", "t"]


def test_counterexamples():
    code, rep, text, _ = call("counterexamples")
    assert code == 0
    assert rep.find("convolution: ((fg)h)(1) = -8, (f(gh))(1) = -6").ok
    assert "-8" in text and "-6" in text


def test_quotient_output_rechecks():
    code, _, text, _ = call("quotient", "--ring", "zmod:5", "--subgroup", "1,4", "--name", "F5")
    assert code == 0
    doc = parse(text)
    assert doc.get("F5").kind == "hyperfield" and check_document(doc).ok


def test_quotient_json_carries_dsl():
    code, rep, text, _ = call("quotient", "--ring", "zmod:8", "--subgroup", "1,7", "--format", "json")
    assert code == 0
    d = json.loads(text)
    assert parse(d["summary"]["dsl"]).structures()[0].kind == "hyperring"


def test_json_schema():
    _, _, text, _ = call("check", data("sign.hyp"), "--format", "json")
    d = json.loads(text)
    assert d["tool_version"] and len(d["input_digest"]) == 64
    assert d["checks"]
    for c in d["checks"]:
        assert set(c) >= {"name", "verdict", "details"} and c["verdict"] in ("pass", "fail")


def test_report_round_trip_and_digest():
    _, rep, _, _ = call("check", data("sign_field.hyp"), "--format", "json")
    back = Report.from_json(rep.to_json())
    assert back.to_dict() == rep.to_dict()
    _, rep2, _, _ = call("check", data("sign_field.hyp"), "--format", "json")
    assert rep.digest() == rep2.digest()


def test_enumerate_emit():
    code, rep, text, _ = call("enumerate", "--order", "3", "--kind", "hypergroup", "--emit")
    assert code == 0
    assert len(parse(text).structures()) == 10


def test_decompose_padic():
    code, rep, _, _ = call("decompose", "--padic", "2", "--samples", "500")
    assert code == 0


def test_module_entry_point():
    p = subprocess.run([sys.executable, "-m", "hyperkit", "check", data("sign.hyp")], capture_output=True, text=True)
    assert p.returncode == 0 and "PASS" in p.stdout
