import csv
import io
import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from golden import R32, S32, T32
from sternenum.cli import run
from sternenum.enumerations import prefix
from sternenum.exact import format_value, from_json


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def test_gen_r():
    assert call("gen", "r", "--count", "5") == (0, "1/1 2/1 1/2 3/1 2/3\n", "")


@pytest.mark.parametrize("tag, listing", [("r", R32), ("s", S32), ("t", T32)])
def test_gen_listings(tag, listing):
    code, out, _ = call("gen", tag, "--count", "32")
    assert code == 0 and out.split() == listing.split()


def test_gen_u_phi_basis():
    code, out, _ = call("gen", "u", "--count", "7")
    assert out.split() == ["1+phi", "phi", "1", "2+2*phi", "1/2+phi", "3-phi", "2/5+1/5*phi"]


def test_gen_family():
    code, out, _ = call("gen", "b", "--count", "5")
    assert out.split() == ["0", "1", "sqrt2", "1", "2*sqrt2"]


@settings(max_examples=10)
@given(st.sampled_from("rstu"), st.integers(1, 300))
def test_methods_give_identical_output(tag, n):
    outs = {call("gen", tag, "--count", str(n), "--method", m)[1] for m in ("ratio", "rec", "semi", "tree", "greedy")}
    assert len(outs) == 1


def test_gen_json_schema():
    code, out, _ = call("gen", "u", "--count", "4", "--format", "json")
    vals = [from_json(o) for o in json.loads(out)]
    assert vals == prefix("U", 4)


def test_gen_csv():
    code, out, _ = call("gen", "s", "--count", "3", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows == [["n", "value"], ["1", "2/1"], ["2", "1/1"], ["3", "4/1"]]


def test_index():
    assert call("index", "s", "1/2")[:2] == (0, "8\n")
    assert call("index", "u", "1/2+phi")[:2] == (0, "5\n")
    assert call("index", "t", "1/2")[:2] == (0, "24\n")


@pytest.mark.parametrize(
    "argv, token",
    [
        (("index", "r", "1/x"), "/x"),
        (("index", "q", "1/2"), "'q'"),
        (("gen", "r", "--count", "0"), "--count"),
        (("gen", "a", "--count", "3", "--method", "rec"), "--method"),
        (("svg", "ford", "--viewport", "1,0"), "1,0"),
        (("mcf", "encode", "u", "3"), "'u'"),
        (("qmark", "3/2"), "3/2"),
    ],
)
def test_usage_errors_exit_2(argv, token):
    code, out, err = call(*argv)
    assert code == 2
    assert token in err


def test_deterministic():
    a = call("verify", "agree", "--bound", "200")
    b = call("verify", "agree", "--bound", "200")
    assert a == b and a[0] == 0
    assert "PASS" in a[1] and "FAIL" not in a[1]


def test_verify_bijection_small_bound_with_jobs():
    code, out, _ = call("verify", "bijection", "--bound", "10", "--jobs", "2", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["pass"]
    assert data["detail"]["orbit"]["covered"]


def test_verify_uconj_reports_witnesses_without_failing():
    code, out, _ = call("verify", "uconj", "--bound", "2", "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert data["detail"]["reached"] == data["detail"]["total"]


def test_degree_json():
    code, out, _ = call("degree", "a", "--rows", "20", "--format", "json")
    d = json.loads(out)
    assert code == 0
    assert set(d) >= {"family", "k", "estimate", "target", "error", "pass"}
    assert d["pass"] is True


def test_qmark():
    assert call("qmark", "2/5")[:2] == (0, "3/8\n")
    assert call("qmark", "1/1000000000")[0] == 1


def test_mcf():
    assert call("mcf", "eval", "5", "1", "3", "1")[1] == "3/1\n"
    assert call("mcf", "eval", "2", "1", "1")[0] == 1
    code, out, _ = call("mcf", "encode", "r", "4", "--format", "json")
    assert json.loads(out)["terms"] == [5, 1, 3, 1]
    code, out, _ = call("mcf", "list", "2", "7")
    assert out.splitlines()[0] == "1 2 2"


def test_svg_to_file(tmp_path):
    path = tmp_path / "ford.svg"
    code, out, _ = call("svg", "ford", "--depth", "3", "--out", str(path))
    assert code == 0 and out == ""
    assert path.read_text().count("<circle") == 9


def test_svg_necklace():
    code, out, _ = call("svg", "necklace", "--alpha", "sqrt3", "--viewport", "0,2")
    assert code == 0 and out.count("<circle") == 5
    assert call("svg", "necklace", "--alpha", "2")[0] == 1


def test_singular_and_genfun_commands():
    code, out, _ = call("singular", "b", "--k", "2", "--format", "json")
    # 16 points for k <= 2; only 4/9 and 5/9 have no alternating form
    assert code == 0 and json.loads(out)["passed"] == 14
    code, out, _ = call("genfun", "a", "--degree", "100")
    assert code == 0 and "FAIL" not in out


def test_closed_command():
    code, out, _ = call("closed", "--bound", "100")
    assert code == 0 and out.count("PASS") == 10


def test_report(tmp_path):
    code, out, _ = call("report", str(tmp_path), "--count", "100", "--depth", "3")
    assert code == 0
    names = {p.name for p in tmp_path.iterdir()}
    assert {"degrees.csv", "enumerations.csv", "singular.csv", "degrees.png", "packing_ford.png"} <= names
    rows = list(csv.DictReader(open(tmp_path / "degrees.csv")))
    assert all(r["pass"] == "True" for r in rows)
    enum = list(csv.DictReader(open(tmp_path / "enumerations.csv")))
    assert [r["r"] for r in enum[:5]] == [format_value(v) for v in prefix("R", 5)]
    assert (tmp_path / "degrees.png").read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"
