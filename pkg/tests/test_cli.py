import json

import pytest

from ararank.cli import main

I4_TEXT = "vars: 4\nx1*x2\nx1*x4\nx3*x4\n"
I5_TEXT = "vars: 5\nx1*x2*x3\nx1*x2*x5\nx1*x4*x5\nx3*x4*x5\n"
BT_TEXT = "vars: 4\nx1*x3\nx2*x4\n"
LIFTED = "x1*x4*x5 - x1^2*x2^2*x3\nx1*x2*x5 + x3*x4*x5 - x1*x2^2*x3^2\n"


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, text in {
        "I4": I4_TEXT,
        "I5": I5_TEXT,
        "BT": BT_TEXT,
        "elems": LIFTED,
    }.items():
        p = tmp_path / f"{name}.txt"
        p.write_text(text)
        paths[name] = str(p)
    paths["dir"] = tmp_path
    return paths


def run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, out


class TestConversions:
    def test_complex_then_ideal_round_trip(self, files, capsys, tmp_path):
        code, out = run(capsys, ["complex", files["I4"]])
        assert code == 0
        cx_file = tmp_path / "cx.txt"
        cx_file.write_text(out)
        code, out = run(capsys, ["ideal", str(cx_file)])
        assert code == 0
        assert out == I4_TEXT.replace("vars: 4", "vars: 4")

    def test_dual_ideal(self, files, capsys):
        code, out = run(capsys, ["dual", files["I4"], "--json"])
        assert code == 0
        assert json.loads(out)["generators"] == ["x1*x3", "x1*x4", "x2*x4"]

    def test_dual_complex(self, files, capsys, tmp_path):
        cx_file = tmp_path / "line.txt"
        cx_file.write_text("x1 x2\nx2 x3\nx3 x4\n")
        code, out = run(capsys, ["dual", str(cx_file), "--kind", "complex", "--json"])
        assert code == 0
        assert json.loads(out)["facets"] == [["x1", "x3"], ["x2", "x3"], ["x2", "x4"]]


class TestAnalyze:
    def test_known_instance(self, files, capsys):
        code, out = run(capsys, ["analyze", files["I4"]])
        assert code == 0
        data = json.loads(out)
        assert data["height"] == 2
        assert data["pd"] == 2
        assert data["cohen_macaulay"] is True
        assert data["dual_generalized_tree"] is True
        assert data["betti"]["char"] == 0

    def test_principal_cubic(self, capsys, tmp_path):
        p = tmp_path / "cubic.txt"
        p.write_text("x1*x2*x3\n")
        code, out = run(capsys, ["analyze", str(p)])
        data = json.loads(out)
        assert data["linear"] is True
        assert data["k"] == 3

    def test_zero_ideal_rejected(self, capsys, tmp_path):
        p = tmp_path / "zero.txt"
        p.write_text("vars: 3\n")
        code, _ = run(capsys, ["analyze", str(p)])
        assert code == 3


class TestConstruct:
    def test_h2cm(self, files, capsys):
        code, out = run(capsys, ["construct", files["I4"], "--method", "h2cm"])
        assert code == 0
        data = json.loads(out)
        assert data["verified"] is True
        assert data["count"] == 2
        assert data["elements"] == ["x1*x4", "x1*x2 + x3*x4"]

    def test_bt_cone_matches_known_output(self, files, capsys):
        code, out = run(capsys, ["construct", files["BT"], "--method", "bt-cone", "--face", "x4"])
        assert code == 0
        data = json.loads(out)
        assert data["provenance"] == "bt-case2"
        assert data["count"] == 3
        assert data["elements"][1] == "x1^2*x3^2 + x1*x5"

    def test_prop31(self, files, capsys):
        code, out = run(capsys, ["construct", files["I4"], "--method", "prop31", "--face", "4"])
        assert code == 0
        data = json.loads(out)
        assert data["provenance"] == "prop31"
        assert data["count"] == 4  # generators as default elements: h + 1

    def test_not_cm_exits_3(self, capsys, tmp_path):
        p = tmp_path / "square.txt"
        p.write_text("x1*x2\nx3*x4\n")
        code, _ = run(capsys, ["construct", str(p), "--method", "h2cm"])
        assert code == 3

    def test_bad_face_exits_3(self, files, capsys):
        code, _ = run(capsys, ["construct", files["I4"], "--method", "prop31", "--face", "x2,x3"])
        assert code == 3


class TestFamilyAndVerify:
    def test_family_seeds(self, capsys):
        code, out = run(capsys, ["family", "5", "--json"])
        assert code == 0
        data = json.loads(out)
        assert data["ideal"] == ["x1*x2*x3", "x1*x2*x5", "x1*x4*x5", "x3*x4*x5"]
        assert data["elements"][0] == "-x1^2*x2^2*x3 + x1*x4*x5"

    def test_family_out_of_range(self, capsys):
        code, _ = run(capsys, ["family", "3"])
        assert code == 3

    def test_verify_valid(self, files, capsys):
        code, out = run(capsys, ["verify", files["I5"], files["elems"]])
        assert code == 0
        assert json.loads(out)["verdict"] is True

    def test_verify_workers(self, files, capsys):
        code, out = run(capsys, ["verify", files["I5"], files["elems"], "--workers", "2"])
        assert code == 0
        assert json.loads(out)["verdict"] is True

    def test_tampered_element_exits_1(self, files, capsys, tmp_path):
        tampered = tmp_path / "bad.txt"
        tampered.write_text(LIFTED.replace("- x1*x2^2*x3^2", "+ x1*x2^2*x3^2"))
        code, out = run(capsys, ["verify", files["I5"], str(tampered)])
        assert code == 1
        data = json.loads(out)
        assert data["verdict"] is False
        assert "counterexample" in data

    def test_determinism(self, files, capsys):
        _, first = run(capsys, ["verify", files["I4"], files["I4"], "--seed", "9"])
        _, second = run(capsys, ["verify", files["I4"], files["I4"], "--seed", "9"])
        first_data = json.loads(first)
        second_data = json.loads(second)
        first_data.pop("timings")
        second_data.pop("timings")
        assert first_data == second_data


class TestParseErrors:
    def test_bad_ideal_exits_2(self, capsys, tmp_path):
        p = tmp_path / "bad.txt"
        p.write_text("x1**x2\n")
        code, _ = run(capsys, ["analyze", str(p)])
        assert code == 2

    def test_bad_element_exits_2(self, files, capsys, tmp_path):
        p = tmp_path / "bad_elems.txt"
        p.write_text("x1 + + x2\n")
        code, _ = run(capsys, ["verify", files["I4"], str(p)])
        assert code == 2
