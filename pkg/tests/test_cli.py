import json

import pytest

from graphck.cli import main
from corpus import g1_loop, g2_cyc2, g3_ent, g4_line


@pytest.fixture
def files(tmp_path):
    out = {}
    for name, g in (
        ("g1", g1_loop()),
        ("g2", g2_cyc2()),
        ("g3", g3_ent()),
        ("g4", g4_line()),
    ):
        path = tmp_path / f"{name}.graph"
        path.write_text(g.to_text())
        out[name] = str(path)
    bad = tmp_path / "bad.graph"
    bad.write_text("vertex v\nedge e : v -> q\n")
    out["bad"] = str(bad)
    return out


def _run(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_analyze_g1(files, capsys):
    code, out, _ = _run(capsys, ["analyze", files["g1"]])
    assert code == 0
    report = json.loads(out)
    assert report["command"] == "analyze"
    assert report["version"]
    result = report["result"]
    assert result["entranceFreeClasses"] == [["e"]]
    assert result["cuttingSet"] == ["e"]
    assert result["cofinal"] is True and result["simple"] is True


def test_analyze_g3(files, capsys):
    code, out, _ = _run(capsys, ["analyze", files["g3"]])
    assert code == 0
    result = json.loads(out)["result"]
    assert result["entranceFreeClasses"] == []
    assert result["cofinal"] is False and result["simple"] is False


def test_analyze_malformed_exits_2(files, capsys):
    code, out, err = _run(capsys, ["analyze", files["bad"]])
    assert code == 2
    assert "error" in err


def test_analyze_missing_file_exits_2(capsys):
    code, _, err = _run(capsys, ["analyze", "/nonexistent.graph"])
    assert code == 2 and "error" in err


def test_determinism_byte_identical(files, capsys):
    argv = ["analyze", files["g3"]]
    _, out1, _ = _run(capsys, argv)
    _, out2, _ = _run(capsys, argv)
    assert out1 == out2
    argv = ["tails", files["g1"], "--toeplitz-of"]
    _, out1, _ = _run(capsys, argv)
    _, out2, _ = _run(capsys, argv)
    assert out1 == out2


def test_transform_toeplitz(files, capsys, tmp_path):
    out_file = tmp_path / "te.graph"
    code, out, _ = _run(
        capsys, ["transform", files["g1"], "--toeplitz", "--output", str(out_file)]
    )
    assert code == 0
    result = json.loads(out)["result"]
    assert result["kind"] == "toeplitz"
    text = out_file.read_text()
    assert "vertex alpha:v" in text and "vertex beta:v" in text
    assert "edge beta:e : beta:v -> alpha:v" in text
    assert result["graphText"] == text


def test_transform_reduce(files, capsys):
    code, out, _ = _run(capsys, ["transform", files["g1"], "--reduce"])
    assert code == 0
    result = json.loads(out)["result"]
    assert result["cuttingSet"] == ["e"]
    assert result["graphText"] == "vertex zeta:v\n"
    code, out, _ = _run(
        capsys, ["transform", files["g2"], "--reduce", "--cutting-set", "e2"]
    )
    assert json.loads(out)["result"]["edgeMap"] == {"e1": "zeta:e1"}
    code, out, _ = _run(capsys, ["transform", files["g3"], "--reduce"])
    result = json.loads(out)["result"]
    assert result["cuttingSet"] == []
    assert len(result["edgeMap"]) == 3


def test_transform_invalid_cutting_set(files, capsys):
    code, _, err = _run(
        capsys, ["transform", files["g2"], "--reduce", "--cutting-set", "e1,e2"]
    )
    assert code == 2 and "cutting set" in err


def test_tails_toeplitz_of_g1(files, capsys):
    code, out, _ = _run(capsys, ["tails", files["g1"], "--toeplitz-of"])
    assert code == 0
    result = json.loads(out)["result"]
    assert result["over"] == "toeplitz"
    assert result["tails"] == [
        {"vertices": ["alpha:v"], "kind": "tau", "class": ["alpha:e"]},
        {"vertices": ["alpha:v", "beta:v"], "kind": "gamma"},
    ]
    kinds = [d["kind"] for d in result["primIdeals"]]
    assert kinds == ["circle", "gauge"]


def test_tails_plain(files, capsys):
    code, out, _ = _run(capsys, ["tails", files["g2"]])
    result = json.loads(out)["result"]
    assert [t["kind"] for t in result["tails"]] == ["tau"]
    code, out, _ = _run(capsys, ["tails", files["g4"]])
    result = json.loads(out)["result"]
    assert [t["kind"] for t in result["tails"]] == ["gamma"]


def test_tails_guard(files, capsys, tmp_path):
    big = tmp_path / "big.graph"
    big.write_text("".join(f"vertex v{i}\n" for i in range(20)))
    code, _, err = _run(capsys, ["tails", str(big)])
    assert code == 2 and "guard" in err


def test_verify_left_regular_ck_fails(files, capsys):
    code, out, _ = _run(
        capsys, ["verify", files["g1"], "--rep=left-regular", "--level=ck"]
    )
    assert code == 1
    result = json.loads(out)["result"]
    assert result["pass"] is False
    assert result["failures"] == [{"relation": "CK[v]", "witness": "@v"}]


def test_verify_omega_normalized_passes(files, capsys):
    code, out, _ = _run(
        capsys, ["verify", files["g1"], "--rep=omega", "--level=normalized"]
    )
    assert code == 0
    assert json.loads(out)["result"]["pass"] is True


def test_verify_twisted_reports_kappa(files, capsys):
    code, out, _ = _run(
        capsys,
        [
            "verify",
            files["g1"],
            "--rep=twisted",
            "--kappa=e:1/2",
            "--level=reduced",
        ],
    )
    assert code == 0
    result = json.loads(out)["result"]
    assert result["pass"] is True
    assert result["kappa"] == [{"class": "e", "turn": "1/2", "value": "-1"}]


def test_verify_kappa_flag_validation(files, capsys):
    code, _, err = _run(
        capsys, ["verify", files["g1"], "--rep=twisted", "--level=reduced"]
    )
    assert code == 2 and "kappa" in err
    # a graph without entrance-free classes needs no kappa
    code, out, _ = _run(
        capsys, ["verify", files["g3"], "--rep=twisted", "--level=ck"]
    )
    assert code == 0 and json.loads(out)["result"]["kappa"] == []
    code, _, err = _run(
        capsys,
        ["verify", files["g1"], "--rep=boundary", "--level=tck", "--kappa=e:1/2"],
    )
    assert code == 2
    code, _, err = _run(
        capsys,
        ["verify", files["g1"], "--rep=twisted", "--level=tck", "--kappa=e:bad"],
    )
    assert code == 2


def test_expect_examples(files, capsys):
    code, out, _ = _run(capsys, ["expect", files["g3"], "--element=s[e1] * s*[f]"])
    assert code == 0
    result = json.loads(out)["result"]
    assert result["expectation"] == "0"
    code, out, _ = _run(capsys, ["expect", files["g1"], "--element=s[e e]"])
    result = json.loads(out)["result"]
    assert result["wNormalForm"] == "p[v]" and result["expectation"] == "p[v]"
    code, out, _ = _run(capsys, ["expect", files["g2"], "--element=p[u]"])
    assert json.loads(out)["result"]["expectation"] == "p[u]"


def test_expect_parse_error(files, capsys):
    code, _, err = _run(capsys, ["expect", files["g1"], "--element=s[e"])
    assert code == 2 and "error" in err


def test_pretty_mode_runs(files, capsys):
    code, out, _ = _run(capsys, ["analyze", files["g1"], "--pretty"])
    assert code == 0
    assert "command : analyze" in out
