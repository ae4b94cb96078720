import json
import subprocess
import sys

import numpy as np
import pytest

from mebgeom.cli import InputError, dumps, main, parse_points


def _write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def _json(capsys, argv):
    code = main(argv)
    return code, json.loads(capsys.readouterr().out)


def test_parse_points(tmp_path):
    pts = parse_points(_write(tmp_path, "a.csv", "0,0\n2,0\n1,1\n"))
    assert pts.shape == (3, 2)
    pts = parse_points(_write(tmp_path, "b.csv", "# x,y\n0,0\n1,0\n"))
    assert pts.shape == (2, 2)


@pytest.mark.parametrize("text, where", [
    ("0,0\n1\n", "row 2"),
    ("0,0\n1,abc\n", "row 2, column 2"),
    ("# only a header\n", "row 1, column 1"),
    ("", "row 1, column 1"),
    ("1,nan\n", "row 1, column 2"),
])
def test_parse_errors(tmp_path, text, where):
    with pytest.raises(InputError, match=where):
        parse_points(_write(tmp_path, "bad.csv", text))


def test_meb_json(tmp_path, capsys):
    path = _write(tmp_path, "tri.csv", "0,0\n2,0\n1,1\n")
    code, out = _json(capsys, ["meb", "--input", path, "--json"])
    assert code == 0
    assert out["result"]["radius"] == 1
    assert out["result"]["center"] == [1, 0]
    assert out["result"]["support"] == [0, 1]
    assert set(out) == {"command", "input", "result", "reports", "tolerances", "seed"}


def test_json_round_trip_is_bit_exact(tmp_path, capsys):
    pts = np.random.default_rng(2).uniform(-1, 1, (25, 3))
    path = _write(tmp_path, "p.csv", "\n".join(",".join(f"{v:.17g}" for v in row) for row in pts))
    _, out = _json(capsys, ["meb", "--input", path, "--json", "--seed", "3"])
    from mebgeom.meb import minimum_enclosing_ball

    ref = minimum_enclosing_ball(parse_points(path), seed=3)
    assert out["result"]["radius"] == ref.radius
    assert out["result"]["center"] == ref.center.tolist()


def test_regular_text(capsys):
    assert main(["regular", "--dim", "3", "--diam", "1"]) == 0
    text = capsys.readouterr().out
    for val in ("0.6123724357", "0.2041241452", "0.7071067812", "0.8164965809"):
        assert val in text


def test_certify_jung_regular_triangle(tmp_path, capsys):
    path = _write(tmp_path, "regular2.csv", "0,0\n1,0\n0.5,0.8660254037844386\n")
    code, out = _json(capsys, ["certify", "jung", "--input", path, "--json"])
    assert code == 0
    assert abs(out["reports"][0]["slack"]) <= 1e-9


@pytest.mark.parametrize("suite", ["jung", "steinhagen", "variant-jung", "eggleston", "perelman-pukhov"])
def test_certify_suites_exit_zero(tmp_path, capsys, suite):
    path = _write(tmp_path, "sq.csv", "0,0\n1,0\n1,1\n0,1\n")
    code, out = _json(capsys, ["certify", suite, "--input", path, "--json"])
    assert code == 0 and out["result"]["all_hold"]


def test_failed_bound_exit_one(tmp_path, capsys, monkeypatch):
    from mebgeom import certify

    def broken(*args, **kwargs):
        return certify.make_report("jung", 2.0, 1.0)

    monkeypatch.setattr(certify, "jung_check", broken)
    path = _write(tmp_path, "sq.csv", "0,0\n1,0\n")
    assert main(["certify", "jung", "--input", path]) == 1


def test_other_commands(tmp_path, capsys):
    sq = _write(tmp_path, "sq.csv", "0,0\n1,0\n1,1\n0,1\n")
    tri = _write(tmp_path, "tri.csv", "0,0\n2,0\n0,2\n")
    assert _json(capsys, ["diameter", "--input", sq, "--json"])[1]["result"]["diameter"] == pytest.approx(2 ** 0.5)
    assert _json(capsys, ["width", "--input", sq, "--json"])[1]["result"]["width"] == pytest.approx(1)
    prof = _json(capsys, ["profile", "--input", sq, "--json"])[1]
    assert prof["result"]["inradius"] == pytest.approx(0.5) and len(prof["reports"]) == 6
    simp = _json(capsys, ["simplex", "--input", tri, "--json"])[1]["result"]
    assert simp["total_energy"] == pytest.approx(16)
    code, tab = _json(capsys, ["radii-table", "--kind", "cube", "--dim", "3", "--json"])
    assert code == 0 and tab["result"]["warnings"]


def test_partition_commands(tmp_path, capsys):
    sq = _write(tmp_path, "sq.csv", "0,0\n1,0\n1,1\n0,1\n")
    line = _write(tmp_path, "line.csv", "1\n2\n3\n4\n5\n")
    out = _json(capsys, ["partition", "radon", "--input", sq, "--json"])[1]
    assert out["result"]["witness"] == pytest.approx([0.5, 0.5], abs=1e-15)
    out = _json(capsys, ["partition", "tverberg", "--p", "3", "--input", line, "--json"])[1]
    assert out["result"]["witness"] == pytest.approx([3])
    out = _json(capsys, ["partition", "caratheodory", "--point", "0.5,0.5", "--input", sq, "--json"])[1]
    assert len(out["result"]["indices"]) == 2
    code, out = _json(capsys, ["partition", "nd-caratheodory", "--r", "2", "--input", sq, "--json"])
    assert code == 0 and out["reports"][0]["holds"]
    code, out = _json(capsys, ["partition", "nd-tverberg", "--k", "2", "--input", sq, "--json"])
    assert code == 0


def test_missing_parameters_exit_two(tmp_path, capsys):
    sq = _write(tmp_path, "sq.csv", "0,0\n1,0\n1,1\n0,1\n")
    assert main(["partition", "tverberg", "--input", sq]) == 2
    assert main(["meb"]) == 2
    assert main(["meb", "--input", str(tmp_path / "missing.csv")]) == 2
    assert main(["partition", "radon", "--input", _write(tmp_path, "t.csv", "0,0\n1,0\n")]) == 2
    assert "error:" in capsys.readouterr().err


def test_dumps_format():
    assert dumps({"a": 0.1, "b": [1.0, 2], "c": None, "d": True, "e": float("inf")}) == \
        '{"a":0.10000000000000001,"b":[1,2],"c":null,"d":true,"e":null}'


def test_module_entry_point(tmp_path):
    path = _write(tmp_path, "tri.csv", "0,0\n2,0\n1,1\n")
    out = subprocess.run([sys.executable, "-m", "mebgeom", "meb", "--input", path, "--json"],
                         capture_output=True, text=True, check=True)
    assert json.loads(out.stdout)["result"]["radius"] == 1
