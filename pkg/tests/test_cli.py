import io
import subprocess
import sys

import pytest

from bksfsim.cli import CSV_HEADER, main, parse_steps


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


@pytest.mark.parametrize("name,total", [("jw", 82), ("bk", 74), ("bksf", 79)])
def test_gatecount(name, total):
    code, text = run("gatecount", "--transform", name)
    assert code == 0
    assert text.strip().splitlines()[-1] == f"total {total}"


def test_transform_prints_identity_term():
    code, text = run("transform", "--transform", "bksf")
    assert code == 0
    lines = text.splitlines()
    assert "-0.812618 IIII" in lines
    assert "0.241090 ZZZZ" in lines
    assert len(lines) == 14


def test_stabilizers_output():
    code, text = run("stabilizers")
    assert code == 0
    assert "loop 1 2 3 4 stabilizer -1.0 XYYX" in text
    assert "|0000> +0.707107 +0.000000j" in text
    assert "|1111> +0.707107 +0.000000j" in text


@pytest.mark.parametrize("name", ["jw", "bk", "bksf"])
def test_groundstate(name):
    code, text = run("groundstate", "--transform", name)
    assert code == 0
    assert float(text.split()[-1]) == pytest.approx(-1.8510241657, abs=1e-9)


def test_trotter_scan_csv_is_reproducible(tmp_path, capsys):
    paths = [tmp_path / "a.csv", tmp_path / "b.csv"]
    for p in paths:
        code, text = run("trotter-scan", "--transform", "bk", "--steps", "1..3",
                         "--count", "4", "--seed", "9", "--output", str(p))
        assert code == 0
        assert "best_ordering" in text
    data = paths[0].read_bytes()
    assert data == paths[1].read_bytes()
    lines = data.decode().splitlines()
    assert lines[0] == ",".join(CSV_HEADER)
    assert lines[0] == "ordering_id,seed,order,steps,energy_hartree,abs_error_hartree"
    assert len(lines) == 1 + 5 * 3


def test_parse_steps():
    assert parse_steps("1..4") == [1, 2, 3, 4]
    assert parse_steps("2,5,3..4") == [2, 3, 4, 5]


def test_exit_code_parse_error(tmp_path):
    bad = tmp_path / "bad.molint"
    bad.write_text("modes 2\n1body 1 1 nope\n")
    assert run("gatecount", str(bad))[0] == 1


def test_exit_code_validation_error(tmp_path):
    bad = tmp_path / "bad.molint"
    bad.write_text("modes 2\n1body 1 3 0.1\n")
    assert run("gatecount", str(bad))[0] == 2
    assert run("stabilizers", "--transform", "jw")[0] == 2
    assert run("gatecount", str(tmp_path / "missing.molint"))[0] == 2


def test_exit_code_numeric_error(tmp_path):
    big = tmp_path / "big.molint"
    big.write_text("modes 13\n" + "".join(f"1body {i} {i} -0.5\n" for i in range(1, 14)))
    assert run("groundstate", str(big))[0] == 3


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "bksfsim", "gatecount"],
                          capture_output=True, text=True, check=True)
    assert proc.stdout.strip().endswith("total 82")
