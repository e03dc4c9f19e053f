import io
import os

import pytest

from cli_cases import CASES, GOLDEN, ROOT, render, run_in_process
from skewlat import skwfile
from skewlat.cli import BUDGET, FAILS, OK, USAGE, run
from skewlat.fixtures import F4R


@pytest.fixture(autouse=True)
def at_root(monkeypatch):
    monkeypatch.chdir(ROOT)


def golden(name):
    return (GOLDEN / f"{name}.txt").read_text(encoding="utf-8")


@pytest.mark.parametrize("name, argv", [(n, a) for n, a, _ in CASES], ids=[c[0] for c in CASES])
def test_matches_golden(name, argv):
    code, stdout = run_in_process(argv)
    assert render(argv, code, stdout) == golden(name)


@pytest.mark.parametrize("name, argv", [(n, a) for n, a, w in CASES if w],
                         ids=[c[0] for c in CASES if c[2]])
def test_four_workers_match_golden(name, argv):
    code, stdout = run_in_process(argv + ["--workers", "4"])
    assert render(argv, code, stdout) == golden(name)


def test_exit_codes():
    assert run_in_process(["check", "fixtures/rr2.skw"])[0] == OK
    assert run_in_process(["iso", "fixtures/rr2.skw", "fixtures/lr2.skw"])[0] == FAILS
    assert run_in_process(["check", "fixtures/nope.skw"])[0] == USAGE
    assert run_in_process(["quotient", "fixtures/l2.skw", "--by", "X"])[0] == USAGE
    assert run_in_process(["enumerate", "--size", "0"])[0] == USAGE
    assert run_in_process(["enumerate", "--size", "8", "--budget", "0.01"])[0] == BUDGET


def test_rr2_check_report():
    code, stdout = run_in_process(["check", "fixtures/rr2.skw"])
    lines = stdout.splitlines()
    assert "skew lattice: ✓" in lines
    assert "lattice: ✗ (S7 fails at x=0, y=1)" in lines
    assert "right handed: ✓" in lines


def test_parse_errors_go_to_stderr(tmp_path):
    bad = tmp_path / "bad.skw"
    bad.write_text("skw 1\n2\n0 0\n", encoding="utf-8")
    out, err = io.StringIO(), io.StringIO()
    assert run(["check", str(bad)], out, err) == USAGE
    assert out.getvalue() == "" and "line 3" in err.getvalue()


def test_inline_identity_errors_carry_positions():
    out, err = io.StringIO(), io.StringIO()
    assert run(["find", "--size", "2", "--satisfy", "x ^ y v z = x", "--falsify", "S7"],
               out, err) == USAGE
    assert "position" in err.getvalue() or "column" in err.getvalue()


def test_out_files(tmp_path):
    target = tmp_path / "cat.skw"
    code, stdout = run_in_process(["enumerate", "--size", "2", "--out", str(target)])
    assert code == OK and stdout.startswith("3 models")
    _, algs = skwfile.loads_catalog(target.read_text(encoding="utf-8"))
    assert len(algs) == 3
    model = tmp_path / "model.skw"
    code, _ = run_in_process(["find", "--size", "4", "--satisfy", "S1-S6", "--falsify", "S7",
                              "--skeleton", "1>2>1", "--out", str(model)])
    assert code == OK and skwfile.read(model).n == 4


def test_goldens_have_no_stray_files():
    names = {n for n, _, _ in CASES}
    assert {p.stem for p in GOLDEN.glob("*.txt")} == names


def test_f4r_fixture_file_is_canonical():
    path = os.path.join(ROOT, "fixtures", "f4r.skw")
    with open(path, encoding="utf-8") as fh:
        assert fh.read() == skwfile.dumps(F4R)
