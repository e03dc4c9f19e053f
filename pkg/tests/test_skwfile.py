import pytest

from skewlat import skwfile
from skewlat.fixtures import F4R, FIXTURES, L2, RR2
from skewlat.skwfile import SkwFormatError


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_fixture_files_match_builtins(fixture_dir, name):
    path = fixture_dir / f"{name}.skw"
    assert skwfile.read(path) == FIXTURES[name]
    assert skwfile.dumps(skwfile.read(path)) == path.read_text(encoding="utf-8")


def test_round_trip_keeps_names():
    back = skwfile.loads(skwfile.dumps(F4R))
    assert back == F4R and back.names == F4R.names


def test_comments_and_blank_lines_are_ignored():
    text = "# header\nskw 1  # version\n\n2\n0 1\n0 1\n\n\n0 0 # join\n1 1\n"
    assert skwfile.loads(text) == RR2


def test_write_then_read(tmp_path):
    path = tmp_path / "l2.skw"
    skwfile.write(path, L2)
    assert skwfile.read(path) == L2


def test_catalog_round_trip():
    text = skwfile.dumps_catalog("two models", [L2, RR2])
    header, algs = skwfile.loads_catalog(text)
    assert header == "two models" and algs == [L2, RR2]


def test_catalog_errors_report_absolute_lines():
    text = skwfile.dumps_catalog("h", [L2]) + "---\nskw 1\n2\n0 0\n0 9\n"
    with pytest.raises(SkwFormatError) as err:
        skwfile.loads_catalog(text)
    assert err.value.line == 13


@pytest.mark.parametrize("text, line", [
    ("skw 2\n1\n0\n\n0\n", 1),
    ("skw 1\nx\n", 2),
    ("skw 1\n0\n", 2),
    ("skw 1\n2\n0 1\n0\n", 4),
    ("skw 1\n2\n0 1\n0 a\n", 4),
    ("skw 1\n2\n0 1\n0 2\n", 4),
    ("skw 1\n2\n0 1\n0 1\n\n0 0\n", 6),
    ("skw 1\n1\n0\n\n0\nextra\n", 6),
    ("skw 1\n1\n0\n\n0\nnames:\n5 q\n", 7),
])
def test_errors_carry_line_numbers(text, line):
    with pytest.raises(SkwFormatError) as err:
        skwfile.loads(text)
    assert err.value.line == line
    assert str(err.value).startswith(f"line {line}:")
