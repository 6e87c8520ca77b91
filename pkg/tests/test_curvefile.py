import pytest

from packfrechet.curvefile import format_curve, parse_curve_file, parse_curve_text, write_curve_file
from packfrechet.errors import ParseError
from packfrechet.geometry import Curve


def test_simple_segment():
    c = parse_curve_text("0 0\n1 0\n")
    assert c.points.tolist() == [[0, 0], [1, 0]]


def test_comments_only_is_empty():
    with pytest.raises(ParseError, match="empty curve"):
        parse_curve_text("# nothing\n   # here\n")


def test_duplicates_collapsed():
    assert len(parse_curve_text("0,0\n0,0\n1,0")) == 2


def test_mixed_separators_and_inline_comments():
    c = parse_curve_text("1, 2 3  # first\n\n4,5,6\n")
    assert c.points.tolist() == [[1, 2, 3], [4, 5, 6]]


def test_errors_carry_line_numbers():
    with pytest.raises(ParseError) as info:
        parse_curve_text("0 0\n1 x\n", "c.txt")
    assert str(info.value).startswith("c.txt:2:")
    with pytest.raises(ParseError) as info:
        parse_curve_text("0 0\n\n1 0 0\n", "c.txt")
    assert info.value.line == 3


def test_nonfinite_rejected():
    with pytest.raises(ParseError):
        parse_curve_text("0 0\nnan 1\n")


def test_round_trip(tmp_path):
    c = Curve([[0.1, 1 / 3], [2e-300, -7.25]])
    path = tmp_path / "c.txt"
    write_curve_file(c, str(path))
    assert parse_curve_file(str(path)) == c
    assert format_curve(c).count("\n") == 2


def test_missing_file(tmp_path):
    with pytest.raises(ParseError):
        parse_curve_file(str(tmp_path / "absent.txt"))
