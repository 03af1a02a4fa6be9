import pytest
from conftest import instances
from hypothesis import given

from sparsebnsl.formats import (
    ParseError,
    dumps_report,
    format_graph,
    format_scores,
    parse_graph,
    parse_scores,
    read_scores,
)
from sparsebnsl.graphs import UGraph


def test_empty_set_score():
    inst, transform = parse_scores("1\nA 1\n5 0\n")
    assert inst.names == ("A",) and inst.empty == (5,) and transform is None


def test_single_parent_entry():
    inst, _ = parse_scores("2\nA 0\nB 1\n7 1 A\n")
    assert inst.score(1, [0]) == 7


def test_decimal_needs_scale():
    with pytest.raises(ParseError, match="decimal"):
        parse_scores("1\nA 1\n3.5 0\n")


def test_scale_rounds_and_shifts():
    inst, transform = parse_scores("2\nA 2\n-1.25 0\n-0.5 1 B\nB 1\n2.04 0\n", scale=1)
    # A: -12 and -5 shift by 12 to 0 and 7; B: 20 (round half to even)
    assert inst.empty == (0, 20) and inst.score(0, [1]) == 7
    assert transform.as_dict() == {"digits": 1, "shifts": {"A": 12}}


@pytest.mark.parametrize("text, message", [
    ("", "empty"),
    ("2\nA 0\n", "expected 2"),
    ("1\nA 1\n5 1 B\n", "unknown parent"),
    ("2\nA 2\n5 1 B\n6 1 B\nB 0\n", "duplicate parent set"),
    ("2\nA 0\nA 0\n", "duplicate vertex"),
    ("1\nA 1\n99999999999999999999 0\n", "overflow"),
    ("1\nA 1\n-3 0\n", "negative"),
    ("1\nA 1\n5 2 B\n", "announces"),
    ("1\nA 0\nextra 1\n", "trailing"),
    ("1\nA 1\n3 1 A\n", "itself"),
])
def test_rejections(text, message):
    with pytest.raises(ParseError, match=message):
        parse_scores(text)


def test_error_carries_line_number(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("2\nA 0\nB 1\n7 1 C\n")
    with pytest.raises(ParseError) as err:
        read_scores(str(path))
    assert err.value.line == 4 and str(err.value).startswith(f"{path}:4:")


def test_comments_and_blank_lines():
    inst, _ = parse_scores("# header\n2\n\nA 0   # no entries\nB 1\n7 1 A\n")
    assert inst.score(1, [0]) == 7


def test_graph_round_trip():
    g = UGraph.of(4, [(0, 1), (2, 3)])
    text = format_graph(g, [1, 1, 2, 2])
    assert text == "4 2\n0 1\n2 3\ncolors 1 1 2 2\n"
    assert parse_graph(text) == (g, [1, 1, 2, 2])
    assert parse_graph("3 0\n") == (UGraph.of(3, []), None)


@pytest.mark.parametrize("text", ["3 1\n0 0\n", "3 1\n0 5\n", "3 2\n0 1\n1 0\n",
                                  "2 0\ncolors 1\n", "2 1\n"])
def test_graph_rejections(text):
    with pytest.raises(ParseError):
        parse_graph(text)


def test_report_serialization_is_sorted_and_compact():
    assert dumps_report({"b": 1, "a": [1, 2]}) == '{"a":[1,2],"b":1}'


@given(instances(max_n=5, max_entries=4, empty=True))
def test_round_trip(inst):
    again, _ = parse_scores(format_scores(inst))
    assert again == inst.canonical()
