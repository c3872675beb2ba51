import pytest
from hypothesis import given, settings

from phfanon.fixtures import NAMES, example_text, load_example
from phfanon.io import InputDocument, ParseError, load, parse_input, serialize

from conftest import small_phfs

EX1 = """\
# example 1
phf t=2
3 6 2
1 1 1 2 2 2
1 1 2 1 2 2
1 2 2 1 1 2
"""


def test_parse_example1():
    doc = parse_input(EX1)
    a = doc.payload
    assert doc.kind == "phf"
    assert (a.l, a.n, a.m, a.t) == (3, 6, 2, 2)
    assert a.cells[1] == (1, 1, 2, 1, 2, 2)


def test_parse_example6():
    setup = load_example("example6").payload
    assert (setup.p, setup.n, setup.t, setup.v) == (7, 7, 3, 7)
    assert setup.holdings[0] == frozenset({1, 2, 4})
    assert setup.keys[0] == frozenset(range(2, 8))


def test_load_from_path(tmp_path):
    path = tmp_path / "a.phf"
    path.write_text(EX1)
    assert load(path).source == str(path)
    assert load(path) == parse_input(EX1)


@pytest.mark.parametrize(
    "text,code,line,column",
    [
        (EX1.replace("1 1 2 1 2 2", "1 1 2 1 2"), "dimension-mismatch", 5, 9),
        (EX1.replace("1 1 2 1 2 2", "1 1 2 1 2 2 1"), "dimension-mismatch", 5, 13),
        (EX1.replace("phf t=2", "pfh t=2"), "unknown-header", 2, 1),
        (EX1.replace("1 2 2 1 1 2", "1 2 3 1 1 2"), "symbol-out-of-range", 6, 5),
        (EX1.replace("1 2 2 1 1 2", "1 1 1 1 1 1"), "empty-component", 6, 1),
        (EX1.replace("1 2 2 1 1 2\n", ""), "dimension-mismatch", 6, 1),
        (EX1.replace("3 6 2", "3 6 x"), "syntax", 3, 5),
        ("", "syntax", 1, 1),
    ],
)
def test_phf_errors(text, code, line, column):
    with pytest.raises(ParseError) as info:
        parse_input(text)
    assert (info.value.code, info.value.line, info.value.column) == (code, line, column)


def test_general_duplicate_key():
    text = example_text("example6").replace("K 7: 1 2 3 4 5 6", "K 6: 1 2 3 4 5 6")
    with pytest.raises(ParseError) as info:
        parse_input(text)
    assert info.value.code == "duplicate-definition"


def test_general_missing_participant():
    text = example_text("example6").replace("P 7: 7 1 3\n", "")
    with pytest.raises(ParseError) as info:
        parse_input(text)
    assert info.value.code == "dimension-mismatch"


def test_general_component_out_of_range():
    text = example_text("example6").replace("P 1: 1 2 4", "P 1: 1 2 9")
    with pytest.raises(ParseError) as info:
        parse_input(text)
    assert (info.value.code, info.value.column) == ("symbol-out-of-range", 10)


def test_general_bad_line():
    text = example_text("example6").replace("P 1: 1 2 4", "Q 1: 1 2 4")
    with pytest.raises(ParseError, match="expected 'P"):
        parse_input(text)


@pytest.mark.parametrize("name", NAMES)
def test_roundtrip_examples(name):
    doc = load_example(name)
    again = parse_input(serialize(doc))
    assert again == doc
    assert serialize(again) == serialize(doc)


@settings(max_examples=30, deadline=None)
@given(small_phfs())
def test_roundtrip_random(array):
    assert parse_input(serialize(array)) == InputDocument("phf", array)
