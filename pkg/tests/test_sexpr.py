import pytest

from tracelearn.errors import PddlSyntaxError
from tracelearn.sexpr import Symbol, parse_sexprs


def test_nested_lists_and_symbols():
    (node,) = parse_sexprs("(a (b c) d)")
    assert isinstance(node[0], Symbol) and node[0].text == "a"
    assert [s.text for s in node[1]] == ["b", "c"]
    assert node[2].text == "d"


def test_comments_and_blank_lines_skipped():
    nodes = parse_sexprs("; header\n\n(a) ; trailing\n(b)\n")
    assert len(nodes) == 2


def test_positions_track_lines_and_columns():
    (node,) = parse_sexprs("\n  (foo\n    bar)")
    assert (node.line, node.col) == (2, 3)
    assert (node[1].line, node[1].col) == (3, 5)


@pytest.mark.parametrize("text", ["(a", "a)", "(a))"])
def test_unbalanced_parens_rejected(text):
    with pytest.raises(PddlSyntaxError):
        parse_sexprs(text)


def test_error_carries_position():
    with pytest.raises(PddlSyntaxError) as err:
        parse_sexprs("(a\n(b)")
    assert err.value.line == 1 and err.value.col == 1
