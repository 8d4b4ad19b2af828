"""S-expression reading with source positions.

PDDL files, trace files and plan lines all share this reader. Symbols keep
the line/column where they started so semantic errors can point at the
offending token. Identifiers are case-insensitive in PDDL; callers decide
when to lowercase (the reader preserves the original spelling).
"""

from __future__ import annotations

import re
import sys
from typing import NamedTuple, Union

from .errors import PddlSyntaxError

_TOKEN = re.compile(
    r"""
      (?P<ws>\s+)
    | (?P<comment>;[^\n]*)
    | (?P<open>\()
    | (?P<close>\))
    | (?P<symbol>[^\s();]+)
    """,
    re.VERBOSE,
)


class Symbol(NamedTuple):
    text: str
    line: int
    col: int


class SList(list):
    """A parenthesized node; remembers where its '(' was."""

    __slots__ = ("line", "col")

    def __init__(self, line: int = 0, col: int = 0):
        super().__init__()
        self.line = line
        self.col = col


Node = Union[Symbol, SList]


def parse_sexprs(text: str) -> list[Node]:
    """Read every top-level s-expression in `text`.

    Raises PddlSyntaxError on unbalanced parentheses or stray characters.
    """
    top: list[Node] = []
    stack: list[SList] = []
    line, col = 1, 1
    pos = 0
    n = len(text)
    while pos < n:
        m = _TOKEN.match(text, pos)
        if m is None:
            raise PddlSyntaxError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        tok = m.group()
        if kind == "open":
            node = SList(line, col)
            (stack[-1] if stack else top).append(node)
            stack.append(node)
        elif kind == "close":
            if not stack:
                raise PddlSyntaxError("unbalanced ')'", line, col)
            stack.pop()
        elif kind == "symbol":
            # token texts repeat massively in trace files; intern them
            (stack[-1] if stack else top).append(Symbol(sys.intern(tok), line, col))
        # advance position counters over whatever was consumed
        nl = tok.count("\n")
        if nl:
            line += nl
            col = len(tok) - tok.rfind("\n")
        else:
            col += len(tok)
        pos = m.end()
    if stack:
        raise PddlSyntaxError("unbalanced '(': expression never closed", stack[-1].line, stack[-1].col)
    return top


def parse_single(text: str) -> Node:
    nodes = parse_sexprs(text)
    if len(nodes) != 1:
        raise PddlSyntaxError(f"expected exactly one expression, found {len(nodes)}")
    return nodes[0]


def as_symbol(node: Node, what: str = "symbol") -> Symbol:
    if not isinstance(node, Symbol):
        raise PddlSyntaxError(f"expected {what}, found a list", node.line, node.col)
    return node


def as_list(node: Node, what: str = "list") -> SList:
    if not isinstance(node, SList):
        raise PddlSyntaxError(
            f"expected {what}, found symbol {node.text!r}", node.line, node.col
        )
    return node


def head_is(node: Node, name: str) -> bool:
    return (
        isinstance(node, SList)
        and len(node) > 0
        and isinstance(node[0], Symbol)
        and node[0].text.lower() == name
    )
