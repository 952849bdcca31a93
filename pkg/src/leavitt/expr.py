"""Parser for algebra expressions such as ``c^ * c`` or ``v - 1/2*(e*e^)``.

Grammar::

    expr := ['-'] term (('+' | '-') term)*
    term := atom ('*' atom)*
    atom := rational | vertex | edge | edge '^' | '(' expr ')'

A bare rational stands for that multiple of the identity.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .algebra import Element, edge, element_scale, ghost, identity_element, vertex
from .graph import Graph

__all__ = ["ExpressionError", "parse_expression"]

_TOKEN = re.compile(r"\s*(?:(\d+)(?:\s*/\s*(\d+))?|([A-Za-z0-9_]+)|(.))")


class ExpressionError(ValueError):
    pass


def _tokenize(text: str) -> list[tuple[str, object]]:
    tokens: list[tuple[str, object]] = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        num, den, name, sym = m.groups()
        pos = m.end()
        if num is not None and name is None:
            # a digit run followed by letters is a name, not a number
            if pos < len(text) and re.match(r"[A-Za-z_]", text[pos]):
                m2 = re.compile(r"[A-Za-z0-9_]+").match(text, m.start(1))
                tokens.append(("name", m2.group()))
                pos = m2.end()
                continue
            if den is not None:
                if int(den) == 0:
                    raise ExpressionError("zero denominator")
                tokens.append(("num", Fraction(int(num), int(den))))
            else:
                tokens.append(("num", Fraction(int(num))))
        elif name is not None:
            tokens.append(("name", name))
        elif sym in "+-*^()":
            tokens.append((sym, sym))
        else:
            raise ExpressionError(f"unexpected character {sym!r}")
    tokens.append(("end", None))
    return tokens


class _Parser:
    def __init__(self, graph: Graph, text: str):
        self.graph = graph
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self) -> str:
        return self.tokens[self.pos][0]

    def take(self, kind: str):
        k, val = self.tokens[self.pos]
        if k != kind:
            raise ExpressionError(f"expected {kind!r}, found {val if val is not None else 'end of input'!r}")
        self.pos += 1
        return val

    def expr(self) -> Element:
        negate = False
        if self.peek() == "-":
            self.take("-")
            negate = True
        out = self.term()
        if negate:
            out = -out
        while self.peek() in "+-":
            op = self.take(self.peek())
            t = self.term()
            out = out + t if op == "+" else out - t
        return out

    def term(self) -> Element:
        out = self.atom()
        while self.peek() == "*":
            self.take("*")
            out = out * self.atom()
        return out

    def atom(self) -> Element:
        kind = self.peek()
        if kind == "num":
            return element_scale(self.take("num"), identity_element(self.graph))
        if kind == "(":
            self.take("(")
            out = self.expr()
            self.take(")")
            return out
        if kind == "name":
            name = self.take("name")
            is_v = name in self.graph.vertex_index
            is_e = name in self.graph.edge_map
            if self.peek() == "^":
                self.take("^")
                if not is_e:
                    raise ExpressionError(f"{name!r} is not an edge, so it has no ghost")
                return ghost(self.graph, name)
            if is_v and is_e:
                raise ExpressionError(f"{name!r} names both a vertex and an edge")
            if is_v:
                return vertex(self.graph, name)
            if is_e:
                return edge(self.graph, name)
            raise ExpressionError(f"unknown name {name!r}")
        raise ExpressionError(f"unexpected {self.tokens[self.pos][1] or 'end of input'!r}")


def parse_expression(graph: Graph, text: str) -> Element:
    p = _Parser(graph, text)
    out = p.expr()
    p.take("end")
    return out
