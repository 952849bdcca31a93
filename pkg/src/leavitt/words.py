"""Letter-level rewriting of generator words.

This is a second, deliberately naive route to normal forms: a word is a
tuple of letters (vertices, edges, ghosts) and the defining relations are
applied one adjacent pair at a time.  The redex is picked either leftmost
or rightmost, so agreement between the two strategies (and with
:func:`leavitt.algebra.element_mul`) witnesses confluence of the system.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, NamedTuple

from .algebra import Element, Monomial
from .graph import Graph, Path

__all__ = ["Letter", "V", "E", "G", "word_normal_form", "element_from_words", "words_of"]

V, E, G = "v", "e", "g"


class Letter(NamedTuple):
    kind: str  # V, E or G (ghost)
    name: str


Word = tuple[Letter, ...]


def _src(graph: Graph, x: Letter) -> str:
    if x.kind == V:
        return x.name
    return graph.s(x.name) if x.kind == E else graph.r(x.name)


def _rng(graph: Graph, x: Letter) -> str:
    if x.kind == V:
        return x.name
    return graph.r(x.name) if x.kind == E else graph.s(x.name)


def _rewrite_pair(graph: Graph, x: Letter, y: Letter) -> list[tuple[int, Word]] | None:
    """Replacement for the adjacent pair ``x y``, or ``None`` if none applies.

    An empty list means the pair is zero.
    """
    if x.kind == V or y.kind == V:
        if _rng(graph, x) != _src(graph, y):
            return []
        return [(1, (y,) if x.kind == V else (x,))]
    if _rng(graph, x) != _src(graph, y):
        return []
    if x.kind == G and y.kind == E:
        # CK-1
        return [(1, (Letter(V, graph.r(y.name)),))] if x.name == y.name else []
    if x.kind == E and y.kind == G and x.name == y.name:
        v = graph.s(x.name)
        outs = graph.out_edges[v]
        if outs[-1] == x.name:
            # CK-2 at a distinguished edge
            return [(1, (Letter(V, v),))] + [(-1, (Letter(E, f), Letter(G, f))) for f in outs[:-1]]
    return None


def _find_redex(graph: Graph, word: Word, strategy: str):
    idx = range(len(word) - 1)
    if strategy == "rightmost":
        idx = reversed(idx)
    elif strategy != "leftmost":
        raise ValueError(f"unknown strategy {strategy!r}")
    for i in idx:
        rep = _rewrite_pair(graph, word[i], word[i + 1])
        if rep is not None:
            return i, rep
    return None


def _to_monomial(graph: Graph, word: Word) -> Monomial:
    if len(word) == 1 and word[0].kind == V:
        p = Path(word[0].name, (), word[0].name)
        return Monomial(p, p)
    alpha = tuple(x.name for x in word if x.kind == E)
    beta = tuple(x.name for x in reversed(word) if x.kind == G)
    end = graph.r(alpha[-1]) if alpha else graph.r(beta[-1])
    pa = Path(graph.s(alpha[0]), alpha, end) if alpha else Path(end, (), end)
    pb = Path(graph.s(beta[0]), beta, end) if beta else Path(end, (), end)
    return Monomial(pa, pb)


def word_normal_form(graph: Graph, words: Iterable[tuple[int | Fraction, Word]],
                     strategy: str = "leftmost", max_steps: int = 1_000_000) -> Element:
    """Normalize a combination of words by single-pair rewrites."""
    done: dict[Word, Fraction] = {}
    todo: list[tuple[Fraction, Word]] = [(Fraction(c), tuple(Letter(*x) for x in w)) for c, w in words]
    steps = 0
    while todo:
        c, w = todo.pop()
        if not c:
            continue
        if not w:
            raise ValueError("the empty word is not an element of the algebra")
        hit = _find_redex(graph, w, strategy)
        if hit is None:
            done[w] = done.get(w, 0) + c
            continue
        steps += 1
        if steps > max_steps:
            raise RuntimeError("rewriting did not terminate within the step budget")
        i, rep = hit
        for k, r in rep:
            todo.append((c * k, w[:i] + r + w[i + 2:]))
    return Element(graph, {_to_monomial(graph, w): c for w, c in done.items() if c})


def words_of(x: Element) -> list[tuple[Fraction, Word]]:
    """Spell each term of ``x`` as a generator word."""
    out = []
    for m, c in x.terms.items():
        if m.is_vertex():
            out.append((c, (Letter(V, m.alpha.start),)))
        else:
            w = tuple(Letter(E, e) for e in m.alpha.edges) + tuple(
                Letter(G, e) for e in reversed(m.beta.edges))
            out.append((c, w))
    return out


def element_from_words(graph: Graph, factors: list[Element], strategy: str = "leftmost") -> Element:
    """Product of ``factors`` computed by concatenating words and rewriting."""
    combos: list[tuple[Fraction, Word]] = [(Fraction(1), ())]
    for f in factors:
        ws = words_of(f)
        combos = [(c1 * c2, w1 + w2) for c1, w1 in combos for c2, w2 in ws]
    return word_normal_form(graph, combos, strategy)
