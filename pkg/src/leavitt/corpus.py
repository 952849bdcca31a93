"""Built-in graphs: small reference cases, the E_n tower and negative controls."""

from __future__ import annotations

import re

from .graph import Graph, parse_graph

__all__ = [
    "CORPUS",
    "NEGATIVE_CONTROLS",
    "corpus_graph",
    "e_n_graph",
    "truncated_example",
    "rose_graph",
    "parse_generator",
]


def e_n_graph(n: int) -> Graph:
    """``v1 -> v2 -> ... -> vn`` with a loop at ``vn``."""
    if n < 1:
        raise ValueError("E_n needs n >= 1")
    vs = tuple(f"v{i}" for i in range(1, n + 1))
    es = tuple((f"e{i}", f"v{i}", f"v{i + 1}") for i in range(1, n)) + (("c", f"v{n}", f"v{n}"),)
    return Graph(vs, es, name=f"E_{n}")


def truncated_example(k: int = 2) -> Graph:
    """A vertex ``w`` with one edge to each of ``v1..vk``, and a loop at every ``vi``."""
    vs = ("w",) + tuple(f"v{i}" for i in range(1, k + 1))
    es = tuple((f"e{i}", "w", f"v{i}") for i in range(1, k + 1))
    es += tuple((f"l{i}", f"v{i}", f"v{i}") for i in range(1, k + 1))
    return Graph(vs, es, name=f"truncated_example_{k}")


def rose_graph(k: int) -> Graph:
    names = "efghijkl"
    return Graph(("v",), tuple((names[i], "v", "v") for i in range(k)), name=f"rose_{k}")


_TEXT = {
    "single_vertex": "vertex v\n",
    "single_loop": "vertex v\nedge c v v\n",
    "edge": "vertex u\nvertex v\nedge e u v\n",
    "edge_loop": "vertex u\nvertex v\nedge g u v\nedge c v v\n",
    "chain_3": "vertex a\nvertex b\nvertex c\nedge x a b\nedge y b c\n",
    "fork": "vertex a\nvertex b\nvertex c\nedge x a b\nedge y a c\n",
    "two_cycle": "vertex u\nvertex v\nedge e u v\nedge f v u\n",
    "disjoint_loops": "vertex a\nvertex b\nedge p a a\nedge q b b\n",
    "loop_exit": "vertex v\nvertex w\nedge c v v\nedge f v w\n",
}


def _build() -> dict[str, Graph]:
    out = {name: parse_graph(text, name=name) for name, text in _TEXT.items()}
    out["truncated_example_2"] = truncated_example(2)
    out["rose_2"] = rose_graph(2)
    for n in (2, 3, 4):
        out[f"E_{n}"] = e_n_graph(n)
    return out


CORPUS: dict[str, Graph] = _build()

# graphs with a cycle that has an exit: not PI, GK dimension at least 2
NEGATIVE_CONTROLS = frozenset({"rose_2", "loop_exit"})


def corpus_graph(name: str) -> Graph:
    if name in CORPUS:
        return CORPUS[name]
    m = re.fullmatch(r"E_?(\d+)", name)
    if m:
        return e_n_graph(int(m.group(1)))
    raise KeyError(f"unknown corpus graph {name!r}")


def parse_generator(text: str) -> list[Graph]:
    """``En:k`` -> [E_1, ..., E_k]."""
    m = re.fullmatch(r"En:(\d+)", text)
    if not m:
        raise ValueError(f"unknown generator {text!r} (expected En:k)")
    k = int(m.group(1))
    if k < 1:
        raise ValueError("En:k needs k >= 1")
    return [e_n_graph(n) for n in range(1, k + 1)]
