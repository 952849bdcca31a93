"""Finite directed multigraphs and the graph-theoretic predicates used by
the Leavitt path algebra analysis.

Graphs are immutable.  Vertex and edge names live in separate namespaces;
declaration order is kept and used as the canonical order everywhere
(cycle rotations, distinguished edges, report ordering).
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path as FilePath
from typing import Iterable, NamedTuple

__all__ = [
    "Edge",
    "Graph",
    "GraphError",
    "Path",
    "Cycle",
    "parse_graph",
    "graph_from_json",
    "load_graph",
    "sinks",
    "regular_vertices",
    "simple_cycles",
    "cycle_has_exit",
    "cycle_exits",
    "no_cycle_has_exit",
    "is_acyclic",
    "reaches",
    "descendants",
    "simple_paths_into",
    "paths_into_cycle",
    "nonsimple_paths_reach",
    "is_hereditary",
    "is_saturated",
    "hereditary_saturated_closure",
    "restriction_sets",
    "is_downward_directed",
    "quotient_graph",
    "line_points",
]

_NAME = re.compile(r"[A-Za-z0-9_]+\Z")


class GraphError(ValueError):
    """Malformed graph source or an operation applied outside its domain."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class Edge(NamedTuple):
    name: str
    source: str
    range: str


class Path(NamedTuple):
    """A finite path.  ``start``/``end`` are s(mu) and r(mu); for a
    length-0 path both equal the base vertex and ``edges`` is empty."""

    start: str
    edges: tuple[str, ...]
    end: str

    @property
    def length(self) -> int:
        return len(self.edges)

    def __str__(self) -> str:
        return " ".join(self.edges) if self.edges else self.start


@dataclass(frozen=True)
class Graph:
    vertices: tuple[str, ...]
    edges: tuple[Edge, ...]
    name: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(Edge(*e) for e in self.edges))
        if not self.vertices:
            raise GraphError("graph has no vertices")
        if len(set(self.vertices)) != len(self.vertices):
            raise GraphError("duplicate vertex name")
        names = [e.name for e in self.edges]
        if len(set(names)) != len(names):
            raise GraphError("duplicate edge name")
        vs = set(self.vertices)
        for e in self.edges:
            if e.source not in vs or e.range not in vs:
                raise GraphError(f"edge {e.name} has a dangling endpoint")

    # -- lookups -----------------------------------------------------------

    @cached_property
    def vertex_index(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def edge_index(self) -> dict[str, int]:
        return {e.name: i for i, e in enumerate(self.edges)}

    @cached_property
    def edge_map(self) -> dict[str, Edge]:
        return {e.name: e for e in self.edges}

    @cached_property
    def out_edges(self) -> dict[str, tuple[str, ...]]:
        out: dict[str, list[str]] = {v: [] for v in self.vertices}
        for e in self.edges:
            out[e.source].append(e.name)
        return {v: tuple(es) for v, es in out.items()}

    @cached_property
    def in_edges(self) -> dict[str, tuple[str, ...]]:
        inc: dict[str, list[str]] = {v: [] for v in self.vertices}
        for e in self.edges:
            inc[e.range].append(e.name)
        return {v: tuple(es) for v, es in inc.items()}

    def s(self, edge: str) -> str:
        return self.edge_map[edge].source

    def r(self, edge: str) -> str:
        return self.edge_map[edge].range

    def check_vertex(self, v: str) -> None:
        if v not in self.vertex_index:
            raise GraphError(f"unknown vertex {v!r}")

    def check_edge(self, e: str) -> None:
        if e not in self.edge_map:
            raise GraphError(f"unknown edge {e!r}")

    def path(self, edges: Iterable[str] = (), base: str | None = None) -> Path:
        """Build a validated path from edge names (or the trivial path at ``base``)."""
        edges = tuple(edges)
        if not edges:
            if base is None:
                raise GraphError("a length-0 path needs a base vertex")
            self.check_vertex(base)
            return Path(base, (), base)
        for e in edges:
            self.check_edge(e)
        for a, b in zip(edges, edges[1:]):
            if self.r(a) != self.s(b):
                raise GraphError(f"edges {a} and {b} are not composable")
        if base is not None and base != self.s(edges[0]):
            raise GraphError(f"path does not start at {base}")
        return Path(self.s(edges[0]), edges, self.r(edges[-1]))

    def vertex_order(self, vs: Iterable[str]) -> list[str]:
        return sorted(vs, key=self.vertex_index.__getitem__)

    def to_json(self) -> dict:
        return {"vertices": list(self.vertices), "edges": [list(e) for e in self.edges]}

    def to_text(self) -> str:
        lines = [f"vertex {v}" for v in self.vertices]
        lines += [f"edge {e.name} {e.source} {e.range}" for e in self.edges]
        return "\n".join(lines) + "\n"

    def __str__(self) -> str:
        return self.name or f"Graph({len(self.vertices)} vertices, {len(self.edges)} edges)"


@dataclass(frozen=True)
class Cycle:
    """A vertex-simple closed path, stored in its canonical rotation: the
    one starting at the cycle's least vertex in declaration order."""

    path: Path

    @property
    def edges(self) -> tuple[str, ...]:
        return self.path.edges

    @property
    def base(self) -> str:
        return self.path.start

    def __len__(self) -> int:
        return len(self.path.edges)

    def vertices(self, graph: Graph) -> tuple[str, ...]:
        return tuple(graph.s(e) for e in self.edges)

    def rotation_at(self, graph: Graph, v: str) -> Path:
        """The same cycle read as a closed path based at ``v``."""
        vs = self.vertices(graph)
        if v not in vs:
            raise GraphError(f"vertex {v} is not on cycle {self}")
        i = vs.index(v)
        return Path(v, self.edges[i:] + self.edges[:i], v)

    @classmethod
    def from_edges(cls, graph: Graph, edges: Iterable[str]) -> "Cycle":
        p = graph.path(edges)
        if not p.edges or p.start != p.end:
            raise GraphError("a cycle must be a nonempty closed path")
        vs = [graph.s(e) for e in p.edges]
        if len(set(vs)) != len(vs):
            raise GraphError("a cycle may not pass through a vertex twice")
        i = min(range(len(vs)), key=lambda k: graph.vertex_index[vs[k]])
        es = p.edges[i:] + p.edges[:i]
        return cls(Path(vs[i], es, vs[i]))

    def __str__(self) -> str:
        return " ".join(self.edges)


# -- parsing -------------------------------------------------------------


def parse_graph(text: str, name: str = "") -> Graph:
    """Parse the line-oriented graph format::

        # comment
        vertex v
        edge c v v
    """
    vertices: list[str] = []
    edges: list[Edge] = []
    seen_v: set[str] = set()
    seen_e: set[str] = set()
    edge_lines: list[tuple[int, Edge]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        kind = parts[0]
        if kind == "vertex" and len(parts) == 2:
            v = parts[1]
            _check_name(v, lineno)
            if v in seen_v:
                raise GraphError(f"duplicate vertex {v!r}", lineno)
            seen_v.add(v)
            vertices.append(v)
        elif kind == "edge" and len(parts) == 4:
            for p in parts[1:]:
                _check_name(p, lineno)
            e = Edge(*parts[1:])
            if e.name in seen_e:
                raise GraphError(f"duplicate edge {e.name!r}", lineno)
            seen_e.add(e.name)
            edges.append(e)
            edge_lines.append((lineno, e))
        else:
            raise GraphError(f"syntax error: {raw.strip()!r}", lineno)
    for lineno, e in edge_lines:
        for end in (e.source, e.range):
            if end not in seen_v:
                raise GraphError(f"edge {e.name} has dangling endpoint {end!r}", lineno)
    if not vertices:
        raise GraphError("graph has no vertices")
    return Graph(tuple(vertices), tuple(edges), name=name)


def _check_name(name: str, lineno: int) -> None:
    if not _NAME.match(name):
        raise GraphError(f"invalid name {name!r}", lineno)


def graph_from_json(data: dict | str, name: str = "") -> Graph:
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise GraphError(f"invalid JSON: {exc.msg}", exc.lineno) from None
    try:
        vertices = [str(v) for v in data["vertices"]]
        edges = [Edge(*map(str, e)) for e in data.get("edges", [])]
    except (KeyError, TypeError) as exc:
        raise GraphError(f"malformed graph JSON: {exc}") from None
    for n in vertices + [e.name for e in edges]:
        if not _NAME.match(n):
            raise GraphError(f"invalid name {n!r}")
    return Graph(tuple(vertices), tuple(edges), name=name)


def load_graph(path: str | FilePath) -> Graph:
    path = FilePath(path)
    text = path.read_text(encoding="utf-8")
    if path.suffix == ".json":
        return graph_from_json(text, name=path.stem)
    return parse_graph(text, name=path.stem)


# -- vertex classes and cycles --------------------------------------------


def sinks(G: Graph) -> set[str]:
    return {v for v in G.vertices if not G.out_edges[v]}


def regular_vertices(G: Graph) -> set[str]:
    # finite graphs have no infinite emitters
    return {v for v in G.vertices if G.out_edges[v]}


def simple_cycles(G: Graph) -> list[Cycle]:
    """All vertex-simple directed cycles, each once in canonical rotation.

    Each cycle is grown from its least vertex ``s`` through vertices of
    larger index only, so rotations are never produced twice.  Vertices
    that cannot get back to ``s`` inside that window are pruned.
    """
    idx = G.vertex_index
    found: list[Cycle] = []
    for s in G.vertices:
        lo = idx[s]
        allowed = {v for v in G.vertices if idx[v] >= lo}
        back = _reaching(G, s, allowed)
        stack: list[str] = []
        on_path = {s}

        def extend(v: str) -> None:
            for e in G.out_edges[v]:
                w = G.r(e)
                if w == s:
                    found.append(Cycle(Path(s, tuple(stack) + (e,), s)))
                elif w in back and w not in on_path and idx[w] > lo:
                    stack.append(e)
                    on_path.add(w)
                    extend(w)
                    on_path.discard(w)
                    stack.pop()

        extend(s)
    found.sort(key=lambda c: (len(c), [G.edge_index[e] for e in c.edges]))
    return found


def _reaching(G: Graph, target: str, allowed: set[str]) -> set[str]:
    """Vertices of ``allowed`` with a path to ``target`` staying inside ``allowed``."""
    seen = {target}
    todo = [target]
    while todo:
        v = todo.pop()
        for e in G.in_edges[v]:
            u = G.s(e)
            if u in allowed and u not in seen:
                seen.add(u)
                todo.append(u)
    return seen


def _check_cycle(G: Graph, C: Cycle) -> None:
    try:
        canon = Cycle.from_edges(G, C.edges)
    except GraphError:
        raise GraphError(f"cycle ({C}) is not in the graph") from None
    if canon != C:
        raise GraphError(f"cycle ({C}) is not in canonical rotation")


def cycle_exits(G: Graph, C: Cycle) -> list[str]:
    """Edges leaving a vertex of ``C`` that are not edges of ``C``."""
    _check_cycle(G, C)
    on = set(C.edges)
    return [e for v in C.vertices(G) for e in G.out_edges[v] if e not in on]


def cycle_has_exit(G: Graph, C: Cycle) -> bool:
    return bool(cycle_exits(G, C))


def no_cycle_has_exit(G: Graph) -> bool:
    return not any(cycle_has_exit(G, c) for c in simple_cycles(G))


def is_acyclic(G: Graph) -> bool:
    return not simple_cycles(G)


# -- reachability and paths ------------------------------------------------


def descendants(G: Graph, u: str) -> set[str]:
    """T(u): every vertex reachable from ``u``, ``u`` included."""
    G.check_vertex(u)
    seen = {u}
    todo = [u]
    while todo:
        v = todo.pop()
        for e in G.out_edges[v]:
            w = G.r(e)
            if w not in seen:
                seen.add(w)
                todo.append(w)
    return seen


def reaches(G: Graph, u: str, v: str) -> bool:
    G.check_vertex(v)
    return v in descendants(G, u)


def _simple_paths_ending(G: Graph, ends: Iterable[str], blocked: set[str]) -> list[Path]:
    out: list[Path] = []
    for v in ends:
        G.check_vertex(v)
        out.append(Path(v, (), v))
        stack: list[str] = []
        visited = {v} | blocked

        def grow(u: str) -> None:
            for e in G.in_edges[u]:
                w = G.s(e)
                if w in visited:
                    continue
                stack.append(e)
                visited.add(w)
                edges = tuple(reversed(stack))
                out.append(Path(w, edges, v))
                grow(w)
                visited.discard(w)
                stack.pop()

        grow(v)
    return out


def _path_key(G: Graph, p: Path) -> tuple:
    return (len(p.edges), G.vertex_index[p.end], G.vertex_index[p.start],
            [G.edge_index[e] for e in p.edges])


def simple_paths_into(G: Graph, v: str) -> list[Path]:
    """Paths ending at ``v`` that visit no vertex twice, the trivial path included."""
    paths = _simple_paths_ending(G, [v], set())
    paths.sort(key=lambda p: _path_key(G, p))
    return paths


def paths_into_cycle(G: Graph, C: Cycle) -> list[Path]:
    """Vertex-simple paths ending on ``C`` that use no edge of ``C``.

    Because ``C`` has no exit, such a path meets ``C`` only at its last
    vertex.  The count is the size of the Laurent matrix block for ``C``.
    """
    ex = cycle_exits(G, C)
    if ex:
        raise GraphError(f"cycle ({C}) has exit {ex[0]}")
    vs = C.vertices(G)
    # blocking the other cycle vertices keeps cycle edges out of the paths
    paths: list[Path] = []
    for v in vs:
        paths += _simple_paths_ending(G, [v], set(vs) - {v})
    paths.sort(key=lambda p: _path_key(G, p))
    return paths


def nonsimple_paths_reach(G: Graph, targets: Iterable[str], avoid: Iterable[str] = ()) -> bool:
    """True when some path with a repeated vertex ends in ``targets``.

    That happens exactly when a cycle other than ones listed in ``avoid``
    (given by their edges) can reach a target; vertex-simple tallies are
    then only a lower bound on the number of paths.
    """
    avoid_edges = set(avoid)
    targets = set(targets)
    for c in simple_cycles(G):
        if set(c.edges) <= avoid_edges:
            continue
        if descendants(G, c.base) & targets:
            return True
    return False


# -- hereditary / saturated sets --------------------------------------------


def is_hereditary(G: Graph, H: Iterable[str]) -> bool:
    H = set(H)
    return all(G.r(e) in H for v in H for e in G.out_edges[v])


def is_saturated(G: Graph, H: Iterable[str]) -> bool:
    H = set(H)
    for v in G.vertices:
        outs = G.out_edges[v]
        if v not in H and outs and all(G.r(e) in H for e in outs):
            return False
    return True


def hereditary_saturated_closure(G: Graph, X: Iterable[str]) -> frozenset[str]:
    """Least hereditary saturated set containing ``X``."""
    H = set(X)
    for v in H:
        G.check_vertex(v)
    changed = True
    while changed:
        changed = False
        for v in list(H):
            for e in G.out_edges[v]:
                if G.r(e) not in H:
                    H.add(G.r(e))
                    changed = True
        for v in G.vertices:
            outs = G.out_edges[v]
            if v not in H and outs and all(G.r(e) in H for e in outs):
                H.add(v)
                changed = True
    return frozenset(H)


def restriction_sets(G: Graph, v: str) -> tuple[frozenset[str], frozenset[str]]:
    """(H(v), M(v)): the vertices that do not reach ``v``, and those that do."""
    G.check_vertex(v)
    M = frozenset(u for u in G.vertices if v in descendants(G, u))
    return frozenset(G.vertices) - M, M


def is_downward_directed(G: Graph, D: Iterable[str]) -> bool:
    D = set(D)
    below = {u: descendants(G, u) & D for u in D}
    return all(below[a] & below[b] for a in D for b in D)


def quotient_graph(G: Graph, H: Iterable[str]) -> Graph:
    """The graph presenting L(G)/I(H) for a hereditary saturated ``H``.

    Finite graphs have no breaking vertices, so no primed vertices or
    edges are added: drop ``H`` and every edge ranging into it.
    """
    H = set(H)
    for v in H:
        G.check_vertex(v)
    if not is_hereditary(G, H):
        raise GraphError("vertex set is not hereditary")
    if not is_saturated(G, H):
        raise GraphError("vertex set is not saturated")
    vertices = tuple(v for v in G.vertices if v not in H)
    if not vertices:
        raise GraphError("quotient by the whole vertex set is the zero algebra")
    edges = tuple(e for e in G.edges if e.range not in H)
    name = f"{G.name}/H" if G.name else ""
    return Graph(vertices, edges, name=name)


def line_points(G: Graph) -> set[str]:
    on_cycle = {v for c in simple_cycles(G) for v in c.vertices(G)}
    bad = {v for v in G.vertices if len(G.out_edges[v]) > 1 or v in on_cycle}
    return {v for v in G.vertices if not (descendants(G, v) & bad)}
