"""Decision procedures for finite graphs: polynomial identity, matrix-ring
decomposition, Gelfand-Kirillov class and measured growth.

For a finite graph every infinite path eventually runs around a cycle, so
the PI test reduces to "no cycle has an exit"; the bound ``d`` is then the
largest block size of the decomposition.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import Element, Monomial, edge, ghost, monomial_key, product_into, vertex
from .graph import (
    Cycle,
    Graph,
    cycle_exits,
    is_acyclic,
    is_downward_directed,
    paths_into_cycle,
    quotient_graph,
    restriction_sets,
    simple_cycles,
    simple_paths_into,
    sinks,
)
from .linalg import Echelon

__all__ = [
    "AnalysisError",
    "NotPIError",
    "PIReport",
    "GKClass",
    "Block",
    "Decomposition",
    "GrowthSeries",
    "GROWTH_CAP",
    "check_pi",
    "decompose",
    "classify_gk",
    "prime_quotient",
    "subdirect_cover",
    "growth_series",
    "estimate_gk",
    "growth_horizon",
]

GROWTH_CAP = 12


class AnalysisError(ValueError):
    pass


class NotPIError(AnalysisError):
    def __init__(self, cycle: Cycle, exit_edge: str):
        super().__init__(f"not PI: cycle ({cycle}) has exit {exit_edge}")
        self.cycle = cycle
        self.exit_edge = exit_edge


@dataclass(frozen=True)
class PIReport:
    is_pi: bool
    bound_d: int | None = None
    offending_cycle: tuple[Cycle, str] | None = None

    def to_json(self) -> dict:
        witness = None
        if self.offending_cycle is not None:
            c, f = self.offending_cycle
            witness = {"cycle": list(c.edges), "exit": f}
        return {"is_pi": self.is_pi, "d": self.bound_d, "witness": witness}


class GKClass(enum.Enum):
    Zero = "Zero"
    One = "One"
    AtLeastTwo = "AtLeastTwo"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class Block:
    kind: str  # "K" or "Laurent"
    size: int
    anchor: str

    def __str__(self) -> str:
        return f"M_{self.size}({self.kind})"

    def to_json(self) -> dict:
        return {"kind": self.kind, "size": self.size, "anchor": self.anchor}


@dataclass(frozen=True)
class Decomposition:
    sink_blocks: tuple[tuple[str, int], ...]
    cycle_blocks: tuple[tuple[Cycle, int], ...]

    @property
    def blocks(self) -> list[Block]:
        return [Block("K", n, v) for v, n in self.sink_blocks] + [
            Block("Laurent", m, str(c)) for c, m in self.cycle_blocks
        ]

    @property
    def max_size(self) -> int:
        return max(b.size for b in self.blocks)

    def degree_zero_dimension(self) -> int | None:
        """Total dimension when every block is over K, else ``None``."""
        if self.cycle_blocks:
            return None
        return sum(n * n for _, n in self.sink_blocks)

    def __str__(self) -> str:
        return " + ".join(str(b) for b in self.blocks)

    def to_json(self) -> dict:
        return {"blocks": [b.to_json() for b in self.blocks]}


@dataclass(frozen=True)
class GrowthSeries:
    dims: list[int] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"dims": list(self.dims)}


def _first_exit(G: Graph) -> tuple[Cycle, str] | None:
    for c in simple_cycles(G):
        ex = cycle_exits(G, c)
        if ex:
            return c, ex[0]
    return None


def check_pi(G: Graph) -> PIReport:
    witness = _first_exit(G)
    if witness is not None:
        return PIReport(False, None, witness)
    return PIReport(True, decompose(G).max_size, None)


def decompose(G: Graph) -> Decomposition:
    witness = _first_exit(G)
    if witness is not None:
        raise NotPIError(*witness)
    sink_blocks = tuple(
        (v, len(simple_paths_into(G, v))) for v in G.vertex_order(sinks(G))
    )
    cycle_blocks = tuple((c, len(paths_into_cycle(G, c))) for c in simple_cycles(G))
    return Decomposition(sink_blocks, cycle_blocks)


def classify_gk(G: Graph) -> GKClass:
    if is_acyclic(G):
        return GKClass.Zero
    if _first_exit(G) is None:
        return GKClass.One
    return GKClass.AtLeastTwo


def prime_quotient(G: Graph, v: str) -> tuple[Graph, Block]:
    """Quotient by the graded prime ideal attached to a sink or cycle vertex ``v``.

    Returns the quotient graph on M(v) and the matrix block it presents.
    """
    G.check_vertex(v)
    witness = _first_exit(G)
    if witness is not None:
        raise NotPIError(*witness)
    on_cycle = [c for c in simple_cycles(G) if v in c.vertices(G)]
    if G.out_edges[v] and not on_cycle:
        raise AnalysisError(f"{v} is neither a sink nor on a cycle")
    H, M = restriction_sets(G, v)
    Q = quotient_graph(G, H)
    if not on_cycle:
        return Q, Block("K", len(simple_paths_into(Q, v)), v)
    (C,) = on_cycle  # no exits: v lies on exactly one cycle
    q_cycles = [c for c in simple_cycles(Q) if v in c.vertices(Q)]
    if len(q_cycles) != 1:
        raise RuntimeError(f"quotient at {v} does not have a unique cycle through {v}")
    m = len(paths_into_cycle(Q, q_cycles[0]))
    if m != len(paths_into_cycle(G, C)):
        raise RuntimeError(f"block size at {v} differs between the quotient and the graph")
    return Q, Block("Laurent", m, str(C))


def subdirect_cover(G: Graph) -> list[tuple[str, frozenset[str]]]:
    """Representatives ``v`` (each sink, and the base of each cycle) with M(v).

    Every vertex lies in some M(v), which is the finite shadow of the
    prime ideals P_v intersecting to zero.
    """
    witness = _first_exit(G)
    if witness is not None:
        raise NotPIError(*witness)
    reps = G.vertex_order(sinks(G)) + [c.base for c in simple_cycles(G)]
    cover = []
    for v in reps:
        _, M = restriction_sets(G, v)
        if not is_downward_directed(G, M):
            raise RuntimeError(f"M({v}) is not downward directed")
        cover.append((v, M))
    covered = frozenset().union(*(M for _, M in cover))
    if covered != frozenset(G.vertices):
        missing = G.vertex_order(set(G.vertices) - covered)
        raise RuntimeError(f"vertices {missing} lie in no M(v)")
    return cover


# -- growth ------------------------------------------------------------------


def _generators(G: Graph) -> list[Element]:
    gens = [vertex(G, v) for v in G.vertices]
    gens += [edge(G, e.name) for e in G.edges]
    gens += [ghost(G, e.name) for e in G.edges]
    return gens


def growth_series(G: Graph, n: int, cap: int = GROWTH_CAP) -> GrowthSeries:
    """``dims[k]`` = dimension of the span of all products of at most ``k``
    generators, with generators the vertices, edges and ghost edges.

    ``dims[0]`` counts the vertices (the span of the degree-0 idempotents
    that sum to the identity).  Each step multiplies only the basis
    vectors found in the previous step by the generators on the right,
    which spans the same space as all words of the new length.
    """
    if n < 0:
        raise AnalysisError("growth length must be nonnegative")
    if n > cap:
        raise AnalysisError(f"growth length {n} exceeds the cap of {cap}")
    key = monomial_key(G)
    ech = Echelon(key)
    frontier = []
    for x in _generators(G)[: len(G.vertices)]:
        row = ech.add(x.terms)
        if row is not None:
            frontier.append(row)
    dims = [len(ech)]
    gens = [next(iter(g.terms.items())) for g in _generators(G)]
    for _ in range(n):
        new = []
        for row in frontier:
            for gm, gc in gens:
                prod: dict[Monomial, Fraction] = {}
                for m, c in row.items():
                    product_into(G, m, gm, c * gc, prod)
                if prod:
                    r = ech.add(prod)
                    if r is not None:
                        new.append(r)
        frontier = new
        dims.append(len(ech))
    return GrowthSeries(dims)


def growth_horizon(G: Graph) -> int:
    """Growth length after which :func:`estimate_gk` reads the class reliably.

    With ``L`` the longest path that repeats no vertex, the normal
    monomials ``alpha beta*`` with no cycle traversal have
    ``|alpha| + |beta| <= 2L``; past that the series is stable (no cycles)
    or exactly linear (no exits), and two more steps expose the pattern.
    """
    longest = max(len(p.edges) for v in G.vertices for p in simple_paths_into(G, v))
    return 2 * longest + 2


def estimate_gk(s: GrowthSeries | list[int]) -> GKClass:
    """Read a GK class off a measured growth series.

    Zero when the tail repeats a value (the span has closed up), One when
    the last two differences are equal and positive, AtLeastTwo otherwise.
    """
    dims = list(s.dims if isinstance(s, GrowthSeries) else s)
    if len(dims) < 6:
        raise AnalysisError("growth series too short to classify (need at least 6 terms)")
    if dims[-1] == dims[-2]:
        return GKClass.Zero
    diffs = [b - a for a, b in zip(dims, dims[1:])]
    if diffs[-1] > 0 and diffs[-1] == diffs[-2]:
        return GKClass.One
    return GKClass.AtLeastTwo
