"""Brute-force checks of the structural claims by direct computation.

Every check returns a :class:`VerificationReport`; a report passes when its
``failures`` list is empty.  Failures carry enough serialized input
(element strings, seed, trial number) to replay the counterexample.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Sequence

from .algebra import (
    Element,
    MatrixUnits,
    Monomial,
    adjoint,
    cycle_matrix_units,
    edge,
    ghost,
    identity_element,
    monomial_key,
    normal_form,
    path_element,
    sink_matrix_units,
    standard_identity_eval,
    vertex,
    zero,
)
from .analysis import (
    GROWTH_CAP,
    check_pi,
    classify_gk,
    decompose,
    estimate_gk,
    growth_horizon,
    growth_series,
)
from .graph import Cycle, Graph, Path, cycle_exits, regular_vertices, simple_cycles
from .linalg import Echelon

__all__ = [
    "VerificationError",
    "VerificationReport",
    "random_monomial",
    "random_element",
    "block_units",
    "verify_ck_relations",
    "verify_standard_identity",
    "verify_matrix_units",
    "verify_invertibility_transfer",
    "verify_cycle_independence",
    "verify_growth_matches_class",
    "INDEPENDENCE_CAP",
    "SuiteEntry",
    "run_suite",
]

INDEPENDENCE_CAP = 8

# random element distribution
COEFFICIENTS = (-2, -1, 0, 1, 2)
MAX_PATH_LENGTH = 3
MAX_TERMS = 4


class VerificationError(ValueError):
    """A check was asked to run outside its precondition."""


@dataclass
class VerificationReport:
    check: str
    graph: str
    trials: int = 0
    failures: list[dict] = field(default_factory=list)
    seed: int | None = None
    millis: int = 0
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "check": self.check,
            "graph": self.graph,
            "trials": self.trials,
            "failures": self.failures,
            "seed": self.seed,
            "millis": self.millis,
        }


class _Timer:
    def __init__(self, report: VerificationReport):
        self.report = report

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self.report

    def __exit__(self, *exc):
        self.report.millis = int(round((time.perf_counter() - self.t0) * 1000))
        return False


# -- random elements -----------------------------------------------------------


def _backward_walk(G: Graph, end: str, rng: random.Random) -> Path:
    length = rng.randint(0, MAX_PATH_LENGTH)
    edges: list[str] = []
    v = end
    for _ in range(length):
        inc = G.in_edges[v]
        if not inc:
            break
        e = rng.choice(inc)
        edges.append(e)
        v = G.s(e)
    return Path(v, tuple(reversed(edges)), end)


def random_monomial(G: Graph, rng: random.Random) -> Monomial:
    """``alpha beta*`` with both paths of length at most 3 ending at a random vertex."""
    w = rng.choice(G.vertices)
    return Monomial(_backward_walk(G, w, rng), _backward_walk(G, w, rng))


def random_element(G: Graph, rng: random.Random) -> Element:
    """Up to four monomials with coefficients drawn from -2..2, normalized."""
    k = rng.randint(1, MAX_TERMS)
    return normal_form(G, [(rng.choice(COEFFICIENTS), random_monomial(G, rng)) for _ in range(k)])


def _name(G: Graph) -> str:
    return G.name or str(G)


# -- checks ------------------------------------------------------------------


def verify_ck_relations(G: Graph) -> VerificationReport:
    """Check orthogonal vertex idempotents, source/range absorption, CK-1 and CK-2."""
    report = VerificationReport("ck_relations", _name(G))
    with _Timer(report):
        V = {v: vertex(G, v) for v in G.vertices}
        Ed = {e.name: edge(G, e.name) for e in G.edges}
        Gh = {e.name: ghost(G, e.name) for e in G.edges}

        def expect(label: str, lhs: Element, rhs: Element) -> None:
            report.trials += 1
            if lhs != rhs:
                report.failures.append({"relation": label, "lhs": str(lhs), "rhs": str(rhs)})

        for v in G.vertices:
            for w in G.vertices:
                expect(f"{v}*{w}", V[v] * V[w], V[v] if v == w else zero(G))
        for e in G.edges:
            x, xs = Ed[e.name], Gh[e.name]
            expect(f"s({e.name}){e.name} = {e.name}", V[e.source] * x, x)
            expect(f"{e.name} r({e.name}) = {e.name}", x * V[e.range], x)
            expect(f"r({e.name}){e.name}^ = {e.name}^", V[e.range] * xs, xs)
            expect(f"{e.name}^ s({e.name}) = {e.name}^", xs * V[e.source], xs)
            for f in G.edges:
                rhs = V[e.range] if f.name == e.name else zero(G)
                expect(f"{e.name}^*{f.name}", xs * Ed[f.name], rhs)
        # CK-2 only at regular vertices; sinks are skipped
        for v in G.vertex_order(regular_vertices(G)):
            total = zero(G)
            for e in G.out_edges[v]:
                total = total + Ed[e] * Gh[e]
            expect(f"CK-2 at {v}", total, V[v])
    return report


def verify_standard_identity(G: Graph, trials: int, seed: int, d: int | None = None,
                             tuples: Sequence[Sequence[Element]] | None = None) -> VerificationReport:
    """Evaluate ``S_2d`` on random tuples (or on the given ``tuples``).

    ``d`` defaults to the PI bound; passing it explicitly forces the degree,
    which is how negative controls on non-PI graphs are run.
    """
    if d is None:
        rep = check_pi(G)
        if not rep.is_pi:
            raise VerificationError(f"{_name(G)} is not PI; pass d explicitly to force a degree")
        d = rep.bound_d
    if 2 * d > 8:
        raise VerificationError(f"S_{2 * d} exceeds the evaluation cap")
    report = VerificationReport(f"standard_identity_S{2 * d}", _name(G), seed=seed)
    rng = random.Random(seed)
    with _Timer(report):
        if tuples is None:
            tuples = ([random_element(G, rng) for _ in range(2 * d)] for _ in range(trials))
        for t, args in enumerate(tuples):
            if len(args) != 2 * d:
                raise VerificationError(f"expected {2 * d} arguments, got {len(args)}")
            report.trials += 1
            value = standard_identity_eval(G, args)
            if value:
                report.failures.append({"trial": t, "args": [str(a) for a in args], "value": str(value)})
    return report


def block_units(G: Graph) -> list[MatrixUnits]:
    """Matrix units for every block of the decomposition, sinks first."""
    dec = decompose(G)
    return [sink_matrix_units(G, v) for v, _ in dec.sink_blocks] + [
        cycle_matrix_units(G, c) for c, _ in dec.cycle_blocks
    ]


def verify_matrix_units(G: Graph) -> VerificationReport:
    """Exhaustive product tables for the decomposition's matrix units.

    ``trials`` counts unit products: the delta relations inside each block
    and the vanishing products across blocks.  The block identities must
    also sum to 1, and each Laurent shift must be invertible and central
    in its block.
    """
    report = VerificationReport("matrix_units", _name(G))
    with _Timer(report):
        blocks = block_units(G)
        for bi, A in enumerate(blocks):
            for bj, B in enumerate(blocks):
                n, m = A.size, B.size
                for i in range(n):
                    for j in range(n):
                        for k in range(m):
                            for l in range(m):
                                report.trials += 1
                                got = A.units[i][j] * B.units[k][l]
                                want = A.units[i][l] if (bi == bj and j == k) else zero(G)
                                if got != want:
                                    report.failures.append({
                                        "blocks": [A.anchor, B.anchor],
                                        "product": [i + 1, j + 1, k + 1, l + 1],
                                        "got": str(got), "want": str(want)})
        total = zero(G)
        for A in blocks:
            total = total + A.identity()
        if total != identity_element(G):
            report.failures.append({"property": "block identities sum to 1", "got": str(total)})
        for A in blocks:
            if A.shift is None:
                continue
            one = A.identity()
            for label, got in (("x*x^-1", A.shift * A.shift_inverse), ("x^-1*x", A.shift_inverse * A.shift)):
                if got != one:
                    report.failures.append({"block": A.anchor, "property": label, "got": str(got)})
            for i in range(A.size):
                for j in range(A.size):
                    u = A.units[i][j]
                    if A.shift * u != u * A.shift:
                        report.failures.append({"block": A.anchor, "property": "shift central",
                                                "unit": [i + 1, j + 1]})
        report.details["blocks"] = [(A.kind, A.size, A.anchor) for A in blocks]
    return report


def _unit_pair(blocks: list[MatrixUnits], rng: random.Random, G: Graph) -> tuple[Element, Element]:
    """A random unit ``a`` built from a permutation matrix with Laurent
    monomial entries in every block, and its inverse ``b``."""
    a, b = zero(G), zero(G)
    for A in blocks:
        perm = list(range(A.size))
        rng.shuffle(perm)
        for i, p in enumerate(perm):
            k = rng.randint(-2, 2) if A.shift is not None else 0
            x = A.shift if k >= 0 else A.shift_inverse
            xi = A.shift_inverse if k >= 0 else A.shift
            pw, pwi = A.identity(), A.identity()
            for _ in range(abs(k)):
                pw, pwi = pw * x, pwi * xi
            a = a + A.units[i][p] * pw
            b = b + pwi * A.units[p][i]
    return a, b


def verify_invertibility_transfer(G: Graph, trials: int, seed: int = 0) -> VerificationReport:
    """Check that ``ab = 1`` forces ``ba = 1`` on structured samples.

    For every cycle ``c`` read at each of its vertices ``v`` the pair
    ``a = u + c*``, ``b = u + c`` (``u`` the other vertices) has
    ``ab = 1``; ``ba = 1`` holds exactly when ``cc* = v``.  When the cycle
    has an exit ``f`` this fails, and the failure records ``v - cc*`` and
    ``c* f = 0``.  On PI graphs ``trials`` further random unit pairs from
    the matrix-unit decomposition are tested.
    """
    report = VerificationReport("invertibility_transfer", _name(G), seed=seed)
    rng = random.Random(seed)
    one = identity_element(G)
    with _Timer(report):
        for C in simple_cycles(G):
            exits = cycle_exits(G, C)
            for v in C.vertices(G):
                c = path_element(G, C.rotation_at(G, v))
                cs = adjoint(c)
                u = one - vertex(G, v)
                a, b = u + cs, u + c
                report.trials += 1
                if a * b != one:
                    continue
                ba = b * a
                if ba != one:
                    fail = {"cycle": str(C), "base": v, "a": str(a), "b": str(b),
                            "ba": str(ba), "v - cc^": str(vertex(G, v) - c * cs)}
                    f = [e for e in G.out_edges[v] if e in exits]
                    if f:
                        fail["exit"] = f[0]
                        fail["c^*exit"] = str(cs * edge(G, f[0]))
                    report.failures.append(fail)
        if check_pi(G).is_pi:
            blocks = block_units(G)
            for t in range(trials):
                a, b = _unit_pair(blocks, rng, G)
                report.trials += 1
                if a * b != one:
                    continue
                ba = b * a
                if ba != one:
                    report.failures.append({"trial": t, "a": str(a), "b": str(b), "ba": str(ba)})
    return report


def verify_cycle_independence(G: Graph, C: Cycle, n: int, cap: int = INDEPENDENCE_CAP) -> VerificationReport:
    """Rank of ``{c^i (c*)^j : i + j <= n}`` for a cycle with an exit."""
    if not cycle_exits(G, C):
        raise VerificationError(f"cycle ({C}) has no exit; c c* = v collapses the set")
    if n > cap:
        raise VerificationError(f"n = {n} exceeds the cap of {cap}")
    report = VerificationReport(f"cycle_independence_n{n}", _name(G))
    with _Timer(report):
        c = path_element(G, C.path)
        cs = adjoint(c)
        pw = [c ** 0]
        gw = [cs ** 0]
        for _ in range(n):
            pw.append(pw[-1] * c)
            gw.append(gw[-1] * cs)
        ech = Echelon(monomial_key(G))
        for i in range(n + 1):
            for j in range(n + 1 - i):
                report.trials += 1
                ech.add((pw[i] * gw[j]).terms)
        want = (n + 1) * (n + 2) // 2
        report.details["rank"] = len(ech)
        report.details["expected"] = want
        if len(ech) != want:
            report.failures.append({"cycle": str(C), "n": n, "rank": len(ech), "expected": want})
    return report


def verify_growth_matches_class(G: Graph, n: int = GROWTH_CAP) -> VerificationReport:
    if n < 6:
        raise VerificationError("growth check needs at least 6 terms")
    report = VerificationReport("growth_matches_class", _name(G))
    with _Timer(report):
        series = growth_series(G, n)
        est, cls = estimate_gk(series), classify_gk(G)
        report.trials = 1
        report.details.update(dims=series.dims, estimated=str(est), theoretical=str(cls))
        if est != cls:
            report.failures.append({"dims": series.dims, "estimated": str(est), "theoretical": str(cls)})
    return report


# -- batch runs ----------------------------------------------------------------


@dataclass
class SuiteEntry:
    """One check in a batch run with the outcome the theory predicts."""

    name: str
    expected_pass: bool
    report: VerificationReport | None = None
    skipped: str | None = None

    @property
    def as_expected(self) -> bool:
        return self.report is None or self.report.passed == self.expected_pass

    def to_json(self) -> dict:
        out = {"name": self.name, "expected_pass": self.expected_pass,
               "skipped": self.skipped, "as_expected": self.as_expected}
        out["report"] = self.report.to_json() if self.report is not None else None
        return out


def run_suite(G: Graph, seed: int = 0, trials: int = 100, n: int = GROWTH_CAP,
              independence_n: int = 6) -> list[SuiteEntry]:
    """Run every applicable check on ``G``.

    On graphs whose cycles have exits the standard identity is forced to
    degree 2 on ``(e, e*)`` and invertibility transfer is expected to fail:
    these are the negative controls.
    """
    entries = [SuiteEntry("ck_relations", True, verify_ck_relations(G))]
    pi = check_pi(G)
    if pi.is_pi:
        if 2 * pi.bound_d <= 8:
            entries.append(SuiteEntry("standard_identity", True,
                                      verify_standard_identity(G, trials, seed)))
        else:
            entries.append(SuiteEntry("standard_identity", True,
                                      skipped=f"S_{2 * pi.bound_d} is beyond the evaluation cap"))
        entries.append(SuiteEntry("matrix_units", True, verify_matrix_units(G)))
    else:
        c, _ = pi.offending_cycle
        e = c.edges[0]
        pair = [edge(G, e), ghost(G, e)]
        entries.append(SuiteEntry("standard_identity", False,
                                  verify_standard_identity(G, 1, seed, d=1, tuples=[pair])))
    entries.append(SuiteEntry("invertibility_transfer", pi.is_pi,
                              verify_invertibility_transfer(G, trials if pi.is_pi else 0, seed)))
    for C in simple_cycles(G):
        if cycle_exits(G, C):
            entries.append(SuiteEntry(f"cycle_independence({C})", True,
                                      verify_cycle_independence(G, C, independence_n)))
    horizon = growth_horizon(G)
    if horizon <= n:
        entries.append(SuiteEntry("growth_matches_class", True, verify_growth_matches_class(G, n)))
    else:
        entries.append(SuiteEntry("growth_matches_class", True,
                                  skipped=f"needs {horizon} growth steps, horizon is {n}"))
    return entries
