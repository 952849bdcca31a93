"""Acceptance gate: one test and one printed PASS/FAIL line per criterion.

All comparisons are exact (rational arithmetic, zero tolerance); the only
pinned numbers are the wall-clock limits below.
"""

import random
import sys
import time
from contextlib import contextmanager

import pytest

from leavitt.algebra import (
    adjoint,
    edge,
    ghost,
    identity_element,
    normal_form,
    path_element,
    standard_identity_eval,
    vertex,
)
from leavitt.analysis import GKClass, check_pi, classify_gk, decompose, estimate_gk, growth_series
from leavitt.corpus import CORPUS, e_n_graph
from leavitt.graph import Graph, cycle_exits, no_cycle_has_exit, simple_cycles
from leavitt.verify import (
    random_element,
    verify_ck_relations,
    verify_cycle_independence,
    verify_invertibility_transfer,
    verify_matrix_units,
    verify_standard_identity,
)

LIMITS = {1: 10.0, 2: 1.0, 3: 5.0, 4: 30.0, 5: 5.0, 6: 60.0, 7: 5.0, 8: 5.0}
TRIPLES_PER_GRAPH = 500
S4_TUPLES = 100
SEED = 20240601


@pytest.fixture
def criterion(capsys):
    @contextmanager
    def run(num: int, title: str):
        notes: list[str] = []
        t0 = time.perf_counter()
        try:
            yield notes
            elapsed = time.perf_counter() - t0
            assert elapsed < LIMITS[num], f"took {elapsed:.2f}s, limit {LIMITS[num]:.0f}s"
        except AssertionError as exc:
            with capsys.disabled():
                print(f"\n[FAIL] C{num} {title}: {exc}", file=sys.stdout, flush=True)
            raise
        with capsys.disabled():
            detail = "; ".join(notes)
            print(f"\n[PASS] C{num} {title} ({elapsed:.2f}s < {LIMITS[num]:.0f}s) {detail}",
                  file=sys.stdout, flush=True)
    return run


def test_c1_ck_suite(criterion):
    with criterion(1, "CK relations, idempotence, associativity") as notes:
        triples = 0
        for name, G in CORPUS.items():
            rep = verify_ck_relations(G)
            assert rep.passed, f"{name}: {rep.failures[:1]}"
            rng = random.Random(SEED)
            for _ in range(TRIPLES_PER_GRAPH):
                x, y, z = (random_element(G, rng) for _ in range(3))
                assert normal_form(G, [(c, m) for m, c in x.terms.items()]) == x, name
                assert (x * y) * z == x * (y * z), f"{name}: {x} | {y} | {z}"
                triples += 1
        notes.append(f"{len(CORPUS)} graphs, {triples} triples")


def test_c2_equivalence_matrix(criterion):
    with criterion(2, "PI <=> no exit <=> GK in {Zero, One}") as notes:
        for name, G in CORPUS.items():
            pi = check_pi(G).is_pi
            gk = classify_gk(G) in (GKClass.Zero, GKClass.One)
            assert pi == no_cycle_has_exit(G) == gk, name
        notes.append(f"{len(CORPUS)} graphs agree")


def test_c3_decomposition(criterion):
    cases = [
        ("single_vertex", "M_1(K)"),
        ("single_loop", "M_1(Laurent)"),
        ("edge", "M_2(K)"),
        ("edge_loop", "M_2(Laurent)"),
        ("chain_3", "M_3(K)"),
    ]
    with criterion(3, "decomposition reproduction with matrix-unit tables") as notes:
        for name, want in cases:
            G = CORPUS[name]
            assert str(decompose(G)) == want, f"{name}: {decompose(G)}"
            rep = verify_matrix_units(G)
            assert rep.passed, f"{name}: {rep.failures[:1]}"
        notes.append(", ".join(f"{n} -> {w}" for n, w in cases))


def test_c4_standard_identity(criterion):
    with criterion(4, "S_4 on d=2 graphs, S_2 negative control") as notes:
        graphs = [n for n, G in CORPUS.items() if check_pi(G).is_pi and check_pi(G).bound_d == 2]
        assert graphs
        for name in graphs:
            rep = verify_standard_identity(CORPUS[name], S4_TUPLES, SEED)
            assert rep.passed and rep.trials == S4_TUPLES, f"{name}: {rep.failures[:1]}"
        G = CORPUS["rose_2"]
        e, es = edge(G, "e"), ghost(G, "e")
        value = standard_identity_eval(G, [e, es])
        assert value != 0
        assert value == e * es - vertex(G, "v")
        assert str(value) == "-v + e*e^"
        notes.append(f"S_4 = 0 on {len(graphs)} graphs; S_2(e, e^) on rose_2 = {value}")


def test_c5_cycle_independence(criterion):
    with criterion(5, "independence of c^i (c^)^j, i + j <= 6") as notes:
        ranks = []
        for G in (CORPUS["loop_exit"], Graph(("v", "w"), (("f", "v", "w"), ("c", "v", "v")))):
            C = next(c for c in simple_cycles(G) if c.edges == ("c",))
            rep = verify_cycle_independence(G, C, 6)
            ranks.append(rep.details["rank"])
        assert ranks == [28, 28], ranks
        notes.append("rank 28 in both edge orders")


def test_c6_growth_agrees_with_class(criterion):
    with criterion(6, "growth series vs GK class at n = 12") as notes:
        checked = 0
        for name, G in CORPUS.items():
            if len(G.vertices) > 8:
                continue
            est, cls = estimate_gk(growth_series(G, 12)), classify_gk(G)
            assert est == cls, f"{name}: estimated {est}, class {cls}"
            checked += 1
        dims = growth_series(CORPUS["single_loop"], 12).dims
        assert dims == list(range(1, 26, 2)), dims
        notes.append(f"{checked} graphs agree; single loop {dims[0]}, {dims[1]}, ..., {dims[-1]}")


def test_c7_e_n_tower(criterion):
    with criterion(7, "E_n tower, n = 2..8") as notes:
        ds = []
        for n in range(2, 9):
            G = e_n_graph(n)
            rep = check_pi(G)
            assert rep.is_pi and rep.bound_d == n, (n, rep)
            assert classify_gk(G) is GKClass.One, n
            ds.append(rep.bound_d)
        notes.append(f"d = {ds}, GK One throughout")


def test_c8_invertibility_transfer(criterion):
    with criterion(8, "one-sided inverses from cycles") as notes:
        n_ok = n_exit = 0
        for name, G in CORPUS.items():
            one = identity_element(G)
            for C in simple_cycles(G):
                v = C.base
                c = path_element(G, C.path)
                u = one - vertex(G, v)
                a, b = u + adjoint(c), u + c
                assert a * b == one, name
                if cycle_exits(G, C):
                    gap = vertex(G, v) - c * adjoint(c)
                    assert gap != 0 and b * a != one, name
                    n_exit += 1
                else:
                    assert b * a == one, name
                    n_ok += 1
            rep = verify_invertibility_transfer(G, 20, SEED)
            assert rep.passed == no_cycle_has_exit(G), name
        notes.append(f"{n_ok} no-exit cycles invertible, {n_exit} exit cycles with v - cc^ != 0")
