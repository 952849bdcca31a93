import random

import pytest

from leavitt.corpus import CORPUS, NEGATIVE_CONTROLS, e_n_graph
from leavitt.graph import Graph, simple_cycles
from leavitt.verify import (
    VerificationError,
    random_element,
    run_suite,
    verify_ck_relations,
    verify_cycle_independence,
    verify_growth_matches_class,
    verify_invertibility_transfer,
    verify_matrix_units,
    verify_standard_identity,
)


def strip_timing(obj):
    if isinstance(obj, dict):
        return {k: strip_timing(v) for k, v in obj.items() if k != "millis"}
    if isinstance(obj, list):
        return [strip_timing(v) for v in obj]
    return obj


def test_ck_relations(corpus_graph):
    rep = verify_ck_relations(corpus_graph)
    assert rep.passed and rep.trials > 0


def test_matrix_units_chain():
    rep = verify_matrix_units(CORPUS["chain_3"])
    assert rep.passed and rep.trials == 81


@pytest.mark.parametrize("name", ["edge", "edge_loop", "two_cycle", "fork", "truncated_example_2"])
def test_s4_on_d2_graphs(name):
    rep = verify_standard_identity(CORPUS[name], trials=30, seed=7)
    assert rep.check == "standard_identity_S4" and rep.trials == 30 and rep.passed


def test_standard_identity_needs_pi_or_forced_degree():
    with pytest.raises(VerificationError):
        verify_standard_identity(CORPUS["rose_2"], trials=1, seed=0)
    with pytest.raises(VerificationError):
        verify_standard_identity(e_n_graph(5), trials=1, seed=0)


def test_forced_s2_on_matrix_ring_fails():
    rep = verify_standard_identity(CORPUS["edge"], trials=50, seed=3, d=1)
    assert not rep.passed


def test_invertibility_on_exit_graph_exhibits_witness():
    rep = verify_invertibility_transfer(CORPUS["loop_exit"], trials=0)
    (fail,) = rep.failures
    assert fail["v - cc^"] == "v - c*c^"
    assert fail["exit"] == "f" and fail["c^*exit"] == "0"


@pytest.mark.parametrize("name", ["single_loop", "two_cycle", "E_3", "truncated_example_2"])
def test_invertibility_on_pi_graphs(name):
    rep = verify_invertibility_transfer(CORPUS[name], trials=25, seed=1)
    assert rep.passed


def test_cycle_independence_rank():
    G = CORPUS["loop_exit"]
    rep = verify_cycle_independence(G, simple_cycles(G)[0], 6)
    assert rep.passed and rep.details["rank"] == 28
    with pytest.raises(VerificationError):
        verify_cycle_independence(CORPUS["single_loop"], simple_cycles(CORPUS["single_loop"])[0], 3)
    with pytest.raises(VerificationError):
        verify_cycle_independence(G, simple_cycles(G)[0], 9)


def test_growth_check():
    assert verify_growth_matches_class(CORPUS["edge_loop"], 8).passed
    with pytest.raises(VerificationError):
        verify_growth_matches_class(CORPUS["edge_loop"], 5)


def test_random_elements_are_seeded():
    G = CORPUS["truncated_example_2"]
    a = [random_element(G, random.Random(5)) for _ in range(3)]
    b = [random_element(G, random.Random(5)) for _ in range(3)]
    assert a == b


def test_suite_outcomes_match_theory(corpus_graph):
    entries = run_suite(corpus_graph, seed=2, trials=20, n=8)
    assert all(e.as_expected for e in entries)
    failed = [e.name for e in entries if e.report is not None and not e.report.passed]
    if corpus_graph.name in NEGATIVE_CONTROLS:
        assert "standard_identity" in failed and "invertibility_transfer" in failed
    else:
        assert not failed


def test_suite_is_deterministic():
    G = CORPUS["truncated_example_2"]
    a = [strip_timing(e.to_json()) for e in run_suite(G, seed=11, trials=15, n=8)]
    b = [strip_timing(e.to_json()) for e in run_suite(G, seed=11, trials=15, n=8)]
    assert a == b


def test_report_json_fields():
    rep = verify_ck_relations(CORPUS["edge"])
    assert set(rep.to_json()) == {"check", "graph", "trials", "failures", "seed", "millis"}


def test_permuted_edge_order_keeps_rank():
    G = Graph(("v", "w"), (("f", "v", "w"), ("c", "v", "v")))
    rep = verify_cycle_independence(G, simple_cycles(G)[0], 6)
    assert rep.details["rank"] == 28
