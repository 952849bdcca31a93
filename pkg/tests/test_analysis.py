import pytest

from leavitt.analysis import (
    AnalysisError,
    Block,
    GKClass,
    GrowthSeries,
    NotPIError,
    check_pi,
    classify_gk,
    decompose,
    estimate_gk,
    growth_horizon,
    growth_series,
    prime_quotient,
    subdirect_cover,
)
from leavitt.corpus import CORPUS, NEGATIVE_CONTROLS, e_n_graph
from leavitt.graph import is_acyclic, no_cycle_has_exit


def test_pi_report_witness():
    rep = check_pi(CORPUS["rose_2"])
    assert rep.to_json() == {"is_pi": False, "d": None, "witness": {"cycle": ["e"], "exit": "f"}}
    assert check_pi(CORPUS["fork"]).to_json() == {"is_pi": True, "d": 2, "witness": None}


@pytest.mark.parametrize("name, blocks", [
    ("single_vertex", "M_1(K)"),
    ("single_loop", "M_1(Laurent)"),
    ("edge", "M_2(K)"),
    ("edge_loop", "M_2(Laurent)"),
    ("chain_3", "M_3(K)"),
    ("fork", "M_2(K) + M_2(K)"),
    ("two_cycle", "M_2(Laurent)"),
    ("disjoint_loops", "M_1(Laurent) + M_1(Laurent)"),
    ("truncated_example_2", "M_2(Laurent) + M_2(Laurent)"),
])
def test_decompositions(name, blocks):
    assert str(decompose(CORPUS[name])) == blocks


def test_decompose_json():
    assert decompose(CORPUS["edge_loop"]).to_json() == {
        "blocks": [{"kind": "Laurent", "size": 2, "anchor": "c"}]}


def test_degree_zero_dimension():
    assert decompose(CORPUS["chain_3"]).degree_zero_dimension() == 9
    assert decompose(CORPUS["single_loop"]).degree_zero_dimension() is None


def test_decompose_rejects_exit():
    with pytest.raises(NotPIError) as info:
        decompose(CORPUS["loop_exit"])
    assert info.value.exit_edge == "f"


def test_equivalences_on_corpus(corpus_graph):
    G = corpus_graph
    pi = check_pi(G).is_pi
    assert pi == no_cycle_has_exit(G) == (classify_gk(G) in (GKClass.Zero, GKClass.One))
    assert (classify_gk(G) is GKClass.Zero) == is_acyclic(G)
    assert pi == (G.name not in NEGATIVE_CONTROLS)


@pytest.mark.parametrize("n", range(1, 9))
def test_e_n_tower(n):
    rep = check_pi(e_n_graph(n))
    assert rep.is_pi and rep.bound_d == n
    assert classify_gk(e_n_graph(n)) is GKClass.One


class TestPrimeQuotients:
    def test_truncated_example(self):
        G = CORPUS["truncated_example_2"]
        for v, loop in (("v1", "l1"), ("v2", "l2")):
            Q, block = prime_quotient(G, v)
            assert block == Block("Laurent", 2, loop)
            assert set(Q.vertices) == {"w", v}

    def test_sink(self):
        Q, block = prime_quotient(CORPUS["fork"], "b")
        assert block == Block("K", 2, "b")
        assert Q.vertices == ("a", "b")

    def test_rejects_inner_vertex(self):
        with pytest.raises(AnalysisError):
            prime_quotient(CORPUS["chain_3"], "b")

    def test_cover(self):
        cover = subdirect_cover(CORPUS["fork"])
        assert [v for v, _ in cover] == ["b", "c"]
        assert cover[0][1] == {"a", "b"}


class TestGrowth:
    def test_single_loop(self):
        assert growth_series(CORPUS["single_loop"], 12).dims == [2 * k + 1 for k in range(13)]

    def test_single_vertex(self):
        assert growth_series(CORPUS["single_vertex"], 6).dims == [1] * 7

    def test_chain_stabilises_at_matrix_dimension(self):
        dims = growth_series(CORPUS["chain_3"], 8).dims
        assert dims[-1] == dims[-2] == 9

    def test_rose_2_counts_normal_monomials(self):
        # alpha beta* with |alpha| + |beta| = s, minus the pairs where both
        # paths end in the distinguished edge f
        def layer(s):
            return 2 * 2**s + (s - 1) * 3 * 2**(s - 2) if s else 1
        want = [sum(layer(s) for s in range(t + 1)) for t in range(9)]
        assert want[:6] == [1, 5, 16, 44, 112, 272]
        assert growth_series(CORPUS["rose_2"], 8).dims == want

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_e_n_slope(self, n):
        dims = growth_series(e_n_graph(n), 12).dims
        assert dims[-1] - dims[-2] == dims[-2] - dims[-3] == 2 * n * n

    def test_cap(self):
        with pytest.raises(AnalysisError):
            growth_series(CORPUS["single_loop"], 13)
        with pytest.raises(AnalysisError):
            growth_series(CORPUS["single_loop"], -1)

    def test_horizon(self):
        assert growth_horizon(CORPUS["single_vertex"]) == 2
        assert growth_horizon(e_n_graph(6)) == 12

    @pytest.mark.parametrize("dims, want", [
        ([1, 3, 5, 7, 9, 11], GKClass.One),
        ([1, 4, 6, 9, 9, 9], GKClass.Zero),
        ([1, 2, 4, 8, 16, 32], GKClass.AtLeastTwo),
        ([1, 2, 4, 7, 11, 16], GKClass.AtLeastTwo),
    ])
    def test_estimate(self, dims, want):
        assert estimate_gk(GrowthSeries(dims)) is want

    def test_estimate_needs_six_terms(self):
        with pytest.raises(AnalysisError):
            estimate_gk([1, 3, 5, 7, 9])
