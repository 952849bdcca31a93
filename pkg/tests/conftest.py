import random

import pytest
from hypothesis import strategies as st

from leavitt.corpus import CORPUS
from leavitt.graph import Graph
from leavitt.verify import random_element


@st.composite
def graphs(draw, max_vertices=4, max_edges=5):
    """Small directed multigraphs with loops and parallel edges allowed."""
    n = draw(st.integers(1, max_vertices))
    vs = tuple(f"v{i}" for i in range(n))
    pairs = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=max_edges))
    es = tuple((f"e{k}", vs[a], vs[b]) for k, (a, b) in enumerate(pairs))
    return Graph(vs, es, name="drawn")


@st.composite
def graph_and_elements(draw, k=3):
    G = draw(graphs())
    rng = random.Random(draw(st.integers(0, 2**32)))
    return G, [random_element(G, rng) for _ in range(k)]


@pytest.fixture(params=sorted(CORPUS), ids=str)
def corpus_graph(request):
    return CORPUS[request.param]


@st.composite
def dags(draw, max_vertices=5, max_edges=6):
    """Acyclic multigraphs: every edge runs from a lower to a higher index."""
    n = draw(st.integers(1, max_vertices))
    vs = tuple(f"v{i}" for i in range(n))
    if n == 1:
        return Graph(vs, (), name="drawn")
    pairs = draw(st.lists(st.tuples(st.integers(0, n - 2), st.integers(1, n - 1)), max_size=max_edges))
    es = tuple((f"e{k}", vs[min(a, b - 1)], vs[max(a + 1, b)]) for k, (a, b) in enumerate(pairs))
    return Graph(vs, es, name="drawn")
