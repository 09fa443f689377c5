import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from isophase.errors import InvalidMapError, InvalidSubsetError, SizeError
from isophase.graphs import (
    EdgeLaw,
    Graph,
    from_text,
    induced_subgraph,
    is_isomorphism,
    sample_gnp,
    to_text,
)

P3 = Graph.from_edges(3, [(0, 1), (1, 2)])
K4 = Graph.from_edges(4, [(i, j) for i in range(4) for j in range(i + 1, 4)])


def test_sample_p_zero_is_edgeless():
    for seed in (0, 1, 77):
        g = sample_gnp(EdgeLaw(5, 0.0, seed))
        assert g.edge_count() == 0


def test_sample_p_one_is_complete():
    for seed in (0, 1, 77):
        g = sample_gnp(EdgeLaw(5, 1.0, seed))
        assert g.edge_count() == 10


def test_sample_mean_edge_count_matches_binomial():
    # 435 pairs at p = 1/2: mean 217.5, sd of the mean 10.43/sqrt(trials).
    trials = 10_000
    total = sum(sample_gnp(EdgeLaw(30, 0.5, seed)).edge_count() for seed in range(trials))
    mean = total / trials
    sigma = math.sqrt(435 * 0.25) / math.sqrt(trials)
    assert abs(mean - 217.5) < 3 * sigma


def test_sample_deterministic_and_seed_sensitive():
    a = sample_gnp(EdgeLaw(30, 0.37, 123456))
    b = sample_gnp(EdgeLaw(30, 0.37, 123456))
    c = sample_gnp(EdgeLaw(30, 0.37, 123457))
    assert a.adj == b.adj
    assert a.adj != c.adj


def test_symmetry_and_no_loops_after_sampling():
    g = sample_gnp(EdgeLaw(20, 0.5, 9))
    for i in range(20):
        assert not (g.adj[i] >> i) & 1
        for j in range(20):
            assert ((g.adj[i] >> j) & 1) == ((g.adj[j] >> i) & 1)


def test_vertex_cap():
    with pytest.raises(SizeError):
        Graph(4097)
    with pytest.raises(SizeError):
        EdgeLaw(5000, 0.5, 0)


def test_constructor_rejects_asymmetry_and_loops():
    with pytest.raises(InvalidSubsetError):
        Graph(2, [0b10, 0b00])
    with pytest.raises(InvalidSubsetError):
        Graph(2, [0b01, 0b01])


def test_induced_full_subset_is_identity():
    g = sample_gnp(EdgeLaw(8, 0.5, 3))
    assert induced_subgraph(g, list(range(8))) == g


def test_induced_path_endpoints():
    h = induced_subgraph(P3, [0, 2])
    assert h.n == 2 and h.edge_count() == 0


def test_induced_complete_graph():
    h = induced_subgraph(K4, [1, 3])
    assert h.n == 2 and h.has_edge(0, 1)


def test_induced_rejects_bad_subsets():
    with pytest.raises(InvalidSubsetError):
        induced_subgraph(P3, [0, 0])
    with pytest.raises(InvalidSubsetError):
        induced_subgraph(P3, [2, 1])
    with pytest.raises(InvalidSubsetError):
        induced_subgraph(P3, [0, 3])


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**63 - 1), st.data())
def test_induced_composition(seed, data):
    g = sample_gnp(EdgeLaw(10, 0.5, seed))
    s = sorted(data.draw(st.sets(st.integers(0, 9), min_size=1, max_size=8)))
    t_rel = sorted(data.draw(st.sets(st.integers(0, len(s) - 1), min_size=1, max_size=len(s))))
    once = induced_subgraph(induced_subgraph(g, s), t_rel)
    direct = induced_subgraph(g, [s[i] for i in t_rel])
    assert once == direct


def test_is_isomorphism_identity_and_symmetry():
    g = sample_gnp(EdgeLaw(7, 0.4, 11))
    assert is_isomorphism(g, g, list(range(7)))
    perm = [3, 1, 4, 0, 6, 5, 2]
    h = Graph.from_edges(7, [(min(perm[i], perm[j]), max(perm[i], perm[j])) for i, j in g.edges()])
    assert is_isomorphism(g, h, perm)
    inverse = [0] * 7
    for i, v in enumerate(perm):
        inverse[v] = i
    assert is_isomorphism(h, g, inverse)


def test_is_isomorphism_triangle_any_permutation():
    k3 = Graph.from_edges(3, [(0, 1), (0, 2), (1, 2)])
    for perm in ([0, 1, 2], [1, 2, 0], [2, 0, 1], [0, 2, 1]):
        assert is_isomorphism(k3, k3, perm)


def test_is_isomorphism_degree_mismatch():
    p4 = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)])
    star = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)])
    for perm in ([0, 1, 2, 3], [1, 0, 2, 3], [3, 2, 1, 0]):
        assert not is_isomorphism(p4, star, perm)


def test_is_isomorphism_rejects_bad_maps():
    with pytest.raises(InvalidMapError):
        is_isomorphism(P3, P3, [0, 1, 1])
    with pytest.raises(InvalidMapError):
        is_isomorphism(P3, K4, [0, 1, 2])


def test_text_round_trip():
    g = sample_gnp(EdgeLaw(9, 0.5, 21))
    assert from_text(to_text(g)) == g
    assert to_text(Graph(3)) == "3\n"


def test_text_rejects_unsorted_edges():
    with pytest.raises(InvalidSubsetError):
        from_text("3\n2 1\n")
