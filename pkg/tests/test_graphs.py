import itertools
from math import comb

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from drgalg.graphs import (DisconnectedGraphError, Graph, GraphSpec, GraphSpecError, NotDRG, build_graph,
                           certify_distance_regular, distance_matrices)
from drgalg.linalg import ExactMatrix


def brute_intersection(dist):
    """Independent oracle: p^h_ij from explicit vertex triples."""
    n = len(dist)
    d = int(dist.max())
    p = {}
    for y, z in itertools.product(range(n), repeat=2):
        h = int(dist[y, z])
        for i, j in itertools.product(range(d + 1), repeat=2):
            cnt = sum(1 for w in range(n) if dist[y, w] == i and dist[w, z] == j)
            if p.setdefault((h, i, j), cnt) != cnt:
                return None
    return p


def test_parse_round_trip():
    for text in ["hamming:3,3", "johnson:6,3", "grassmann:2,4,2", "cycle:8"]:
        assert str(GraphSpec.parse(text)) == text


@pytest.mark.parametrize("bad", ["badspec:1", "hamming:3", "johnson:5,3", "cycle:2", "grassmann:4,4,2", "x", ""])
def test_bad_specs_raise(bad):
    with pytest.raises(GraphSpecError):
        GraphSpec.parse(bad)


def test_hamming_counts():
    g = build_graph("hamming:3,3")
    words = list(itertools.product(range(3), repeat=3))
    nbrs = sum(1 for w in words if sum(a != b for a, b in zip(w, words[0])) == 1)
    assert g.n == 27 and g.valency == nbrs == 3 * (3 - 1)


def test_johnson_counts():
    g = build_graph("johnson:6,3")
    sets = [frozenset(c) for c in itertools.combinations(range(6), 3)]
    nbrs = sum(1 for s in sets if len(s & sets[0]) == 2)
    assert g.n == 20 and g.valency == nbrs == 3 * (6 - 3)


def test_grassmann_counts():
    g = build_graph("grassmann:2,4,2")
    # Gaussian binomial [4 choose 2]_2 and valency q [2]_q [2]_q
    assert g.n == 35 and g.valency == 2 * 3 * 3 and g.diameter == 2


def test_cycle_metric():
    g = build_graph("cycle:8")
    assert (g.n, g.valency, g.diameter) == (8, 2, 4)
    oracle = np.array([[min(abs(i - j), 8 - abs(i - j)) for j in range(8)] for i in range(8)])
    assert np.array_equal(g.distances, oracle)


def test_cycle8_intersection_array():
    data = certify_distance_regular(build_graph("cycle:8"))
    assert data.c[1:] == [1, 1, 1, 2]
    assert data.b[:-1] == [2, 1, 1, 1]
    assert data.a == [0, 0, 0, 0, 0]
    oracle = np.array([[min(abs(i - j), 8 - abs(i - j)) for j in range(8)] for i in range(8)])
    p = brute_intersection(oracle)
    assert all(data.p[h, i, j] == v for (h, i, j), v in p.items())


def test_hamming_c_numbers():
    data = certify_distance_regular(build_graph("hamming:3,3"))
    assert data.c[1:] == [1, 2, 3]
    assert data.k == [comb(3, i) * 2**i for i in range(4)]


def test_path_is_not_distance_regular():
    adj = np.zeros((4, 4), dtype=np.int64)
    for i in range(3):
        adj[i, i + 1] = adj[i + 1, i] = 1
    verdict = certify_distance_regular(Graph.from_adjacency(adj))
    assert isinstance(verdict, NotDRG) and not verdict
    assert verdict.first_count != verdict.second_count


def test_disconnected_rejected():
    with pytest.raises(DisconnectedGraphError):
        Graph.from_adjacency(np.zeros((3, 3), dtype=np.int64))


def test_distance_matrices_basics():
    for spec in ["cycle:8", "johnson:5,2"]:
        mats = distance_matrices(build_graph(spec))
        assert mats[0] == ExactMatrix.identity(mats[0].shape[0])
    a4 = distance_matrices(build_graph("cycle:8"))[4].int_array()
    assert np.array_equal(a4, np.eye(8, dtype=np.int64)[[(i + 4) % 8 for i in range(8)]])


def test_johnson52_product_expansion():
    g = build_graph("johnson:5,2")
    data = certify_distance_regular(g)
    a = [m.int_array() for m in distance_matrices(g)]
    for i, j in itertools.product(range(3), repeat=2):
        assert np.array_equal(a[i] @ a[j], sum(data.p[h, i, j] * a[h] for h in range(3)))


@given(st.integers(1, 3), st.integers(2, 4))
def test_hamming_is_drg_with_known_array(d, q):
    data = certify_distance_regular(build_graph(f"hamming:{d},{q}"))
    assert data.b[:-1] == [(d - i) * (q - 1) for i in range(d)]
    assert data.c[1:] == list(range(1, d + 1))


@given(st.integers(4, 12))
def test_cycles_are_distance_regular(n):
    data = certify_distance_regular(build_graph(f"cycle:{n}"))
    assert data and data.diameter == n // 2
