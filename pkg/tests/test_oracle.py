import math

import numpy as np
import pytest

from planted_cover.graph import build_graph
from planted_cover.model import ModelParams, PlantedInstance
from planted_cover.oracle import (
    OracleLimit,
    fitness_brute,
    is_delta_heavy_exhaustive,
    max_independent_set_bb,
    max_independent_set_exact,
    min_vertex_cover_exact,
)
from planted_cover.rng import SplitMix64


def _random_graph(n, density, rng):
    edges = [
        (u, v)
        for u in range(n)
        for v in range(u + 1, n)
        if rng.random() < density
    ]
    return build_graph(n, edges)


def _triangle():
    return build_graph(3, [(0, 1), (1, 2), (0, 2)])


def test_fitness_brute_hand_computed():
    g = _triangle()
    assert fitness_brute(g, np.array([0, 0, 0], dtype=bool)) == 9  # 3 uncovered * n=3
    assert fitness_brute(g, np.array([1, 1, 1], dtype=bool)) == 3
    assert fitness_brute(g, np.array([1, 0, 0], dtype=bool)) == 1 + 3  # edge (1,2) open
    assert fitness_brute(g, np.array([0, 1, 0], dtype=bool)) == 1 + 3  # edge (0,2) open


def test_min_cover_known_graphs():
    size, witness = min_vertex_cover_exact(_triangle())
    assert size == 2
    star = build_graph(5, [(0, 1), (0, 2), (0, 3), (0, 4)])
    size, witness = min_vertex_cover_exact(star)
    assert size == 1 and witness[0]
    path4 = build_graph(4, [(0, 1), (1, 2), (2, 3)])
    assert min_vertex_cover_exact(path4)[0] == 2
    k4 = build_graph(4, [(a, b) for a in range(4) for b in range(a + 1, 4)])
    assert min_vertex_cover_exact(k4)[0] == 3
    empty = build_graph(6, [])
    size, witness = min_vertex_cover_exact(empty)
    assert size == 0 and not witness.any()


def test_min_cover_witness_is_a_cover():
    rng = SplitMix64(17)
    for _ in range(20):
        g = _random_graph(9, 0.35, rng)
        size, witness = min_vertex_cover_exact(g)
        assert int(witness.sum()) == size
        us, vs = g.edge_arrays()
        assert all(witness[u] or witness[v] for u, v in zip(us, vs))


def test_min_cover_cap():
    g = _random_graph(12, 0.2, SplitMix64(1))
    with pytest.raises(ValueError, match="cap"):
        min_vertex_cover_exact(g, OracleLimit(max_n_exhaustive=10))


def test_mis_known_graphs():
    assert max_independent_set_exact(_triangle()) == 1
    star = build_graph(5, [(0, 1), (0, 2), (0, 3), (0, 4)])
    assert max_independent_set_exact(star) == 4
    path4 = build_graph(4, [(0, 1), (1, 2), (2, 3)])
    assert max_independent_set_exact(path4) == 2
    empty = build_graph(7, [])
    assert max_independent_set_exact(empty) == 7


def test_mis_restriction():
    g = _triangle()
    assert max_independent_set_exact(g, restrict=[0, 1]) == 1
    star = build_graph(5, [(0, 1), (0, 2), (0, 3), (0, 4)])
    assert max_independent_set_exact(star, restrict=[1, 2, 3]) == 3


def test_gallai_identity():
    # complement of a maximum independent set is a minimum cover
    rng = SplitMix64(23)
    for _ in range(25):
        g = _random_graph(10, 0.3, rng)
        tau = min_vertex_cover_exact(g)[0]
        alpha = max_independent_set_exact(g)
        assert alpha + tau == g.n


def test_branch_and_bound_matches_exact():
    rng = SplitMix64(31)
    for trial in range(30):
        g = _random_graph(8 + trial % 6, 0.15 + 0.02 * (trial % 10), rng)
        assert max_independent_set_bb(g) == max_independent_set_exact(g)
        sub = list(range(0, g.n, 2))
        assert max_independent_set_bb(g, restrict=sub) == max_independent_set_exact(
            g, restrict=sub
        )


def test_mis_cap():
    g = _random_graph(25, 0.1, SplitMix64(3))
    with pytest.raises(ValueError, match="cap"):
        max_independent_set_exact(g, limit=OracleLimit(max_n_exhaustive=20))


def _manual_instance(n, k, edges, p=0.5):
    g = build_graph(n, edges)
    core = np.zeros(n, dtype=bool)
    core[:k] = True
    return PlantedInstance(g, core, ModelParams(n=n, k=k, p=p, seed=0))


def test_heavy_exhaustive_complete_bipartite():
    # core {0,1} fully joined to fringe {2..5}: any 2-subset of the
    # fringe gives each core vertex 2 >= ln(6) neighbors
    edges = [(c, f) for c in range(2) for f in range(2, 6)]
    inst = _manual_instance(6, 2, edges)
    assert is_delta_heavy_exhaustive(inst, 0.5)
    assert math.log(6) < 2


def test_heavy_exhaustive_detects_weak_core_vertex():
    # vertex 1 sees only one fringe vertex; the 2-subsets avoiding it
    # leave vertex 1 with 0 < ln(6) neighbors
    edges = [(0, f) for f in range(2, 6)] + [(1, 2)]
    inst = _manual_instance(6, 2, edges)
    assert not is_delta_heavy_exhaustive(inst, 0.5)


def test_heavy_exhaustive_zero_subset_rejected():
    edges = [(c, f) for c in range(2) for f in range(2, 6)]
    inst = _manual_instance(6, 2, edges)
    with pytest.raises(ValueError, match="floor"):
        is_delta_heavy_exhaustive(inst, 0.2)  # floor(0.2 * 4) == 0


def test_heavy_exhaustive_subset_cap():
    edges = [(0, f) for f in range(1, 30)]
    inst = _manual_instance(30, 1, edges)
    with pytest.raises(ValueError, match="subsets"):
        is_delta_heavy_exhaustive(inst, 0.5, OracleLimit(max_subsets=100))


def test_fitness_brute_shape_check():
    g = _triangle()
    with pytest.raises(ValueError):
        fitness_brute(g, np.zeros(5, dtype=bool))
