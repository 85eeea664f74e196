import math

import numpy as np
import pytest

from hlindex.graph import Bipartition, adjacency_matrix, bipartition, from_edge_list
from hlindex.hl import (
    BOUND_HOLDS,
    EXTREMAL,
    VIOLATED,
    MedianReport,
    check_deltamed,
    classify_mainres,
    deltamed_strict_required,
    hl_index,
    is_projective_plane_incidence,
    median_indices,
    walk_decomposition,
)
from hlindex.linalg import symmetric_spectrum
from hlindex.projective import pg2_incidence_graph

from conftest import complete_bipartite, cycle, numpy_spectrum, path, random_graph, star


def cycle_spectrum(n):
    return np.sort([2 * math.cos(2 * math.pi * j / n) for j in range(n)])[::-1]


def path_spectrum(n):
    return np.sort([2 * math.cos(k * math.pi / (n + 1)) for k in range(1, n + 1)])[::-1]


def oracle_R(spec):
    lo, hi = median_indices(len(spec))
    return max(abs(spec[lo - 1]), abs(spec[hi - 1]))


def test_median_indices():
    assert median_indices(1) == (1, 1)
    assert median_indices(2) == (1, 2)
    assert median_indices(7) == (4, 4)
    assert median_indices(8) == (4, 5)


def test_hl_k2():
    rep = hl_index(from_edge_list(2, [(0, 1)]))
    assert rep.indices == (1, 2)
    assert rep.values == pytest.approx((1, -1), abs=1e-12)
    assert rep.R == pytest.approx(1, abs=1e-12)


def test_hl_star():
    # star K_{1,3}: spectrum sqrt(3), 0, 0, -sqrt(3)
    rep = hl_index(star(3))
    assert rep.indices == (2, 3)
    assert rep.values == pytest.approx((0, 0), abs=1e-12)
    assert rep.R == pytest.approx(0, abs=1e-12)


def test_hl_heawood():
    assert hl_index(pg2_incidence_graph(2)).R == pytest.approx(math.sqrt(2), abs=1e-9)


@pytest.mark.parametrize("n", [3, 4, 5, 6, 7, 8, 9, 12])
def test_hl_cycles(n):
    assert hl_index(cycle(n)).R == pytest.approx(oracle_R(cycle_spectrum(n)), abs=1e-9)


def test_hl_c6_is_one():
    assert hl_index(cycle(6)).R == pytest.approx(1.0, abs=1e-9)


@pytest.mark.parametrize("n", [2, 3, 6, 9])
def test_hl_paths(n):
    assert hl_index(path(n)).R == pytest.approx(oracle_R(path_spectrum(n)), abs=1e-9)


def test_odd_bipartite_R_exactly_zero(rng):
    for G in [path(5), star(4), complete_bipartite(2, 3), pg2_incidence_graph(2)]:
        if G.n % 2:
            assert hl_index(G).R == 0.0
    G = from_edge_list(15, [(0, 1)] + [(i, i + 1) for i in range(1, 14)])
    assert hl_index(G).R == 0.0


def test_even_bipartite_symmetric_medians(rng):
    for _ in range(40):
        m = int(rng.integers(1, 8))
        mask = rng.random((m, m)) < 0.5
        G = from_edge_list(2 * m, [(i, m + j) for i, j in zip(*np.nonzero(mask))])
        rep = hl_index(G)
        spec = symmetric_spectrum(adjacency_matrix(G))
        assert abs(rep.R - abs(spec[G.n // 2 - 1])) <= 1e-8
        assert abs(rep.R - abs(spec[G.n // 2])) <= 1e-8


def test_hl_random_against_lapack(rng):
    for _ in range(50):
        G = random_graph(rng, int(rng.integers(1, 20)), 0.4)
        assert hl_index(G).R == pytest.approx(oracle_R(numpy_spectrum(adjacency_matrix(G))), abs=1e-9)


def test_walk_decomposition_small():
    K2 = from_edge_list(2, [(0, 1)])
    wd = walk_decomposition(K2, bipartition(K2), 1)
    assert wd.B.tolist() == [[1]] and wd.E.tolist() == [[0]]
    C4 = cycle(4)
    wd = walk_decomposition(C4, bipartition(C4), 2)
    assert wd.BBt.tolist() == [[2, 2], [2, 2]]
    assert wd.E.tolist() == [[0, 2], [2, 0]]
    assert wd.diagonal.tolist() == [0, 0]


def test_walk_decomposition_unbalanced():
    G = star(3)
    with pytest.raises(ValueError, match=r"\|U\|=1, \|W\|=3"):
        walk_decomposition(G, bipartition(G), 0)


def common_neighbours(G, u, v):
    return sum(1 for w in range(G.n) for _ in range(G.multiplicity(u, w) * G.multiplicity(v, w)))


def test_walk_decomposition_heawood_common_neighbours():
    G = pg2_incidence_graph(2)
    bip = bipartition(G)
    wd = walk_decomposition(G, bip, 3)
    oracle = np.array([[common_neighbours(G, u, v) for v in bip.U] for u in bip.U])
    assert np.array_equal(wd.BBt, oracle)
    assert np.array_equal(wd.BBt, 2 * np.eye(7) + np.ones((7, 7)))
    assert np.array_equal(wd.E, np.ones((7, 7)) - np.eye(7))


def test_walk_decomposition_squares_of_spectrum(rng):
    for _ in range(30):
        m = int(rng.integers(1, 8))
        mask = rng.random((m, m)) < 0.6
        G = from_edge_list(2 * m, [(i, m + j) for i, j in zip(*np.nonzero(mask))])
        wd = walk_decomposition(G, Bipartition(tuple(range(m)), tuple(range(m, 2 * m))), 0)
        half = symmetric_spectrum(adjacency_matrix(G))[:m]
        assert np.allclose(symmetric_spectrum(wd.BBt), half**2, atol=1e-6)


def test_projective_plane_detector():
    assert is_projective_plane_incidence(pg2_incidence_graph(2)) == 2
    assert is_projective_plane_incidence(complete_bipartite(3, 3)) is None
    assert is_projective_plane_incidence(cycle(8)) is None
    assert is_projective_plane_incidence(cycle(7)) is None
    # two disjoint Heawood graphs are not an incidence graph of a plane
    H = pg2_incidence_graph(2)
    two = from_edge_list(28, list(H.edges) + [(u + 14, v + 14) for u, v in H.edges])
    assert is_projective_plane_incidence(two) is None


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_projective_plane_round_trip(q):
    assert is_projective_plane_incidence(pg2_incidence_graph(q)) == q


@pytest.mark.parametrize("q", [2, 3])
def test_classify_mainres_extremal(q):
    v = classify_mainres(pg2_incidence_graph(q))
    assert v.outcome == EXTREMAL
    assert v.case == "regular"
    assert v.R == pytest.approx(math.sqrt(q), abs=1e-6)


def test_classify_mainres_preconditions():
    with pytest.raises(ValueError, match="maximum degree 2"):
        classify_mainres(cycle(6))
    with pytest.raises(ValueError, match="not connected"):
        classify_mainres(from_edge_list(8, [(0, 1), (0, 3), (0, 5), (6, 7)]))
    K4 = from_edge_list(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
    with pytest.raises(ValueError, match="not bipartite"):
        classify_mainres(K4)


def test_classify_mainres_bound_holds():
    v = classify_mainres(complete_bipartite(3, 3))
    assert v.outcome == BOUND_HOLDS and v.case == "regular"
    v = classify_mainres(star(3))
    assert v.outcome == BOUND_HOLDS and v.case == "nonregular"
    # Heawood minus an edge: nonregular, Delta = 3
    H = pg2_incidence_graph(2)
    G = from_edge_list(14, H.edges[1:])
    v = classify_mainres(G)
    assert v.outcome == BOUND_HOLDS
    assert v.R <= 1 + 1e-9


def test_classify_mainres_reports_violation_with_witness():
    G = complete_bipartite(3, 3)
    fake = MedianReport(6, 3, 4, 1.5, -1.5, 1.5)
    v = classify_mainres(G, fake)
    assert v.outcome == VIOLATED and v.witness is G


def test_deltamed_examples():
    K2 = from_edge_list(2, [(0, 1)])
    v = check_deltamed(K2)
    assert v.outcome == BOUND_HOLDS and not v.strict_required
    assert v.R == pytest.approx(v.bound)
    v = check_deltamed(cycle(8))
    assert v.strict_required and v.outcome == BOUND_HOLDS and v.R < math.sqrt(2)
    v = check_deltamed(path(6))
    assert v.strict_required and v.outcome == BOUND_HOLDS
    assert v.R == pytest.approx(2 * math.cos(3 * math.pi / 7), abs=1e-9)
    with pytest.raises(ValueError):
        check_deltamed(cycle(5))


def test_deltamed_strictness_rule():
    assert not deltamed_strict_required(from_edge_list(4, [(0, 1), (2, 3)]))
    assert deltamed_strict_required(from_edge_list(5, [(0, 1), (2, 3), (3, 4)]))
    assert deltamed_strict_required(cycle(4))
    assert not deltamed_strict_required(from_edge_list(3, [(0, 1)]))


def test_deltamed_violation_needs_witness():
    G = cycle(8)
    v = check_deltamed(G, MedianReport(8, 4, 5, math.sqrt(2), -math.sqrt(2), math.sqrt(2)))
    assert v.outcome == VIOLATED and v.witness is G
