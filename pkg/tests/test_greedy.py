"""Tests for the randomized greedy search."""

import inspect
import random

import pytest

from py_bwcodes.exact import max_clique_exact
from py_bwcodes.exceptions import UsageError
from py_bwcodes.graph import build_graph, clique_is_code
from py_bwcodes.greedy import GreedyConfig, greedy_once, greedy_restarts, restart_rng
from py_bwcodes.words import CodeParams

from .helpers import complete_graph, edgeless_graph, random_graph


def test_config_defaults():
    """Test greedy config defaults."""
    config = GreedyConfig()
    assert config.sample_fraction == 0.1
    assert config.threshold_y == 100
    assert config.restarts == 1000
    assert config.jobs == 1


@pytest.mark.parametrize(
    "kwargs",
    [
        {"sample_fraction": 0.0},
        {"sample_fraction": 1.5},
        {"threshold_y": 0},
        {"restarts": 0},
        {"master_seed": -1},
        {"master_seed": 1 << 64},
        {"jobs": 0},
    ],
)
def test_config_validation(kwargs):
    """Test greedy config validation."""
    with pytest.raises(UsageError):
        GreedyConfig(**kwargs)


@pytest.mark.parametrize(
    "fraction, vertices, expected",
    [(0.1, 382, 38), (0.1, 42, 4), (0.1, 5, 1), (0.1, 45, 5), (0.5, 3, 2), (1.0, 7, 7)],
)
def test_sample_size(fraction, vertices, expected):
    """Test sample size rounding."""
    assert GreedyConfig(sample_fraction=fraction).sample_size(vertices) == expected


def test_complete_graph_below_threshold():
    """Test a complete graph solved entirely by the exact phase."""
    graph = complete_graph(12)
    assert greedy_once(graph, GreedyConfig(), 0) == frozenset(range(12))


def test_edgeless_graph():
    """Test greedy search on an edgeless graph."""
    config = GreedyConfig(threshold_y=2)
    for i in range(5):
        assert len(greedy_once(edgeless_graph(30), config, i)) == 1


def test_empty_graph_is_rejected():
    """Test that an empty graph is rejected."""
    with pytest.raises(UsageError):
        greedy_restarts(edgeless_graph(0), GreedyConfig(restarts=1))


def test_greedy_once_gives_cliques_no_larger_than_optimum():
    """Test that greedy cliques are valid and never beat the optimum."""
    graph = build_graph(CodeParams(7, 4, 5))
    optimum = max_clique_exact(graph).size
    config = GreedyConfig(threshold_y=10, master_seed=3)
    for i in range(30):
        clique = greedy_once(graph, config, i)
        assert clique_is_code(graph, clique)
        assert len(clique) <= optimum


def test_random_graphs_give_cliques():
    """Test greedy search on random graphs."""
    rng = random.Random(9)
    for i in range(20):
        graph = random_graph(rng, 60, rng.uniform(0.2, 0.8))
        clique = greedy_once(graph, GreedyConfig(threshold_y=8, master_seed=i), i)
        assert clique_is_code(graph, clique)
        assert len(clique) <= max_clique_exact(graph, coloring_bound=True).size


def test_single_restart_is_the_single_run():
    """Test that one restart equals one greedy run."""
    graph = build_graph(CodeParams(7, 4, 4))
    config = GreedyConfig(threshold_y=5, restarts=1, master_seed=42)
    result = greedy_restarts(graph, config)
    assert result.clique == greedy_once(graph, config, 0)
    assert result.best_restart_index == 0
    assert result.sizes == (result.size,)


def test_restarts_are_deterministic():
    """Test that restarts are reproducible."""
    graph = build_graph(CodeParams(8, 4, 5))
    config = GreedyConfig(threshold_y=20, restarts=15, master_seed=7)
    first = greedy_restarts(graph, config)
    second = greedy_restarts(graph, config)
    assert first.clique == second.clique
    assert first.best_restart_index == second.best_restart_index
    assert first.sizes == second.sizes


def test_best_restart_tie_break():
    """Test the choice among equally large cliques."""
    graph = build_graph(CodeParams(8, 4, 5))
    config = GreedyConfig(threshold_y=20, restarts=15, master_seed=7)
    result = greedy_restarts(graph, config)
    runs = [greedy_once(graph, config, i) for i in range(config.restarts)]
    best = max(len(c) for c in runs)
    candidates = [i for i, c in enumerate(runs) if len(c) == best]
    smallest = min(sorted(runs[i]) for i in candidates)
    assert result.size == best
    assert sorted(result.clique) == smallest
    assert result.best_restart_index == min(i for i in candidates if sorted(runs[i]) == smallest)


def test_parallel_restarts_match_serial():
    """Test that parallel restarts match serial ones."""
    graph = build_graph(CodeParams(8, 4, 5))
    serial = greedy_restarts(graph, GreedyConfig(threshold_y=20, restarts=12, master_seed=5))
    parallel = greedy_restarts(
        graph, GreedyConfig(threshold_y=20, restarts=12, master_seed=5, jobs=2)
    )
    assert parallel.clique == serial.clique
    assert parallel.best_restart_index == serial.best_restart_index
    assert parallel.sizes == serial.sizes


def test_restart_streams_are_independent():
    """Test that restart streams differ and repeat."""
    a = restart_rng(1, 0).integers(0, 1 << 32, size=8).tolist()
    b = restart_rng(1, 1).integers(0, 1 << 32, size=8).tolist()
    again = restart_rng(1, 0).integers(0, 1 << 32, size=8).tolist()
    assert a != b
    assert a == again


@pytest.mark.slow
def test_greedy_9_4_7_reaches_patched_bound():
    """Test that greedy search reaches the (9,4,7) patched bound."""
    graph = build_graph(CodeParams(9, 4, 7))
    result = greedy_restarts(graph, GreedyConfig(master_seed=1))
    assert result.size >= 19
    assert clique_is_code(graph, result.clique)


def test_available_vertices_stay_adjacent_to_clique():
    """Test that every available vertex neighbours the whole clique after each selection."""
    graph = build_graph(CodeParams(8, 4, 5))
    adjacency = graph.adjacency
    steps = []

    def check(clique, available):
        common = (1 << graph.num_vertices) - 1
        for c in clique:
            common &= adjacency[c]
        assert available & ~common == 0
        assert all(adjacency[a] >> b & 1 for a in clique for b in clique if a != b)
        steps.append(len(clique))

    config = GreedyConfig(threshold_y=5, master_seed=11)
    for i in range(10):
        steps.clear()
        clique = greedy_once(graph, config, i, on_step=check)
        assert steps == list(range(1, len(steps) + 1))
        assert clique_is_code(graph, clique)
    assert steps


def test_exact_phase_uses_coloring_bound_by_default():
    """Test that the exact phase defaults to the colouring bound and keeps clique sizes."""
    assert GreedyConfig().coloring_bound is True
    graph = build_graph(CodeParams(8, 4, 5))
    colored = GreedyConfig(threshold_y=40, restarts=6, master_seed=2)
    basic = GreedyConfig(threshold_y=40, restarts=6, master_seed=2, coloring_bound=False)
    assert greedy_restarts(graph, colored).sizes == greedy_restarts(graph, basic).sizes


def test_exact_solver_default_stays_basic():
    """Test that the public exact solver keeps the plain size bound by default."""
    assert inspect.signature(max_clique_exact).parameters["coloring_bound"].default is False
