"""Brute-force reference implementations used to cross-check the fast paths.

The clique check reads the graph only through its edge list and tries every
subset, with none of the ordering or bounds of the solvers. The distance
check compares rendered characters and never uses the packed word form.
"""

from itertools import combinations
from typing import Iterable, Tuple

from .exceptions import CapacityError, UsageError
from .graph import AdjacencyGraph
from .words import Word

MAX_BRUTE_FORCE_VERTICES = 25


def brute_force_max_clique(graph: AdjacencyGraph) -> int:
    """Largest clique size by trying vertex subsets from the largest down."""
    n = graph.num_vertices
    if n > MAX_BRUTE_FORCE_VERTICES:
        raise CapacityError(
            f"brute force is limited to {MAX_BRUTE_FORCE_VERTICES} vertices, got {n}",
            cap=MAX_BRUTE_FORCE_VERTICES,
        )
    edges = set(graph.edges())
    for size in range(n, 1, -1):
        for subset in combinations(range(n), size):
            if all(pair in edges for pair in combinations(subset, 2)):
                return size
    return min(n, 1)


def _char_distance(x: str, y: str) -> int:
    return sum(1 for a, b in zip(x, y) if a != b)


def brute_force_min_distance(words: Iterable[Word]) -> Tuple[int, Tuple[str, str]]:
    """Minimum pairwise distance and a witnessing pair, compared character by character."""
    texts = sorted({w.render() for w in words})
    if len(texts) < 2:
        raise UsageError("need at least two distinct words")
    best = None
    for x, y in combinations(texts, 2):
        if len(x) != len(y):
            raise UsageError(f"length mismatch between {x} and {y}")
        dist = _char_distance(x, y)
        if best is None or dist < best[0]:
            best = (dist, (x, y))
    return best
