"""Semi-exhaustive randomized greedy clique search with restarts."""

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, FrozenSet, List, Optional, Tuple

import numpy as np

from .exact import max_clique_exact_rows
from .exceptions import UsageError
from .graph import AdjacencyGraph
from .logger import get_logger
from .utils import iter_bits

logger = get_logger()


@dataclass(frozen=True)
class GreedyConfig:
    """
    Parameters of the greedy search.

    `sample_fraction` sets how many available vertices are drawn per step,
    as a fraction of the original vertex count. Once at most `threshold_y`
    vertices remain available, branch and bound finishes the clique; its
    colouring bound only changes how fast that phase runs.
    """

    sample_fraction: float = 0.1
    threshold_y: int = 100
    restarts: int = 1000
    master_seed: int = 0
    coloring_bound: bool = True
    jobs: int = 1

    def __post_init__(self):
        if not 0 < self.sample_fraction <= 1:
            raise UsageError(f"sample_fraction must be in (0, 1], got {self.sample_fraction}")
        if self.threshold_y < 1:
            raise UsageError(f"threshold_y must be positive, got {self.threshold_y}")
        if self.restarts < 1:
            raise UsageError(f"restarts must be positive, got {self.restarts}")
        if not 0 <= self.master_seed < 1 << 64:
            raise UsageError(f"master_seed must be a 64-bit unsigned integer, got {self.master_seed}")
        if self.jobs < 1:
            raise UsageError(f"jobs must be positive, got {self.jobs}")

    def sample_size(self, num_vertices: int) -> int:
        """x = max(1, round(sample_fraction * s)), halves rounded up."""
        return max(1, math.floor(self.sample_fraction * num_vertices + 0.5))


@dataclass(frozen=True)
class GreedyResult:
    clique: FrozenSet[int]
    size: int
    best_restart_index: int
    elapsed: float
    sizes: Tuple[int, ...] = ()
    config: Optional[GreedyConfig] = None


def restart_rng(master_seed: int, restart_index: int) -> np.random.Generator:
    """Independent counter-based stream for one restart."""
    seed = np.random.SeedSequence(master_seed, spawn_key=(restart_index,))
    return np.random.Generator(np.random.Philox(seed))


StepHook = Callable[[Tuple[int, ...], int], None]


def greedy_once(
    graph: AdjacencyGraph,
    config: GreedyConfig,
    restart_index: int,
    on_step: Optional[StepHook] = None,
) -> FrozenSet[int]:
    """
    One greedy construction.

    Repeatedly samples x available vertices, moves the one with most
    neighbours inside the available set into the clique and drops its
    non-neighbours, then solves what is left exactly.

    `on_step`, if given, receives the clique so far and the available
    bitset after every selection.
    """
    adjacency = graph.adjacency
    num_vertices = len(adjacency)
    if num_vertices == 0:
        raise UsageError("greedy search needs a non-empty graph")

    rng = restart_rng(config.master_seed, restart_index)
    x = config.sample_size(num_vertices)
    clique: List[int] = []
    available = (1 << num_vertices) - 1

    while available.bit_count() > config.threshold_y:
        pool = list(iter_bits(available))
        if len(pool) <= x:
            sample = pool
        else:
            sample = [pool[i] for i in rng.choice(len(pool), size=x, replace=False)]
        chosen = min(sample, key=lambda v: (-(adjacency[v] & available).bit_count(), v))
        clique.append(chosen)
        available &= adjacency[chosen]
        if on_step is not None:
            on_step(tuple(clique), available)

    remaining = list(iter_bits(available))
    if remaining:
        tail = max_clique_exact_rows(
            graph.induced_rows(remaining), coloring_bound=config.coloring_bound
        )
        clique.extend(remaining[i] for i in tail.clique)

    return frozenset(clique)


_worker_graph: Optional[AdjacencyGraph] = None
_worker_config: Optional[GreedyConfig] = None


def _init_worker(adjacency: Tuple[int, ...], config: GreedyConfig) -> None:
    global _worker_graph, _worker_config
    _worker_graph = AdjacencyGraph(adjacency)
    _worker_config = config


def _run_worker(restart_index: int) -> FrozenSet[int]:
    return greedy_once(_worker_graph, _worker_config, restart_index)


def greedy_restarts(graph: AdjacencyGraph, config: GreedyConfig) -> GreedyResult:
    """
    Run `config.restarts` independent greedy constructions and keep the best.

    The largest clique wins; ties go to the lexicographically smallest sorted
    vertex list, then to the earliest restart, so the result does not depend
    on `config.jobs`.
    """
    if graph.num_vertices == 0:
        raise UsageError("greedy search needs a non-empty graph")

    start = time.perf_counter()
    indices = range(config.restarts)

    if config.jobs > 1:
        chunksize = max(1, config.restarts // (config.jobs * 8))
        with ProcessPoolExecutor(
            max_workers=config.jobs,
            initializer=_init_worker,
            initargs=(graph.adjacency, config),
        ) as pool:
            cliques = list(pool.map(_run_worker, indices, chunksize=chunksize))
    else:
        cliques = []
        best = 0
        for i in indices:
            clique = greedy_once(graph, config, i)
            cliques.append(clique)
            if len(clique) > best:
                best = len(clique)
                logger.debug("Restart {} reached clique size {}", i, best)

    best_index = min(indices, key=lambda i: (-len(cliques[i]), sorted(cliques[i])))
    elapsed = time.perf_counter() - start
    result = GreedyResult(
        clique=cliques[best_index],
        size=len(cliques[best_index]),
        best_restart_index=best_index,
        elapsed=elapsed,
        sizes=tuple(len(c) for c in cliques),
        config=config,
    )
    logger.info(
        "Greedy search: best size {} at restart {} of {} ({:.2f}s)",
        result.size,
        best_index,
        config.restarts,
        elapsed,
    )
    return result
