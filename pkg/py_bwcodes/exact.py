"""Exact maximum-clique search by branch and bound."""

import time
from dataclasses import dataclass
from typing import FrozenSet, List, Optional, Sequence, Tuple

from .graph import AdjacencyGraph
from .logger import get_logger

logger = get_logger()

_CLOCK_CHECK_INTERVAL = 1024


@dataclass(frozen=True)
class SearchBudget:
    """Optional limits; a search that hits one returns its incumbent unproven."""

    time_limit: Optional[float] = None
    node_limit: Optional[int] = None

    @property
    def unlimited(self) -> bool:
        return self.time_limit is None and self.node_limit is None


@dataclass(frozen=True)
class ExactResult:
    clique: FrozenSet[int]
    size: int
    proven_optimal: bool
    nodes_explored: int
    elapsed: float
    incumbent_history: Tuple[int, ...] = ()


class _BudgetExhausted(Exception):
    pass


class BranchAndBound:
    """
    Depth-first clique search that keeps the best clique found and only
    follows branches that can still beat it.

    Vertices are ranked once by non-increasing degree (ties: lower index)
    and candidate sets are int bitsets over that ranking, so the lowest set
    bit is always the next vertex to branch on.
    """

    def __init__(
        self,
        adjacency: Sequence[int],
        budget: Optional[SearchBudget] = None,
        coloring_bound: bool = False,
        prune: bool = True,
    ):
        self.budget = budget or SearchBudget()
        self.coloring_bound = coloring_bound
        self.prune = prune

        n = len(adjacency)
        degrees = [row.bit_count() for row in adjacency]
        self._order = sorted(range(n), key=lambda v: (-degrees[v], v))
        rank = [0] * n
        for r, v in enumerate(self._order):
            rank[v] = r

        self._adj: List[int] = []
        for v in self._order:
            row, mask = 0, adjacency[v]
            while mask:
                low = mask & -mask
                row |= 1 << rank[low.bit_length() - 1]
                mask ^= low
            self._adj.append(row)

        self._best: List[int] = []
        self._history: List[int] = []
        self._nodes = 0
        self._deadline: Optional[float] = None

    def run(self) -> ExactResult:
        start = time.perf_counter()
        if self.budget.time_limit is not None:
            self._deadline = start + self.budget.time_limit

        proven = True
        everything = (1 << len(self._adj)) - 1
        try:
            if self.coloring_bound:
                self._expand_colored([], everything)
            else:
                self._expand([], everything)
        except _BudgetExhausted:
            proven = False

        elapsed = time.perf_counter() - start
        clique = frozenset(self._order[r] for r in self._best)
        logger.debug(
            "Branch and bound finished: size={} proven={} nodes={} elapsed={:.3f}s",
            len(clique),
            proven,
            self._nodes,
            elapsed,
        )
        return ExactResult(
            clique=clique,
            size=len(clique),
            proven_optimal=proven,
            nodes_explored=self._nodes,
            elapsed=elapsed,
            incumbent_history=tuple(self._history),
        )

    def _tick(self) -> None:
        self._nodes += 1
        limit = self.budget.node_limit
        if limit is not None and self._nodes > limit:
            raise _BudgetExhausted
        if (
            self._deadline is not None
            and self._nodes % _CLOCK_CHECK_INTERVAL == 0
            and time.perf_counter() > self._deadline
        ):
            raise _BudgetExhausted

    def _record(self, clique: List[int]) -> None:
        if len(clique) > len(self._best):
            self._best = list(clique)
            self._history.append(len(clique))
            logger.debug("New incumbent of size {} after {} nodes", len(clique), self._nodes)

    def _expand(self, clique: List[int], candidates: int) -> None:
        self._tick()
        self._record(clique)
        adj = self._adj
        while candidates:
            if self.prune and len(clique) + candidates.bit_count() <= len(self._best):
                return
            low = candidates & -candidates
            v = low.bit_length() - 1
            candidates ^= low
            clique.append(v)
            self._expand(clique, candidates & adj[v])
            clique.pop()

    def _color_classes(self, candidates: int) -> Tuple[List[int], List[int]]:
        """Greedy sequential colouring; vertices listed by colour, colours ascending."""
        adj = self._adj
        order: List[int] = []
        colors: List[int] = []
        uncolored = candidates
        color = 0
        while uncolored:
            color += 1
            available = uncolored
            while available:
                low = available & -available
                v = low.bit_length() - 1
                available &= ~low & ~adj[v]
                uncolored ^= low
                order.append(v)
                colors.append(color)
        return order, colors

    def _expand_colored(self, clique: List[int], candidates: int) -> None:
        self._tick()
        self._record(clique)
        adj = self._adj
        order, colors = self._color_classes(candidates)
        for i in range(len(order) - 1, -1, -1):
            # a clique within the candidates uses at most colors[i] colour classes
            if self.prune and len(clique) + colors[i] <= len(self._best):
                return
            v = order[i]
            clique.append(v)
            self._expand_colored(clique, candidates & adj[v])
            clique.pop()
            candidates &= ~(1 << v)


def max_clique_exact(
    graph: AdjacencyGraph,
    budget: Optional[SearchBudget] = None,
    coloring_bound: bool = False,
    prune: bool = True,
) -> ExactResult:
    """
    Maximum clique of `graph`.

    With no budget the result is always proven optimal. `prune=False`
    disables the bound and exists for testing only.
    """
    return max_clique_exact_rows(graph.adjacency, budget, coloring_bound, prune)


def max_clique_exact_rows(
    adjacency: Sequence[int],
    budget: Optional[SearchBudget] = None,
    coloring_bound: bool = False,
    prune: bool = True,
) -> ExactResult:
    """Same as `max_clique_exact` over raw adjacency bitset rows."""
    return BranchAndBound(adjacency, budget, coloring_bound, prune).run()
