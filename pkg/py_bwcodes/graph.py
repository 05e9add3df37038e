"""Compatibility graphs: words as vertices, edges between words at distance >= d."""

from dataclasses import dataclass, field
from typing import BinaryIO, Dict, Iterable, List, Sequence, Tuple

import numpy as np

from .exceptions import ParseError, UsageError
from .logger import get_logger
from .utils import bitset, iter_bits
from .words import DEFAULT_ENUMERATION_CAP, CodeParams, Word, enumerate_words

logger = get_logger()

_CHUNK_BITS = 64
_CHUNK_MASK = (1 << _CHUNK_BITS) - 1


@dataclass(frozen=True)
class AdjacencyGraph:
    """
    Simple undirected graph with adjacency rows stored as int bitsets.

    Bit v of `adjacency[u]` is set iff u and v are adjacent. Rows are
    symmetric and never contain their own vertex.
    """

    adjacency: Tuple[int, ...]

    @classmethod
    def from_edges(cls, num_vertices: int, edges: Iterable[Tuple[int, int]]) -> "AdjacencyGraph":
        rows = [0] * num_vertices
        for u, v in edges:
            if not (0 <= u < num_vertices and 0 <= v < num_vertices):
                raise UsageError(f"edge ({u}, {v}) outside 0..{num_vertices - 1}")
            if u == v:
                raise UsageError(f"self-loop on vertex {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(tuple(rows))

    @property
    def num_vertices(self) -> int:
        return len(self.adjacency)

    def degree(self, v: int) -> int:
        return self.adjacency[v].bit_count()

    def neighbors(self, v: int) -> List[int]:
        return list(iter_bits(self.adjacency[v]))

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adjacency[u] >> v & 1)

    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.adjacency) // 2

    def edges(self) -> Iterable[Tuple[int, int]]:
        """Undirected edges (u, v) with u < v, in lexicographic order."""
        for u, row in enumerate(self.adjacency):
            for v in iter_bits(row >> (u + 1)):
                yield u, u + 1 + v

    def is_clique(self, vertex_set: Iterable[int]) -> bool:
        """True iff every pair of the given vertices is adjacent."""
        members = sorted(set(vertex_set))
        for v in members:
            if not 0 <= v < self.num_vertices:
                raise UsageError(f"vertex {v} outside 0..{self.num_vertices - 1}")
        mask = bitset(members)
        return all((mask & ~(1 << v)) & ~self.adjacency[v] == 0 for v in members)

    def induced_rows(self, indices: Sequence[int]) -> Tuple[int, ...]:
        """Adjacency rows of the subgraph induced by `indices`, re-indexed by position."""
        position: Dict[int, int] = {v: k for k, v in enumerate(indices)}
        selected = bitset(indices)
        rows = []
        for v in indices:
            row = 0
            for u in iter_bits(self.adjacency[v] & selected):
                row |= 1 << position[u]
            rows.append(row)
        return tuple(rows)

    def induced(self, indices: Sequence[int]) -> "AdjacencyGraph":
        return AdjacencyGraph(self.induced_rows(indices))


@dataclass(frozen=True)
class CompatibilityGraph(AdjacencyGraph):
    """Graph over the admissible words of `params`; cliques are codes."""

    params: CodeParams = field(default=None)
    vertices: Tuple[Word, ...] = field(default=())

    def induced(self, indices: Sequence[int]) -> "CompatibilityGraph":
        return CompatibilityGraph(
            adjacency=self.induced_rows(indices),
            params=self.params,
            vertices=tuple(self.vertices[i] for i in indices),
        )


def _pack_words(words: Sequence[Word], length: int) -> np.ndarray:
    """(V, chunks) uint64 array; chunk c holds bits 64c..64c+63 of each word."""
    chunks = (length + _CHUNK_BITS - 1) // _CHUNK_BITS
    packed = np.zeros((len(words), chunks), dtype=np.uint64)
    for c in range(chunks):
        shift = c * _CHUNK_BITS
        packed[:, c] = np.array([(w.bits >> shift) & _CHUNK_MASK for w in words], dtype=np.uint64)
    return packed


def build_graph(params: CodeParams, cap: int = DEFAULT_ENUMERATION_CAP) -> CompatibilityGraph:
    """
    Build the compatibility graph for `params`.

    Vertices follow `enumerate_words` order. Distances are computed for all
    pairs with XOR and popcount over packed 64-bit chunks.

    Raises:
        CapacityError: If the admissible word set exceeds `cap`
    """
    words = enumerate_words(params, cap=cap)
    packed = _pack_words(words, params.n)

    rows = []
    for u in range(len(words)):
        distances = np.bitwise_count(packed ^ packed[u]).sum(axis=1, dtype=np.int64)
        row = distances >= params.d
        row[u] = False
        rows.append(int.from_bytes(np.packbits(row, bitorder="little").tobytes(), "little"))

    graph = CompatibilityGraph(adjacency=tuple(rows), params=params, vertices=tuple(words))
    logger.info(
        "Built graph for {}: {} vertices, {} edges",
        params,
        graph.num_vertices,
        graph.edge_count(),
    )
    return graph


def clique_is_code(graph: AdjacencyGraph, vertex_set: Iterable[int]) -> bool:
    """True iff the vertex set is a clique, i.e. its words form a code of distance >= d."""
    return graph.is_clique(vertex_set)


def words_of(graph: CompatibilityGraph, indices: Iterable[int]) -> List[Word]:
    return [graph.vertices[i] for i in sorted(indices)]


def export_dimacs(graph: AdjacencyGraph, sink: BinaryIO) -> None:
    """Write the graph in DIMACS ASCII edge format with 1-based vertex indices."""
    sink.write(f"p edge {graph.num_vertices} {graph.edge_count()}\n".encode("ascii"))
    for u, v in graph.edges():
        sink.write(f"e {u + 1} {v + 1}\n".encode("ascii"))


def read_dimacs(source: str) -> AdjacencyGraph:
    """
    Parse DIMACS ASCII edge format.

    Raises:
        ParseError: On a malformed line, a missing header, or an edge count
            that disagrees with the header
    """
    num_vertices = None
    declared_edges = 0
    edges = set()

    for line_no, raw in enumerate(source.splitlines(), start=1):
        parts = raw.split()
        if not parts or parts[0] == "c":
            continue
        try:
            if parts[0] == "p":
                if num_vertices is not None:
                    raise ParseError("duplicate problem line", line=line_no)
                if len(parts) != 4 or parts[1] not in ("edge", "col"):
                    raise ParseError(f"expected 'p edge V E', got {raw!r}", line=line_no)
                num_vertices, declared_edges = int(parts[2]), int(parts[3])
            elif parts[0] == "e":
                if num_vertices is None:
                    raise ParseError("edge before problem line", line=line_no)
                if len(parts) != 3:
                    raise ParseError(f"expected 'e u v', got {raw!r}", line=line_no)
                u, v = int(parts[1]) - 1, int(parts[2]) - 1
                if not (0 <= u < num_vertices and 0 <= v < num_vertices) or u == v:
                    raise ParseError(f"invalid edge {raw!r}", line=line_no)
                edges.add((min(u, v), max(u, v)))
            else:
                raise ParseError(f"unknown line type {parts[0]!r}", line=line_no)
        except ValueError as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(f"non-integer field in {raw!r}", line=line_no) from exc

    if num_vertices is None:
        raise ParseError("missing 'p edge' problem line")
    if len(edges) != declared_edges:
        raise ParseError(f"header declares {declared_edges} edges, found {len(edges)}")
    return AdjacencyGraph.from_edges(num_vertices, edges)
