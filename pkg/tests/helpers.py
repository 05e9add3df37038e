"""Small graph builders shared by the tests."""

import random

from py_bwcodes.graph import AdjacencyGraph


def complete_graph(k: int) -> AdjacencyGraph:
    return AdjacencyGraph.from_edges(k, [(u, v) for u in range(k) for v in range(u + 1, k)])


def edgeless_graph(k: int) -> AdjacencyGraph:
    return AdjacencyGraph.from_edges(k, [])


def random_graph(rng: random.Random, num_vertices: int, density: float) -> AdjacencyGraph:
    edges = [
        (u, v)
        for u in range(num_vertices)
        for v in range(u + 1, num_vertices)
        if rng.random() < density
    ]
    return AdjacencyGraph.from_edges(num_vertices, edges)
