"""Seeded random graphs for the property suites and survey scripts.

Everything takes an explicit `random.Random` so that the randomized suites
are reproducible from a single seed.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .graphs import Divisor, MarkedGraph, MultiGraph


def random_connected_multigraph(
    rng: random.Random,
    max_vertices: int = 12,
    max_edges: int = 24,
    allow_tree_only: bool = False,
) -> MultiGraph:
    """Random connected multigraph with loops and parallel edges allowed."""
    n = rng.randint(1, max_vertices)
    vertices = tuple(f"v{i}" for i in range(n))
    order = list(range(n))
    rng.shuffle(order)
    edges = []
    for k in range(1, n):
        a, b = order[k], order[rng.randrange(k)]
        edges.append((vertices[a], vertices[b]))
    if not allow_tree_only or rng.random() < 0.8:
        budget = max(0, max_edges - len(edges))
        for _ in range(rng.randint(0, budget)):
            a, b = rng.randrange(n), rng.randrange(n)
            edges.append((vertices[a], vertices[b]))
    return MultiGraph(vertices, edges)


def random_degree_zero_divisor(
    rng: random.Random, graph: MultiGraph, span: int = 6, nonzero: bool = False
) -> Divisor:
    """Random rational divisor of exact degree zero."""
    if nonzero and graph.n_vertices < 2:
        raise ValueError("no nonzero degree-zero divisor on a single vertex")
    while True:
        vals = [
            Fraction(rng.randint(-span, span), rng.choice((1, 1, 2, 3)))
            for _ in graph.vertices
        ]
        mean = sum(vals, Fraction(0)) / len(vals)
        d = Divisor(zip(graph.vertices, (v - mean for v in vals)))
        if d or not nonzero:
            return d


def random_stable_marked_graph(
    rng: random.Random,
    max_vertices: int = 10,
    max_genus: int = 6,
    max_marks: int = 4,
) -> MarkedGraph:
    """Random stable marked graph with 2 <= genus <= max_genus.

    Vertex genera are bumped wherever stability would fail, then the weights
    are completed so that their total equals (2g-2)*m.
    """
    while True:
        n = rng.randint(1, max_vertices)
        vertices = tuple(f"v{i}" for i in range(n))
        order = list(range(n))
        rng.shuffle(order)
        edges = []
        for k in range(1, n):
            a, b = order[k], order[rng.randrange(k)]
            edges.append((vertices[a], vertices[b]))
        for _ in range(rng.randint(0, 4)):
            a, b = rng.randrange(n), rng.randrange(n)
            edges.append((vertices[a], vertices[b]))
        graph = MultiGraph(vertices, edges)

        n_marks = rng.randint(1, max_marks)
        mark_vertices = [vertices[rng.randrange(n)] for _ in range(n_marks)]
        marks = [(f"x{i + 1}", v) for i, v in enumerate(mark_vertices)]

        q = [rng.choice((0, 0, 1, 1, 2)) for _ in range(n)]
        for i, v in enumerate(vertices):
            special = graph.valence(v) + sum(1 for _, w in marks if w == v)
            if q[i] == 0 and special < 3:
                q[i] = 1
        g = graph.betti() + sum(q)
        if not 2 <= g <= max_genus:
            continue

        m = rng.randint(-2, 2)
        d = [rng.randint(-3, 3) for _ in range(n_marks - 1)]
        d.append((2 * g - 2) * m - sum(d))
        return MarkedGraph(graph, q, marks=marks, weights=d, twist=m,
                           require_stable=True)
