"""Shared test helpers: independent oracles and small graph builders.

The solvers here deliberately avoid the library's pseudoinverse path so
that resistance and Green's values can be cross-checked between two
unrelated implementations.
"""

from __future__ import annotations

from fractions import Fraction

from greenjump import Divisor, MultiGraph


def eliminate(rows: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    """Solve a square exact linear system by plain Gaussian elimination."""
    n = len(rows)
    aug = [list(map(Fraction, rows[i])) + [Fraction(rhs[i])] for i in range(n)]
    for col in range(n):
        pivot = next(i for i in range(col, n) if aug[i][col] != 0)
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for i in range(n):
            if i != col and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[col])]
    return [row[n] for row in aug]


def laplacian_rows(graph: MultiGraph) -> list[list[Fraction]]:
    n = graph.n_vertices
    rows = [[Fraction(0)] * n for _ in range(n)]
    for a, b in graph.edges:
        if a == b:
            continue
        i, j = graph.index(a), graph.index(b)
        rows[i][i] += 1
        rows[j][j] += 1
        rows[i][j] -= 1
        rows[j][i] -= 1
    return rows


def electric_potential(graph: MultiGraph, current: Divisor) -> list[Fraction]:
    """Solve L P = current with sum(P) = 0, pinning P[0] and shifting.

    Independent of the pseudoinverse route: eliminates the first row and
    column and back-substitutes.
    """
    assert current.degree == 0
    rows = laplacian_rows(graph)
    b = [current[v] for v in graph.vertices]
    reduced = [row[1:] for row in rows[1:]]
    x = eliminate(reduced, b[1:])
    p = [Fraction(0)] + x
    shift = sum(p, Fraction(0)) / len(p)
    return [v - shift for v in p]


def electric_resistance(graph: MultiGraph, u: str, v: str) -> Fraction:
    if u == v:
        return Fraction(0)
    current = Divisor.delta(u) - Divisor.delta(v)
    p = electric_potential(graph, current)
    return p[graph.index(u)] - p[graph.index(v)]


def brute_force_bridges(graph: MultiGraph) -> set[int]:
    """Cut edges found by removing each edge and re-checking connectivity."""
    bridges = set()
    for skip in range(graph.n_edges):
        if graph.is_loop(skip):
            continue
        adj = {v: [] for v in graph.vertices}
        for idx, (a, b) in enumerate(graph.edges):
            if idx == skip:
                continue
            adj[a].append(b)
            adj[b].append(a)
        seen = {graph.vertices[0]}
        stack = [graph.vertices[0]]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if len(seen) != graph.n_vertices:
            bridges.add(skip)
    return bridges


def relabel(graph: MultiGraph, suffix: str) -> MultiGraph:
    return MultiGraph(
        [v + suffix for v in graph.vertices],
        [(a + suffix, b + suffix) for a, b in graph.edges],
    )


def pointed_sum(g1: MultiGraph, g2: MultiGraph, v1: str, v2: str) -> tuple[MultiGraph, str]:
    """Wedge of two disjoint graphs identifying v1 with v2; returns the
    glued graph and the id of the glue vertex."""
    a = relabel(g1, ".L")
    b = relabel(g2, ".R")
    glue = v1 + ".L"
    rename = {v2 + ".R": glue}
    verts = list(a.vertices) + [v for v in b.vertices if v != v2 + ".R"]
    edges = list(a.edges) + [
        (rename.get(x, x), rename.get(y, y)) for x, y in b.edges
    ]
    return MultiGraph(verts, edges), glue


def dumbbell() -> MultiGraph:
    """Two triangles joined by one bridge."""
    return MultiGraph(
        ["a1", "a2", "a3", "b1", "b2", "b3"],
        [
            ("a1", "a2"), ("a2", "a3"), ("a3", "a1"),
            ("b1", "b2"), ("b2", "b3"), ("b3", "b1"),
            ("a1", "b1"),
        ],
    )
