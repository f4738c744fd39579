"""Bridges, two-connected blocks, pointed-sum projections and bridge typing.

A connected multigraph is the successive pointed sum of its bridges and its
two-connected pieces.  Every edge lands in exactly one block:

  * a bridge is a cut edge, forming a block on its own;
  * parallel edges and cycle edges group into two-connected blocks;
  * a self-loop is never a bridge and forms a one-vertex two-connected
    block consisting of that loop.

For each block the projection map contracts everything outside the block to
its attachment vertex, which makes pushforward of divisors well defined and
degree preserving.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import DegreeError, GraphError
from .graphs import Divisor, MarkedGraph, MultiGraph, genus
from .green import green


@dataclass(frozen=True)
class Block:
    """One piece of the pointed-sum decomposition of a parent graph."""

    subgraph: MultiGraph
    edge_indices: tuple[int, ...]
    is_bridge: bool
    # parent vertex -> attachment vertex of this block, aligned with the
    # parent's vertex order
    projection: tuple[str, ...]

    def project(self, parent: MultiGraph, v: str) -> str:
        return self.projection[parent.index(v)]


@dataclass(frozen=True)
class BlockDecomposition:
    graph: MultiGraph
    blocks: tuple[Block, ...]

    def bridges(self) -> tuple[Block, ...]:
        return tuple(b for b in self.blocks if b.is_bridge)


def _nonloop_edge_groups(graph: MultiGraph) -> list[list[int]]:
    """Biconnected groups of non-loop edge indices via a lowpoint traversal."""
    adj: dict[str, list[tuple[int, str]]] = {v: [] for v in graph.vertices}
    for idx, (a, b) in enumerate(graph.edges):
        if a == b:
            continue
        adj[a].append((idx, b))
        adj[b].append((idx, a))
    disc: dict[str, int] = {}
    low: dict[str, int] = {}
    groups: list[list[int]] = []
    edge_stack: list[int] = []
    clock = 0
    for root in graph.vertices:
        if root in disc:
            continue
        disc[root] = low[root] = clock
        clock += 1
        dfs = [(root, -1, iter(adj[root]))]
        while dfs:
            v, entry_edge, it = dfs[-1]
            pushed = False
            for idx, w in it:
                if idx == entry_edge:
                    continue  # skip only the tree edge itself; parallels stay
                if w not in disc:
                    edge_stack.append(idx)
                    disc[w] = low[w] = clock
                    clock += 1
                    dfs.append((w, idx, iter(adj[w])))
                    pushed = True
                    break
                if disc[w] < disc[v]:
                    edge_stack.append(idx)
                    low[v] = min(low[v], disc[w])
            if not pushed:
                dfs.pop()
                if dfs:
                    u = dfs[-1][0]
                    low[u] = min(low[u], low[v])
                    if low[v] >= disc[u]:
                        group = []
                        while True:
                            idx = edge_stack.pop()
                            group.append(idx)
                            if idx == entry_edge:
                                break
                        groups.append(group)
    return groups


def _block_projection(graph: MultiGraph, member_edges: set[int],
                      block_vertices: set[str]) -> tuple[str, ...]:
    """Map each parent vertex to the unique block vertex its side hangs off."""
    adj: dict[str, list[str]] = {v: [] for v in graph.vertices}
    for idx, (a, b) in enumerate(graph.edges):
        if idx in member_edges:
            continue
        adj[a].append(b)
        adj[b].append(a)
    proj: dict[str, str] = {}
    for anchor in block_vertices:
        stack = [anchor]
        comp = {anchor}
        while stack:
            for w in adj[stack.pop()]:
                if w not in comp:
                    comp.add(w)
                    stack.append(w)
        if len(comp & block_vertices) != 1:
            raise GraphError("edge set is not a block of the graph")
        for v in comp:
            proj[v] = anchor
    if len(proj) != graph.n_vertices:
        raise GraphError("block projection does not cover the graph")
    return tuple(proj[v] for v in graph.vertices)


def _make_block(graph: MultiGraph, edge_indices: Sequence[int]) -> Block:
    idxs = tuple(sorted(edge_indices))
    verts = {v for i in idxs for v in graph.edges[i]}
    ordered = tuple(v for v in graph.vertices if v in verts)
    sub = MultiGraph(ordered, tuple(graph.edges[i] for i in idxs))
    is_bridge = len(idxs) == 1 and not graph.is_loop(idxs[0])
    return Block(
        subgraph=sub,
        edge_indices=idxs,
        is_bridge=is_bridge,
        projection=_block_projection(graph, set(idxs), verts),
    )


def decompose(graph: MultiGraph | MarkedGraph) -> BlockDecomposition:
    """Pointed-sum decomposition into bridges and two-connected blocks."""
    g = graph.graph if isinstance(graph, MarkedGraph) else graph
    groups = _nonloop_edge_groups(g)
    groups += [[i] for i in range(g.n_edges) if g.is_loop(i)]
    groups.sort(key=min)
    return BlockDecomposition(g, tuple(_make_block(g, grp) for grp in groups))


def pushforward(dec: BlockDecomposition, block_index: int, d: Divisor) -> Divisor:
    """Aggregate divisor coefficients along the block's projection map."""
    if not 0 <= block_index < len(dec.blocks):
        raise GraphError(f"no block with index {block_index}")
    d.check_support(dec.graph)
    block = dec.blocks[block_index]
    out: dict[str, Fraction] = {}
    for v, c in d.items():
        target = block.project(dec.graph, v)
        out[target] = out.get(target, Fraction(0)) + c
    return Divisor(out)


def canonical_pair(g: int, h: int, side_marks, all_marks) -> tuple[int, tuple]:
    """Canonical representative of the unordered pair {(P,h), (P^c,g-h)}.

    Smaller h wins; a tie at h = g/2 is broken by the lexicographically
    smaller sorted mark collection.  The same canon is used for bridge types
    and for the boundary class symbols, so the two never disagree.
    """
    side = tuple(sorted(side_marks))
    other = tuple(sorted(set(all_marks) - set(side_marks)))
    first = (h, side)
    second = (g - h, other)
    return min(first, second)


@dataclass(frozen=True)
class BridgeType:
    """Type (P, h) of a bridge, stored canonically under (P,h) ~ (P^c,g-h)."""

    h: int
    marks: tuple[str, ...]

    def __repr__(self) -> str:
        return f"BridgeType(h={self.h}, marks={list(self.marks)})"


def _side_vertices(graph: MultiGraph, edge_index: int) -> tuple[set[str], set[str]]:
    """Vertex sets of the two components after removing the bridge interior."""
    a, b = graph.edges[edge_index]
    adj: dict[str, list[str]] = {v: [] for v in graph.vertices}
    for idx, (x, y) in enumerate(graph.edges):
        if idx == edge_index:
            continue
        adj[x].append(y)
        adj[y].append(x)
    side = {a}
    stack = [a]
    while stack:
        for w in adj[stack.pop()]:
            if w not in side:
                side.add(w)
                stack.append(w)
    if b in side:
        raise GraphError(f"edge {edge_index} is not a bridge")
    return side, set(graph.vertices) - side


def bridge_type(marked: MarkedGraph, edge_index: int) -> BridgeType:
    """Canonical type of a bridge: side genus and the marks it carries."""
    g = marked.graph
    if not 0 <= edge_index < g.n_edges:
        raise GraphError(f"no edge with index {edge_index}")
    if g.is_loop(edge_index):
        raise GraphError("a self-loop is never a bridge")
    side, _ = _side_vertices(g, edge_index)
    inner_edges = sum(
        1
        for idx, (x, y) in enumerate(g.edges)
        if idx != edge_index and x in side and y in side
    )
    betti = inner_edges - len(side) + 1
    h = betti + sum(marked.q(v) for v in side)
    side_marks = [i for i, v in marked.marks if v in side]
    all_marks = [i for i, _ in marked.marks]
    ch, cmarks = canonical_pair(genus(marked), h, side_marks, all_marks)
    return BridgeType(ch, cmarks)


def additivity_sum(graph: MultiGraph | MarkedGraph, d: Divisor, e: Divisor) -> Fraction:
    """Sum of block Green's pairings of the pushed-forward divisors.

    Equals green(graph, d, e) for degree-zero divisors.
    """
    if d.degree != 0 or e.degree != 0:
        raise DegreeError("additivity requires degree-zero divisors")
    dec = decompose(graph)
    total = Fraction(0)
    for i, block in enumerate(dec.blocks):
        di = pushforward(dec, i, d)
        ei = pushforward(dec, i, e)
        total += green(block.subgraph, di, ei)
    return total
