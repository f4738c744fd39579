"""Connected multigraphs with vertex genera and marked points.

A `MultiGraph` is the dual graph of a semistable fiber: one vertex per
irreducible component, one edge per node, with parallel edges and self-loops
allowed.  A `MarkedGraph` adds the vertex genera (the polarisation), the
marked points with their integer weights, and the twist integer `m`
constraining the total weight to `(2g-2)*m`.

All values are immutable after construction; invalid graphs are rejected at
construction time, not when an operation is attempted.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import ConstraintError, DisconnectedError, GraphError, SupportError
from .ratmat import RationalMatrix


@dataclass(frozen=True)
class MultiGraph:
    """Finite connected multigraph with an arbitrary stored edge orientation.

    Vertex order is the declaration order; every matrix produced from the
    graph uses that order.
    """

    vertices: tuple[str, ...]
    edges: tuple[tuple[str, str], ...]

    def __init__(self, vertices: Iterable[str], edges: Iterable[Sequence[str]] = ()):
        object.__setattr__(self, "vertices", tuple(str(v) for v in vertices))
        object.__setattr__(
            self, "edges", tuple((str(a), str(b)) for a, b in edges)
        )
        self._validate()

    def _validate(self) -> None:
        if not self.vertices:
            raise GraphError("graph must have at least one vertex")
        if len(set(self.vertices)) != len(self.vertices):
            raise GraphError("duplicate vertex ids")
        vset = set(self.vertices)
        for a, b in self.edges:
            if a not in vset or b not in vset:
                raise GraphError(f"edge ({a},{b}) has an undeclared endpoint")
        if not self._is_connected():
            raise DisconnectedError("graph is not connected")

    def _is_connected(self) -> bool:
        adj: dict[str, list[str]] = {v: [] for v in self.vertices}
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        seen = {self.vertices[0]}
        stack = [self.vertices[0]]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == len(self.vertices)

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def index(self, v: str) -> int:
        try:
            return self.vertices.index(v)
        except ValueError:
            raise SupportError(f"unknown vertex {v!r}") from None

    def is_loop(self, edge_index: int) -> bool:
        a, b = self.edges[edge_index]
        return a == b

    def valence(self, v: str) -> int:
        """Number of edge ends at v; a self-loop counts twice."""
        self.index(v)
        return sum((a == v) + (b == v) for a, b in self.edges)

    def betti(self) -> int:
        """First Betti number #edges - #vertices + 1 of a connected graph."""
        return self.n_edges - self.n_vertices + 1


def cycle_graph(n: int) -> MultiGraph:
    """The n-cycle; n=1 is a single vertex with a loop, n=2 a parallel pair."""
    if n < 1:
        raise GraphError("cycle length must be >= 1")
    vs = tuple(f"C{i}" for i in range(n))
    es = tuple((vs[i], vs[(i + 1) % n]) for i in range(n))
    return MultiGraph(vs, es)


class Divisor:
    """Exact-rational vector indexed by vertex ids; zero entries are pruned."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Mapping[str, object] | Iterable[tuple[str, object]] = ()):
        items = dict(coeffs).items() if isinstance(coeffs, Mapping) else coeffs
        clean: dict[str, Fraction] = {}
        for v, c in items:
            c = Fraction(c)
            if c != 0:
                clean[str(v)] = c
        self._coeffs = clean

    @classmethod
    def delta(cls, v: str, c=1) -> "Divisor":
        return cls({v: c})

    @property
    def degree(self) -> Fraction:
        return sum(self._coeffs.values(), Fraction(0))

    def support(self) -> tuple[str, ...]:
        return tuple(sorted(self._coeffs))

    def items(self):
        return self._coeffs.items()

    def __getitem__(self, v: str) -> Fraction:
        return self._coeffs.get(v, Fraction(0))

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def __eq__(self, other) -> bool:
        return isinstance(other, Divisor) and self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash(frozenset(self._coeffs.items()))

    def __add__(self, other: "Divisor") -> "Divisor":
        out = dict(self._coeffs)
        for v, c in other.items():
            out[v] = out.get(v, Fraction(0)) + c
        return Divisor(out)

    def __sub__(self, other: "Divisor") -> "Divisor":
        return self + (-other)

    def __neg__(self) -> "Divisor":
        return Divisor({v: -c for v, c in self._coeffs.items()})

    def __rmul__(self, scalar) -> "Divisor":
        s = Fraction(scalar)
        return Divisor({v: s * c for v, c in self._coeffs.items()})

    def __repr__(self) -> str:
        body = " + ".join(f"{c}*{v}" for v, c in sorted(self._coeffs.items()))
        return f"Divisor({body or '0'})"

    def check_support(self, graph: MultiGraph) -> None:
        vset = set(graph.vertices)
        for v in self._coeffs:
            if v not in vset:
                raise SupportError(f"divisor supported on unknown vertex {v!r}")

    def vector(self, graph: MultiGraph) -> tuple[Fraction, ...]:
        self.check_support(graph)
        return tuple(self._coeffs.get(v, Fraction(0)) for v in graph.vertices)

    @classmethod
    def from_vector(cls, graph: MultiGraph, vec: Sequence) -> "Divisor":
        if len(vec) != graph.n_vertices:
            raise ValueError("vector length does not match vertex count")
        return cls(zip(graph.vertices, vec))


@dataclass(frozen=True)
class MarkedGraph:
    """Polarised multigraph with marked points, weights and twist.

    `genera` is aligned with `graph.vertices`; `marks` is an ordered tuple of
    (mark id, vertex id) pairs and `weights` its integer weights.  The total
    weight must equal (2g-2)*twist where g is the genus of the marked graph.
    """

    graph: MultiGraph
    genera: tuple[int, ...]
    marks: tuple[tuple[str, str], ...] = ()
    weights: tuple[int, ...] = ()
    twist: int = 0

    def __init__(
        self,
        graph: MultiGraph,
        genus: Mapping[str, int] | Sequence[int],
        marks: Iterable[Sequence[str]] = (),
        weights: Iterable[int] = (),
        twist: int = 0,
        require_stable: bool = False,
    ):
        if isinstance(genus, Mapping):
            missing = [v for v in graph.vertices if v not in genus]
            if missing:
                raise GraphError(f"no genus assigned to vertices {missing}")
            genus_t = tuple(int(genus[v]) for v in graph.vertices)
        else:
            genus_t = tuple(int(q) for q in genus)
            if len(genus_t) != graph.n_vertices:
                raise GraphError("genus tuple length does not match vertex count")
        object.__setattr__(self, "graph", graph)
        object.__setattr__(self, "genera", genus_t)
        object.__setattr__(
            self, "marks", tuple((str(i), str(v)) for i, v in marks)
        )
        object.__setattr__(self, "weights", tuple(int(d) for d in weights))
        object.__setattr__(self, "twist", int(twist))
        self._validate(require_stable)

    def _validate(self, require_stable: bool) -> None:
        if any(q < 0 for q in self.genera):
            raise GraphError("vertex genera must be nonnegative")
        ids = [i for i, _ in self.marks]
        if len(set(ids)) != len(ids):
            raise GraphError("duplicate mark ids")
        vset = set(self.graph.vertices)
        for i, v in self.marks:
            if v not in vset:
                raise SupportError(f"mark {i!r} placed on unknown vertex {v!r}")
        if len(self.weights) != len(self.marks):
            raise ConstraintError("one weight is required per mark")
        g = genus(self)
        if sum(self.weights) != (2 * g - 2) * self.twist:
            raise ConstraintError(
                f"total weight {sum(self.weights)} != (2g-2)*m = {(2 * g - 2) * self.twist}"
            )
        if require_stable and not self.is_stable:
            raise ConstraintError("graph is not stable")

    def q(self, v: str) -> int:
        return self.genera[self.graph.index(v)]

    def mark_vertex(self, mark_id: str) -> str:
        for i, v in self.marks:
            if i == mark_id:
                return v
        raise SupportError(f"unknown mark {mark_id!r}")

    def marks_at(self, v: str) -> tuple[str, ...]:
        return tuple(i for i, w in self.marks if w == v)

    @property
    def is_stable(self) -> bool:
        """Every genus-zero vertex carries at least three special points."""
        for v, q in zip(self.graph.vertices, self.genera):
            if q == 0 and self.graph.valence(v) + len(self.marks_at(v)) < 3:
                return False
        return True


def laplacian(graph: MultiGraph) -> RationalMatrix:
    """Graph Laplacian in the stored vertex order; self-loops contribute zero."""
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
    return RationalMatrix(rows)


def canonical_divisor(marked: MarkedGraph) -> Divisor:
    """The divisor with coefficient valence(C) + 2q(C) - 2 at each vertex C."""
    g = marked.graph
    return Divisor(
        {v: g.valence(v) + 2 * q - 2 for v, q in zip(g.vertices, marked.genera)}
    )


def genus(marked: MarkedGraph) -> int:
    """Betti number of the graph plus the total vertex genus."""
    return marked.graph.betti() + sum(marked.genera)
