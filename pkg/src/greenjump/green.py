"""Exact Green's function machinery on connected multigraphs.

The Laplacian L of a connected graph has kernel spanned by the constant
vectors, and its Moore-Penrose pseudoinverse L+ is computed exactly by
solving the bordered system

    [ L  1 ] [x]   [b]
    [ 1' 0 ] [s] = [0]

column by column; the top-left block of the bordered inverse is L+.  The
Green's pairing g(d, e) = d' L+ e, the effective resistance, the
compensating divisor phi(d) = -L+ d and the admissible pairing
finite_part + g(d, e) are all exact rationals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import DegreeError, NotLaplacianError
from .graphs import Divisor, MarkedGraph, MultiGraph, laplacian
from .ratmat import RationalMatrix


def _as_graph(graph: MultiGraph | MarkedGraph) -> MultiGraph:
    return graph.graph if isinstance(graph, MarkedGraph) else graph


def pseudo_inverse(lap: RationalMatrix) -> RationalMatrix:
    """Moore-Penrose pseudoinverse of a connected-graph Laplacian, exactly.

    Requires a symmetric matrix with zero row sums whose kernel is exactly
    the constants; anything else raises NotLaplacianError.
    """
    n = lap.n_rows
    if lap.n_cols != n:
        raise NotLaplacianError("matrix is not square")
    if not lap.is_symmetric():
        raise NotLaplacianError("matrix is not symmetric")
    if any(s != 0 for s in lap.row_sums()):
        raise NotLaplacianError("row sums are not zero")
    bordered = RationalMatrix(
        [list(row) + [Fraction(1)] for row in lap.rows]
        + [[Fraction(1)] * n + [Fraction(0)]]
    )
    try:
        inv = bordered.inverse()
    except ValueError:
        raise NotLaplacianError(
            "kernel larger than the constants (graph not connected?)"
        ) from None
    return RationalMatrix(row[:n] for row in inv.rows[:n])


@lru_cache(maxsize=None)
def _graph_pinv(graph: MultiGraph) -> RationalMatrix:
    return pseudo_inverse(laplacian(graph))


def green(graph: MultiGraph | MarkedGraph, d: Divisor, e: Divisor) -> Fraction:
    """Bi-additive Green's pairing d' L+ e."""
    g = _as_graph(graph)
    dv = d.vector(g)
    ev = e.vector(g)
    pe = _graph_pinv(g).mat_vec(ev)
    return sum((a * b for a, b in zip(dv, pe)), Fraction(0))


def resistance(graph: MultiGraph | MarkedGraph, v: str, w: str) -> Fraction:
    """Effective resistance between two vertices, one unit per edge."""
    g = _as_graph(graph)
    i, j = g.index(v), g.index(w)
    pinv = _graph_pinv(g)
    return pinv[i, i] - 2 * pinv[i, j] + pinv[j, j]


def resistance_pairing(graph: MultiGraph | MarkedGraph, d: Divisor, e: Divisor) -> Fraction:
    """Bi-additive extension sum_ij a_i b_j r(C_i, C_j) of the resistance."""
    g = _as_graph(graph)
    d.check_support(g)
    e.check_support(g)
    total = Fraction(0)
    for v, a in d.items():
        for w, b in e.items():
            total += a * b * resistance(g, v, w)
    return total


def phi(graph: MultiGraph | MarkedGraph, d: Divisor) -> Divisor:
    """Zero-sum compensating divisor with L*phi = -d; requires deg d = 0."""
    g = _as_graph(graph)
    if d.degree != 0:
        raise DegreeError("phi requires a degree-zero divisor")
    x = _graph_pinv(g).mat_vec(d.vector(g))
    # image of L+ is orthogonal to constants, so -x already has zero sum
    return Divisor.from_vector(g, [-c for c in x])


@dataclass(frozen=True)
class AdmissibleInput:
    """Reductions d, e of two relative-degree-zero divisors plus the local
    intersection number of their chosen closures."""

    graph: MultiGraph | MarkedGraph
    d: Divisor
    e: Divisor
    finite_part: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "finite_part", Fraction(self.finite_part))
        if self.d.degree != 0 or self.e.degree != 0:
            raise DegreeError("reductions must have degree zero")
        g = _as_graph(self.graph)
        self.d.check_support(g)
        self.e.check_support(g)


def admissible_pairing(inp: AdmissibleInput) -> Fraction:
    """Local pairing finite_part + g(d, e); symmetric and bi-additive."""
    return inp.finite_part + green(inp.graph, inp.d, inp.e)
