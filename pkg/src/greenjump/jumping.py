"""Height-jumping coefficient of a stable marked fiber.

For a stable marked graph with weights d and twist m, the weight reduction
divisor is sum_i d_i * u(x_i) - m * K.  The jumping coefficient is the
Green's self-pairing of that divisor minus the boundary coefficient of each
bridge, one canonical term per bridge.  The bridge terms equal the Green's
self-pairings of the per-block pushforwards, so the jump is the sum over the
two-connected blocks and is therefore nonnegative.
"""

from __future__ import annotations

from fractions import Fraction

from .blocks import Block, BlockDecomposition, BridgeType, bridge_type, decompose, pushforward
from .errors import UnstableError
from .graphs import Divisor, MarkedGraph, canonical_divisor, genus
from .green import green
from .moduli import a_coeff, a_coeff_zero


def reduction_divisor(marked: MarkedGraph) -> Divisor:
    """sum_i d_i at the marked vertices minus twist times the canonical divisor."""
    out = Divisor()
    for (mark_id, v), d in zip(marked.marks, marked.weights):
        out = out + Divisor.delta(v, d)
    return out - marked.twist * canonical_divisor(marked)


def _require_stable(marked: MarkedGraph) -> None:
    if not marked.is_stable:
        raise UnstableError("operation requires a stable marked graph")


def _bridge_types(marked: MarkedGraph) -> list[BridgeType]:
    dec = decompose(marked.graph)
    return [bridge_type(marked, b.edge_indices[0]) for b in dec.bridges()]


def bridge_counts(marked: MarkedGraph) -> dict[BridgeType, int]:
    """Number of bridges per canonical type; non-bridge edges are not counted."""
    _require_stable(marked)
    counts: dict[BridgeType, int] = {}
    for bt in _bridge_types(marked):
        counts[bt] = counts.get(bt, 0) + 1
    return counts


def _bridge_coefficient(marked: MarkedGraph, bt: BridgeType) -> int:
    """Boundary coefficient of one bridge, from the canonical type."""
    index_of = {mark_id: i + 1 for i, (mark_id, _) in enumerate(marked.marks)}
    P = [index_of[i] for i in bt.marks]
    if bt.h == 0:
        # stability forces at least two marks on a genus-zero side
        return a_coeff_zero(P, marked.weights, marked.twist)
    return a_coeff(genus(marked), bt.h, P, marked.weights, marked.twist)


def jump(marked: MarkedGraph) -> Fraction:
    """Jumping coefficient: Green's self-pairing minus the bridge terms.

    Nonnegative; exactly zero when every edge is a bridge and when the graph
    has at most one edge.
    """
    _require_stable(marked)
    d = reduction_divisor(marked)
    total = green(marked.graph, d, d)
    for bt in _bridge_types(marked):
        total -= _bridge_coefficient(marked, bt)
    return total


def jump_decomposed(marked: MarkedGraph) -> list[tuple[Block, Fraction]]:
    """Per-block Green's self-pairings of the pushed-forward reduction divisor.

    The values sum to the full Green's self-pairing; bridge blocks contribute
    exactly their boundary coefficients, and the two-connected blocks sum to
    jump(marked).
    """
    _require_stable(marked)
    d = reduction_divisor(marked)
    dec = decompose(marked.graph)
    out = []
    for i, block in enumerate(dec.blocks):
        di = pushforward(dec, i, d)
        out.append((block, green(block.subgraph, di, di)))
    return out
