from fractions import Fraction
from itertools import combinations

import pytest

from greenjump import (
    BridgeType,
    Divisor,
    MarkedGraph,
    MultiGraph,
    bridge_counts,
    bridge_type,
    decompose,
    genus,
    green,
    jump,
    jump_decomposed,
    reduction_divisor,
)
from greenjump.errors import UnstableError
from greenjump.generators import random_stable_marked_graph
from greenjump.jumping import _bridge_coefficient
from greenjump.moduli import a_coeff, a_coeff_zero

F = Fraction


def banana_fiber():
    g = MultiGraph(["C1", "C2"], [("C1", "C2"), ("C1", "C2")])
    return MarkedGraph(g, {"C1": 1, "C2": 1}, marks=[("x1", "C1")],
                       weights=[4], twist=1)


def path_fiber():
    g = MultiGraph(["C1", "C2", "C3"], [("C1", "C2"), ("C2", "C3")])
    return MarkedGraph(g, {"C1": 1, "C2": 1, "C3": 1}, marks=[("x1", "C2")],
                       weights=[4], twist=1)


def one_edge_fiber(m=1):
    g = MultiGraph(["C1", "C2"], [("C1", "C2")])
    return MarkedGraph(g, {"C1": 1, "C2": 2},
                       marks=[("x1", "C1")], weights=[(2 * 3 - 2) * m], twist=m)


class TestReductionDivisor:
    def test_banana(self):
        assert reduction_divisor(banana_fiber()) == Divisor({"C1": 2, "C2": -2})

    def test_zero_weights(self):
        g = MultiGraph(["C1", "C2"], [("C1", "C2"), ("C1", "C2")])
        m = MarkedGraph(g, {"C1": 1, "C2": 1}, marks=[("x1", "C1")],
                        weights=[0], twist=0)
        assert reduction_divisor(m) == Divisor()

    def test_path(self):
        assert reduction_divisor(path_fiber()) == Divisor(
            {"C1": -1, "C2": 2, "C3": -1}
        )

    def test_degree_zero_randomized(self, rng):
        for _ in range(40):
            m = random_stable_marked_graph(rng)
            assert reduction_divisor(m).degree == 0


class TestBridgeCounts:
    def test_banana_empty(self):
        assert bridge_counts(banana_fiber()) == {}

    def test_path(self):
        assert bridge_counts(path_fiber()) == {BridgeType(1, ()): 2}

    def test_two_marks_on_rational_side(self):
        g = MultiGraph(["a", "b"], [("a", "b")])
        m = MarkedGraph(g, {"a": 0, "b": 3},
                        marks=[("x1", "a"), ("x2", "a")], weights=[2, 2],
                        twist=1)
        assert bridge_counts(m) == {BridgeType(0, ("x1", "x2")): 1}

    def test_rejects_unstable(self):
        g = MultiGraph(["a", "b"], [("a", "b")])
        m = MarkedGraph(g, {"a": 0, "b": 2}, marks=[("x1", "a")],
                        weights=[2], twist=1)
        with pytest.raises(UnstableError):
            bridge_counts(m)


class TestJump:
    def test_banana_two(self):
        assert jump(banana_fiber()) == 2

    def test_path_zero(self):
        assert jump(path_fiber()) == 0

    def test_one_edge_zero(self):
        for m in (-2, -1, 0, 1, 2):
            assert jump(one_edge_fiber(m)) == 0

    def test_effectivity_randomized(self, rng):
        for _ in range(150):
            m = random_stable_marked_graph(rng, max_vertices=8)
            assert jump(m) >= 0

    def test_trees_jump_zero(self, rng):
        count = 0
        while count < 40:
            m = random_stable_marked_graph(rng, max_vertices=8)
            if m.graph.betti() != 0:
                continue
            assert jump(m) == 0
            count += 1

    def test_scaling_quadratic(self, rng):
        for _ in range(20):
            m = random_stable_marked_graph(rng, max_vertices=7)
            base = jump(m)
            for k in (2, 3):
                scaled = MarkedGraph(
                    m.graph, m.genera, marks=m.marks,
                    weights=[k * d for d in m.weights], twist=k * m.twist,
                )
                assert jump(scaled) == k * k * base

    def test_rejects_unstable(self):
        g = MultiGraph(["a", "b"], [("a", "b")])
        m = MarkedGraph(g, {"a": 0, "b": 2}, marks=[("x1", "a")],
                        weights=[2], twist=1)
        with pytest.raises(UnstableError):
            jump(m)

    def test_double_counted_sum_route(self, rng):
        # recompute via the boundary-multiplicity bookkeeping: genus-zero
        # bridge types once each, the (h, P) types at half weight over both
        # representatives
        for _ in range(40):
            m = random_stable_marked_graph(rng, max_vertices=8)
            g = genus(m)
            d, tw = m.weights, m.twist
            index_of = {mid: i + 1 for i, (mid, _) in enumerate(m.marks)}
            all_ids = [mid for mid, _ in m.marks]

            total = green(m.graph, reduction_divisor(m), reduction_divisor(m))
            dec = decompose(m.graph)
            for b in dec.blocks:
                if not b.is_bridge:
                    continue
                bt = bridge_type(m, b.edge_indices[0])
                P = [index_of[i] for i in bt.marks]
                Pc = [index_of[i] for i in all_ids if i not in bt.marks]
                if bt.h == 0:
                    total -= a_coeff_zero(P, d, tw)
                else:
                    total -= F(1, 2) * (
                        a_coeff(g, bt.h, P, d, tw)
                        + a_coeff(g, g - bt.h, Pc, d, tw)
                    )
            assert total == jump(m)


class TestJumpDecomposed:
    def test_banana_single_block(self):
        parts = jump_decomposed(banana_fiber())
        assert len(parts) == 1
        assert parts[0][1] == 2

    def test_tree_residual_zero(self):
        parts = jump_decomposed(path_fiber())
        m = path_fiber()
        for block, value in parts:
            assert block.is_bridge
            bt = bridge_type(m, block.edge_indices[0])
            assert value == _bridge_coefficient(m, bt)

    def test_sum_is_green_and_residual_is_jump(self, rng):
        for _ in range(60):
            m = random_stable_marked_graph(rng, max_vertices=8)
            d = reduction_divisor(m)
            parts = jump_decomposed(m)
            assert sum((v for _, v in parts), F(0)) == green(m.graph, d, d)
            bridge_sum = sum((v for b, v in parts if b.is_bridge), F(0))
            tc_sum = sum((v for b, v in parts if not b.is_bridge), F(0))
            assert tc_sum == jump(m)
            for block, value in parts:
                if block.is_bridge:
                    bt = bridge_type(m, block.edge_indices[0])
                    assert value == _bridge_coefficient(m, bt)
                else:
                    assert value >= 0
