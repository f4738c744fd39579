from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from greenjump import Divisor, MarkedGraph, MultiGraph, canonical_divisor, genus, laplacian
from greenjump.errors import ConstraintError, DisconnectedError, GraphError, SupportError
from conftest import small_multigraphs


F = Fraction


class TestMultiGraph:
    def test_rejects_empty(self):
        with pytest.raises(GraphError):
            MultiGraph([], [])

    def test_rejects_disconnected(self):
        with pytest.raises(DisconnectedError):
            MultiGraph(["a", "b"], [])

    def test_rejects_undeclared_endpoint(self):
        with pytest.raises(GraphError):
            MultiGraph(["a"], [("a", "b")])

    def test_rejects_duplicate_ids(self):
        with pytest.raises(GraphError):
            MultiGraph(["a", "a"], [("a", "a")])

    def test_loop_is_connected_single_vertex(self):
        g = MultiGraph(["a"], [("a", "a")])
        assert g.valence("a") == 2
        assert g.betti() == 1

    def test_valence_counts_parallels(self):
        g = MultiGraph(["a", "b"], [("a", "b"), ("a", "b")])
        assert g.valence("a") == 2


class TestLaplacian:
    def test_one_edge(self):
        g = MultiGraph(["a", "b"], [("a", "b")])
        assert laplacian(g).to_lists() == [[F(1), F(-1)], [F(-1), F(1)]]

    def test_parallel_pair(self):
        g = MultiGraph(["a", "b"], [("a", "b"), ("a", "b")])
        assert laplacian(g).to_lists() == [[F(2), F(-2)], [F(-2), F(2)]]

    def test_triangle(self):
        g = MultiGraph(["a", "b", "c"], [("a", "b"), ("b", "c"), ("c", "a")])
        L = laplacian(g)
        for i in range(3):
            for j in range(3):
                assert L[i, j] == (2 if i == j else -1)

    def test_loops_contribute_zero(self):
        g = MultiGraph(["a", "b"], [("a", "b"), ("a", "a")])
        assert laplacian(g).to_lists() == [[F(1), F(-1)], [F(-1), F(1)]]

    @settings(max_examples=60, deadline=None)
    @given(small_multigraphs())
    def test_symmetric_zero_row_sums(self, g):
        L = laplacian(g)
        assert L.is_symmetric()
        assert all(s == 0 for s in L.row_sums())

    @settings(max_examples=60, deadline=None)
    @given(small_multigraphs(), st.randoms(use_true_random=False))
    def test_positive_semidefinite(self, g, rnd):
        L = laplacian(g)
        x = [Fraction(rnd.randint(-9, 9), rnd.choice((1, 2, 3)))
             for _ in g.vertices]
        quad = sum(x[i] * L[i, j] * x[j]
                   for i in range(g.n_vertices) for j in range(g.n_vertices))
        assert quad >= 0

    @settings(max_examples=40, deadline=None)
    @given(small_multigraphs(), st.data())
    def test_orientation_invariance(self, g, data):
        if g.n_edges == 0:
            return
        k = data.draw(st.integers(0, g.n_edges - 1))
        flipped = list(g.edges)
        a, b = flipped[k]
        flipped[k] = (b, a)
        assert laplacian(MultiGraph(g.vertices, flipped)) == laplacian(g)

    @settings(max_examples=40, deadline=None)
    @given(small_multigraphs())
    def test_kernel_is_constants(self, g):
        L = laplacian(g)
        assert L.rank() == g.n_vertices - 1
        ones = [Fraction(1)] * g.n_vertices
        assert all(v == 0 for v in L.mat_vec(ones))


class TestDivisor:
    def test_degree_and_pruning(self):
        d = Divisor({"a": F(1, 2), "b": F(-1, 2), "c": 0})
        assert d.degree == 0
        assert d.support() == ("a", "b")

    def test_algebra(self):
        d = Divisor({"a": 1}) + 2 * Divisor({"b": 1})
        assert d == Divisor({"a": 1, "b": 2})
        assert (d - d).degree == 0
        assert not (d - d)

    def test_support_check(self):
        g = MultiGraph(["a"], [])
        with pytest.raises(SupportError):
            Divisor({"z": 1}).check_support(g)


class TestMarkedGraph:
    def test_rejects_negative_genus(self):
        g = MultiGraph(["a"], [])
        with pytest.raises(GraphError):
            MarkedGraph(g, {"a": -1})

    def test_rejects_weight_constraint(self):
        g = MultiGraph(["a"], [])
        with pytest.raises(ConstraintError):
            MarkedGraph(g, {"a": 2}, marks=[("x1", "a")], weights=[1], twist=0)

    def test_stability_flag(self):
        g = MultiGraph(["a", "b"], [("a", "b")])
        kwargs = dict(marks=[("x1", "a")], weights=[2], twist=1)
        m = MarkedGraph(g, {"a": 0, "b": 2}, **kwargs)
        assert not m.is_stable  # genus-0 vertex with valence 1 + one mark
        with pytest.raises(ConstraintError):
            MarkedGraph(g, {"a": 0, "b": 2}, require_stable=True, **kwargs)

    def test_stable_example(self):
        g = MultiGraph(["a", "b"], [("a", "b")])
        m = MarkedGraph(g, {"a": 0, "b": 2},
                        marks=[("x1", "a"), ("x2", "a")], weights=[1, 1],
                        twist=1, require_stable=True)
        assert m.is_stable


class TestCanonicalDivisorAndGenus:
    def test_single_vertex_q1(self):
        m = MarkedGraph(MultiGraph(["a"], []), {"a": 1})
        assert canonical_divisor(m) == Divisor({})
        assert genus(m) == 1

    def test_path_of_elliptics(self):
        g = MultiGraph(["a", "b", "c"], [("a", "b"), ("b", "c")])
        m = MarkedGraph(g, {"a": 1, "b": 1, "c": 1})
        assert canonical_divisor(m) == Divisor({"a": 1, "b": 2, "c": 1})
        assert genus(m) == 3

    def test_banana(self):
        g = MultiGraph(["a", "b"], [("a", "b"), ("a", "b")])
        m = MarkedGraph(g, {"a": 1, "b": 1})
        assert canonical_divisor(m) == Divisor({"a": 2, "b": 2})
        assert genus(m) == 3

    def test_tree_genus_zero(self):
        g = MultiGraph(["a", "b", "c"], [("a", "b"), ("a", "c")])
        assert genus(MarkedGraph(g, {"a": 0, "b": 0, "c": 0})) == 0

    def test_cycle_genus_one(self):
        g = MultiGraph(["a", "b", "c"], [("a", "b"), ("b", "c"), ("c", "a")])
        assert genus(MarkedGraph(g, [0, 0, 0])) == 1

    @settings(max_examples=50, deadline=None)
    @given(small_multigraphs(), st.data())
    def test_genus_from_canonical_degree(self, g, data):
        q = [data.draw(st.integers(0, 3)) for _ in g.vertices]
        m = MarkedGraph(g, q)
        assert genus(m) == 1 + canonical_divisor(m).degree / 2


class TestJsonRoundTrip:
    def test_round_trip(self):
        from greenjump.serialize import marked_graph_from_json, marked_graph_to_json

        doc = {
            "vertices": [{"id": "C1", "genus": 1}, {"id": "C2", "genus": 0}],
            "edges": [["C1", "C2"], ["C1", "C2"], ["C2", "C2"]],
            "marks": [{"id": "x1", "vertex": "C2", "d": 4}],
            "m": 1,
        }
        m = marked_graph_from_json(doc)
        assert marked_graph_to_json(m) == doc

    def test_bad_document(self):
        from greenjump.errors import BadJsonError
        from greenjump.serialize import marked_graph_from_json

        with pytest.raises(BadJsonError):
            marked_graph_from_json({"edges": []})
