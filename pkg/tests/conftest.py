import random

import pytest
from hypothesis import strategies as st

from greenjump import MultiGraph


@pytest.fixture
def rng():
    return random.Random(20260810)


@st.composite
def small_multigraphs(draw, max_vertices=6, max_extra=6):
    """Connected multigraphs with loops and parallels, hypothesis-shrinkable."""
    n = draw(st.integers(1, max_vertices))
    vertices = tuple(f"v{i}" for i in range(n))
    edges = []
    for k in range(1, n):
        parent = draw(st.integers(0, k - 1))
        edges.append((vertices[k], vertices[parent]))
    extra = draw(
        st.lists(
            st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)),
            max_size=max_extra,
        )
    )
    edges.extend((vertices[a], vertices[b]) for a, b in extra)
    return MultiGraph(vertices, edges)
