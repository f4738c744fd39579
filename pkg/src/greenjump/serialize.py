"""JSON codecs for graphs, divisors and exact rationals.

Graph documents look like

    {"vertices": [{"id": "C1", "genus": 1}, ...],
     "edges": [["C1", "C2"], ...],
     "marks": [{"id": "x1", "vertex": "C1", "d": 4}, ...],
     "m": 1}

with "genus", "marks" and "m" optional (defaulting to 0, [] and 0).
Rationals travel as "p/q" strings, always in lowest terms and always with an
explicit denominator.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping

from .errors import BadJsonError
from .graphs import Divisor, MarkedGraph, MultiGraph


def fraction_to_str(x) -> str:
    f = Fraction(x)
    return f"{f.numerator}/{f.denominator}"


def parse_fraction(value) -> Fraction:
    if isinstance(value, bool):
        raise BadJsonError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise BadJsonError(f"not a rational: {value!r}") from exc
    raise BadJsonError(f"not a rational: {value!r}")


def marked_graph_from_json(doc) -> MarkedGraph:
    if not isinstance(doc, Mapping):
        raise BadJsonError("graph document must be an object")
    try:
        vertices = [(str(v["id"]), int(v.get("genus", 0))) for v in doc["vertices"]]
        edges = [(str(a), str(b)) for a, b in doc.get("edges", [])]
        marks = [
            (str(x["id"]), str(x["vertex"]), int(x.get("d", 0)))
            for x in doc.get("marks", [])
        ]
        m = int(doc.get("m", 0))
    except (KeyError, TypeError, ValueError) as exc:
        raise BadJsonError(f"malformed graph document: {exc}") from exc
    graph = MultiGraph([v for v, _ in vertices], edges)
    return MarkedGraph(
        graph,
        {v: q for v, q in vertices},
        marks=[(i, v) for i, v, _ in marks],
        weights=[d for _, _, d in marks],
        twist=m,
    )


def marked_graph_to_json(marked: MarkedGraph) -> dict:
    return {
        "vertices": [
            {"id": v, "genus": q}
            for v, q in zip(marked.graph.vertices, marked.genera)
        ],
        "edges": [[a, b] for a, b in marked.graph.edges],
        "marks": [
            {"id": i, "vertex": v, "d": d}
            for (i, v), d in zip(marked.marks, marked.weights)
        ],
        "m": marked.twist,
    }


def divisor_from_json(doc) -> Divisor:
    if not isinstance(doc, Mapping):
        raise BadJsonError("divisor must be an object mapping vertex to rational")
    return Divisor({str(v): parse_fraction(c) for v, c in doc.items()})


def divisor_to_json(d: Divisor, graph: MultiGraph | None = None) -> dict:
    """Divisor as a vertex -> "p/q" map, in vertex order when a graph is given."""
    if graph is None:
        return {v: fraction_to_str(c) for v, c in sorted(d.items())}
    return {
        v: fraction_to_str(d[v])
        for v in graph.vertices
        if d[v] != 0
    }
