"""JSON graph files and matrix serialization.

A graph file looks like::

    {"n": 4, "s": 2, "directed": true,
     "edges": [{"from": 1, "to": 4, "weight": [["3/5", "-4/5"], ["-4/5", "7/5"]]}, ...]}

Vertices are 1-based.  Rationals are strings ("p/q") or integers; floats are
rejected so nothing is silently rounded.  When s = 1 a weight may be given as
a bare scalar.  Undirected files (``"directed": false``) list each edge once.
"""

from __future__ import annotations

import json
from fractions import Fraction
from importlib import resources

from .errors import ParseError
from .graph import Edge, UndirectedGraph, WeightedDigraph, symmetrize
from .matrix import RMatrix, rational


def _load(text: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}", field="json") from None
    if not isinstance(doc, dict):
        raise ParseError("top level must be an object", field="json")
    return doc


def _int_field(doc: dict, key: str, where: str = "") -> int:
    if key not in doc:
        raise ParseError("missing", field=where + key)
    value = doc[key]
    if isinstance(value, bool) or not isinstance(value, int):
        raise ParseError(f"expected an integer, got {value!r}", field=where + key)
    return value


def parse_rational(value, field: str):
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise ParseError(f"expected an integer or a 'p/q' string, got {value!r}", field=field)
    try:
        return rational(Fraction(value) if isinstance(value, str) else value)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"not a rational number: {value!r}", field=field) from None


def parse_matrix(value, field: str = "matrix", shape: tuple[int, int] | None = None) -> RMatrix:
    if not isinstance(value, list) or not value or not all(isinstance(r, list) for r in value):
        raise ParseError("expected a non-empty nested array", field=field)
    rows = [[parse_rational(x, f"{field}[{i}][{j}]") for j, x in enumerate(r)] for i, r in enumerate(value)]
    if len({len(r) for r in rows}) != 1:
        raise ParseError("rows have different lengths", field=field)
    m = RMatrix(rows)
    if shape is not None and m.shape != shape:
        raise ParseError(f"shape {m.shape}, expected {shape}", field=field)
    return m


def _parse_weight(value, s: int, field: str) -> RMatrix:
    if s == 1 and not isinstance(value, list):
        return RMatrix([[parse_rational(value, field)]])
    return parse_matrix(value, field, (s, s))


def _parse_edges(doc: dict):
    n = _int_field(doc, "n")
    s = _int_field(doc, "s")
    if n < 1 or s < 1:
        raise ParseError(f"need n >= 1 and s >= 1, got n={n}, s={s}", field="n" if n < 1 else "s")
    directed = doc.get("directed", True)
    if not isinstance(directed, bool):
        raise ParseError("expected true or false", field="directed")
    edges = doc.get("edges", [])
    if not isinstance(edges, list):
        raise ParseError("expected an array", field="edges")
    out = []
    for k, e in enumerate(edges):
        where = f"edges[{k}]."
        if not isinstance(e, dict):
            raise ParseError("expected an object", field=f"edges[{k}]")
        if "weight" not in e:
            raise ParseError("missing", field=where + "weight")
        t = _int_field(e, "from", where)
        h = _int_field(e, "to", where)
        out.append((t - 1, h - 1, _parse_weight(e["weight"], s, where + "weight")))
    return n, s, directed, out


def parse_undirected(text: str) -> UndirectedGraph:
    n, s, directed, edges = _parse_edges(_load(text))
    if directed:
        raise ParseError("expected an undirected graph file", field="directed")
    return UndirectedGraph(n, s, tuple(Edge(t, h, w) for t, h, w in edges))


def parse_graph(text: str) -> WeightedDigraph:
    """Parse and validate a graph file; undirected files come back symmetrized."""
    n, s, directed, edges = _parse_edges(_load(text))
    if not directed:
        return symmetrize(UndirectedGraph(n, s, tuple(Edge(t, h, w) for t, h, w in edges)))
    return WeightedDigraph.from_edges(n, edges, s=s, one_based=False)


def parse_any(text: str) -> WeightedDigraph | UndirectedGraph:
    """Like :func:`parse_graph`, but undirected files stay undirected."""
    n, s, directed, edges = _parse_edges(_load(text))
    if directed:
        return WeightedDigraph.from_edges(n, edges, s=s, one_based=False)
    return UndirectedGraph(n, s, tuple(Edge(t, h, w) for t, h, w in edges))


def matrix_to_json(m: RMatrix) -> list[list[str]]:
    return m.to_strings()


def graph_to_dict(g: WeightedDigraph | UndirectedGraph) -> dict:
    if isinstance(g, UndirectedGraph):
        edges = [(e.u, e.v, e.weight) for e in g.edges]
        directed = False
    else:
        edges = [(a.tail, a.head, a.weight) for a in g.arcs]
        directed = True
    return {
        "n": g.n,
        "s": g.s,
        "directed": directed,
        "edges": [{"from": t + 1, "to": h + 1, "weight": matrix_to_json(w)} for t, h, w in edges],
    }


def dump_graph(g: WeightedDigraph | UndirectedGraph) -> str:
    return json.dumps(graph_to_dict(g), indent=1)


def load_example(name: str) -> str:
    """Text of a bundled graph file (``matrix_weighted``, ``cycle4``, ``scalar_digraph``)."""
    return resources.files("balres").joinpath("data").joinpath(f"{name}.json").read_text()

