"""Weighted digraphs with exact rational weights, and their distance matrices.

Vertices are strings with a fixed order; undirected edges are desugared to a
pair of opposite arcs of equal weight at ingestion, so everything downstream
sees one representation.  Distances have shortest-path semantics only for
strictly positive weights; graphs with other weights can still be built (the
block-assembly machinery consumes them) but `distance_matrix` rejects them.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, TYPE_CHECKING

from .linalg import RMatrix, as_rational, parse_rational_literal

if TYPE_CHECKING:  # pragma: no cover
    from .blocks import BlockDecomposition

__all__ = [
    "GraphFormatError",
    "NotStronglyConnectedError",
    "LabelMismatchError",
    "Graph",
    "parse_edge_list",
    "format_edge_list",
    "graph_to_json",
    "graph_from_json",
    "is_distance_well_defined",
    "distance_matrix",
    "weak_components",
    "Violation",
    "ValidationReport",
    "validate_generalized_distance_matrix",
]


class GraphFormatError(ValueError):
    """A graph file or JSON document does not match the expected grammar."""


class NotStronglyConnectedError(ValueError):
    """The digraph is not strongly connected, so distances are undefined."""


class LabelMismatchError(ValueError):
    """Matrix labels do not line up with the graph or block vertices."""


class Graph:
    """Immutable arc digraph: ordered string vertices, weighted arcs.

    No self-arcs; at most one arc per ordered vertex pair.  Weights are
    arbitrary rationals at this level (see module docstring).
    """

    __slots__ = ("_vertices", "_arcs", "_out")

    def __init__(
        self,
        vertices: Sequence[str],
        arcs: Iterable[tuple[str, str, object]],
    ):
        vs = tuple(str(v) for v in vertices)
        if len(set(vs)) != len(vs):
            raise GraphFormatError("duplicate vertex names")
        vset = set(vs)
        out: dict[str, dict[str, Fraction]] = {v: {} for v in vs}
        norm = []
        for u, v, w in arcs:
            u, v = str(u), str(v)
            if u not in vset or v not in vset:
                raise GraphFormatError(f"arc endpoint not a vertex: {u} -> {v}")
            if u == v:
                raise GraphFormatError(f"self-arc not allowed: {u}")
            if v in out[u]:
                raise GraphFormatError(f"duplicate arc: {u} -> {v}")
            wf = as_rational(w)
            out[u][v] = wf
            norm.append((u, v, wf))
        self._vertices = vs
        self._arcs = tuple(norm)
        self._out = out

    @classmethod
    def build(
        cls,
        arcs: Iterable[tuple[str, str, object]] = (),
        edges: Iterable[tuple[str, str, object]] = (),
        vertices: Sequence[str] = (),
    ) -> "Graph":
        """Construct from arcs plus undirected edges (desugared to arc pairs).

        Vertex order: the explicit `vertices` first, then first mention in
        the arc/edge stream.
        """
        order: list[str] = [str(v) for v in vertices]
        seen = set(order)
        all_arcs: list[tuple[str, str, object]] = []
        for u, v, w in arcs:
            all_arcs.append((u, v, w))
        for u, v, w in edges:
            all_arcs.append((u, v, w))
            all_arcs.append((v, u, w))
        for u, v, _ in all_arcs:
            for x in (str(u), str(v)):
                if x not in seen:
                    seen.add(x)
                    order.append(x)
        return cls(order, all_arcs)

    @property
    def vertices(self) -> tuple[str, ...]:
        return self._vertices

    @property
    def arcs(self) -> tuple[tuple[str, str, Fraction], ...]:
        return self._arcs

    def out_arcs(self, u: str) -> dict[str, Fraction]:
        """Mapping of successor vertex to arc weight."""
        return dict(self._out[u])

    def weight(self, u: str, v: str) -> Fraction:
        try:
            return self._out[u][v]
        except KeyError:
            raise KeyError(f"no arc {u} -> {v}") from None

    def has_arc(self, u: str, v: str) -> bool:
        return v in self._out[u]

    def induced(self, subset: Iterable[str]) -> "Graph":
        """Subgraph induced on `subset`, preserving ambient vertex order."""
        keep = set(subset)
        vs = [v for v in self._vertices if v in keep]
        arcs = [(u, v, w) for (u, v, w) in self._arcs if u in keep and v in keep]
        return Graph(vs, arcs)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._vertices == other._vertices and set(self._arcs) == set(other._arcs)

    def __hash__(self) -> int:
        return hash((self._vertices, frozenset(self._arcs)))

    def __repr__(self) -> str:
        return f"Graph({len(self._vertices)} vertices, {len(self._arcs)} arcs)"


# -- text formats -------------------------------------------------------------


def parse_edge_list(text: str) -> Graph:
    """Parse the edge-list format.

    One item per line: ``u -> v [w]`` for an arc, ``u -- v [w]`` for an
    undirected edge (two opposite arcs).  A missing weight means 1.  ``#``
    starts a comment.  Vertex order is first mention.
    """
    arcs: list[tuple[str, str, object]] = []
    edges: list[tuple[str, str, object]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) not in (3, 4) or parts[1] not in ("->", "--"):
            raise GraphFormatError(f"line {lineno}: cannot parse {raw!r}")
        try:
            w = parse_rational_literal(parts[3]) if len(parts) == 4 else Fraction(1)
        except ValueError as exc:
            raise GraphFormatError(f"line {lineno}: {exc}") from None
        target = arcs if parts[1] == "->" else edges
        target.append((parts[0], parts[2], w))
    try:
        return Graph.build(arcs=arcs, edges=edges)
    except GraphFormatError:
        raise
    except ValueError as exc:
        raise GraphFormatError(str(exc)) from None


def format_edge_list(g: Graph) -> str:
    """Emit one ``u -> v w`` line per arc (weight omitted when it is 1)."""
    lines = []
    for u, v, w in g.arcs:
        lines.append(f"{u} -> {v}" if w == 1 else f"{u} -> {v} {w}")
    return "\n".join(lines) + "\n"


def graph_to_json(g: Graph) -> str:
    obj = {
        "vertices": list(g.vertices),
        "arcs": [
            {"from": u, "to": v, "weight": str(w)} for (u, v, w) in g.arcs
        ],
    }
    return json.dumps(obj, indent=2) + "\n"


def graph_from_json(text: str) -> Graph:
    try:
        obj = json.loads(text)
        vertices = [str(v) for v in obj["vertices"]]
        arcs = [
            (a["from"], a["to"], parse_rational_literal(str(a["weight"])))
            for a in obj["arcs"]
        ]
    except (KeyError, TypeError, ValueError, json.JSONDecodeError) as exc:
        raise GraphFormatError(f"bad graph JSON: {exc}") from None
    try:
        return Graph(vertices, arcs)
    except ValueError as exc:
        raise GraphFormatError(str(exc)) from None


# -- connectivity and distances ------------------------------------------------


def _reachable(g: Graph, start: str, forward: bool) -> set[str]:
    if forward:
        succ = {u: list(g.out_arcs(u)) for u in g.vertices}
    else:
        succ = {u: [] for u in g.vertices}
        for u, v, _ in g.arcs:
            succ[v].append(u)
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for v in succ[u]:
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return seen


def is_distance_well_defined(g: Graph) -> bool:
    """True iff the arc digraph is strongly connected (single vertex counts)."""
    if not g.vertices:
        raise ValueError("graph has no vertices")
    n = len(g.vertices)
    start = g.vertices[0]
    return len(_reachable(g, start, True)) == n and len(_reachable(g, start, False)) == n


def weak_components(
    g: Graph, without: Iterable[str] = ()
) -> tuple[frozenset[str], ...]:
    """Connected components of the underlying undirected graph minus `without`."""
    excluded = set(without)
    adj: dict[str, set[str]] = {v: set() for v in g.vertices if v not in excluded}
    for u, v, _ in g.arcs:
        if u not in excluded and v not in excluded:
            adj[u].add(v)
            adj[v].add(u)
    comps = []
    unvisited = set(adj)
    while unvisited:
        start = unvisited.pop()
        comp = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in comp:
                    comp.add(y)
                    stack.append(y)
        unvisited -= comp
        comps.append(frozenset(comp))
    comps.sort(key=lambda c: min(c))
    return tuple(comps)


def distance_matrix(g: Graph) -> RMatrix:
    """All-pairs shortest-path matrix, exact, labeled by the vertex order.

    Requires strictly positive weights and strong connectivity.  Plain
    Floyd-Warshall relaxation over rationals; at the sizes this package
    targets that is entirely adequate.
    """
    for u, v, w in g.arcs:
        if w <= 0:
            raise ValueError(f"arc weight must be positive for distances: {u} -> {v} {w}")
    vs = g.vertices
    n = len(vs)
    idx = {v: i for i, v in enumerate(vs)}
    dist: list[list[Fraction | None]] = [[None] * n for _ in range(n)]
    for i in range(n):
        dist[i][i] = Fraction(0)
    for u, v, w in g.arcs:
        dist[idx[u]][idx[v]] = w
    for k in range(n):
        dk = dist[k]
        for i in range(n):
            dik = dist[i][k]
            if dik is None:
                continue
            di = dist[i]
            for j in range(n):
                dkj = dk[j]
                if dkj is None:
                    continue
                via = dik + dkj
                if di[j] is None or via < di[j]:
                    di[j] = via
    for i in range(n):
        for j in range(n):
            if dist[i][j] is None:
                raise NotStronglyConnectedError(
                    f"no path from {vs[i]} to {vs[j]}"
                )
    return RMatrix(dist, vs)


# -- generalized distance matrix validation -------------------------------------


@dataclass(frozen=True)
class Violation:
    """One failed check: kind, the vertices involved, expected and actual."""

    kind: str
    where: tuple[str, ...]
    expected: Fraction
    actual: Fraction


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def validate_generalized_distance_matrix(
    g: Graph, d: RMatrix, dec: "BlockDecomposition"
) -> ValidationReport:
    """Check the two generalized-distance axioms against a candidate matrix.

    (1) zero diagonal; (2) for every cut vertex x and every pair u, v taken
    from different components of G - x, the entry splits additively:
    d[u, v] == d[u, x] + d[x, v].  Returns a report rather than raising so
    callers can show all violations at once.
    """
    if d.labels is None or set(d.labels) != set(g.vertices) or not d.is_square:
        raise LabelMismatchError("matrix must be labeled by the graph's vertex set")
    violations = []
    zero = Fraction(0)
    for u in g.vertices:
        actual = d.at(u, u)
        if actual != 0:
            violations.append(Violation("nonzero_diagonal", (u,), zero, actual))
    for x in sorted(dec.cut_vertices):
        comps = weak_components(g, without=(x,))
        for a in range(len(comps)):
            for b in range(len(comps)):
                if a == b:
                    continue
                for u in sorted(comps[a]):
                    for v in sorted(comps[b]):
                        expected = d.at(u, x) + d.at(x, v)
                        actual = d.at(u, v)
                        if actual != expected:
                            violations.append(
                                Violation("cut_additivity", (u, x, v), expected, actual)
                            )
    return ValidationReport(tuple(violations))
