"""Weighted graphs: vertex offsets r_i, non-positive edge weights, JSON I/O.

Adjacency is read off the edge weights: a pair is an edge exactly when its
weight is non-zero.  Vertex ids survive deletion, so classes computed in a
subgraph can be compared with those of its parent.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

from .exact import ExactError, RationalLike, as_rational, format_rational

VertexSet = frozenset
VertexPath = tuple


class GraphError(ValueError):
    """Invalid graph data or arguments."""


class GraphParseError(GraphError):
    """A graph document does not match the schema."""


def _edge_key(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


class WeightedGraph:
    """Immutable weighted graph on integer vertex ids.

    ``r`` maps each vertex to its offset (vertex weight ``x - r_i``) and
    ``edges`` maps unordered pairs to non-positive weights.  Zero weights are
    dropped on construction.
    """

    __slots__ = ("_vertices", "_r", "_edges", "_adj", "_root", "_mask", "_index", "_hash", "_cache")

    def __init__(
        self,
        r: Mapping[int, RationalLike],
        edges: Mapping[tuple[int, int], RationalLike] | Iterable[tuple[int, int, RationalLike]] = (),
    ):
        self._vertices = tuple(sorted(r))
        self._r = {v: as_rational(r[v]) for v in self._vertices}
        items = edges.items() if isinstance(edges, Mapping) else (((u, v), w) for u, v, w in edges)
        self._edges: dict[tuple[int, int], Fraction] = {}
        for (u, v), w in items:
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if u not in self._r or v not in self._r:
                raise GraphError(f"edge ({u}, {v}) has an endpoint outside the vertex set")
            weight = as_rational(w)
            if weight > 0:
                raise GraphError(f"edge weight must be non-positive, got {weight} on ({u}, {v})")
            key = _edge_key(u, v)
            if key in self._edges:
                raise GraphError(f"duplicate edge ({u}, {v})")
            if weight != 0:
                self._edges[key] = weight
        self._build_adjacency()
        self._root = self
        self._index = {v: k for k, v in enumerate(self._vertices)}
        self._mask = (1 << len(self._vertices)) - 1
        self._hash = None
        self._cache: dict = {}

    def _build_adjacency(self) -> None:
        adj: dict[int, list[int]] = {v: [] for v in self._vertices}
        for u, v in self._edges:
            adj[u].append(v)
            adj[v].append(u)
        self._adj = {v: tuple(sorted(ns)) for v, ns in adj.items()}

    @classmethod
    def unit(cls, n: int, edges: Iterable[tuple[int, int]]) -> "WeightedGraph":
        """Classical graph on 1..n: offsets 0 and edge weights -1."""
        return cls({v: 0 for v in range(1, n + 1)}, [(u, v, -1) for u, v in edges])

    # -- basic access -------------------------------------------------------

    @property
    def vertices(self) -> tuple[int, ...]:
        return self._vertices

    @property
    def n(self) -> int:
        return len(self._vertices)

    def __len__(self) -> int:
        return len(self._vertices)

    def __contains__(self, v: object) -> bool:
        return v in self._r

    def offset(self, v: int) -> Fraction:
        return self._r[v]

    @property
    def offsets(self) -> Mapping[int, Fraction]:
        return dict(self._r)

    def weight(self, u: int, v: int) -> Fraction:
        """Edge weight, 0 for non-adjacent pairs."""
        return self._edges.get(_edge_key(u, v), Fraction(0))

    def edges(self) -> Iterator[tuple[int, int, Fraction]]:
        for (u, v), w in sorted(self._edges.items()):
            yield u, v, w

    @property
    def edge_count(self) -> int:
        return len(self._edges)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._adj[v]

    def is_unit(self) -> bool:
        """True when every offset is 0 and every edge weight is -1."""
        return all(r == 0 for r in self._r.values()) and all(w == -1 for w in self._edges.values())

    def is_connected(self) -> bool:
        return len(components(self, frozenset(self._vertices))) <= 1

    def _key(self) -> tuple:
        return (
            tuple((v, self._r[v]) for v in self._vertices),
            tuple(sorted(self._edges.items())),
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WeightedGraph):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._key())
        return self._hash

    def __repr__(self) -> str:
        return f"WeightedGraph(n={self.n}, edges={self.edge_count})"

    # -- derived graphs ---------------------------------------------------------

    def with_vertex_weights(self, v: int, r: RationalLike, lambdas: Mapping[int, RationalLike]) -> "WeightedGraph":
        """Copy with vertex ``v``'s offset and incident edge weights replaced.

        Edges at ``v`` not named in ``lambdas`` keep their weight.
        """
        if v not in self._r:
            raise GraphError(f"vertex {v} not in graph")
        offsets = dict(self._r)
        offsets[v] = as_rational(r)
        edges = dict(self._edges)
        for k, w in lambdas.items():
            if k == v or k not in self._r:
                raise GraphError(f"invalid neighbor {k} for vertex {v}")
            edges[_edge_key(v, k)] = as_rational(w)
        return WeightedGraph(offsets, edges)

    def with_edge_weight(self, u: int, v: int, w: RationalLike) -> "WeightedGraph":
        edges = dict(self._edges)
        edges[_edge_key(u, v)] = as_rational(w)
        return WeightedGraph(self._r, edges)

    def relabel(self, mapping: Mapping[int, int]) -> "WeightedGraph":
        return WeightedGraph(
            {mapping[v]: r for v, r in self._r.items()},
            [(mapping[u], mapping[v], w) for (u, v), w in self._edges.items()],
        )

    # -- serialization -------------------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "vertices": [{"id": v, "r": format_rational(self._r[v])} for v in self._vertices],
            "edges": [{"u": u, "v": v, "lambda": format_rational(w)} for u, v, w in self.edges()],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def _subgraph(g: WeightedGraph, keep: Sequence[int]) -> WeightedGraph:
    keep_set = set(keep)
    sub = WeightedGraph.__new__(WeightedGraph)
    sub._vertices = tuple(v for v in g._vertices if v in keep_set)
    sub._r = {v: g._r[v] for v in sub._vertices}
    sub._edges = {e: w for e, w in g._edges.items() if e[0] in keep_set and e[1] in keep_set}
    sub._build_adjacency()
    root = g._root
    sub._root = root
    sub._index = root._index
    mask = 0
    for v in sub._vertices:
        mask |= 1 << root._index[v]
    sub._mask = mask
    sub._hash = None
    sub._cache = {}
    return sub


def delete_vertices(g: WeightedGraph, s: Iterable[int]) -> WeightedGraph:
    """Induced subgraph on the complement of ``s``; ids are preserved."""
    s = frozenset(s)
    for v in s:
        if v not in g:
            raise GraphError(f"vertex {v} not in graph")
    if not s:
        return g
    return _subgraph(g, [v for v in g.vertices if v not in s])


def induced_subgraph(g: WeightedGraph, keep: Iterable[int]) -> WeightedGraph:
    keep = frozenset(keep)
    return delete_vertices(g, [v for v in g.vertices if v not in keep])


def components(g: WeightedGraph, within: Iterable[int]) -> list[frozenset[int]]:
    """Connected components of the subgraph induced on ``within``, ordered by
    their smallest vertex."""
    within = frozenset(within)
    seen: set[int] = set()
    out = []
    for start in sorted(within):
        if start in seen:
            continue
        comp = {start}
        stack = [start]
        seen.add(start)
        while stack:
            u = stack.pop()
            for w in g.neighbors(u):
                if w in within and w not in seen:
                    seen.add(w)
                    comp.add(w)
                    stack.append(w)
        out.append(frozenset(comp))
    return out


def frontier(g: WeightedGraph, s: Iterable[int]) -> frozenset[int]:
    """Vertices outside ``s`` with at least one neighbor in ``s``."""
    s = frozenset(s)
    return frozenset(v for v in g.vertices if v not in s and any(w in s for w in g.neighbors(v)))


def enumerate_paths(g: WeightedGraph, i: int, j: int) -> list[tuple[int, ...]]:
    """All simple paths from ``i`` to ``j``, in lexicographic order."""
    if i == j:
        raise GraphError("path endpoints must differ")
    out: list[tuple[int, ...]] = []
    path = [i]
    on_path = {i}

    def extend(u: int) -> None:
        for w in g.neighbors(u):
            if w in on_path:
                continue
            if w == j:
                out.append(tuple(path) + (j,))
                continue
            path.append(w)
            on_path.add(w)
            extend(w)
            path.pop()
            on_path.discard(w)

    extend(i)
    out.sort()
    return out


def is_path(g: WeightedGraph, c: Sequence[int]) -> bool:
    if not c or len(set(c)) != len(c) or any(v not in g for v in c):
        return False
    return all(g.weight(a, b) != 0 for a, b in zip(c, c[1:]))


def path_weight(g: WeightedGraph, c: Sequence[int]) -> Fraction:
    """Product of ``-lambda_e`` over the edges of ``c`` (1 for a single vertex)."""
    if not is_path(g, c):
        raise GraphError(f"{list(c)} is not a path of the graph")
    out = Fraction(1)
    for a, b in zip(c, c[1:]):
        out *= -g.weight(a, b)
    return out


def hamiltonian_path(g: WeightedGraph) -> tuple[int, ...] | None:
    """Lexicographically first Hamiltonian path, or None."""
    n = g.n
    if n == 0:
        return None
    if n == 1:
        return (g.vertices[0],)
    path: list[int] = []
    on_path: set[int] = set()

    def extend(u: int) -> bool:
        path.append(u)
        on_path.add(u)
        if len(path) == n:
            return True
        for w in g.neighbors(u):
            if w not in on_path and extend(w):
                return True
        path.pop()
        on_path.discard(u)
        return False

    for start in g.vertices:
        if extend(start):
            return tuple(path)
    return None


# -- JSON ---------------------------------------------------------------------------

def _parse_int(value, what: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise GraphParseError(f"{what} must be an integer, got {value!r}")
    return value


def _parse_weight(value, what: str) -> Fraction:
    if isinstance(value, (int, str)) and not isinstance(value, bool):
        try:
            return as_rational(value)
        except ExactError as exc:
            raise GraphParseError(f"{what}: {exc}") from exc
    raise GraphParseError(f"{what} must be a rational string, got {value!r}")


def graph_from_dict(doc: dict) -> WeightedGraph:
    """Validate a decoded graph document."""
    if not isinstance(doc, dict):
        raise GraphParseError("graph document must be a JSON object")
    if doc.get("unit"):
        n = _parse_int(doc.get("n"), "n")
        if n < 0:
            raise GraphParseError("n must be non-negative")
        offsets = {v: Fraction(0) for v in range(1, n + 1)}
        raw_edges = []
        for e in doc.get("edges", []):
            if not isinstance(e, (list, tuple)) or len(e) != 2:
                raise GraphParseError(f"unit edge must be a pair [u, v], got {e!r}")
            raw_edges.append((_parse_int(e[0], "edge endpoint"), _parse_int(e[1], "edge endpoint"), Fraction(-1)))
    else:
        if "vertices" not in doc:
            raise GraphParseError("missing 'vertices'")
        offsets = {}
        for item in doc["vertices"]:
            if not isinstance(item, dict) or "id" not in item:
                raise GraphParseError(f"vertex entry must be an object with an 'id', got {item!r}")
            v = _parse_int(item["id"], "vertex id")
            if v in offsets:
                raise GraphParseError(f"duplicate vertex id {v}")
            offsets[v] = _parse_weight(item.get("r", "0"), f"offset of vertex {v}")
        n = len(offsets)
        if set(offsets) != set(range(1, n + 1)):
            raise GraphParseError("vertex ids must be exactly 1..n")
        raw_edges = []
        for e in doc.get("edges", []):
            if not isinstance(e, dict) or "u" not in e or "v" not in e or "lambda" not in e:
                raise GraphParseError(f"edge entry must have 'u', 'v' and 'lambda', got {e!r}")
            raw_edges.append((_parse_int(e["u"], "edge endpoint"), _parse_int(e["v"], "edge endpoint"),
                              _parse_weight(e["lambda"], "edge weight")))
    seen = set()
    for u, v, w in raw_edges:
        if not (1 <= u <= n and 1 <= v <= n):
            raise GraphParseError(f"vertex id out of range in edge ({u}, {v})")
        if u == v:
            raise GraphParseError(f"self-loop at vertex {u}")
        if w > 0:
            raise GraphParseError("edge weight must be non-positive")
        key = _edge_key(u, v)
        if key in seen:
            raise GraphParseError(f"duplicate edge ({u}, {v})")
        seen.add(key)
    return WeightedGraph(offsets, raw_edges)


def parse_graph(text: str) -> WeightedGraph:
    """Parse a graph JSON document (full or unit-weight shorthand)."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphParseError(f"malformed JSON: {exc}") from exc
    return graph_from_dict(doc)


def load_graph(path: str) -> WeightedGraph:
    with open(path, encoding="utf-8") as fh:
        return parse_graph(fh.read())


# -- small named graphs used by tests and docs --------------------------------------

def path_graph(n: int) -> WeightedGraph:
    return WeightedGraph.unit(n, [(k, k + 1) for k in range(1, n)])


def cycle_graph(n: int) -> WeightedGraph:
    return WeightedGraph.unit(n, [(k, k + 1) for k in range(1, n)] + [(n, 1)])


def complete_graph(n: int) -> WeightedGraph:
    return WeightedGraph.unit(n, [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)])


def star_graph(leaves: int) -> WeightedGraph:
    """Center is vertex 1."""
    return WeightedGraph.unit(leaves + 1, [(1, k) for k in range(2, leaves + 2)])
