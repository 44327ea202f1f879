"""Immutable simple graphs, input parsing, and the local triangle-sparsity audit.

Vertices are the dense integers ``0..n-1``.  The audit computes, for every
vertex, the number of edges spanned by its neighbourhood (equivalently, the
number of triangles through it) and derives the tightest sparsity parameter
``f`` such that every neighbourhood spans at most ``max_degree**2 / f`` edges.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import IO, Iterable, Sequence

from .errors import GraphFormatError

__all__ = [
    "Graph",
    "SparsityAudit",
    "load_graph",
    "audit",
    "induced_subgraph",
    "to_edge_list",
    "to_json_obj",
]


class Graph:
    """Undirected simple graph with set-based adjacency.

    Instances are immutable after construction and hashable; all operations
    in this package treat them as values.  Construction rejects self-loops,
    duplicate edges and out-of-range endpoints.
    """

    __slots__ = ("n", "_adj", "_masks", "_edges", "_hash")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        adj: list[set[int]] = [set() for _ in range(n)]
        seen: set[tuple[int, int]] = set()
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise ValueError(f"duplicate edge ({key[0]}, {key[1]})")
            seen.add(key)
            adj[u].add(v)
            adj[v].add(u)
        self.n = n
        self._adj = tuple(frozenset(s) for s in adj)
        self._edges = tuple(sorted(seen))
        masks = []
        for v in range(n):
            m = 0
            for u in adj[v]:
                m |= 1 << u
            masks.append(m)
        self._masks = tuple(masks)
        self._hash = hash((n, self._edges))

    # -- basic accessors ---------------------------------------------------

    @property
    def m(self) -> int:
        """Number of edges."""
        return len(self._edges)

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        """Sorted tuple of edges as (u, v) with u < v."""
        return self._edges

    @property
    def adj_masks(self) -> tuple[int, ...]:
        """Per-vertex neighbourhood as a bitmask over vertex indices."""
        return self._masks

    def neighbors(self, v: int) -> frozenset[int]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def degrees(self) -> tuple[int, ...]:
        return tuple(len(s) for s in self._adj)

    @property
    def max_degree(self) -> int:
        return max((len(s) for s in self._adj), default=0)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj[u]

    def vertices(self) -> range:
        return range(self.n)

    # -- value semantics ---------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self._edges == other._edges

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class SparsityAudit:
    """Exact local-sparsity statistics of a graph.

    ``nbhd_edges[v]`` is the number of edges with both endpoints in N(v),
    which equals the number of triangles containing v.  ``implied_f`` is the
    largest f with every neighbourhood spanning at most ``max_degree**2 / f``
    edges, capped at ``max_degree**2 + 1`` for triangle-free graphs and set
    to 1 by convention when the graph has no edges (max_degree = 0).
    """

    max_degree: int
    nbhd_edges: tuple[int, ...]
    triangle_total: int
    implied_f: Fraction

    def to_json_dict(self) -> dict:
        return {
            "max_degree": self.max_degree,
            "nbhd_edges": list(self.nbhd_edges),
            "triangle_total": self.triangle_total,
            "implied_f": str(self.implied_f),
        }


def audit(g: Graph) -> SparsityAudit:
    """Count neighbourhood edges and triangles exactly; derive implied f."""
    masks = g.adj_masks
    nbhd = []
    for v in range(g.n):
        mv = masks[v]
        acc = 0
        for u in g.neighbors(v):
            acc += (masks[u] & mv).bit_count()
        nbhd.append(acc // 2)
    total3 = sum(nbhd)
    assert total3 % 3 == 0, "sum of per-vertex triangle counts must be divisible by 3"
    delta = g.max_degree
    worst = max(nbhd, default=0)
    if delta == 0:
        implied = Fraction(1)
    elif worst == 0:
        implied = Fraction(delta * delta + 1)
    else:
        implied = Fraction(delta * delta, worst)
    return SparsityAudit(
        max_degree=delta,
        nbhd_edges=tuple(nbhd),
        triangle_total=total3 // 3,
        implied_f=implied,
    )


def induced_subgraph(g: Graph, s: Iterable[int]) -> tuple[Graph, tuple[int, ...]]:
    """Induced subgraph on ``s``, relabelled to 0..|s|-1.

    Returns (subgraph, labels) where ``labels[i]`` is the original vertex now
    named ``i``; labels are in increasing original order.
    """
    sel = sorted(set(s))
    for v in sel:
        if not (0 <= v < g.n):
            raise ValueError(f"vertex {v} out of range for n={g.n}")
    index = {v: i for i, v in enumerate(sel)}
    edges = [
        (index[u], index[v])
        for (u, v) in g.edges
        if u in index and v in index
    ]
    return Graph(len(sel), edges), tuple(sel)


# -- parsing ----------------------------------------------------------------


def _parse_edge_list(text: str) -> Graph:
    lines = text.split("\n")
    if not lines or not lines[0].strip():
        raise GraphFormatError("missing header line 'n m'", 1)
    head = lines[0].split()
    if len(head) != 2:
        raise GraphFormatError("header must be two integers 'n m'", 1)
    try:
        n, m = int(head[0]), int(head[1])
    except ValueError:
        raise GraphFormatError("header must be two integers 'n m'", 1) from None
    if n < 0 or m < 0:
        raise GraphFormatError("counts must be nonnegative", 1)
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    lineno = 1
    for raw in lines[1:]:
        lineno += 1
        stripped = raw.strip()
        if not stripped:
            continue
        if len(edges) == m:
            raise GraphFormatError(f"unexpected content after {m} edges", lineno)
        parts = stripped.split()
        if len(parts) != 2:
            raise GraphFormatError("edge line must be two integers 'u v'", lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError("edge line must be two integers 'u v'", lineno) from None
        if u == v:
            raise GraphFormatError(f"self-loop at vertex {u}", lineno)
        if u > v:
            raise GraphFormatError(f"edge endpoints must satisfy u < v, got ({u}, {v})", lineno)
        if v >= n:
            raise GraphFormatError(f"vertex index {v} >= n={n}", lineno)
        if u < 0:
            raise GraphFormatError(f"negative vertex index {u}", lineno)
        if (u, v) in seen:
            raise GraphFormatError(f"duplicate edge ({u}, {v})", lineno)
        seen.add((u, v))
        edges.append((u, v))
    if len(edges) != m:
        raise GraphFormatError(
            f"expected {m} edge lines, found {len(edges)}", lineno + 1
        )
    return Graph(n, edges)


def _parse_json_graph(text: str) -> Graph:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphFormatError(f"invalid JSON: {exc.msg}", exc.lineno) from None
    if not isinstance(obj, dict) or "n" not in obj or "edges" not in obj:
        raise GraphFormatError('JSON graph must be {"n": int, "edges": [[u, v], ...]}')
    n = obj["n"]
    if not isinstance(n, int) or n < 0:
        raise GraphFormatError('"n" must be a nonnegative integer')
    raw_edges = obj["edges"]
    if not isinstance(raw_edges, list):
        raise GraphFormatError('"edges" must be a list of [u, v] pairs')
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for i, e in enumerate(raw_edges):
        if (
            not isinstance(e, (list, tuple))
            or len(e) != 2
            or not all(isinstance(x, int) for x in e)
        ):
            raise GraphFormatError(f"edges[{i}] must be a pair of integers")
        u, v = e
        if u == v:
            raise GraphFormatError(f"edges[{i}]: self-loop at vertex {u}")
        if u > v:
            raise GraphFormatError(f"edges[{i}]: endpoints must satisfy u < v")
        if u < 0 or v >= n:
            raise GraphFormatError(f"edges[{i}]: vertex index out of range for n={n}")
        if (u, v) in seen:
            raise GraphFormatError(f"edges[{i}]: duplicate edge ({u}, {v})")
        seen.add((u, v))
        edges.append((u, v))
    return Graph(n, edges)


def load_graph(source: str | bytes | IO, fmt: str | None = None) -> Graph:
    """Parse a graph from edge-list or JSON input.

    ``source`` may be text, bytes (UTF-8), or a readable file object.  When
    ``fmt`` is None the format is sniffed: input starting with '{' is JSON,
    anything else is edge-list.  Edge-list format: a header line ``n m``
    followed by m lines ``u v`` with ``0 <= u < v < n``; LF or CRLF.
    """
    if hasattr(source, "read"):
        source = source.read()
    if isinstance(source, bytes):
        text = source.decode("utf-8")
    else:
        text = source
    text = text.replace("\r\n", "\n").replace("\r", "\n")
    if fmt is None:
        fmt = "json" if text.lstrip()[:1] == "{" else "edge-list"
    if fmt == "json":
        return _parse_json_graph(text)
    if fmt == "edge-list":
        return _parse_edge_list(text)
    raise ValueError(f"unknown graph format {fmt!r}")


def to_edge_list(g: Graph) -> str:
    """Serialize to the edge-list format accepted by :func:`load_graph`."""
    out = [f"{g.n} {g.m}"]
    out.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(out) + "\n"


def to_json_obj(g: Graph) -> dict:
    """Serialize to the JSON object form accepted by :func:`load_graph`."""
    return {"n": g.n, "edges": [list(e) for e in g.edges]}
