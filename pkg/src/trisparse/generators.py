"""Graph constructions: random regular, triangle-free conditioning, clique
blow-ups, bad-vertex deletion, and named reference graphs.

All randomized constructions are deterministic functions of their seed.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from .errors import DomainError, GenerationBudgetError
from .graph import Graph, audit, induced_subgraph

__all__ = [
    "random_regular",
    "triangle_free_regular",
    "clique_blowup",
    "bad_vertex_deletion",
    "named_graph",
    "cycle_graph",
    "path_graph",
    "complete_graph",
    "star_graph",
    "petersen_graph",
    "kneser_graph",
    "erdos_renyi",
]

DEFAULT_ATTEMPT_BUDGET = 10_000


def _pairing_attempt(n: int, d: int, rng: random.Random) -> set[tuple[int, int]] | None:
    """One configuration-model attempt with re-pairing of clashing stubs.

    Pairs stubs uniformly; stubs whose pairing would create a loop or a
    repeated edge are thrown back and re-shuffled while progress is still
    possible.  Returns None when stuck.
    """
    edges: set[tuple[int, int]] = set()
    stubs = list(range(n)) * d
    while stubs:
        rng.shuffle(stubs)
        leftover: list[int] = []
        it = iter(stubs)
        for s1, s2 in zip(it, it):
            if s1 > s2:
                s1, s2 = s2, s1
            if s1 != s2 and (s1, s2) not in edges:
                edges.add((s1, s2))
            else:
                leftover.extend((s1, s2))
        if len(leftover) == len(stubs):
            # No pair succeeded; check whether any suitable pair exists.
            ok = any(
                a != b and ((min(a, b), max(a, b)) not in edges)
                for a, b in itertools.combinations(set(leftover), 2)
            )
            if not ok:
                return None
        stubs = leftover
    return edges


def random_regular(
    n: int, d: int, seed: int, max_attempts: int = DEFAULT_ATTEMPT_BUDGET
) -> Graph:
    """Simple d-regular graph on n vertices via the configuration model.

    Loop/multi-edge clashes are re-paired within an attempt; a stuck attempt
    restarts.  Raises when n*d is odd, d >= n, or the attempt budget runs
    out.
    """
    if d < 0 or n < 0:
        raise DomainError("n and d must be nonnegative")
    if d >= n and not (n == 0 and d == 0):
        raise DomainError(f"degree d={d} must be < n={n}")
    if (n * d) % 2 != 0:
        raise DomainError(f"n*d must be even, got n={n}, d={d}")
    if d == 0:
        return Graph(n)
    rng = random.Random(seed)
    for _ in range(max_attempts):
        edges = _pairing_attempt(n, d, rng)
        if edges is not None:
            return Graph(n, sorted(edges))
    raise GenerationBudgetError(
        f"no simple {d}-regular graph found in {max_attempts} attempts"
    )


def _find_triangle_edge(g_adj: list[set[int]]) -> tuple[int, int] | None:
    for u in range(len(g_adj)):
        for v in g_adj[u]:
            if v > u and g_adj[u] & g_adj[v]:
                return (u, v)
    return None


def triangle_free_regular(
    n: int,
    d: int,
    seed: int,
    max_attempts: int = DEFAULT_ATTEMPT_BUDGET,
    switch_budget: int = 100_000,
) -> Graph:
    """Triangle-free d-regular graph; rejection for small n*d, switching above.

    Small instances (n*d <= 200) are resampled until triangle-free.  Larger
    ones repair triangles by degree-preserving double-edge switches: a
    triangle edge (u, v) and a random disjoint edge (x, y) are replaced by
    (u, x) and (v, y) when both are non-edges.  Either route produces a
    valid instance but NOT a uniform sample from the conditioned model.
    """
    rng = random.Random(seed)
    if n * d <= 200:
        for attempt in range(max_attempts):
            g = random_regular(n, d, rng.getrandbits(48), max_attempts)
            if audit(g).triangle_total == 0:
                return g
        raise GenerationBudgetError(
            f"no triangle-free {d}-regular graph on {n} vertices found in "
            f"{max_attempts} rejection attempts"
        )
    g = random_regular(n, d, rng.getrandbits(48), max_attempts)
    adj = [set(g.neighbors(v)) for v in range(n)]
    edges = {e for e in g.edges}
    for _ in range(switch_budget):
        tri = _find_triangle_edge(adj)
        if tri is None:
            return Graph(n, sorted(edges))
        u, v = tri
        edge_list = sorted(edges)
        for _ in range(200):
            x, y = edge_list[rng.randrange(len(edge_list))]
            if rng.random() < 0.5:
                x, y = y, x
            if len({u, v, x, y}) < 4:
                continue
            if x in adj[u] or y in adj[v]:
                continue
            for a, b in ((u, v), (min(x, y), max(x, y))):
                edges.discard((a, b))
                adj[a].discard(b)
                adj[b].discard(a)
            for a, b in ((u, x), (v, y)):
                edges.add((min(a, b), max(a, b)))
                adj[a].add(b)
                adj[b].add(a)
            break
        else:
            raise GenerationBudgetError("no valid switch found for a triangle edge")
    raise GenerationBudgetError(
        f"triangles remain after {switch_budget} switches"
    )


def clique_blowup(g: Graph, b: int) -> Graph:
    """Substitute every vertex by a b-clique, every edge by a complete join.

    Vertex (v, i) becomes v*b + i.  For d-regular input the result is
    (b*(d+1) - 1)-regular; for triangle-free d-regular input each
    neighbourhood spans exactly (b-1)*(3*b*d + b - 2)/2 edges (with b = 1
    the blow-up is the graph itself).
    """
    if b < 1:
        raise DomainError("blow-up factor b must be >= 1")
    edges = []
    for v in range(g.n):
        for i, j in itertools.combinations(range(b), 2):
            edges.append((v * b + i, v * b + j))
    for u, v in g.edges:
        for i in range(b):
            for j in range(b):
                a, c = u * b + i, v * b + j
                edges.append((min(a, c), max(a, c)))
    return Graph(g.n * b, sorted(edges))


def bad_vertex_deletion(
    g: Graph, f: float | Fraction, eps: float | Fraction
) -> tuple[Graph, frozenset[int]]:
    """Delete vertices lying in more than eps**-2 * max_degree**2 / f triangles.

    Returns (H, B) where B is the deleted set and H the induced subgraph on
    the rest (relabelled; the kept vertices are sorted(V - B)).  Whenever g
    has at most max_degree**2 * n / f triangles, |B| < 3 * eps**2 * n, and
    every neighbourhood of H spans at most max_degree**2 / (eps**2 * f)
    edges.
    """
    if g.max_degree < 1:
        raise DomainError("graph must have at least one edge")
    if not (f > 0):
        raise DomainError("f must be positive")
    if not (eps > 0):
        raise DomainError("eps must be positive")
    aud = audit(g)
    delta = aud.max_degree
    threshold = delta * delta / (f * eps * eps)
    bad = frozenset(v for v in range(g.n) if aud.nbhd_edges[v] > threshold)
    kept = [v for v in range(g.n) if v not in bad]
    h, _ = induced_subgraph(g, kept)
    return h, bad


# -- named reference graphs --------------------------------------------------


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise DomainError("cycle needs n >= 3")
    return Graph(n, [(i, i + 1) for i in range(n - 1)] + [(0, n - 1)])


def path_graph(n: int) -> Graph:
    if n < 1:
        raise DomainError("path needs n >= 1")
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def complete_graph(n: int) -> Graph:
    if n < 1:
        raise DomainError("complete graph needs n >= 1")
    return Graph(n, list(itertools.combinations(range(n), 2)))


def star_graph(leaves: int) -> Graph:
    if leaves < 0:
        raise DomainError("star needs >= 0 leaves")
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def petersen_graph() -> Graph:
    edges = []
    for i in range(5):
        edges.append((i, (i + 1) % 5))
        edges.append((i, i + 5))
        edges.append((5 + i, 5 + (i + 2) % 5))
    return Graph(10, sorted(tuple(sorted(e)) for e in edges))


def kneser_graph(n: int, k: int) -> Graph:
    """Vertices are the k-subsets of an n-set, adjacent when disjoint."""
    if not (1 <= k <= n):
        raise DomainError("kneser needs 1 <= k <= n")
    subsets = [frozenset(c) for c in itertools.combinations(range(n), k)]
    edges = [
        (i, j)
        for i, j in itertools.combinations(range(len(subsets)), 2)
        if not (subsets[i] & subsets[j])
    ]
    return Graph(len(subsets), edges)


def erdos_renyi(n: int, p: float, seed: int) -> Graph:
    if not (0.0 <= p <= 1.0):
        raise DomainError("edge probability must lie in [0, 1]")
    if n < 0:
        raise DomainError("n must be nonnegative")
    rng = random.Random(seed)
    edges = [e for e in itertools.combinations(range(n), 2) if rng.random() < p]
    return Graph(n, edges)


def named_graph(kind: str, **params) -> Graph:
    """Dispatch on construction kind; see the CLI `gen` subcommand."""
    kind = kind.replace("_", "-")
    try:
        if kind == "cycle":
            return cycle_graph(params["n"])
        if kind == "path":
            return path_graph(params["n"])
        if kind == "complete":
            return complete_graph(params["n"])
        if kind == "star":
            return star_graph(params["n"])
        if kind == "petersen":
            return petersen_graph()
        if kind == "kneser":
            return kneser_graph(params["n"], params["k"])
        if kind == "erdos-renyi":
            return erdos_renyi(params["n"], params["p"], params.get("seed", 0))
        if kind == "random-regular":
            return random_regular(params["n"], params["d"], params.get("seed", 0))
        if kind == "triangle-free-regular":
            return triangle_free_regular(params["n"], params["d"], params.get("seed", 0))
    except KeyError as exc:
        raise DomainError(f"missing parameter {exc.args[0]!r} for kind {kind!r}") from None
    raise DomainError(f"unknown graph kind {kind!r}")
