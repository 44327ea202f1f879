"""Exact fractional chromatic number and weighted-occupancy certificates.

The fractional chromatic number is the optimum of the covering LP

    min sum_I w_I   s.t.   sum_{I containing v} w_I >= 1 for all v,  w >= 0

over independent sets I.  Restricting the columns to inclusion-maximal
independent sets is lossless: any weight on a non-maximal set can be moved
to a maximal superset without hurting feasibility or the objective.  The LP
is solved in exact rational arithmetic via its packing dual (max sum_v y_v
with sum_{v in I} y_v <= 1), whose all-slack basis is immediately feasible;
the covering weights are recovered from the dual multipliers and the pair is
verified exactly before returning, so a returned optimum is self-certified.

Certificates: weights (alpha, beta) verify for a graph G at fugacity lam
when alpha*Pr(v in I_H) + beta*E|N_H(v) & I_H| >= 1 for every induced
subgraph H of G and every vertex v of H, with I_H hard-core at lam on H.
A verified pair certifies chi_f(G) <= alpha + beta*max_degree(G).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .errors import CapExceededError, CertificateError, DomainError
from .graph import Graph, induced_subgraph
from .hardcore import DEFAULT_ENUMERATION_CAP, _check_fugacity, _marginal_data
from .simplex import simplex_max

__all__ = [
    "DEFAULT_LP_CAP",
    "DEFAULT_EXHAUSTIVE_CAP",
    "FractionalColoring",
    "ChiFractional",
    "Certificate",
    "maximal_independent_sets",
    "chif_exact",
    "verify_certificate",
    "certified_upper_bound",
]

DEFAULT_LP_CAP = 24
DEFAULT_EXHAUSTIVE_CAP = 15

Number = Union[int, float, Fraction]


def maximal_independent_sets(g: Graph, cap: int = DEFAULT_LP_CAP) -> list[frozenset[int]]:
    """All inclusion-maximal independent sets, via pivoting Bron-Kerbosch.

    Maximal independent sets of g are maximal cliques of its complement;
    the recursion runs on complement adjacency bitmasks.  Output is sorted
    for determinism.
    """
    if g.n > cap:
        raise CapExceededError(
            f"graph has {g.n} > {cap} vertices; maximal-set enumeration refused"
        )
    n = g.n
    if n == 0:
        return [frozenset()]
    full = (1 << n) - 1
    comp = tuple((full & ~(m | (1 << v))) for v, m in enumerate(g.adj_masks))
    out: list[int] = []

    def expand(r: int, p: int, x: int) -> None:
        if p == 0 and x == 0:
            out.append(r)
            return
        px = p | x
        pivot = -1
        best = -1
        mm = px
        while mm:
            b = mm & -mm
            mm ^= b
            u = b.bit_length() - 1
            d = (comp[u] & p).bit_count()
            if d > best:
                best = d
                pivot = u
        cand = p & ~comp[pivot]
        while cand:
            b = cand & -cand
            cand ^= b
            v = b.bit_length() - 1
            expand(r | b, p & comp[v], x & comp[v])
            p &= ~b
            x |= b
    expand(0, full, 0)
    sets = [frozenset(v for v in range(n) if mask >> v & 1) for mask in sorted(out)]
    return sets


@dataclass(frozen=True)
class FractionalColoring:
    """Weighted independent sets covering every vertex with weight >= 1."""

    atoms: tuple[tuple[frozenset[int], Fraction], ...]
    objective: Fraction


@dataclass(frozen=True)
class ChiFractional:
    """Exact LP optimum with a primal colouring and a dual packing witness."""

    value: Fraction
    coloring: FractionalColoring
    vertex_duals: tuple[Fraction, ...]


def chif_exact(g: Graph, cap: int = DEFAULT_LP_CAP) -> ChiFractional:
    """Exact fractional chromatic number with self-verified optimality."""
    if g.n == 0:
        return ChiFractional(
            value=Fraction(0),
            coloring=FractionalColoring(atoms=(), objective=Fraction(0)),
            vertex_duals=(),
        )
    sets = maximal_independent_sets(g, cap)
    one = Fraction(1)
    rows = [[one if v in s else Fraction(0) for v in range(g.n)] for s in sets]
    sol = simplex_max(rows, [one] * len(sets), [one] * g.n)
    assert sol.status == "optimal", "packing LP is bounded by construction"
    weights = sol.duals
    value = sol.objective

    # Exact verification of the primal/dual pair before returning.
    assert sum(weights, start=Fraction(0)) == value
    assert sum(sol.x, start=Fraction(0)) == value
    assert all(w >= 0 for w in weights)
    for v in range(g.n):
        assert sum((w for s, w in zip(sets, weights) if v in s), start=Fraction(0)) >= 1
    for s in sets:
        assert sum((sol.x[v] for v in s), start=Fraction(0)) <= 1
    assert all(y >= 0 for y in sol.x)

    atoms = tuple((s, w) for s, w in zip(sets, weights) if w > 0)
    return ChiFractional(
        value=value,
        coloring=FractionalColoring(atoms=atoms, objective=value),
        vertex_duals=sol.x,
    )


@dataclass(frozen=True)
class Certificate:
    """Outcome of checking the per-subgraph weighted occupancy condition.

    ``worst_margin`` is min over checked (H, v) of
    alpha*Pr(v in I_H) + beta*E|N_H(v) & I_H| - 1; exact when lam, alpha and
    beta are all rational.  ``witness`` locates the minimum (original vertex
    labels) when verification failed, else None.  Only an exhaustive
    certificate supports :func:`certified_upper_bound`.
    """

    alpha: Number
    beta: Number
    lam: Number
    verified: bool
    worst_margin: Number
    witness: tuple[tuple[int, ...], int] | None
    exhaustive: bool
    checked_subgraphs: int


def _subgraph_margins(
    g: Graph, vs: Sequence[int], lam: Number, alpha: Number, beta: Number, cap: int
):
    """Yield (margin, original_vertex) for the induced subgraph on vs."""
    h, labels = induced_subgraph(g, vs)
    _, marginals, nbr = _marginal_data(h, lam, cap)
    for i in range(h.n):
        yield alpha * marginals[i] + beta * nbr[i] - 1, labels[i]


def verify_certificate(
    g: Graph,
    alpha: Number,
    beta: Number,
    lam: Number,
    exhaustive: bool | None = None,
    samples: int = 64,
    seed: int = 0,
    cap: int = DEFAULT_EXHAUSTIVE_CAP,
    tol: float = 1e-9,
) -> Certificate:
    """Check the certificate condition over induced subgraphs of g.

    Exhaustive mode (the default up to ``cap`` vertices) checks every
    nonempty induced subgraph; sampled mode checks the full graph, every
    single-vertex deletion, and ``samples`` seeded random subgraphs, and is
    explicitly marked non-exhaustive in the result.  In exact mode (rational
    lam, alpha, beta) verification requires margins >= 0 exactly; in float
    mode margins >= -tol.
    """
    lam = _check_fugacity(lam)
    if alpha < 0 or beta < 0:
        raise DomainError("alpha and beta must be nonnegative")
    if exhaustive is None:
        exhaustive = g.n <= cap
    if exhaustive and g.n > cap:
        raise CapExceededError(
            f"exhaustive certificate check needs n <= {cap}, got n={g.n}; "
            "use sampled mode"
        )
    exact = all(isinstance(x, (int, Fraction)) for x in (lam, alpha, beta))
    if exact:
        alpha = Fraction(alpha)
        beta = Fraction(beta)

    if exhaustive:
        subsets = (
            [v for v in range(g.n) if mask >> v & 1]
            for mask in range(1, 1 << g.n)
        )
    else:
        rng = random.Random(seed)
        chosen: list[list[int]] = [list(range(g.n))]
        chosen.extend(
            [u for u in range(g.n) if u != v] for v in range(g.n)
        )
        seen = {frozenset(s) for s in chosen}
        for _ in range(samples):
            pick = [v for v in range(g.n) if rng.random() < 0.5]
            key = frozenset(pick)
            if pick and key not in seen:
                seen.add(key)
                chosen.append(pick)
        subsets = iter(chosen)

    worst: Number | None = None
    witness: tuple[tuple[int, ...], int] | None = None
    count = 0
    for vs in subsets:
        if not vs:
            continue
        count += 1
        for margin, v in _subgraph_margins(g, vs, lam, alpha, beta, DEFAULT_ENUMERATION_CAP):
            if worst is None or margin < worst:
                worst = margin
                witness = (tuple(vs), v)
    if worst is None:  # zero-vertex graph: nothing to check
        worst = Fraction(0) if exact else 0.0
        verified = True
        witness = None
    else:
        verified = (worst >= 0) if exact else (float(worst) >= -tol)
    return Certificate(
        alpha=alpha,
        beta=beta,
        lam=lam,
        verified=verified,
        worst_margin=worst,
        witness=None if verified else witness,
        exhaustive=exhaustive,
        checked_subgraphs=count,
    )


def certified_upper_bound(g: Graph, cert: Certificate) -> Number:
    """alpha + beta * max_degree(g), valid when cert verified exhaustively."""
    if not cert.verified:
        raise CertificateError("certificate is not verified")
    if not cert.exhaustive:
        raise CertificateError(
            "only an exhaustively verified certificate yields a sound bound"
        )
    return cert.alpha + cert.beta * g.max_degree
