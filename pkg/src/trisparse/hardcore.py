"""Exact hard-core model computations on small graphs.

The hard-core model at fugacity lam > 0 puts probability lam**|I| / Z on each
independent set I, where Z = sum_I lam**|I| is the independence polynomial
evaluated at lam.  Everything here reduces to evaluations of independence
polynomials of induced subgraphs, computed once per graph by the memoized
branching recursion

    Z_G(x) = Z_{G - v}(x) + x * Z_{G - N[v]}(x)

with v a maximum-degree vertex of the current induced subgraph and isolated
vertices factored out as powers of (1 + x).  Coefficients are exact integers,
so evaluations at a Fraction fugacity are exact rationals.

Derived quantities, all exact in rational mode:

* marginal:   Pr(v in I) = lam * Z_{G - N[v]} / Z_G
* nbr_occ:    E|N(v) & I| = sum of marginals over N(v)
* uncovered:  E|V(F_v)|, where a neighbour u of v is externally uncovered by
  I when u is not adjacent to I \\ N(v); equivalently I avoids N(u) \\ N(v),
  an event of probability Z_{G - (N(u) \\ N(v))} / Z_G.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Union

from .bounds import min_certificate_rate
from .errors import CapExceededError, DomainError
from .graph import Graph, audit

__all__ = [
    "DEFAULT_ENUMERATION_CAP",
    "HardCoreExact",
    "GenHCMReport",
    "LocalBoundReport",
    "independence_polynomial",
    "partition_function",
    "exact_marginals",
    "occupancy_fraction",
    "uncovered_expectation",
    "verify_genhcm",
    "verify_hcmbound_local",
]

DEFAULT_ENUMERATION_CAP = 30

Number = Union[int, float, Fraction]


def _check_fugacity(lam: Number) -> Number:
    if isinstance(lam, float) and (math.isnan(lam) or math.isinf(lam)):
        raise DomainError("fugacity must be finite")
    if lam <= 0:
        raise DomainError("fugacity must be positive")
    if isinstance(lam, int):
        return Fraction(lam)
    return lam


def _check_cap(g: Graph, cap: int) -> None:
    if g.n > cap:
        raise CapExceededError(
            f"graph has {g.n} > {cap} vertices; exact enumeration refused. "
            "Use the Glauber sampler (trisparse.sampler) for graphs this large."
        )


class _PolyEngine:
    """Memoized independence polynomials of induced subgraphs of one graph.

    Subgraphs are identified by a vertex bitmask; polynomials are integer
    coefficient tuples indexed by independent-set size.
    """

    def __init__(self, g: Graph):
        self.n = g.n
        self.masks = g.adj_masks
        self.closed = tuple(m | (1 << v) for v, m in enumerate(g.adj_masks))
        self.full = (1 << g.n) - 1
        self._memo: dict[int, tuple[int, ...]] = {0: (1,)}

    def poly(self, mask: int) -> tuple[int, ...]:
        memo = self._memo
        cached = memo.get(mask)
        if cached is not None:
            return cached
        masks = self.masks
        # Factor out vertices isolated within the subgraph: each contributes
        # a (1 + x) factor.
        isolated = 0
        rest = mask
        mm = mask
        while mm:
            b = mm & -mm
            mm ^= b
            if masks[b.bit_length() - 1] & mask == 0:
                isolated += 1
                rest ^= b
        if isolated:
            base = self.poly(rest)
            result = base
            for _ in range(isolated):
                # multiply by (1 + x)
                shifted = (0,) + result
                result = tuple(
                    (result[i] if i < len(result) else 0)
                    + (shifted[i] if i < len(shifted) else 0)
                    for i in range(len(result) + 1)
                )
            memo[mask] = result
            return result
        # Branch on a maximum-degree vertex of the subgraph.
        best_v = -1
        best_d = -1
        mm = mask
        while mm:
            b = mm & -mm
            mm ^= b
            v = b.bit_length() - 1
            d = (masks[v] & mask).bit_count()
            if d > best_d:
                best_d = d
                best_v = v
        exclude = self.poly(mask & ~(1 << best_v))
        include = self.poly(mask & ~self.closed[best_v])
        # exclude + x * include
        length = max(len(exclude), len(include) + 1)
        result = tuple(
            (exclude[i] if i < len(exclude) else 0)
            + (include[i - 1] if 1 <= i <= len(include) else 0)
            for i in range(length)
        )
        memo[mask] = result
        return result


@lru_cache(maxsize=64)
def _engine(g: Graph) -> _PolyEngine:
    return _PolyEngine(g)


def _eval_poly(coeffs: tuple[int, ...], lam: Number) -> Number:
    acc: Number = 0
    for c in reversed(coeffs):
        acc = acc * lam + c
    return acc


def independence_polynomial(g: Graph, cap: int = DEFAULT_ENUMERATION_CAP) -> tuple[int, ...]:
    """Coefficients of Z_G(x) by independent-set size, exact integers."""
    _check_cap(g, cap)
    eng = _engine(g)
    return eng.poly(eng.full)


def partition_function(g: Graph, lam: Number, cap: int = DEFAULT_ENUMERATION_CAP) -> Number:
    """Z_G(lam) = sum over independent sets I of lam**|I|, empty set included."""
    lam = _check_fugacity(lam)
    return _eval_poly(independence_polynomial(g, cap), lam)


@dataclass(frozen=True)
class HardCoreExact:
    """Partition function with per-vertex hard-core expectations.

    Values are Fractions when the fugacity is rational, floats otherwise.
    ``occupancy`` is E|I|; divide by the vertex count for the occupancy
    fraction.
    """

    lam: Number
    z: Number
    occupancy: Number
    marginals: tuple[Number, ...]
    nbr_occ: tuple[Number, ...]
    uncovered: tuple[Number, ...]

    @property
    def n(self) -> int:
        return len(self.marginals)

    @property
    def occupancy_fraction(self) -> Number:
        if self.n == 0:
            return Fraction(0)
        return self.occupancy / self.n

    def to_json_dict(self) -> dict:
        return {
            "lambda": _num_json(self.lam),
            "Z": _num_json(self.z),
            "occupancy": _num_json(self.occupancy),
            "marginals": [_num_json(x) for x in self.marginals],
            "nbr_occ": [_num_json(x) for x in self.nbr_occ],
            "uncovered": [_num_json(x) for x in self.uncovered],
        }


def _num_json(x: Number):
    if isinstance(x, Fraction):
        return str(x)
    return x


def _marginal_data(g: Graph, lam: Number, cap: int) -> tuple[Number, list[Number], list[Number]]:
    """(Z, marginals, nbr_occ) in one pass over the memoized engine."""
    _check_cap(g, cap)
    eng = _engine(g)
    z = _eval_poly(eng.poly(eng.full), lam)
    marginals = [
        lam * _eval_poly(eng.poly(eng.full & ~eng.closed[v]), lam) / z
        for v in range(g.n)
    ]
    nbr = [sum((marginals[u] for u in g.neighbors(v)), start=0 * z) for v in range(g.n)]
    return z, marginals, nbr


def exact_marginals(g: Graph, lam: Number, cap: int = DEFAULT_ENUMERATION_CAP) -> HardCoreExact:
    """All per-vertex hard-core expectations of ``g`` at fugacity ``lam``."""
    lam = _check_fugacity(lam)
    z, marginals, nbr = _marginal_data(g, lam, cap)
    eng = _engine(g)
    uncovered = []
    for v in range(g.n):
        mv = eng.masks[v]
        acc: Number = 0
        for u in g.neighbors(v):
            avoid = eng.masks[u] & ~mv
            acc = acc + _eval_poly(eng.poly(eng.full & ~avoid), lam) / z
        uncovered.append(acc)
    occupancy = sum(marginals, start=0 * z)
    return HardCoreExact(
        lam=lam,
        z=z,
        occupancy=occupancy,
        marginals=tuple(marginals),
        nbr_occ=tuple(nbr),
        uncovered=tuple(uncovered),
    )


def occupancy_fraction(g: Graph, lam: Number, cap: int = DEFAULT_ENUMERATION_CAP) -> Number:
    """E|I| / n via the independence polynomial: E|I| = lam Z'(lam) / Z(lam)."""
    lam = _check_fugacity(lam)
    if g.n == 0:
        return Fraction(0)
    coeffs = independence_polynomial(g, cap)
    z = _eval_poly(coeffs, lam)
    dz = _eval_poly(tuple(k * c for k, c in enumerate(coeffs))[1:], lam)
    return lam * dz / z / g.n


def uncovered_expectation(
    g: Graph, lam: Number, v: int, cap: int = DEFAULT_ENUMERATION_CAP
) -> Number:
    """E|V(F_v)|: expected number of neighbours of v externally uncovered by I."""
    lam = _check_fugacity(lam)
    if not (0 <= v < g.n):
        raise DomainError(f"vertex {v} out of range for n={g.n}")
    _check_cap(g, cap)
    eng = _engine(g)
    z = _eval_poly(eng.poly(eng.full), lam)
    mv = eng.masks[v]
    acc: Number = 0
    for u in g.neighbors(v):
        avoid = eng.masks[u] & ~mv
        acc = acc + _eval_poly(eng.poly(eng.full & ~avoid), lam) / z
    return acc


@dataclass(frozen=True)
class GenHCMReport:
    """Margins of the two spatial-Markov occupancy inequalities.

    Per vertex: Pr(v in I) - (lam/(1+lam)) (1+lam)**(-E|V(F_v)|).
    Globally:   E|I| - (lam/(1+lam)) n (1+lam)**(-2m/n).
    """

    lam: Number
    uncovered: tuple[Number, ...]
    vertex_margins: tuple[float, ...]
    occupancy_margin: float
    ok: bool
    witness: int | None


def verify_genhcm(
    g: Graph,
    lam: Number,
    tol: float = 1e-12,
    cap: int = DEFAULT_ENUMERATION_CAP,
) -> GenHCMReport:
    """Check both occupancy lower bounds vertex by vertex; report margins.

    The right-hand sides involve irrational exponentials, so margins are
    reported as floats; exact left-hand sides are converted at the end.
    """
    lam = _check_fugacity(lam)
    hx = exact_marginals(g, lam, cap)
    lam_f = float(lam)
    rate = lam_f / (1.0 + lam_f)
    lnc = math.log1p(lam_f)
    margins = []
    worst = None
    for v in range(g.n):
        rhs = rate * math.exp(-float(hx.uncovered[v]) * lnc)
        margin = float(hx.marginals[v]) - rhs
        margins.append(margin)
        if worst is None or margin < margins[worst]:
            worst = v
    if g.n > 0:
        occ_rhs = rate * g.n * math.exp(-(2.0 * g.m / g.n) * lnc)
        occ_margin = float(hx.occupancy) - occ_rhs
    else:
        occ_margin = 0.0
    ok = occ_margin >= -tol and all(m >= -tol for m in margins)
    witness = None
    if not ok:
        witness = worst if (worst is not None and margins[worst] < -tol) else None
    return GenHCMReport(
        lam=lam,
        uncovered=hx.uncovered,
        vertex_margins=tuple(margins),
        occupancy_margin=occ_margin,
        ok=ok,
        witness=witness,
    )


@dataclass(frozen=True)
class LocalBoundReport:
    """Per-vertex margins of the weighted local occupancy inequality.

    Compares alpha Pr(v in I) + beta E|N(v) & I| against the convex
    lower envelope (lam/(1+lam)) min_{z>=0} (alpha (1+lam)**(-z)
    + beta z (1+lam)**(-2 Delta^2/(f z))) at the audited (Delta, f).
    """

    lam: Number
    alpha: float
    beta: float
    delta: int
    f: float
    rhs: float
    z_min: float
    vertex_margins: tuple[float, ...]
    min_margin: float
    ok: bool
    witness: int | None


def verify_hcmbound_local(
    g: Graph,
    lam: Number,
    alpha: Number,
    beta: Number,
    tol: float = 1e-9,
    cap: int = DEFAULT_ENUMERATION_CAP,
) -> LocalBoundReport:
    lam = _check_fugacity(lam)
    if alpha <= 0 or beta <= 0:
        raise DomainError("alpha and beta must be positive")
    aud = audit(g)
    if aud.max_degree < 1:
        raise DomainError("graph must have at least one edge (max degree >= 1)")
    z_min, rhs = min_certificate_rate(
        float(alpha), float(beta), aud.max_degree, float(aud.implied_f), float(lam)
    )
    z, marginals, nbr = _marginal_data(g, lam, cap)
    margins = []
    worst = None
    for v in range(g.n):
        lhs = float(alpha) * float(marginals[v]) + float(beta) * float(nbr[v])
        margin = lhs - rhs
        margins.append(margin)
        if worst is None or margin < margins[worst]:
            worst = v
    min_margin = min(margins) if margins else 0.0
    ok = min_margin >= -tol
    return LocalBoundReport(
        lam=lam,
        alpha=float(alpha),
        beta=float(beta),
        delta=aud.max_degree,
        f=float(aud.implied_f),
        rhs=rhs,
        z_min=z_min,
        vertex_margins=tuple(margins),
        min_margin=min_margin,
        ok=ok,
        witness=None if ok else worst,
    )
