"""Dense exact-rational primal simplex with Bland's rule.

Solves max c.x subject to A x <= b, x >= 0 with b >= 0, so the all-slack
basis is feasible and no phase-1 is needed.  Bland's smallest-index pivot
rule makes cycling impossible.  All arithmetic is over Fraction; the duals
are read off the slack columns of the final objective row.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

__all__ = ["SimplexSolution", "simplex_max"]


@dataclass(frozen=True)
class SimplexSolution:
    status: str  # "optimal" or "unbounded"
    objective: Fraction
    x: tuple[Fraction, ...]
    duals: tuple[Fraction, ...]


def simplex_max(
    rows: Sequence[Sequence[Fraction]],
    b: Sequence[Fraction],
    c: Sequence[Fraction],
) -> SimplexSolution:
    m = len(rows)
    nv = len(c)
    if any(len(r) != nv for r in rows) or len(b) != m:
        raise ValueError("inconsistent LP dimensions")
    if any(bi < 0 for bi in b):
        raise ValueError("requires b >= 0")

    # Tableau: m rows of nv originals + m slacks + rhs.
    t = [
        [Fraction(x) for x in rows[i]]
        + [Fraction(int(i == j)) for j in range(m)]
        + [Fraction(b[i])]
        for i in range(m)
    ]
    red = [Fraction(x) for x in c] + [Fraction(0)] * (m + 1)  # reduced costs + objective
    basis = [nv + i for i in range(m)]
    ncols = nv + m

    while True:
        enter = next((j for j in range(ncols) if red[j] > 0), None)
        if enter is None:
            break
        leave = None
        best = None
        for i in range(m):
            a = t[i][enter]
            if a > 0:
                ratio = t[i][ncols] / a
                key = (ratio, basis[i])
                if best is None or key < best:
                    best = key
                    leave = i
        if leave is None:
            return SimplexSolution(
                status="unbounded",
                objective=Fraction(0),
                x=tuple(Fraction(0) for _ in range(nv)),
                duals=tuple(Fraction(0) for _ in range(m)),
            )
        piv = t[leave][enter]
        row = t[leave] = [x / piv for x in t[leave]]
        for i in range(m):
            if i != leave and t[i][enter] != 0:
                factor = t[i][enter]
                t[i] = [x - factor * y for x, y in zip(t[i], row)]
        if red[enter] != 0:
            factor = red[enter]
            red = [x - factor * y for x, y in zip(red[:ncols], row[:ncols])] + [
                red[ncols] - factor * row[ncols]
            ]
        basis[leave] = enter

    x = [Fraction(0)] * nv
    for i, bv in enumerate(basis):
        if bv < nv:
            x[bv] = t[i][ncols]
    duals = tuple(-red[nv + i] for i in range(m))
    return SimplexSolution(
        status="optimal",
        objective=-red[ncols],
        x=tuple(x),
        duals=duals,
    )
