"""Closed-form and root-finding machinery for occupancy and colouring bounds.

Notation used throughout: c = 1 + lam, lnc = log(1 + lam), Lambda = Delta*lnc,
and y = z*lnc.  The central equation, for a graph of maximum degree Delta
whose every neighbourhood spans at most Delta**2/f edges, is

    (1+lam)**(-z) = (z/Delta) * (1+lam)**(-2*Delta**2/(f*z))

whose unique positive root z_star yields the occupancy lower bound
(lam/(1+lam)) * (1+lam)**(-z_star).  In the y variable the equation reads
y*exp(y) = Lambda*exp(2*Lambda**2/(f*y)), which sandwiches y_star between
W(Lambda) and W(Lambda*exp(2*Lambda**2/(f*W(Lambda)))) by monotonicity of the
Lambert W function.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .errors import DomainError

__all__ = [
    "lambert_w",
    "ZSolution",
    "solve_z",
    "occupancy_lower_bound",
    "asymptotic_occupancy",
    "admissibility_diagnostics",
    "AlphaBeta",
    "alpha_beta",
    "certificate_rate",
    "min_certificate_rate",
    "ChifUpper",
    "chif_upper",
    "TheoremNumbers",
    "theorem_numbers",
    "BasicBounds",
    "basic_bounds",
    "BoundReport",
    "bound_report",
]

_NEG_INV_E = -math.exp(-1.0)

# Heuristic cutoff below which the asymptotic-in-f guarantees are flagged as
# outside their regime; the formulas are still emitted.
ASYMPTOTIC_REGIME_F = 100.0


def lambert_w(x: float) -> float:
    """Principal branch of the Lambert W function on [-1/e, inf).

    Solves w*exp(w) = x by Halley iteration, seeded with the branch-point
    series near -1/e, a Taylor seed near 0, and log(x) - log(log(x)) for
    large x.  Accuracy target is 1e-14 relative; the round-trip residual
    |W(x)*exp(W(x)) - x| stays below 1e-12 * max(1, |x|) across the domain.
    """
    x = float(x)
    if math.isnan(x):
        raise DomainError("lambert_w: x is NaN")
    if x < _NEG_INV_E:
        raise DomainError(f"lambert_w: x={x!r} below the branch point -1/e")
    if x == _NEG_INV_E:
        return -1.0
    if x == 0.0:
        return 0.0
    if math.isinf(x):
        return math.inf
    if x < -0.2875:
        # Branch-point series in p = sqrt(2*(e*x + 1)).
        p = math.sqrt(2.0 * (math.e * x + 1.0))
        w = -1.0 + p * (1.0 + p * (-1.0 / 3.0 + p * (11.0 / 72.0)))
        if p < 1e-4:
            # Halley is singular at w = -1; the series is already well past
            # double precision here.
            return w
    elif -0.2875 <= x < 0.3:
        w = x * (1.0 - x)
    elif x < math.e:
        w = math.log1p(x)
    else:
        l1 = math.log(x)
        l2 = math.log(l1)
        w = l1 - l2 + l2 / l1
    for _ in range(80):
        ew = math.exp(w)
        f = w * ew - x
        wp1 = w + 1.0
        denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1)
        dw = f / denom
        w -= dw
        if abs(dw) <= 1e-14 * (0.1 + abs(w)):
            break
    return w


def _w_from_ln(ln_x: float) -> float:
    """W(exp(ln_x)) for large ln_x, solving w + log(w) = ln_x without overflow."""
    if ln_x <= 1.0:
        return lambert_w(math.exp(ln_x))
    w = ln_x - math.log(ln_x)
    for _ in range(80):
        f = w + math.log(w) - ln_x
        dw = f * w / (w + 1.0)
        w -= dw
        if abs(dw) <= 1e-15 * (1.0 + abs(w)):
            break
    return w


def _validate_inputs(delta, f, lam) -> tuple[int, float, float]:
    if delta < 1 or int(delta) != delta:
        raise DomainError(f"max degree must be an integer >= 1, got {delta!r}")
    delta = int(delta)
    f = float(f)
    if not (1.0 <= f <= delta * delta + 1.0):
        raise DomainError(f"f={f!r} outside [1, delta^2 + 1] for delta={delta}")
    lam = float(lam)
    if not (lam > 0.0) or math.isinf(lam):
        raise DomainError("fugacity must be positive and finite")
    return delta, f, lam


@dataclass(frozen=True)
class ZSolution:
    """Root of the crossing equation together with its Lambert sandwich.

    The sandwich endpoints live on the y = z*log(1+lam) scale and satisfy
    sandwich_lo <= z_star*log(1+lam) <= sandwich_hi.  ``residual`` is the
    absolute value of the defining equation in log form at z_star.
    """

    z_star: float
    y_star: float
    sandwich_lo: float
    sandwich_hi: float
    residual: float


def solve_z(delta: int, f: float, lam: float) -> ZSolution:
    """Unique z > 0 with (1+lam)**(-z) = (z/delta)*(1+lam)**(-2*delta^2/(f*z)).

    Bisection on the strictly increasing H(y) = y + log(y) - log(Lambda)
    - 2*Lambda**2/(f*y), bracketed by the Lambert sandwich; at the lower
    endpoint H = -2*Lambda**2/(f*W(Lambda)) <= 0 and at the upper endpoint
    H >= 0, so the bracket needs no search.
    """
    delta, f, lam = _validate_inputs(delta, f, lam)
    lnc = math.log1p(lam)
    lam_big = delta * lnc
    ln_lam_big = math.log(lam_big)
    w_lo = lambert_w(lam_big)
    t = 2.0 * lam_big * lam_big / (f * w_lo)
    if t + ln_lam_big < 700.0:
        w_hi = lambert_w(lam_big * math.exp(t))
    else:
        w_hi = _w_from_ln(t + ln_lam_big)

    def h(y: float) -> float:
        return y + math.log(y) - ln_lam_big - 2.0 * lam_big * lam_big / (f * y)

    lo, hi = w_lo, max(w_hi, w_lo)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if h(mid) < 0.0:
            lo = mid
        else:
            hi = mid
    y = min((lo, hi, 0.5 * (lo + hi)), key=lambda v: abs(h(v)))
    return ZSolution(
        z_star=y / lnc,
        y_star=y,
        sandwich_lo=w_lo,
        sandwich_hi=w_hi,
        residual=abs(h(y)),
    )


def occupancy_lower_bound(delta: int, f: float, lam: float) -> float:
    """(lam/(1+lam)) * (1+lam)**(-z_star): hard-core occupancy fraction floor.

    Valid for any graph of maximum degree delta whose every neighbourhood
    spans at most delta**2/f edges.  The two equivalent evaluations at the
    crossing point are compared and must agree to 1e-9 relative.
    """
    delta, f, lam = _validate_inputs(delta, f, lam)
    sol = solve_z(delta, f, lam)
    rate = lam / (1.0 + lam)
    lnc = math.log1p(lam)
    v1 = rate * math.exp(-sol.y_star)
    v2 = rate * (sol.z_star / delta) * math.exp(
        -(2.0 * delta * delta / (f * sol.z_star)) * lnc
    )
    if not math.isclose(v1, v2, rel_tol=1e-9):
        raise ArithmeticError(
            f"crossing-point evaluations disagree: {v1!r} vs {v2!r}"
        )
    return v1


def asymptotic_occupancy(delta: int, lam: float) -> float:
    """(lam/(1+lam)) * W(Delta*log(1+lam)) / (Delta*log(1+lam)).

    The asymptotic form of the occupancy floor; meaningful when
    Delta*log(1+lam) is large and 2*Lambda**2/(f*W(Lambda)) is small, see
    :func:`admissibility_diagnostics`.
    """
    if delta < 1 or int(delta) != delta:
        raise DomainError(f"max degree must be an integer >= 1, got {delta!r}")
    lam = float(lam)
    if not (lam > 0.0) or math.isinf(lam):
        raise DomainError("fugacity must be positive and finite")
    lam_big = delta * math.log1p(lam)
    return (lam / (1.0 + lam)) * lambert_w(lam_big) / lam_big


def admissibility_diagnostics(delta: int, f: float, lam: float) -> tuple[float, float]:
    """(Lambda, 2*Lambda**2/(f*W(Lambda))): how asymptotic the inputs are.

    The occupancy formula is tight when the first is large and the second is
    small; both are reported so callers can see how far from that regime
    their parameters sit.
    """
    delta, f, lam = _validate_inputs(delta, f, lam)
    lam_big = delta * math.log1p(lam)
    return lam_big, 2.0 * lam_big * lam_big / (f * lambert_w(lam_big))


@dataclass(frozen=True)
class AlphaBeta:
    alpha: float
    beta: float
    z_star: float


def alpha_beta(delta: int, f: float, lam: float) -> AlphaBeta:
    """Certificate weights making the convex rate function bottom out at 1.

    alpha/beta = (delta/z_star) * (1/log(1+lam) + 2*delta**2/(f*z_star)) puts
    the minimum of the rate function at z_star, and alpha + beta*delta =
    ((1+lam)/lam) * (1+lam)**z_star normalises that minimum to exactly 1.
    """
    delta, f, lam = _validate_inputs(delta, f, lam)
    sol = solve_z(delta, f, lam)
    lnc = math.log1p(lam)
    ratio = (delta / sol.z_star) * (1.0 / lnc + 2.0 * delta * delta / (f * sol.z_star))
    total = ((1.0 + lam) / lam) * math.exp(sol.y_star)
    beta = total / (ratio + delta)
    alpha = ratio * beta
    return AlphaBeta(alpha=alpha, beta=beta, z_star=sol.z_star)


def certificate_rate(
    alpha: float, beta: float, delta: int, f: float, lam: float, z: float
) -> float:
    """(lam/(1+lam)) * (alpha*(1+lam)**(-z) + beta*z*(1+lam)**(-2*delta^2/(f*z)))."""
    if z < 0:
        raise DomainError("z must be nonnegative")
    lnc = math.log1p(lam)
    rate = lam / (1.0 + lam)
    if z == 0.0:
        return rate * alpha
    return rate * (
        alpha * math.exp(-z * lnc)
        + beta * z * math.exp(-(2.0 * delta * delta / (f * z)) * lnc)
    )


def min_certificate_rate(
    alpha: float, beta: float, delta: int, f: float, lam: float
) -> tuple[float, float]:
    """Minimum over z >= 0 of :func:`certificate_rate`, by ternary search.

    The rate function is strictly convex in z (sum of a decaying exponential
    and z*exp(-const/z)), so ternary search over a doubled-out bracket finds
    the global minimum.
    """
    if alpha <= 0 or beta <= 0:
        raise DomainError("alpha and beta must be positive")
    delta_i, f, lam = _validate_inputs(delta, f, lam)

    def phi(z: float) -> float:
        return certificate_rate(alpha, beta, delta_i, f, lam, z)

    hi = max(float(delta_i), 1.0)
    for _ in range(200):
        if phi(2.0 * hi) >= phi(hi):
            break
        hi *= 2.0
    lo = 0.0
    hi *= 2.0
    for _ in range(300):
        m1 = lo + (hi - lo) / 3.0
        m2 = hi - (hi - lo) / 3.0
        if m1 >= m2:
            break
        if phi(m1) <= phi(m2):
            hi = m2
        else:
            lo = m1
    z = 0.5 * (lo + hi)
    return z, phi(z)


@dataclass(frozen=True)
class ChifUpper:
    """Finite fractional-chromatic upper bound at the canonical fugacity.

    ``bound`` = ((1+lam)/lam) * (1+lam)**z_star at the lam solving
    Delta*log(1+lam) = f**(1/(2+eps/2)); ``asymptotic_target`` is
    (2+eps)*Delta/log(f), the limiting form the bound approaches from above
    as f grows.
    """

    lambda_choice: float
    bound: float
    asymptotic_target: float
    z_star: float


def chif_upper(delta: int, f: float, eps: float) -> ChifUpper:
    if delta < 1 or int(delta) != delta:
        raise DomainError(f"max degree must be an integer >= 1, got {delta!r}")
    delta = int(delta)
    f = float(f)
    if not (2.0 <= f <= delta * delta + 1.0):
        raise DomainError(f"f={f!r} outside [2, delta^2 + 1] for delta={delta}")
    if not (eps > 0.0):
        raise DomainError("eps must be positive")
    t = f ** (1.0 / (2.0 + eps / 2.0)) / delta
    if t >= 700.0:
        raise DomainError(
            "no representable fugacity: f**(1/(2+eps/2))/delta overflows exp"
        )
    lam = math.expm1(t)
    sol = solve_z(delta, f, lam)
    bound = ((1.0 + lam) / lam) * math.exp(sol.y_star)
    return ChifUpper(
        lambda_choice=lam,
        bound=bound,
        asymptotic_target=(2.0 + eps) * delta / math.log(f),
        z_star=sol.z_star,
    )


@dataclass(frozen=True)
class TheoremNumbers:
    """Headline asymptotic quantities for given (n, Delta, f, eps).

    independence_lb = (1/2 - eps) * (n/Delta) * log(f) and
    chif_ub = (2 + eps) * Delta / log(f).  Both are asymptotic guarantees
    valid only for f beyond an unquantified threshold;
    ``below_asymptotic_regime`` flags small f rather than refusing.
    """

    independence_lb: float
    chif_ub: float
    below_asymptotic_regime: bool


def theorem_numbers(n: int, delta: int, f: float, eps: float) -> TheoremNumbers:
    if delta < 1 or int(delta) != delta:
        raise DomainError(f"max degree must be an integer >= 1, got {delta!r}")
    if n < 0:
        raise DomainError("n must be nonnegative")
    f = float(f)
    if f <= 1.0:
        raise DomainError("f must exceed 1")
    if not (eps > 0.0):
        raise DomainError("eps must be positive")
    logf = math.log(f)
    return TheoremNumbers(
        independence_lb=(0.5 - eps) * (n / delta) * logf,
        chif_ub=(2.0 + eps) * delta / logf,
        below_asymptotic_regime=f < ASYMPTOTIC_REGIME_F,
    )


@dataclass(frozen=True)
class BasicBounds:
    """Independence and chromatic bounds under per-vertex triangle fractions.

    For graphs on n vertices where each vertex v lies in at most
    deg(v)**2/f triangles:

        independence_lb = f / (1 + sqrt(1 + 2*f**2/(n*log(min(f, n)))))
        chromatic_ub    = 2 * (1 + sqrt(...)) * n / f

    The leading constant 2 in chromatic_ub instantiates an asymptotic
    (2+o(1)) factor and is flagged as such; the two values satisfy
    independence_lb * chromatic_ub = 2*n identically.
    """

    independence_lb: float
    chromatic_ub: float
    chromatic_constant_is_asymptotic: bool = True


def basic_bounds(n: int, f: float) -> BasicBounds:
    f = float(f)
    if n < 2:
        raise DomainError("n must be at least 2")
    if not (2.0 <= f <= (n - 1) ** 2 + 1.0):
        raise DomainError(f"f={f!r} outside [2, (n-1)^2 + 1] for n={n}")
    root = math.sqrt(1.0 + 2.0 * f * f / (n * math.log(min(f, float(n)))))
    return BasicBounds(
        independence_lb=f / (1.0 + root),
        chromatic_ub=2.0 * (1.0 + root) * n / f,
    )


@dataclass(frozen=True)
class BoundReport:
    """Everything the bound machinery can say about one (delta, f, lam).

    ``sandwich`` brackets z_star*log(1+lam); ``admissibility`` is
    (Lambda, 2*Lambda**2/(f*W(Lambda))).  The eps-dependent fields are None
    unless eps (and n, for the theorem numbers) was supplied.
    """

    delta: int
    f: float
    lam: float
    z_star: float
    sandwich: tuple[float, float]
    residual: float
    occ_lower: float
    asymptotic_occ: float
    alpha: float
    beta: float
    admissibility: tuple[float, float]
    eps: float | None = None
    chif_upper: ChifUpper | None = None
    theorem: TheoremNumbers | None = None

    def to_json_dict(self) -> dict:
        out = {
            "delta": self.delta,
            "f": self.f,
            "lambda": self.lam,
            "z_star": self.z_star,
            "sandwich": list(self.sandwich),
            "residual": self.residual,
            "occ_lower": self.occ_lower,
            "asymptotic_occ": self.asymptotic_occ,
            "alpha": self.alpha,
            "beta": self.beta,
            "admissibility": list(self.admissibility),
        }
        if self.chif_upper is not None:
            out["chif_upper"] = {
                "lambda_choice": self.chif_upper.lambda_choice,
                "bound": self.chif_upper.bound,
                "asymptotic_target": self.chif_upper.asymptotic_target,
            }
        if self.theorem is not None:
            out["theorem_numbers"] = {
                "independence_lb": self.theorem.independence_lb,
                "chif_ub": self.theorem.chif_ub,
                "below_asymptotic_regime": self.theorem.below_asymptotic_regime,
            }
        return out


def bound_report(
    delta: int,
    f: float,
    lam: float,
    eps: float | None = None,
    n: int | None = None,
) -> BoundReport:
    """Bundle the occupancy floor, certificate weights, and diagnostics."""
    delta, f, lam = _validate_inputs(delta, f, lam)
    sol = solve_z(delta, f, lam)
    ab = alpha_beta(delta, f, lam)
    report = BoundReport(
        delta=delta,
        f=f,
        lam=lam,
        z_star=sol.z_star,
        sandwich=(sol.sandwich_lo, sol.sandwich_hi),
        residual=sol.residual,
        occ_lower=occupancy_lower_bound(delta, f, lam),
        asymptotic_occ=asymptotic_occupancy(delta, lam),
        alpha=ab.alpha,
        beta=ab.beta,
        admissibility=admissibility_diagnostics(delta, f, lam),
    )
    if eps is not None:
        report = replace(
            report,
            eps=eps,
            chif_upper=chif_upper(delta, f, eps) if f >= 2.0 else None,
            theorem=theorem_numbers(n, delta, f, eps) if n is not None else None,
        )
    return report
