"""Single-site Glauber dynamics for the hard-core model.

Each step picks a uniform vertex v and resamples its state from the
conditional law: with probability lam/(1+lam) it attempts to occupy v,
accepted only when no neighbour is occupied; otherwise v is set unoccupied.
The stationary distribution is the hard-core measure, since the only moves
that change the state are I <-> I + {v} with probability ratio lam.

Chains start from the empty set, run independently with per-chain RNG
streams spawned from the configured seed, and are reduced in chain order, so
results are reproducible bit for bit.  The standard error is computed across
chain means (not autocorrelation-corrected within a chain), which is
conservative for a handful of chains or more.
"""

from __future__ import annotations

import math
import statistics
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .graph import Graph

__all__ = ["ChainConfig", "SampleEstimate", "MarginalEstimate", "glauber_run", "estimate_marginal"]


@dataclass(frozen=True)
class ChainConfig:
    """Run parameters for the Glauber sampler; all counts must be positive."""

    lam: float
    burn_in: int = 1000
    samples: int = 10_000
    thinning: int = 1
    seed: int = 0
    chains: int = 8

    def __post_init__(self):
        lam = float(self.lam)
        if not (lam > 0.0) or math.isinf(lam) or math.isnan(lam):
            raise DomainError("fugacity must be positive and finite")
        for name in ("burn_in", "samples", "thinning", "chains"):
            if getattr(self, name) < 1:
                raise DomainError(f"{name} must be a positive integer")
        if not isinstance(self.seed, int):
            raise DomainError("seed must be an integer")


@dataclass(frozen=True)
class SampleEstimate:
    """Occupancy-fraction estimate aggregated over independent chains."""

    mean_occupancy_fraction: float
    std_error: float
    per_chain_means: tuple[float, ...]
    occupy_accept_rates: tuple[float, ...]

    def to_json_dict(self) -> dict:
        return {
            "mean_occupancy_fraction": self.mean_occupancy_fraction,
            "std_error": self.std_error,
            "per_chain_means": list(self.per_chain_means),
            "occupy_accept_rates": list(self.occupy_accept_rates),
        }


@dataclass(frozen=True)
class MarginalEstimate:
    """Estimate of Pr(v in I) with its across-chain standard error."""

    estimate: float
    std_error: float
    per_chain_means: tuple[float, ...]

    def to_json_dict(self) -> dict:
        return {
            "estimate": self.estimate,
            "std_error": self.std_error,
            "per_chain_means": list(self.per_chain_means),
        }


def _chain_streams(cfg: ChainConfig):
    root = np.random.SeedSequence(cfg.seed)
    return [np.random.Generator(np.random.PCG64(s)) for s in root.spawn(cfg.chains)]


def _run_chain(g: Graph, cfg: ChainConfig, rng, track: int | None):
    """One chain; returns (mean statistic, occupy acceptance rate).

    The tracked statistic is |I|/n per sample, or the indicator of
    ``track`` being occupied when a vertex is given.
    """
    n = g.n
    if n == 0:
        return 0.0, 0.0
    masks = g.adj_masks
    bits = [1 << v for v in range(n)]
    steps = cfg.burn_in + cfg.samples * cfg.thinning
    p_occ = float(cfg.lam) / (1.0 + float(cfg.lam))
    verts = rng.integers(0, n, size=steps).tolist()
    coins = (rng.random(size=steps) < p_occ).tolist()
    state = 0
    attempts = 0
    accepts = 0
    total = 0
    burn = cfg.burn_in
    thin = cfg.thinning
    next_sample = burn + thin
    track_bit = bits[track] if track is not None else None
    for i in range(steps):
        v = verts[i]
        if coins[i]:
            attempts += 1
            if not (masks[v] & state):
                state |= bits[v]
                accepts += 1
            else:
                state &= ~bits[v]
        else:
            state &= ~bits[v]
        if i + 1 == next_sample:
            next_sample += thin
            if track_bit is None:
                total += state.bit_count()
            elif state & track_bit:
                total += 1
    denom = cfg.samples * (n if track_bit is None else 1)
    rate = accepts / attempts if attempts else 0.0
    return total / denom, rate


def _aggregate(means: list[float], chains: int) -> tuple[float, float]:
    mean = sum(means) / chains
    if chains >= 2:
        se = statistics.stdev(means) / math.sqrt(chains)
    else:
        se = 0.0
    return mean, se


def glauber_run(g: Graph, cfg: ChainConfig) -> SampleEstimate:
    """Estimate the occupancy fraction E|I|/n; deterministic given cfg.seed."""
    means = []
    rates = []
    for rng in _chain_streams(cfg):
        m, r = _run_chain(g, cfg, rng, track=None)
        means.append(m)
        rates.append(r)
    mean, se = _aggregate(means, cfg.chains)
    return SampleEstimate(
        mean_occupancy_fraction=mean,
        std_error=se,
        per_chain_means=tuple(means),
        occupy_accept_rates=tuple(rates),
    )


def estimate_marginal(g: Graph, cfg: ChainConfig, v: int) -> MarginalEstimate:
    """Estimate Pr(v in I) under the hard-core law, same chain mechanics."""
    if not (0 <= v < g.n):
        raise DomainError(f"vertex {v} out of range for n={g.n}")
    means = []
    for rng in _chain_streams(cfg):
        m, _ = _run_chain(g, cfg, rng, track=v)
        means.append(m)
    mean, se = _aggregate(means, cfg.chains)
    return MarginalEstimate(estimate=mean, std_error=se, per_chain_means=tuple(means))
