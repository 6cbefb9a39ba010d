"""Metropolis sampling of eigenangles from the circular beta-ensemble.

The target density on ``[-pi, pi)^n`` is proportional to
``prod_{j<k} |e^{i theta_j} - e^{i theta_k}|^beta``. Each sweep visits every
particle once (in label order) and proposes a uniform displacement of
half-width ``sigma``. Particle labels are kept fixed inside the chain, so
every single-site update is reversible. Configurations are sorted only
when they are emitted.

The O(n) energy difference per proposal is the hot loop and runs under
numba. All random numbers are drawn by a numpy ``Generator`` outside the
kernel in a fixed order (per sweep: n proposal uniforms, then n acceptance
uniforms), which makes a chain a pure function of its configuration.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Iterator

import numba
import numpy as np

from .common import TWO_PI, DomainError, check_beta, check_positive_int

log = logging.getLogger(__name__)

SIGMA_MAX = 0.99 * math.pi
COINCIDENCE_TOL = 1e-15
ADAPT_EVERY = 10
ADAPT_WINDOW = (0.3, 0.5)
_EMIT_BLOCK = 64

_MASK64 = (1 << 64) - 1


def mix64(seed: int, chain_index: int) -> int:
    """SplitMix64 finaliser applied to ``seed + (chain_index + 1) * golden``.

    Gives each chain of a run its own 64-bit generator seed from a single
    user-facing seed.
    """
    z = (int(seed) + (int(chain_index) + 1) * 0x9E3779B97F4A7C15) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def chain_rng(seed: int, chain_index: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(mix64(seed, chain_index)))


def default_sigma(n: int) -> float:
    return min(2.5 * TWO_PI / n, SIGMA_MAX)


def init_state(n: int) -> np.ndarray:
    """Equally spaced angles -pi + 2 pi (i + 1/2) / n."""
    n = check_positive_int(n, "n")
    return -math.pi + TWO_PI * (np.arange(n) + 0.5) / n


def validate_config(angles) -> np.ndarray:
    """Check the invariants of a sorted angle configuration and return it."""
    a = np.asarray(angles, dtype=float)
    if a.ndim != 1 or a.size < 1:
        raise DomainError("an angle configuration is a nonempty 1-D array")
    if np.any(a < -math.pi) or np.any(a >= math.pi):
        raise DomainError("angles must lie in [-pi, pi)")
    if a.size > 1 and np.any(np.diff(a) <= 0):
        raise DomainError("angles must be strictly increasing")
    return a


def log_weight_delta(config, i: int, theta_new: float, beta: int) -> float:
    """Change in log density when particle ``i`` moves to ``theta_new``.

    Returns ``-inf`` if the new position coincides with another particle
    (chord length below 1e-15), which signals the move must be rejected.
    """
    beta = check_beta(beta)
    a = np.asarray(config, dtype=float)
    others = np.delete(a, i)
    if others.size == 0:
        return 0.0
    new = np.abs(2.0 * np.sin(0.5 * (theta_new - others)))
    if np.any(new < COINCIDENCE_TOL):
        return -math.inf
    old = np.abs(2.0 * np.sin(0.5 * (a[i] - others)))
    return float(beta * np.sum(np.log(new) - np.log(old)))


@numba.njit(cache=True)
def _sweep_block(angles, cs, sn, beta, sigma, u):
    """Run ``u.shape[0]`` sweeps in place. Returns the number of acceptances.

    ``u[s, 0, i]`` drives the proposal and ``u[s, 1, i]`` the accept test of
    particle ``i`` in sweep ``s``. Squared chord lengths are formed from
    cached cos/sin values; their ratios are multiplied up and flushed into a
    log sum before the product can leave the normal double range.
    """
    n = angles.shape[0]
    half_beta = 0.5 * beta
    tol2 = 1e-30
    accepted = 0
    for s in range(u.shape[0]):
        for i in range(n):
            p = angles[i] + sigma * (2.0 * u[s, 0, i] - 1.0)
            if p >= np.pi:
                p -= 2.0 * np.pi
            elif p < -np.pi:
                p += 2.0 * np.pi
            cp = np.cos(p)
            sp = np.sin(p)
            ci = cs[i]
            si = sn[i]
            logsum = 0.0
            prod = 1.0
            bad = False
            for j in range(n):
                if j == i:
                    continue
                dx = cp - cs[j]
                dy = sp - sn[j]
                new2 = dx * dx + dy * dy
                if new2 < tol2:
                    bad = True
                    break
                ox = ci - cs[j]
                oy = si - sn[j]
                prod *= new2 / (ox * ox + oy * oy)
                if prod > 1e150 or prod < 1e-150:
                    logsum += np.log(prod)
                    prod = 1.0
            if bad:
                continue
            delta = half_beta * (logsum + np.log(prod))
            if delta >= 0.0 or u[s, 1, i] < np.exp(delta):
                angles[i] = p
                cs[i] = cp
                sn[i] = sp
                accepted += 1
    return accepted


@dataclass
class ChainConfig:
    """Everything that determines a chain's output stream.

    ``sigma``, ``burnin_sweeps`` default to ``2.5 * 2 pi / n`` (capped below
    pi) and ``50 n``.
    """

    beta: int
    n: int
    seed: int = 0
    chain_index: int = 0
    sigma: float | None = None
    burnin_sweeps: int | None = None
    thin_sweeps: int = 10
    backend: str = "metropolis"

    def __post_init__(self):
        self.beta = check_beta(self.beta)
        self.n = check_positive_int(self.n, "n")
        if self.sigma is None:
            self.sigma = default_sigma(self.n)
        if not 0.0 < self.sigma < math.pi:
            raise DomainError(f"sigma must lie in (0, pi), got {self.sigma}")
        if self.burnin_sweeps is None:
            self.burnin_sweeps = 50 * self.n
        self.burnin_sweeps = check_positive_int(self.burnin_sweeps, "burnin_sweeps", minimum=0)
        self.thin_sweeps = check_positive_int(self.thin_sweeps, "thin_sweeps")
        if not 0 <= int(self.seed) < 2**64:
            raise DomainError("seed must be an unsigned 64-bit integer")
        self.chain_index = check_positive_int(self.chain_index, "chain_index", minimum=0)
        if self.backend not in BACKENDS:
            raise DomainError(f"unknown sampler backend {self.backend!r}")


@dataclass
class ChainState:
    """Mutable state of one chain. ``angles`` are in label order, not sorted."""

    angles: np.ndarray
    rng: np.random.Generator
    sweeps_done: int = 0
    accepted: int = 0
    proposed: int = 0
    _cos: np.ndarray = field(init=False, repr=False)
    _sin: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        self.angles = np.array(self.angles, dtype=float)
        self._cos = np.cos(self.angles)
        self._sin = np.sin(self.angles)

    @classmethod
    def start(cls, n: int, rng: np.random.Generator) -> "ChainState":
        return cls(init_state(n), rng)

    @property
    def config(self) -> np.ndarray:
        return np.sort(self.angles)

    @property
    def acceptance_rate(self) -> float:
        return self.accepted / self.proposed if self.proposed else 0.0

    def run(self, sweeps: int, beta: int, sigma: float) -> int:
        """Advance ``sweeps`` sweeps and return the acceptances among them."""
        n = self.angles.size
        u = self.rng.random((sweeps, 2, n))
        acc = _sweep_block(self.angles, self._cos, self._sin, float(beta), float(sigma), u)
        self.sweeps_done += sweeps
        self.accepted += acc
        self.proposed += sweeps * n
        return acc


def metropolis_sweep(state: ChainState, beta: int, sigma: float) -> ChainState:
    """One sweep of n single-site Metropolis updates, in place."""
    beta = check_beta(beta)
    state.run(1, beta, sigma)
    return state


def adapt_sigma(sigma: float, acceptance_rate: float, window=ADAPT_WINDOW) -> float:
    """Widen the proposal if acceptance is above the window, narrow it if below."""
    lo, hi = window
    if acceptance_rate > hi:
        sigma *= 1.1
    elif acceptance_rate < lo:
        sigma *= 0.9
    return min(sigma, SIGMA_MAX)


class MetropolisChain:
    """Burn-in with proposal adaptation, then thinned emission at fixed sigma."""

    def __init__(self, cfg: ChainConfig):
        self.cfg = cfg
        self.state = ChainState.start(cfg.n, chain_rng(cfg.seed, cfg.chain_index))
        self.sigma = float(cfg.sigma)
        self._burned_in = False

    def burn_in(self):
        if self._burned_in:
            return
        cfg = self.cfg
        remaining = cfg.burnin_sweeps
        while remaining > 0:
            block = min(ADAPT_EVERY, remaining)
            acc = self.state.run(block, cfg.beta, self.sigma)
            if block == ADAPT_EVERY:
                self.sigma = adapt_sigma(self.sigma, acc / (block * cfg.n))
            remaining -= block
        self._burned_in = True
        self.state.accepted = self.state.proposed = 0
        self._check_acceptance_after(ADAPT_EVERY)

    def _check_acceptance_after(self, sweeps):
        cfg = self.cfg
        if cfg.n < 2 or cfg.beta > 4 or cfg.n > 512 or self.sigma >= SIGMA_MAX:
            return
        probe = ChainState(self.state.angles.copy(), np.random.Generator(np.random.PCG64(0)))
        probe.run(sweeps, cfg.beta, self.sigma)
        rate = probe.acceptance_rate
        if not 0.25 <= rate <= 0.55:
            log.warning(
                "acceptance rate %.3f after burn-in is outside [0.25, 0.55] (beta=%d, n=%d, sigma=%.4g)",
                rate, cfg.beta, cfg.n, self.sigma,
            )

    def emit(self, num_samples: int) -> Iterator[np.ndarray]:
        self.burn_in()
        cfg = self.cfg
        done = 0
        while done < num_samples:
            block = min(_EMIT_BLOCK, num_samples - done)
            for _ in range(block):
                self.state.run(cfg.thin_sweeps, cfg.beta, self.sigma)
                yield self.state.config
            done += block


BACKENDS = {"metropolis": MetropolisChain}


def sample_ensemble(cfg: ChainConfig, num_samples: int) -> Iterator[np.ndarray]:
    """Yield ``num_samples`` sorted configurations from one chain."""
    num_samples = check_positive_int(num_samples, "num_samples", minimum=0)
    if num_samples == 0:
        return iter(())
    return BACKENDS[cfg.backend](cfg).emit(num_samples)


@dataclass
class ChainResult:
    samples: np.ndarray
    sigma_final: float
    acceptance_rate: float


def run_chain(cfg: ChainConfig, num_samples: int) -> ChainResult:
    """Run one chain to completion and collect its samples in an array."""
    num_samples = check_positive_int(num_samples, "num_samples", minimum=0)
    chain = BACKENDS[cfg.backend](cfg)
    out = np.empty((num_samples, cfg.n))
    if num_samples:
        for row, config in enumerate(chain.emit(num_samples)):
            out[row] = config
    else:
        chain.burn_in()
    return ChainResult(out, chain.sigma, chain.state.acceptance_rate)


def run_chains(beta: int, n: int, num_samples: int, chains: int = 1, seed: int = 0, **overrides) -> list[ChainResult]:
    """Run ``chains`` independent chains of ``num_samples`` samples each.

    Chains are seeded from ``(seed, chain_index)`` and returned in
    ``chain_index`` order. ``overrides`` go to ``ChainConfig`` (``sigma``,
    ``burnin_sweeps``, ``thin_sweeps``, ``backend``).
    """
    chains = check_positive_int(chains, "chains")
    return [
        run_chain(ChainConfig(beta, n, seed=seed, chain_index=i, **overrides), num_samples)
        for i in range(chains)
    ]
