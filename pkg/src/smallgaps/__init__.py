"""Simulation and verification toolkit for smallest gaps of the circular beta-ensemble.

Modules
-------
constants   closed-form normalisations and limit constants in log space
quadrature  brute-force quadrature oracles and integral inequality checks
sampler     seeded Metropolis sampling of eigenangle configurations
gaps        gap order statistics, point-process counts and limit laws
verify      named verification suites
io          sample files, sidecars and gap CSVs
cli         the ``smallgaps`` command-line driver
"""

from __future__ import annotations

from .common import DomainError, InequalityReport, Interval, ResourceError, UnsupportedError
from .constants import a_beta, a_beta_k, log_c_beta_n, log_gamma
from .gaps import cyclic_gaps, limit_tau_cdf, limit_tau_pdf, tau_rescale
from .sampler import ChainConfig, run_chain, run_chains, sample_ensemble

__version__ = "0.1.0"

__all__ = [
    "ChainConfig",
    "DomainError",
    "InequalityReport",
    "Interval",
    "ResourceError",
    "UnsupportedError",
    "a_beta",
    "a_beta_k",
    "cyclic_gaps",
    "limit_tau_cdf",
    "limit_tau_pdf",
    "log_c_beta_n",
    "log_gamma",
    "run_chain",
    "run_chains",
    "sample_ensemble",
    "tau_rescale",
]
