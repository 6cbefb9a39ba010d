"""Gap order statistics, point-process counts and their limiting laws.

For a sorted configuration ``theta_(1) < ... < theta_(n)`` the cyclic gaps
are ``theta_(i+1) - theta_(i)`` with ``theta_(i+n) = theta_(i) + 2 pi``.
Counting functionals pair a rescaled spacing ``n^gamma * spacing`` with the
base angle ``theta_(i)`` and test membership in a window ``A x I``. Windows
are half-open, ``[lo, hi)``.
"""

from __future__ import annotations

import math
from typing import Callable, Iterable

import numpy as np

from .common import TWO_PI, DomainError, InequalityReport, Interval, check_beta, check_positive_int
from .constants import a_beta


def _gap_window(A) -> Interval:
    return A if isinstance(A, Interval) else Interval(float(A[0]), float(A[1]), "gap")


def _pos_window(I) -> Interval:
    return I if isinstance(I, Interval) else Interval(float(I[0]), float(I[1]), "position")


def default_gamma(beta: int) -> float:
    beta = check_beta(beta)
    return (beta + 2) / (beta + 1)


def cyclic_gaps(config) -> np.ndarray:
    """The n cyclic gaps of a sorted configuration, in position order.

    >>> cyclic_gaps([-np.pi / 2, np.pi / 2]) / np.pi
    array([1., 1.])
    """
    a = np.asarray(config, dtype=float)
    gaps = np.empty_like(a)
    gaps[:-1] = np.diff(a)
    gaps[-1] = a[0] + TWO_PI - a[-1]
    return gaps


def kth_smallest_gap(gaps, k: int) -> float:
    gaps = np.asarray(gaps, dtype=float)
    k = check_positive_int(k, "k")
    if k > gaps.size:
        raise DomainError(f"k={k} exceeds the number of gaps {gaps.size}")
    return float(np.partition(gaps, k - 1)[k - 1])


def smallest_gaps(gaps, k_max: int) -> np.ndarray:
    """m_1 <= ... <= m_{k_max}, the k_max smallest gaps."""
    gaps = np.asarray(gaps, dtype=float)
    if k_max > gaps.size:
        raise DomainError(f"k={k_max} exceeds the number of gaps {gaps.size}")
    return np.sort(np.partition(gaps, k_max - 1)[:k_max])


def tau_scale(n: int, beta: int) -> float:
    """Factor n^((beta+2)/(beta+1)) (A_beta / (beta+1))^(1/(beta+1))."""
    beta = check_beta(beta)
    n = check_positive_int(n, "n")
    return math.exp(
        (beta + 2) / (beta + 1) * math.log(n)
        + math.log(a_beta(beta) / (beta + 1)) / (beta + 1)
    )


def tau_rescale(m_k, n: int, beta: int):
    """Rescaled gap tau_k, which has a non-degenerate limit law as n grows."""
    m = np.asarray(m_k, dtype=float)
    if np.any(m < 0):
        raise DomainError("gaps are nonnegative")
    out = tau_scale(n, beta) * m
    return float(out) if out.ndim == 0 else out


def _scale(n: int, gamma: float) -> float:
    return math.exp(gamma * math.log(n))


def chi_tilde_j_count(config, j: int, A, I, gamma: float) -> int:
    """Number of i with (n^gamma (theta_(i+j) - theta_(i)), theta_(i)) in A x I."""
    a = np.asarray(config, dtype=float)
    n = a.size
    if not 1 <= j <= max(n - 1, 1):
        raise DomainError(f"j must lie in [1, n-1], got j={j} for n={n}")
    A, I = _gap_window(A), _pos_window(I)
    spans = np.roll(a, -j) - a
    spans[n - j:] += TWO_PI
    hit = A.contains(_scale(n, gamma) * spans) & I.contains(a)
    return int(np.count_nonzero(hit))


def chi_count(config, A, I, gamma: float) -> int:
    """Nearest-neighbour count, the j = 1 term of ``chi_tilde_count``."""
    return chi_tilde_j_count(config, 1, A, I, gamma)


def chi_tilde_count(config, A, I, gamma: float) -> int:
    """Sum over j = 1..n-1 of ``chi_tilde_j_count``.

    j-th neighbour spans grow with j for every base point, so the sum stops
    at the first j whose shortest rescaled span reaches ``A.hi``.
    """
    a = np.asarray(config, dtype=float)
    n = a.size
    A, I = _gap_window(A), _pos_window(I)
    if n == 1:
        return chi_count(a, A, I, gamma)
    scale = _scale(n, gamma)
    total = 0
    in_i = I.contains(a)
    for j in range(1, n):
        spans = np.roll(a, -j) - a
        spans[n - j:] += TWO_PI
        scaled = scale * spans
        total += int(np.count_nonzero(A.contains(scaled) & in_i))
        if scaled.min() >= A.hi:
            break
    return total


def falling_factorial(x: int, k: int) -> int:
    """x (x - 1) ... (x - k + 1), exact in Python integers."""
    out = 1
    for i in range(k):
        out *= x - i
    return out


def factorial_moment_estimate(samples: Iterable, A, I, k: int, gamma: float | None = None, beta: int | None = None):
    """Monte Carlo mean and standard error of the k-th factorial moment of the
    count ``chi_tilde_count(config, A, I, gamma)``.

    ``gamma`` defaults to (beta + 2)/(beta + 1), so one of ``gamma`` and
    ``beta`` must be given.
    """
    k = check_positive_int(k, "k")
    if gamma is None:
        if beta is None:
            raise DomainError("give gamma or beta")
        gamma = default_gamma(beta)
    counts = [chi_tilde_count(c, A, I, gamma) for c in samples]
    if not counts:
        raise DomainError("empty sample stream")
    return _mean_stderr([falling_factorial(x, k) for x in counts])


def _mean_stderr(values):
    n = len(values)
    if n == 0:
        raise DomainError("no values")
    total = sum(values)
    mean = total / n
    if n < 2:
        return float(mean), math.nan
    arr = np.asarray(values, dtype=float)
    return float(mean), float(arr.std(ddof=1) / math.sqrt(n))


def expected_intensity(beta: int, A, I) -> float:
    """Limiting mean count A_beta |I| / (2 pi) * int_A u^beta du."""
    beta = check_beta(beta)
    A, I = _gap_window(A), _pos_window(I)
    moment = (A.hi ** (beta + 1) - A.lo ** (beta + 1)) / (beta + 1)
    return a_beta(beta) * I.length / TWO_PI * moment


def limit_tau_pdf(beta: int, k: int, x):
    """(beta+1)/(k-1)! x^(k(beta+1)-1) exp(-x^(beta+1)), the limit density of tau_k."""
    beta = check_beta(beta)
    k = check_positive_int(k, "k")
    x = np.asarray(x, dtype=float)
    if np.any(x < 0):
        raise DomainError("x must be nonnegative")
    p = beta + 1
    out = p / math.factorial(k - 1) * x ** (k * p - 1) * np.exp(-(x**p))
    return float(out) if out.ndim == 0 else out


def _regularized_lower_gamma(k: int, u: np.ndarray) -> np.ndarray:
    """P(k, u) for integer k.

    Small u uses the series e^{-u} sum_{j>=k} u^j / j! to avoid the
    cancellation in 1 - Q(k, u).
    """
    out = np.empty_like(u)
    small = u < k + 1.0
    us = u[small]
    if us.size:
        term = np.exp(-us) * us**k / math.factorial(k)
        acc = term.copy()
        j = k
        while True:
            j += 1
            term = term * us / j
            acc += term
            if np.all(term <= 1e-17 * acc) or j > k + 200:
                break
        out[small] = acc
    ul = u[~small]
    if ul.size:
        term = np.exp(-ul)
        q = term.copy()
        for j in range(1, k):
            term = term * ul / j
            q += term
        out[~small] = 1.0 - q
    return out


def limit_tau_cdf(beta: int, k: int, x):
    """CDF of the limit law of tau_k: P(k, x^(beta+1)) with P the regularised
    lower incomplete gamma function.
    """
    beta = check_beta(beta)
    k = check_positive_int(k, "k")
    x = np.asarray(x, dtype=float)
    if np.any(x < 0):
        raise DomainError("x must be nonnegative")
    u = np.atleast_1d(x ** (beta + 1))
    out = np.where(np.isinf(u), 1.0, 0.0)
    finite = np.isfinite(u)
    out[finite] = _regularized_lower_gamma(k, u[finite])
    out = out.reshape(x.shape)
    return float(out) if out.ndim == 0 else out


def ks_statistic(values, cdf: Callable) -> float:
    """Kolmogorov-Smirnov distance sup |F_N(x) - cdf(x)|."""
    v = np.sort(np.asarray(values, dtype=float))
    n = v.size
    if n == 0:
        raise DomainError("KS statistic of an empty sample")
    F = np.asarray(cdf(v), dtype=float)
    i = np.arange(1, n + 1)
    d_plus = np.max(i / n - F)
    d_minus = np.max(F - (i - 1) / n)
    return float(max(d_plus, d_minus, 0.0))


def lemma11_check(samples: Iterable, gamma: float, c0: float, k: int, beta: int, n: int, z: float = 3.0) -> InequalityReport:
    """Monte Carlo check of E chi_tilde^(n,gamma,k-1)(B) <= n (n^(1-gamma) beta c0)^e
    with B = (0, c0) x (-pi, pi) and e = beta k (k-1)/2 + k - 1.

    The report's error estimate is ``z`` standard errors of the mean.
    """
    beta = check_beta(beta)
    n = check_positive_int(n, "n")
    k = check_positive_int(k, "k", minimum=2)
    if k > n:
        raise DomainError("need n >= k")
    base = n ** (1.0 - gamma) * beta * c0
    if not 0.0 < base < 1.0:
        raise DomainError(f"need n^(1-gamma) beta c0 in (0, 1), got {base}")
    A = Interval(0.0, c0, "gap")
    I = Interval.full_circle()
    counts = []
    for config in samples:
        config = np.asarray(config)
        if config.size != n:
            raise DomainError(f"sample has {config.size} angles, expected {n}")
        counts.append(chi_tilde_j_count(config, k - 1, A, I, gamma))
    mean, stderr = _mean_stderr(counts)
    exponent = beta * k * (k - 1) / 2 + k - 1
    rhs = n * base**exponent
    return InequalityReport(f"lemma11_k{k}", mean, rhs, rhs - mean, z * stderr)
