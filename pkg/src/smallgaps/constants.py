"""Closed-form constants of the circular beta-ensemble, evaluated in log space.

Every product of gamma functions is accumulated as a sum of ``log_gamma``
terms. Nothing is exponentiated until the final ratio is formed, because the
normalisation constants overflow a double near n ~ 100.
"""

from __future__ import annotations

import math

from .common import DomainError, check_beta, check_positive_int

LOG_TWO_PI = math.log(2.0 * math.pi)

# Lanczos approximation with g = 671/128 and 14 terms (the coefficient set
# published with Numerical Recipes, 3rd ed., section 6.1). Absolute error in
# ln Gamma is below 2e-15 * max(1, |ln Gamma|) on [1e-3, 1e6].
_LANCZOS_G_SHIFT = 5.24218750000000000
_LANCZOS_C0 = 0.999999999999997092
_LANCZOS_COEFFS = (
    57.1562356658629235,
    -59.5979603554754912,
    14.1360979747417471,
    -0.491913816097620199,
    0.339946499848118887e-4,
    0.465236289270485756e-4,
    -0.983744753048795646e-4,
    0.158088703224912494e-3,
    -0.210264441724104883e-3,
    0.217439618115212643e-3,
    -0.164318106536763890e-3,
    0.844182239838527433e-4,
    -0.261908384015814087e-4,
    0.368991826595316234e-5,
)
_SQRT_TWO_PI = 2.5066282746310005


def log_gamma(x: float) -> float:
    """Natural log of the gamma function for ``x > 0``.

    >>> log_gamma(5.0)  # ln 24
    3.1780538303479458
    """
    x = float(x)
    if not x > 0.0 or math.isinf(x):
        raise DomainError(f"log_gamma requires a finite x > 0, got {x}")
    tmp = x + _LANCZOS_G_SHIFT
    tmp = (x + 0.5) * math.log(tmp) - tmp
    ser = _LANCZOS_C0
    y = x
    for c in _LANCZOS_COEFFS:
        y += 1.0
        ser += c / y
    return tmp + math.log(_SQRT_TWO_PI * ser / x)


def _lg(x: float, what: str) -> float:
    if not x > 0.0:
        raise DomainError(f"nonpositive gamma argument {x} in {what}")
    return log_gamma(x)


def log_c_beta_n(beta: int, n: int) -> float:
    """ln C_{beta,n}, the normalisation of the n-point circular ensemble.

    C_{beta,n} = (2 pi)^n Gamma(1 + beta n / 2) / Gamma(1 + beta / 2)^n.
    """
    beta = check_beta(beta)
    n = check_positive_int(n, "n")
    return n * LOG_TWO_PI + log_gamma(1.0 + beta * n / 2.0) - n * log_gamma(1.0 + beta / 2.0)


def log_morris(n: int, a: float, b: float, lam: float) -> float:
    """ln M_n(a, b, lambda), the Morris integral as a gamma product."""
    n = check_positive_int(n, "n", minimum=0)
    if not lam > 0:
        raise DomainError(f"Morris integral needs lambda > 0, got {lam}")
    lg_one_lam = _lg(1.0 + lam, "log_morris")
    total = 0.0
    for j in range(n):
        total += _lg(lam * j + a + b + 1.0, "log_morris")
        total += _lg(lam * (j + 1) + 1.0, "log_morris")
        total -= _lg(lam * j + a + 1.0, "log_morris")
        total -= _lg(lam * j + b + 1.0, "log_morris")
        total -= lg_one_lam
    return total


def log_selberg(n: int, l1: float, l2: float, lam: float) -> float:
    """ln S_n(l1, l2, lambda), the Selberg integral over [0, 1]^n.

    Integrand is prod t^l1 (1 - t)^l2 prod_{j<k} |t_j - t_k|^(2 lambda).
    """
    n = check_positive_int(n, "n")
    if not (l1 > -1.0 and l2 > -1.0):
        raise DomainError(f"Selberg integral diverges for l1={l1}, l2={l2}")
    if lam < 0:
        raise DomainError(f"Selberg integral needs lambda >= 0, got {lam}")
    lg_one_lam = _lg(1.0 + lam, "log_selberg")
    total = 0.0
    for j in range(n):
        total += _lg(l1 + 1.0 + j * lam, "log_selberg")
        total += _lg(l2 + 1.0 + j * lam, "log_selberg")
        total += _lg(1.0 + (j + 1) * lam, "log_selberg")
        total -= _lg(l1 + l2 + 2.0 + (n + j - 1) * lam, "log_selberg")
        total -= lg_one_lam
    return total


def log_c_charge(beta: int, n1: int, k: int) -> float:
    """ln C_{beta,n1,(k)}: n1 unit charges plus one charge-k particle.

    Uses the telescoped form of (2 pi)^(n1+1) M_{n1}(k beta/2, k beta/2, beta/2),
    which needs O(k) gamma evaluations rather than O(n1). For k = 1 the
    configuration is an ordinary (n1 + 1)-particle gas and the result is
    exactly ``log_c_beta_n(beta, n1 + 1)``.
    """
    beta = check_beta(beta)
    n1 = check_positive_int(n1, "n1", minimum=0)
    k = check_positive_int(k, "k")
    if k == 1:
        return log_c_beta_n(beta, n1 + 1)
    half = beta / 2.0
    total = (n1 + 1) * LOG_TWO_PI - n1 * log_gamma(half + 1.0)
    for j in range(k, 2 * k):
        total += log_gamma(half * (n1 + j) + 1.0) - log_gamma(j * half + 1.0)
    for j in range(1, k):
        total += log_gamma(j * half + 1.0) - log_gamma(half * (n1 + j) + 1.0)
    return total


def log_a_beta_k(beta: int, k: int) -> float:
    beta = check_beta(beta)
    k = check_positive_int(k, "k")
    half = beta / 2.0
    total = (1 - k) * LOG_TWO_PI + k * log_gamma(half + 1.0) - log_gamma(k * half + 1.0)
    for j in range(1, k):
        total += log_gamma(j * half + 1.0) - log_gamma((k + j) * half + 1.0)
    total += k * (k - 1) * beta / 2.0 * math.log(half)
    return total


def a_beta_k(beta: int, k: int) -> float:
    """Limit of C_{beta,n-k,(k)} / (C_{beta,n} n^{k(k-1)beta/2}) as n -> inf."""
    return math.exp(log_a_beta_k(beta, k))


def a_beta(beta: int) -> float:
    """Intensity constant A_beta of the limiting Poisson process of small gaps.

    A_1 = 1/24, A_2 = 1/(24 pi), A_4 = 1/(270 pi).
    """
    beta = check_beta(beta)
    half = beta / 2.0
    log_a = (
        -LOG_TWO_PI
        + beta * math.log(half)
        + 3.0 * log_gamma(half + 1.0)
        - log_gamma(3.0 * half + 1.0)
        - log_gamma(beta + 1.0)
    )
    return math.exp(log_a)


def log_j_n_beta(n: int, beta: int, z: float = 1.0) -> float:
    """ln J_{n,beta}(z), a Laguerre-type Selberg integral on (0, inf)^n.

    J_{n,beta}(z) = z^(-2 n^2 / beta) J_{n,beta}(1).
    """
    n = check_positive_int(n, "n")
    beta = check_beta(beta)
    if not z > 0:
        raise DomainError(f"z must be positive, got {z}")
    r = 2.0 / beta
    lg_denominator = log_gamma(1.0 + r)
    total = 0.0
    for j in range(1, n + 1):
        total += log_gamma(1.0 + r * j) + log_gamma(r * j) - lg_denominator
    return total - (2.0 * n * n / beta) * math.log(z)


def log_binomial(n: int, k: int) -> float:
    """ln of binom(n, k), rounded to the exact integer before taking the log."""
    value = math.exp(log_gamma(n + 1.0) - log_gamma(k + 1.0) - log_gamma(n - k + 1.0))
    return math.log(round(value))


def lemma5_residual(beta: int) -> float:
    """Relative residual of the Selberg/Laguerre identity behind the upper bound.

    Returns LHS / RHS - 1 for

        2 pi A_{beta,4} binom(2 beta, beta) J_{beta,beta}(1)^2
            / S_{2 beta}(2/beta - 1, 2/beta - 1, 2/beta)  =  A_beta^2

    with both sides held as logarithms until the final ``expm1``.
    """
    beta = check_beta(beta)
    r = 2.0 / beta
    lhs = (
        LOG_TWO_PI
        + log_a_beta_k(beta, 4)
        + log_binomial(2 * beta, beta)
        + 2.0 * log_j_n_beta(beta, beta, 1.0)
        - log_selberg(2 * beta, r - 1.0, r - 1.0, r)
    )
    rhs = 2.0 * log_a_beta_k(beta, 2)
    return math.expm1(lhs - rhs)


def log_lemma7_ratio(beta: int, n: int, k: int) -> float:
    beta = check_beta(beta)
    k = check_positive_int(k, "k")
    n = check_positive_int(n, "n")
    if n <= k:
        raise DomainError(f"need n > k, got n={n}, k={k}")
    return log_c_charge(beta, n - k, k) - log_c_beta_n(beta, n) - k * (k - 1) * beta / 2.0 * math.log(n)


def lemma7_ratio(beta: int, n: int, k: int) -> float:
    """C_{beta,n-k,(k)} / (C_{beta,n} n^{k(k-1)beta/2}).

    Bounded above by beta^{k(k-1)beta/2} and tends to ``a_beta_k(beta, k)``.
    """
    return math.exp(log_lemma7_ratio(beta, n, k))


def log_lemma7_bound(beta: int, k: int) -> float:
    """ln of beta^{k(k-1)beta/2}, the n-free upper bound on ``lemma7_ratio``."""
    return k * (k - 1) * beta / 2.0 * math.log(beta)
