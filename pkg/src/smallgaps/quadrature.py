"""Brute-force tensor Gauss-Legendre quadrature in up to four dimensions.

These routines check the gamma-product formulas in ``constants`` and the
integral inequalities used for the small-gap limit. They are deliberately
independent of the closed forms: every value here comes from summing an
integrand over a grid.

Integrands with ``|sin|^beta`` factors have kinks where two coordinates
coincide. For symmetric integrands this is handled by integrating over the
ordered sector ``x_1 < ... < x_n`` (times ``n!``) through a smooth map from
the unit cube, so the coincidence set becomes part of the boundary. One
dimensional integrals with kinks at known points are split at those points.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np

from .common import (
    TWO_PI,
    DomainError,
    InequalityReport,
    Interval,
    ResourceError,
    UnsupportedError,
    check_beta,
    check_positive_int,
)
from .constants import log_morris, log_selberg

MAX_NODES = 10**8
_CHUNK = 1 << 20

DEFAULT_BUDGETS = {1: (64, 16), 2: (48, 8), 3: (16, 4)}


@lru_cache(maxsize=None)
def _gauss_legendre(order: int):
    x, w = np.polynomial.legendre.leggauss(order)
    return x, w


@dataclass(frozen=True)
class QuadratureSpec:
    """Tensor-product Gauss-Legendre grid over a box.

    The box is split into ``panels_per_axis`` equal panels per axis with
    ``nodes_per_panel`` nodes each. ``integrate`` also evaluates the grid
    with twice as many panels, so that refined grid must fit the budget.
    """

    dimension: int
    panels_per_axis: int
    nodes_per_panel: int
    domain: tuple

    def __post_init__(self):
        if not 1 <= self.dimension <= 4:
            raise DomainError("quadrature dimension must be in [1, 4]")
        if len(self.domain) != self.dimension:
            raise DomainError("need one (lo, hi) pair per axis")
        if self.panels_per_axis < 1 or self.nodes_per_panel < 1:
            raise DomainError("panels and nodes per panel must be positive")
        if self.refined_node_count > MAX_NODES:
            raise ResourceError(
                f"refined grid needs {self.refined_node_count} nodes, budget is {MAX_NODES}"
            )

    @property
    def refined_node_count(self) -> int:
        return (2 * self.panels_per_axis * self.nodes_per_panel) ** self.dimension

    @classmethod
    def default(cls, domain: Sequence[tuple]) -> "QuadratureSpec":
        dim = len(domain)
        panels, nodes = DEFAULT_BUDGETS.get(dim, (8, 4))
        return cls(dim, panels, nodes, tuple(tuple(map(float, d)) for d in domain))


def _axis_rule(lo: float, hi: float, panels: int, order: int):
    x, w = _gauss_legendre(order)
    edges = np.linspace(lo, hi, panels + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[:-1] + edges[1:])
    nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return nodes, weights


def _tensor_sum(f, axes) -> float:
    """Sum f * weights over the tensor grid, chunked along the first axis."""
    dim = len(axes)
    inner = axes[1:]
    if inner:
        inner_nodes = [g.ravel() for g in np.meshgrid(*[a[0] for a in inner], indexing="ij")]
        inner_w = np.ones(1)
        for a in inner:
            inner_w = np.multiply.outer(inner_w, a[1]).ravel()
    else:
        inner_nodes, inner_w = [], np.ones(1)
    m = inner_w.size
    first_nodes, first_w = axes[0]
    step = max(1, _CHUNK // m)
    total = 0.0
    for start in range(0, first_nodes.size, step):
        x0 = first_nodes[start:start + step]
        w0 = first_w[start:start + step]
        pts = np.empty((dim, x0.size * m))
        pts[0] = np.repeat(x0, m)
        for d in range(1, dim):
            pts[d] = np.tile(inner_nodes[d - 1], x0.size)
        weights = np.repeat(w0, m) * np.tile(inner_w, x0.size)
        vals = np.asarray(f(pts), dtype=float)
        total += float(np.dot(vals, weights))
    return total


def integrate(f: Callable[[np.ndarray], np.ndarray], spec: QuadratureSpec):
    """Integrate ``f`` over ``spec.domain``.

    ``f`` receives an array of shape ``(dimension, N)`` and returns ``N``
    values. Returns ``(value, error_estimate)`` where ``value`` comes from the
    refined grid (panels doubled) and ``error_estimate`` is the absolute
    difference from the base grid.
    """
    results = []
    for panels in (spec.panels_per_axis, 2 * spec.panels_per_axis):
        axes = [_axis_rule(lo, hi, panels, spec.nodes_per_panel) for lo, hi in spec.domain]
        results.append(_tensor_sum(f, axes))
    coarse, fine = results
    return fine, abs(fine - coarse)


def ordered_cube_map(x: np.ndarray, lo: float, hi: float):
    """Map the unit cube onto the sector lo < t_1 < ... < t_n < hi.

    Returns ``(t, jacobian)`` with ``t`` shaped like ``x``.
    """
    t = np.empty_like(x)
    jac = np.full(x.shape[1], hi - lo)
    t[0] = lo + (hi - lo) * x[0]
    for k in range(1, x.shape[0]):
        room = hi - t[k - 1]
        t[k] = t[k - 1] + room * x[k]
        jac = jac * room
    return t, jac


def _smoothstep(y):
    """Quintic smoothstep y^3 (10 - 15 y + 6 y^2) and its derivative.

    Its derivative vanishes to second order at both ends, which tames
    algebraic endpoint singularities such as ``t^(1/2)``.
    """
    y2 = y * y
    return y2 * y * (10.0 - 15.0 * y + 6.0 * y2), 30.0 * y2 * (1.0 - y) ** 2


def integrate_symmetric(g, n: int, lo: float, hi: float, spec_shape=None, graded: bool = False):
    """Integrate a permutation-symmetric ``g`` over ``[lo, hi]^n``.

    The integral is ``n!`` times the integral over the ordered sector, where
    ``g`` only ever sees sorted points and so never crosses a coincidence
    kink. With ``graded=True`` each cube axis is first passed through a
    smoothstep map, which clusters nodes at the faces of the cube.
    """
    if spec_shape is None:
        spec_shape = DEFAULT_BUDGETS[n]
    panels, nodes = spec_shape
    spec = QuadratureSpec(n, panels, nodes, tuple((0.0, 1.0) for _ in range(n)))

    def mapped(x):
        if graded:
            x, dx = _smoothstep(x)
            t, jac = ordered_cube_map(x, lo, hi)
            return g(t) * jac * np.prod(dx, axis=0)
        t, jac = ordered_cube_map(x, lo, hi)
        return g(t) * jac

    value, err = integrate(mapped, spec)
    scale = math.factorial(n)
    return scale * value, scale * err


def _chord_power(diff, power):
    """|2 sin(diff / 2)|^power, the chord length between two unit phases."""
    return np.abs(2.0 * np.sin(0.5 * diff)) ** power


def brute_c_beta_n(beta: int, n: int, budget=None):
    """Quadrature value of C_{beta,n} for n <= 3, with its error estimate."""
    beta = check_beta(beta)
    n = check_positive_int(n, "n")
    if n > 3:
        raise UnsupportedError("brute-force normalisation is limited to n <= 3")
    if n == 1:
        return TWO_PI, 0.0

    def g(t):
        out = np.ones(t.shape[1])
        for j in range(n):
            for k in range(j + 1, n):
                out = out * _chord_power(t[k] - t[j], beta)
        return out

    return integrate_symmetric(g, n, -math.pi, math.pi, budget)


def brute_morris(n: int, a: float, b: float, lam: float, budget=None):
    """Quadrature value of the Morris integral M_n(a, b, lambda), n <= 2.

    The imaginary part of the integrand is odd under theta -> -theta, so
    only ``cos(pi (a - b) sum theta)`` is integrated.
    """
    n = check_positive_int(n, "n", minimum=0)
    if n > 2:
        raise UnsupportedError("brute-force Morris integral is limited to n <= 2")
    if n == 0:
        return 1.0, 0.0

    def g(t):
        out = np.cos(math.pi * (a - b) * t.sum(axis=0))
        out = out * np.prod(np.abs(2.0 * np.cos(math.pi * t)) ** (a + b), axis=0)
        for j in range(n):
            for k in range(j + 1, n):
                out = out * np.abs(2.0 * np.sin(math.pi * (t[k] - t[j]))) ** (2.0 * lam)
        return out

    graded = not all(float(v).is_integer() for v in (a + b, 2.0 * lam))
    return integrate_symmetric(g, n, -0.5, 0.5, budget, graded=graded)


def brute_selberg(n: int, l1: float, l2: float, lam: float, budget=None):
    """Quadrature value of the Selberg integral S_n(l1, l2, lambda), n <= 3."""
    n = check_positive_int(n, "n")
    if n > 3:
        raise UnsupportedError("brute-force Selberg integral is limited to n <= 3")
    if l1 < 0 or l2 < 0:
        raise UnsupportedError("endpoint singularities (l1 or l2 < 0) are not resolved here")

    def g(t):
        out = np.prod(t**l1 * (1.0 - t) ** l2, axis=0)
        for j in range(n):
            for k in range(j + 1, n):
                out = out * np.abs(t[k] - t[j]) ** (2.0 * lam)
        return out

    graded = not all(float(v).is_integer() for v in (l1, l2, 2.0 * lam))
    return integrate_symmetric(g, n, 0.0, 1.0, budget, graded=graded)


def brute_j_n_beta(n: int, beta: int, budget=None, t_max: float = 100.0):
    """Quadrature value of J_{n,beta}(1) for n <= 2.

    Substituting t = s^beta turns the weight t^(2/beta - 1) dt into
    beta * s ds, which is smooth at the origin for every integer beta. The
    range is cut at ``t_max`` where e^(-t) is far below double precision.
    """
    n = check_positive_int(n, "n")
    beta = check_beta(beta)
    if n > 2:
        raise UnsupportedError("brute-force J_{n,beta} is limited to n <= 2")
    s_max = t_max ** (1.0 / beta)

    def g(s):
        t = s**beta
        out = np.prod(beta * s * np.exp(-t), axis=0)
        for j in range(n):
            for k in range(j + 1, n):
                out = out * np.abs(t[k] - t[j]) ** (4.0 / beta)
        return out

    return integrate_symmetric(g, n, 0.0, s_max, budget)


# --- integrals with known kink locations -------------------------------------


def _as_interval(A, role="gap") -> Interval:
    if isinstance(A, Interval):
        return A
    lo, hi = A
    return Interval(float(lo), float(hi), role)


def _wrap_angle(x):
    return (np.asarray(x) + math.pi) % TWO_PI - math.pi


def _panel_rule(a: float, b: float, breaks, panels: int, order: int):
    """Gauss-Legendre nodes on [a, b], with panel edges at every break inside."""
    if b <= a:
        return np.empty(0), np.empty(0)
    pts = [a, b]
    for p in breaks:
        for shift in (-TWO_PI, 0.0, TWO_PI):
            q = p + shift
            if a < q < b:
                pts.append(q)
    edges = np.unique(np.asarray(pts, dtype=float))
    x, w = _gauss_legendre(order)
    sub = np.linspace(0.0, 1.0, panels + 1)
    left = edges[:-1, None] + (edges[1:] - edges[:-1])[:, None] * sub[None, :-1]
    right = edges[:-1, None] + (edges[1:] - edges[:-1])[:, None] * sub[None, 1:]
    left, right = left.ravel(), right.ravel()
    half = 0.5 * (right - left)
    mid = 0.5 * (right + left)
    nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return nodes, weights


class _LevelPair:
    """Evaluate a quadrature at a base and a doubled panel count."""

    def __init__(self, fn):
        self.coarse = fn(1)
        self.fine = fn(2)

    @property
    def value(self):
        return self.fine

    @property
    def error(self):
        return abs(self.fine - self.coarse)


def phi_beta_A(beta: int, A, panels: int = 8, order: int = 16) -> float:
    """Quadrature of int_A |1 - e^{iu}|^beta du = int_A (2 sin(u/2))^beta du.

    ``A`` must lie inside [0, 1]. An empty window gives 0.
    """
    return _phi_with_error(beta, A, panels, order)[0]


def _phi_with_error(beta, A, panels=8, order=16):
    beta = check_beta(beta)
    A = _as_interval(A)
    if A.lo < 0.0 or A.hi > 1.0:
        raise DomainError(f"phi(beta, A) needs A inside (0, 1), got [{A.lo}, {A.hi})")
    if A.empty:
        return 0.0, 0.0

    def level(mult):
        u, w = _panel_rule(A.lo, A.hi, (), panels * mult, order)
        return float(np.dot(_chord_power(u, beta), w))

    pair = _LevelPair(level)
    return pair.value, pair.error


class _CharPoly:
    """|F(x)|^beta for F(x) = prod_j (e^{ix} - e^{i theta_j})."""

    def __init__(self, thetas, beta):
        self.thetas = np.asarray(_wrap_angle(np.asarray(thetas, dtype=float)), dtype=float)
        self.beta = beta

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        out = np.ones_like(x)
        for th in self.thetas:
            out = out * _chord_power(x - th, self.beta)
        return out


def _power_integral(F: _CharPoly, p: int, a: float, b: float, panels: int, order: int):
    """int_a^b |F(x)|^(p beta) dx with panel edges at the zeros of F."""

    def level(mult):
        x, w = _panel_rule(a, b, F.thetas, panels * mult, order)
        return float(np.dot(F(x) ** p, w))

    return _LevelPair(level)


def _pair_difference_breaks(thetas, lo, hi):
    """Values of (theta_l - theta_j) mod 2 pi that fall inside (lo, hi)."""
    out = []
    for j, tj in enumerate(thetas):
        for l, tl in enumerate(thetas):
            if j != l:
                d = (tl - tj) % TWO_PI
                if lo < d < hi:
                    out.append(d)
    return out


def _shift_correlation(F: _CharPoly, shifts, a, b, inner_panels, order):
    """For each shift t, int_a^b |F(x)|^beta |F(x + t)|^beta dx."""
    out = np.empty(len(shifts))
    for i, t in enumerate(shifts):
        breaks = np.concatenate([F.thetas, F.thetas - t])
        x, w = _panel_rule(a, b, breaks, inner_panels, order)
        out[i] = np.dot(F(x) * F(x + t), w)
    return out


def _pair_integral(F: _CharPoly, u_lo, u_hi, x_lo, x_hi, panels=4, inner_panels=2, order=12):
    """int_{u_lo}^{u_hi} du |2 sin(u/2)|^beta int_{x_lo}^{x_hi} dx |F(x)|^beta |F(x+u)|^beta."""
    ubreaks = _pair_difference_breaks(F.thetas, u_lo, u_hi)

    def level(mult):
        u, w = _panel_rule(u_lo, u_hi, ubreaks, panels * mult, order)
        if u.size == 0:
            return 0.0
        corr = _shift_correlation(F, u, x_lo, x_hi, inner_panels * mult, order)
        return float(np.dot(_chord_power(u, F.beta) * corr, w))

    return _LevelPair(level)


def _triple_integral(F: _CharPoly, c: float, panels=4, order=6, inner_panels=1, inner_order=10):
    """k = 3 left side: integral over x1 and 0 < t2, t3 < c of the cluster integrand.

    Symmetric in (t2, t3), so it is twice the ordered-triangle integral.
    """
    beta = F.beta

    def level(mult):
        spec_axes = [_axis_rule(0.0, 1.0, panels * mult, order)] * 2
        g1, g2 = np.meshgrid(spec_axes[0][0], spec_axes[1][0], indexing="ij")
        wts = np.multiply.outer(spec_axes[0][1], spec_axes[1][1]).ravel()
        x = np.vstack([g1.ravel(), g2.ravel()])
        t, jac = ordered_cube_map(x, 0.0, c)
        t2, t3 = t
        total = 0.0
        for i in range(t2.size):
            breaks = np.concatenate([F.thetas, F.thetas - t2[i], F.thetas - t3[i]])
            xs, xw = _panel_rule(-math.pi, math.pi, breaks, inner_panels * mult, inner_order)
            r = np.dot(F(xs) * F(xs + t2[i]) * F(xs + t3[i]), xw)
            kernel = (
                _chord_power(t2[i], beta)
                * _chord_power(t3[i], beta)
                * _chord_power(t3[i] - t2[i], beta)
            )
            total += wts[i] * jac[i] * kernel * r
        return 2.0 * total

    return _LevelPair(level)


def _report(label, lhs, rhs, err) -> InequalityReport:
    return InequalityReport(label, float(lhs), float(rhs), float(rhs - lhs), float(err))


def verify_lemma10(thetas, n: int, beta: int, c: float, A, I) -> list[InequalityReport]:
    """Evaluate both sides of the four integral inequalities for one instance.

    ``F(x) = prod_j (e^{ix} - e^{i theta_j})`` with ``m = len(thetas) <= n``.
    Requires ``n beta c`` in (0, 1), ``A`` inside (0, c) and ``I`` inside
    (-pi, pi). Returns reports, in order: the two-sided bound on the pair
    integral over gaps below ``c``; the k-point bounds for k = 1, 2, 3; the
    factorisation of the pair integral over ``A x I``; the two-sided bound on
    ``phi_beta_A``.
    """
    beta = check_beta(beta)
    thetas = list(map(float, thetas))
    m = len(thetas)
    if m < 1:
        raise DomainError("need at least one theta")
    n = check_positive_int(n, "n", minimum=m)
    if not 0.0 < n * beta * c < 1.0:
        raise DomainError(f"need n*beta*c in (0, 1), got {n * beta * c}")
    A = _as_interval(A)
    I = _as_interval(I, "position")
    if A.lo < 0.0 or A.hi > c:
        raise DomainError("gap window A must lie inside (0, c)")

    F = _CharPoly(thetas, beta)
    pi = math.pi
    sinc = math.sin(c / 2.0) / (c / 2.0)
    nbc = n * beta * c
    reports = []

    P1 = _power_integral(F, 1, -pi, pi, 2, 16)
    P2 = _power_integral(F, 2, -pi, pi, 2, 16)
    P3 = _power_integral(F, 3, -pi, pi, 2, 16)
    M = _pair_integral(F, 0.0, c, -pi, pi)

    base = c ** (beta + 1) / (beta + 1)
    lower = sinc**beta * math.cos(nbc) * base * P2.value
    upper = base * P2.value
    reports.append(_report("pair_integral_lower", lower, M.value, M.error + sinc**beta * base * P2.error))
    reports.append(_report("pair_integral_upper", M.value, upper, M.error + base * P2.error))

    # k = 1: both sides are the same integral.
    reports.append(_report("k_point_k1", P1.value, P1.value, P1.error))
    exp2 = beta + 1
    reports.append(_report("k_point_k2", M.value, c**exp2 * P2.value, M.error + c**exp2 * P2.error))
    T = _triple_integral(F, c)
    exp3 = 3 * beta + 2
    reports.append(_report("k_point_k3", T.value, c**exp3 * P3.value, T.error + c**exp3 * P3.error))

    phi, phi_err = _phi_with_error(beta, A)
    if A.empty or I.empty:
        D = P2I = None
        dev, dev_err = 0.0, 0.0
    else:
        D = _pair_integral(F, A.lo, A.hi, I.lo, I.hi)
        P2I = _power_integral(F, 2, I.lo, I.hi, 2, 16)
        dev = abs(D.value - phi * P2I.value)
        dev_err = D.error + phi * P2I.error + phi_err * P2I.value
    rhs3 = phi * nbc * P2.value
    reports.append(_report("window_factorisation", dev, rhs3, dev_err + nbc * (phi * P2.error + phi_err * P2.value)))

    mono = (A.hi ** (beta + 1) - A.lo ** (beta + 1)) / (beta + 1)
    reports.append(_report("phi_lower", sinc**beta * mono, phi, phi_err))
    reports.append(_report("phi_upper", phi, mono, phi_err))
    return reports


# --- two-component correlation identity ----------------------------------------


def brute_two_component(beta: int, n1: int, r1: float, r2: float, budget=None):
    """Direct quadrature of I_{n1,2}(beta; r1, r2), n1 <= 2.

    I = int prod_j prod_{k=1,2} |1 - e^{i(theta_j - r_k)}|^(2 beta)
            prod_{j<k} |e^{i theta_j} - e^{i theta_k}|^beta  d theta.
    Returns ``(value, error_estimate)``.
    """
    beta = check_beta(beta)
    n1 = check_positive_int(n1, "n1", minimum=0)
    if n1 > 2:
        raise UnsupportedError("brute-force two-component integral is limited to n1 <= 2")
    if n1 == 0:
        return 1.0, 0.0

    def g(t):
        out = np.ones(t.shape[1])
        for j in range(n1):
            out = out * _chord_power(t[j] - r1, 2 * beta) * _chord_power(t[j] - r2, 2 * beta)
            for k in range(j + 1, n1):
                out = out * _chord_power(t[k] - t[j], beta)
        return out

    if budget is None:
        budget = {1: (32, 16), 2: (24, 12)}[n1]
    return integrate_symmetric(g, n1, -math.pi, math.pi, budget)


def f_n1_beta(beta: int, n1: int, t: complex) -> complex:
    """The 2 beta-dimensional integral F_{n1,beta}(t) for beta = 1.

    F(t) = int_{[0,1]^2} prod_j u_j (1 - u_j) (1 - (1 - t) u_j)^n1
               |u_1 - u_2|^4 du.
    The integrand is a polynomial, so a moderate Gauss-Legendre grid is exact.
    """
    beta = check_beta(beta)
    if beta != 1:
        raise UnsupportedError("f_n1_beta is evaluated for beta = 1 only")
    n1 = check_positive_int(n1, "n1", minimum=0)
    t = complex(t)
    if abs(abs(t) - 1.0) > 1e-12:
        raise DomainError(f"t must lie on the unit circle, |t| = {abs(t)}")
    s = 1.0 - t
    spec = QuadratureSpec(2, 2, 12, ((0.0, 1.0), (0.0, 1.0)))

    def poly(u):
        base = np.prod(u * (1.0 - u), axis=0) * (u[0] - u[1]) ** 4
        return base * np.prod((1.0 - s * u) ** n1, axis=0)

    re, _ = integrate(lambda u: poly(u.astype(complex)).real, spec)
    im, _ = integrate(lambda u: poly(u.astype(complex)).imag, spec)
    return complex(re, im)


def verify_identity_eq9(beta: int, n1: int, r1: float, r2: float) -> float:
    """Relative residual between the direct and the hypergeometric forms.

    Compares ``brute_two_component`` with

        (2 pi)^n1 M_n1(2 beta, 2 beta, beta/2) |F_{n1,beta}(t)|
            / S_{2 beta}(2/beta - 1, 2/beta - 1, 2/beta),   t = e^{i(r1 - r2)}.
    """
    beta = check_beta(beta)
    if beta != 1:
        raise UnsupportedError("the correlation identity is checked for beta = 1 only")
    brute, _ = brute_two_component(beta, n1, r1, r2)
    t = cmath.exp(1j * (r1 - r2))
    r = 2.0 / beta
    log_prefactor = n1 * math.log(TWO_PI) + log_morris(n1, 2 * beta, 2 * beta, beta / 2.0)
    log_prefactor -= log_selberg(2 * beta, r - 1.0, r - 1.0, r)
    closed = math.exp(log_prefactor) * abs(f_n1_beta(beta, n1, t))
    return abs(brute - closed) / abs(brute)


# --- exact small-n gap marginals ------------------------------------------------


def gap_marginal_cdf(beta: int, n: int, panels: int = 2048, order: int = 8):
    """CDF of one cyclic gap of the n-point ensemble, n in {2, 3}.

    The gaps of a configuration are exchangeable with joint density on the
    simplex proportional to prod_j (2 sin(g_j / 2))^beta (for n <= 3 every
    chord spans one gap or the complement of one). The marginal of one gap
    is therefore w(g) for n = 2 and w(g) * int_0^{2pi-g} w(h) w(2pi-g-h) dh
    for n = 3, with w(g) = (2 sin(g/2))^beta. The density is tabulated on
    Gauss-Legendre panels, accumulated and normalised; between panel edges
    the CDF is interpolated linearly.
    """
    beta = check_beta(beta)
    if n not in (2, 3):
        raise UnsupportedError("exact gap marginals are tabulated for n = 2 and 3")
    x, w = _gauss_legendre(order)
    edges = np.linspace(0.0, TWO_PI, panels + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[:-1] + edges[1:])
    g = mid[:, None] + half[:, None] * x[None, :]
    dens = _chord_power(g, beta)
    if n == 3:
        hx, hw = _gauss_legendre(48)
        rest = TWO_PI - g
        h = 0.5 * rest[..., None] * (hx + 1.0)
        inner = np.sum(_chord_power(h, beta) * _chord_power(rest[..., None] - h, beta) * hw, axis=-1)
        dens = dens * 0.5 * rest * inner
    mass = np.sum(dens * w[None, :], axis=1) * half
    table = np.concatenate([[0.0], np.cumsum(mass)])
    table /= table[-1]

    def cdf(v):
        return np.interp(np.asarray(v, dtype=float), edges, table)

    return cdf
