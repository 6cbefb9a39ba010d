"""Named verification suites that aggregate the module-level checks.

Each suite returns a ``VerifyReport``: a flat list of checks, each holding
both sides of a comparison, the signed margin and the tolerance it was
judged against. A check passes when ``margin >= -tolerance``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import constants as ck
from . import quadrature as qo
from .common import TWO_PI, Interval
from .gaps import lemma11_check
from .sampler import run_chains

SUITES = ("identities", "quadrature", "lemma10", "correlation", "lemma11")

# Reference values of the intensity constant for the classical ensembles.
KNOWN_A_BETA = {1: 1.0 / 24.0, 2: 1.0 / (24.0 * math.pi), 4: 1.0 / (270.0 * math.pi)}


@dataclass
class Check:
    id: str
    lhs: float
    rhs: float
    margin: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return bool(self.margin >= -self.tolerance)

    def as_dict(self) -> dict:
        return {
            "id": self.id,
            "status": "pass" if self.passed else "fail",
            "lhs": self.lhs,
            "rhs": self.rhs,
            "margin": self.margin,
            "tolerance": self.tolerance,
        }


@dataclass
class VerifyReport:
    suite: str
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add_upper(self, id: str, value: float, bound: float, tolerance: float = 0.0):
        """Record ``value <= bound``."""
        self.checks.append(Check(id, float(value), float(bound), float(bound - value), float(tolerance)))

    def add_report(self, id: str, rep) -> None:
        self.checks.append(Check(id, rep.lhs, rep.rhs, rep.margin, rep.error_estimate))

    def as_dict(self) -> dict:
        return {
            "suite": self.suite,
            "checks": [c.as_dict() for c in self.checks],
            "overall": "pass" if self.passed else "fail",
        }


def render_text(report: dict) -> str:
    """Plain-text table carrying exactly the fields of the JSON report."""
    lines = [f"suite: {report['suite']}"]
    head = f"{'id':<40} {'status':<6} {'lhs':>24} {'rhs':>24} {'margin':>24} {'tolerance':>24}"
    lines.append(head)
    for c in report["checks"]:
        lines.append(
            f"{c['id']:<40} {c['status']:<6} {c['lhs']:>24.17g} {c['rhs']:>24.17g}"
            f" {c['margin']:>24.17g} {c['tolerance']:>24.17g}"
        )
    lines.append(f"overall: {report['overall']}")
    return "\n".join(lines)


def _relative(report: VerifyReport, id: str, value: float, reference: float, tol: float):
    """Record |value / reference - 1| <= tol."""
    report.add_upper(id, abs(value / reference - 1.0), tol)


def suite_identities() -> VerifyReport:
    rep = VerifyReport("identities")
    for beta, ref in KNOWN_A_BETA.items():
        _relative(rep, f"a_beta[{beta}]", ck.a_beta(beta), ref, 1e-12)
        _relative(rep, f"a_beta_k[{beta},2]", ck.a_beta_k(beta, 2), ref, 1e-12)
    for beta in range(1, 9):
        rep.add_upper(f"lemma5_residual[{beta}]", abs(ck.lemma5_residual(beta)), 1e-10)
    for beta in range(1, 7):
        for k in range(1, 4):
            bound = ck.log_lemma7_bound(beta, k)
            worst = max(ck.log_lemma7_ratio(beta, n, k) for n in range(k + 1, 51))
            rep.add_upper(f"lemma7_bound[beta={beta},k={k}]", worst, bound, 1e-12)
    for beta in (1, 2, 4):
        a = ck.a_beta(beta)
        dev3 = abs(ck.lemma7_ratio(beta, 10**3, 2) / a - 1.0)
        dev4 = abs(ck.lemma7_ratio(beta, 10**4, 2) / a - 1.0)
        rep.add_upper(f"lemma7_limit_1e4[{beta}]", dev4, 0.01)
        # strict decrease: require a positive margin, so zero tolerance is not enough
        rep.checks.append(Check(f"lemma7_limit_decreasing[{beta}]", dev4, dev3, dev3 - dev4, -1e-300))
    return rep


QUADRATURE_CASES = (
    [("c_beta_n", (beta, n)) for beta in (1, 2, 3) for n in (1, 2, 3)]
    + [("morris", (n, a, b, lam)) for n in (1, 2) for (a, b, lam) in ((1.0, 1.0, 0.5), (0.5, 0.25, 0.5), (1.0, 2.0, 0.75), (2.0, 2.0, 1.0))]
    + [("selberg", (n, l1, l2, lam)) for n in (1, 2, 3) for (l1, l2, lam) in ((0.0, 0.0, 1.0), (0.5, 1.0, 1.0), (1.0, 2.0, 0.5), (2.0, 1.0, 1.5))]
    + [("j_n_beta", (n, beta)) for n in (1, 2) for beta in (1, 2, 3)]
)


def quadrature_pair(kind: str, args):
    """``(brute value, brute error, closed form)`` for one table entry."""
    if kind == "c_beta_n":
        v, e = qo.brute_c_beta_n(*args)
        c = math.exp(ck.log_c_beta_n(*args))
    elif kind == "morris":
        v, e = qo.brute_morris(*args)
        c = math.exp(ck.log_morris(*args))
    elif kind == "selberg":
        v, e = qo.brute_selberg(*args)
        c = math.exp(ck.log_selberg(*args))
    elif kind == "j_n_beta":
        v, e = qo.brute_j_n_beta(*args)
        c = math.exp(ck.log_j_n_beta(*args))
    else:
        raise ValueError(kind)
    return v, e, c


def suite_quadrature(tol: float = 1e-6) -> VerifyReport:
    rep = VerifyReport("quadrature")
    for kind, args in QUADRATURE_CASES:
        v, e, c = quadrature_pair(kind, args)
        label = ",".join(f"{a:g}" for a in args)
        rep.add_upper(f"{kind}[{label}]", abs(v / c - 1.0), max(tol, 10.0 * e / abs(c)))
    return rep


def random_lemma10_instances(count: int = 50, seed: int = 20240101):
    """Seeded random instances (thetas, n, beta, c, A, I) with n beta c < 1."""
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        m = int(rng.integers(1, 4))
        beta = int(rng.integers(1, 4))
        n = m + int(rng.integers(0, 4))
        thetas = rng.uniform(-math.pi, math.pi, m)
        c = float(rng.uniform(0.05, 0.95)) / (n * beta)
        a_lo, a_hi = np.sort(rng.uniform(0.0, c, 2))
        i_lo, i_hi = np.sort(rng.uniform(-math.pi, math.pi, 2))
        out.append((thetas, n, beta, c, Interval(a_lo, a_hi, "gap"), Interval(i_lo, i_hi, "position")))
    return out


def suite_lemma10(count: int = 50, seed: int = 20240101) -> VerifyReport:
    rep = VerifyReport("lemma10")
    for idx, (thetas, n, beta, c, A, I) in enumerate(random_lemma10_instances(count, seed)):
        for r in qo.verify_lemma10(thetas, n, beta, c, A, I):
            rep.add_report(f"instance{idx:02d}/{r.label}", r)
    return rep


CORRELATION_SHIFTS = (0.0, 0.5, 1.0, math.pi / 2, 2.0, 2.5, math.pi)
CORRELATION_TOL = {1: 1e-4, 2: 1e-3}


def suite_correlation(r1: float = 0.3) -> VerifyReport:
    rep = VerifyReport("correlation")
    for n1, tol in CORRELATION_TOL.items():
        for d in CORRELATION_SHIFTS:
            res = qo.verify_identity_eq9(1, n1, r1, r1 + d)
            rep.add_upper(f"two_component[n1={n1},r2-r1={d:.6g}]", res, tol)
    return rep


def suite_lemma11(
    n: int = 64, beta: int = 1, num_samples: int = 2000, chains: int = 2, seed: int = 11,
    gamma: float = 1.0, c0: float = 0.3, ks=(2, 3),
) -> VerifyReport:
    rep = VerifyReport("lemma11")
    per_chain = -(-num_samples // chains)
    results = run_chains(beta, n, per_chain, chains=chains, seed=seed)
    samples = np.concatenate([r.samples for r in results])[:num_samples]
    for k in ks:
        r = lemma11_check(samples, gamma, c0, k, beta, n)
        rep.add_report(r.label, r)
    return rep


_SUITE_FUNCS = {
    "identities": suite_identities,
    "quadrature": suite_quadrature,
    "lemma10": suite_lemma10,
    "correlation": suite_correlation,
    "lemma11": suite_lemma11,
}


def run_suite(name: str, **kwargs) -> VerifyReport:
    if name not in _SUITE_FUNCS:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    return _SUITE_FUNCS[name](**kwargs)
