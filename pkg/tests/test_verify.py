from __future__ import annotations

import json
import math

import pytest

from smallgaps import verify as vf


def test_check_status_rule():
    assert vf.Check("a", 1.0, 1.0, 0.0, 0.0).passed
    assert vf.Check("b", 1.0, 0.9, -0.1, 0.2).passed
    assert not vf.Check("c", 1.0, 0.9, -0.1, 0.05).passed


def test_report_overall():
    rep = vf.VerifyReport("x")
    rep.add_upper("ok", 0.1, 0.2)
    assert rep.passed
    rep.add_upper("bad", 0.3, 0.2)
    d = rep.as_dict()
    assert d["overall"] == "fail"
    assert [c["status"] for c in d["checks"]] == ["pass", "fail"]


def test_text_mirrors_json():
    d = vf.suite_identities().as_dict()
    text = vf.render_text(d)
    lines = text.splitlines()
    assert lines[0] == f"suite: {d['suite']}"
    assert lines[-1] == f"overall: {d['overall']}"
    body = lines[2:-1]
    assert len(body) == len(d["checks"])
    for line, c in zip(body, d["checks"]):
        fields = line.split()
        assert fields[0] == c["id"] and fields[1] == c["status"]
        assert [float(f) for f in fields[2:]] == [c["lhs"], c["rhs"], c["margin"], c["tolerance"]]
    json.dumps(d)


def test_identities_suite():
    rep = vf.run_suite("identities")
    assert rep.passed
    ids = [c.id for c in rep.checks]
    assert all(f"lemma5_residual[{b}]" in ids for b in range(1, 9))


def test_quadrature_suite():
    rep = vf.run_suite("quadrature")
    assert rep.passed
    assert len(rep.checks) == len(vf.QUADRATURE_CASES)


def test_correlation_suite():
    rep = vf.run_suite("correlation")
    assert rep.passed
    assert len(rep.checks) == 2 * len(vf.CORRELATION_SHIFTS)


def test_random_instances_respect_preconditions():
    inst = vf.random_lemma10_instances(60)
    assert len(inst) == 60
    for thetas, n, beta, c, A, I in inst:
        assert 1 <= len(thetas) <= 3 and n >= len(thetas) and 1 <= beta <= 3
        assert 0 < n * beta * c < 1
        assert 0 <= A.lo <= A.hi <= c
    again = vf.random_lemma10_instances(60)
    for a, b in zip(inst, again):
        assert a[0].tolist() == b[0].tolist() and a[1:] == b[1:]


def test_inequality_suite_small():
    rep = vf.suite_lemma10(count=5)
    assert rep.passed
    assert len(rep.checks) == 40


def test_unknown_suite():
    with pytest.raises(KeyError):
        vf.run_suite("nope")
