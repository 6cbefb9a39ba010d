from __future__ import annotations

import logging
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from smallgaps import sampler as sm
from smallgaps.common import DomainError
from smallgaps.gaps import cyclic_gaps


def test_init_state_examples():
    np.testing.assert_allclose(sm.init_state(1), [0.0], atol=1e-15)
    np.testing.assert_allclose(sm.init_state(2), [-math.pi / 2, math.pi / 2])
    np.testing.assert_allclose(cyclic_gaps(sm.init_state(4)), [math.pi / 2] * 4)


def test_log_weight_delta_examples():
    assert sm.log_weight_delta([0.3], 0, 2.0, 2) == 0.0
    cfg = np.array([0.0, math.pi / 2])
    assert sm.log_weight_delta(cfg, 1, math.pi / 2, 3) == 0.0
    assert sm.log_weight_delta(cfg, 1, math.pi, 2) == pytest.approx(math.log(2.0), rel=1e-14)
    assert sm.log_weight_delta(cfg, 1, 0.0, 1) == -math.inf


@settings(max_examples=50, deadline=None)
@given(st.integers(2, 12), st.integers(1, 4), st.integers(0, 10**6))
def test_log_weight_delta_matches_density(n, beta, seed):
    rng = np.random.default_rng(seed)
    cfg = np.sort(rng.uniform(-math.pi, math.pi, n))
    i = int(rng.integers(n))
    new = float(rng.uniform(-math.pi, math.pi))

    def log_density(a):
        d = a[:, None] - a[None, :]
        iu = np.triu_indices(a.size, 1)
        return beta * np.sum(np.log(np.abs(2 * np.sin(d[iu] / 2))))

    moved = cfg.copy()
    moved[i] = new
    assert sm.log_weight_delta(cfg, i, new, beta) == pytest.approx(
        log_density(moved) - log_density(cfg), abs=1e-9
    )


def test_adapt_sigma_rules():
    assert sm.adapt_sigma(0.5, 0.4) == 0.5
    assert sm.adapt_sigma(0.5, 0.8) == pytest.approx(0.55)
    assert sm.adapt_sigma(0.5, 0.1) == pytest.approx(0.45)
    assert sm.adapt_sigma(3.0, 0.9) == sm.SIGMA_MAX


def test_chain_config_validation():
    cfg = sm.ChainConfig(2, 64)
    assert cfg.sigma == pytest.approx(2.5 * 2 * math.pi / 64)
    assert cfg.burnin_sweeps == 50 * 64
    assert sm.ChainConfig(2, 2).sigma < math.pi
    with pytest.raises(DomainError):
        sm.ChainConfig(2, 8, sigma=math.pi)
    with pytest.raises(DomainError):
        sm.ChainConfig(2, 8, thin_sweeps=0)
    with pytest.raises(DomainError):
        sm.ChainConfig(2, 8, seed=-1)
    with pytest.raises(DomainError):
        sm.ChainConfig(2, 8, backend="cmv")


def test_mix64_distinct_streams():
    seeds = {sm.mix64(s, c) for s in range(20) for c in range(20)}
    assert len(seeds) == 400
    assert all(0 <= s < 2**64 for s in seeds)


def test_single_particle_always_accepts():
    state = sm.ChainState.start(1, np.random.default_rng(0))
    for _ in range(5):
        sm.metropolis_sweep(state, 2, 1.0)
    assert state.accepted == state.proposed == 5


def test_sweep_counters():
    state = sm.ChainState.start(8, np.random.default_rng(0))
    state.run(10, 2, 0.5)
    assert state.sweeps_done == 10
    assert state.proposed == 80
    assert 0 <= state.accepted <= state.proposed


def test_sample_ensemble_empty():
    assert list(sm.sample_ensemble(sm.ChainConfig(2, 4), 0)) == []


def test_samples_satisfy_invariants():
    res = sm.run_chain(sm.ChainConfig(1, 16, seed=3, burnin_sweeps=100), 200)
    assert res.samples.shape == (200, 16)
    for cfg in res.samples:
        sm.validate_config(cfg)
        assert cyclic_gaps(cfg).sum() == pytest.approx(2 * math.pi, abs=1e-9)


def test_determinism_and_chain_independence():
    a = sm.run_chain(sm.ChainConfig(2, 10, seed=5, chain_index=1, burnin_sweeps=50), 30)
    b = sm.run_chain(sm.ChainConfig(2, 10, seed=5, chain_index=1, burnin_sweeps=50), 30)
    c = sm.run_chain(sm.ChainConfig(2, 10, seed=5, chain_index=2, burnin_sweeps=50), 30)
    assert a.samples.tobytes() == b.samples.tobytes()
    assert a.sigma_final == b.sigma_final
    assert not np.array_equal(a.samples, c.samples)


def test_stream_equals_run_chain():
    cfg = sm.ChainConfig(2, 6, seed=9, burnin_sweeps=40)
    streamed = np.array(list(sm.sample_ensemble(cfg, 100)))
    direct = sm.run_chain(sm.ChainConfig(2, 6, seed=9, burnin_sweeps=40), 100).samples
    np.testing.assert_array_equal(streamed, direct)


def test_sigma_frozen_after_burn_in():
    chain = sm.MetropolisChain(sm.ChainConfig(2, 32, seed=1, burnin_sweeps=200))
    chain.burn_in()
    sigma = chain.sigma
    list(chain.emit(20))
    assert chain.sigma == sigma


def test_acceptance_in_window_after_burn_in(caplog):
    with caplog.at_level(logging.WARNING, logger="smallgaps.sampler"):
        res = sm.run_chain(sm.ChainConfig(2, 64, seed=2), 50)
    assert 0.25 <= res.acceptance_rate <= 0.55
    assert not caplog.records


def test_run_chains_order():
    results = sm.run_chains(1, 5, 4, chains=3, seed=8, burnin_sweeps=10)
    assert len(results) == 3
    single = sm.run_chain(sm.ChainConfig(1, 5, seed=8, chain_index=2, burnin_sweeps=10), 4)
    np.testing.assert_array_equal(results[2].samples, single.samples)


def test_validate_config_rejects():
    with pytest.raises(DomainError):
        sm.validate_config([0.2, 0.1])
    with pytest.raises(DomainError):
        sm.validate_config([math.pi])
    with pytest.raises(DomainError):
        sm.validate_config([])
