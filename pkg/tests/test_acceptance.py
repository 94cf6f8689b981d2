"""
Long-horizon behaviour checks. Deselected by default; run with ``pytest -m slow``.
"""
import math
import os
import time

import numpy as np
import pytest

from app.bounds import fundamental_lb, hgms_lb
from app.network import NetworkConfig, sigma_rate_vector
from app.schedulers import AccessDistribution, SchedulerKind, WeightFunction
from app.sim import SimConfig, run_grid, run_once, throughput_stderr

pytestmark = pytest.mark.slow

WORKERS = max((os.cpu_count() or 1) - 1, 1)
HALF_FD = NetworkConfig(5, 5)
ALL_HD = NetworkConfig(0, 10)
LOG1P = WeightFunction.named('log1p')
DISTRIBUTED = ['qcsma', 'hgms-r', 'hgms', 'hgms-e']

# Bonferroni over 6 schedulers x 20 links at 1% family-wise error leaves
# 8.3e-5 two-sided per link; the Student t quantile for 3 x 9 batch-means
# degrees of freedom at that level is about 4.65.
THROUGHPUT_Z = 4.7

# Q-CSMA mean queue over (H-GMS-R, H-GMS, H-GMS-E), f = log1p
DELAY_RATIOS = {0.8: (14.4, 28.4, 52.8), 0.98: (8.5, 16.2, 25.4)}


def _sim(kind, rho, cfg=HALF_FD, f=LOG1P, horizon=300_000, replications=1, sigma=1.0, **kwargs):
    return SimConfig(
        cfg=cfg, lam=sigma_rate_vector(cfg, sigma, rho), scheduler=SchedulerKind(kind), f=f,
        horizon=horizon, replications=replications, **kwargs
    )


def _grid(configs):
    return run_grid(configs, num_workers=WORKERS, show_progress=False)


def test_stability_near_capacity():
    kinds = ['mws', 'gms', 'qcsma', 'hgms', 'hgms-r', 'hgms-e']
    configs = [_sim(kind, 0.95, horizon=1_000_000, replications=3) for kind in kinds]
    for sc, res in zip(configs, _grid(configs)):
        label = sc.scheduler.label
        middle = sum(run.middle_decile_mean for run in res.runs)
        last = sum(run.last_decile_mean for run in res.runs)
        assert 0.75 <= last / middle <= 1.25, label

        n = len(res.runs)
        stderrs = [throughput_stderr(run.served_by_decile, sc.horizon) for run in res.runs]
        for l, lam in enumerate(sc.lam):
            batch = math.sqrt(sum(se[l] ** 2 for se in stderrs)) / n
            binomial = math.sqrt(lam * (1 - lam) / (n * sc.horizon))
            tolerance = THROUGHPUT_Z * max(batch, binomial)
            assert abs(res.per_link_throughput[l] - lam) <= tolerance, (label, l)


@pytest.mark.parametrize('kind', ['mws', 'gms'])
def test_centralized_run_time(kind):
    sc = _sim(kind, 0.95, horizon=1_000_000)
    start = time.perf_counter()
    run_once(sc, sc.master_seed)
    assert time.perf_counter() - start < 10.0


def test_hgms_respects_its_bounds():
    alpha = AccessDistribution.uniform(HALF_FD.n_users)
    rhos = (0.5, 0.6, 0.7, 0.8, 0.9, 0.95)
    configs = [_sim('hgms', rho) for rho in rhos]
    for sc, res in zip(configs, _grid(configs)):
        improved = hgms_lb(HALF_FD, sc.lam, None, alpha, LOG1P)
        assert improved >= fundamental_lb(HALF_FD, sc.lam)
        assert res.mean_queue.mean >= 0.95 * improved, sc.lam[0]


def test_centralized_schedulers_meet_all_hd_bound():
    rhos = (0.5, 0.7, 0.9, 0.95)
    configs = [_sim(kind, rho, cfg=ALL_HD, horizon=400_000) for kind in ('gms', 'mws') for rho in rhos]
    for sc, res in zip(configs, _grid(configs)):
        bound = fundamental_lb(ALL_HD, sc.lam)
        assert res.mean_queue.mean == pytest.approx(bound, rel=0.10), sc


@pytest.mark.parametrize('rho, horizon', [(0.8, 500_000), (0.98, 1_000_000)])
def test_delay_improvement_over_qcsma(rho, horizon):
    configs = [_sim(kind, rho, horizon=horizon) for kind in DISTRIBUTED]
    qcsma, hgms_r, hgms, hgms_e = (res.mean_queue.mean for res in _grid(configs))
    assert qcsma > hgms_r > hgms > hgms_e
    for mean, expected in zip((hgms_r, hgms, hgms_e), DELAY_RATIOS[rho]):
        assert expected / 2 <= qcsma / mean <= 2 * expected, (rho, qcsma, mean)


def test_delay_sweep_qcsma_trails_hgms_r():
    rhos = np.linspace(0.5, 0.95, 10).tolist()
    configs = [_sim(kind, rho) for rho in rhos for kind in ('qcsma', 'hgms-r')]
    means = [res.mean_queue.mean for res in _grid(configs)]
    for rho, qcsma, hgms_r in zip(rhos, means[0::2], means[1::2]):
        assert qcsma >= 9 * hgms_r, rho


def test_qcsma_treats_directions_alike():
    results = _grid([_sim('qcsma', 0.7, horizon=1_000_000, replications=4)])
    assert 0.9 <= results[0].ul_dl_fairness.mean <= 1.1


def test_hgms_fd_users_wait_half_as_long():
    results = _grid([_sim('hgms', 0.7, horizon=500_000, replications=2)])
    assert 0.4 <= results[0].fd_hd_fairness.mean <= 0.6


def test_hgms_fairness_linear_in_sigma():
    sigmas = np.linspace(1.0, 2.0, 10)
    configs = [_sim('hgms', 0.8, sigma=float(s)) for s in sigmas]
    ratios = [res.fd_hd_fairness.mean for res in _grid(configs)]
    assert np.corrcoef(sigmas, ratios)[0, 1] > 0.98


@pytest.mark.xfail(
    strict=False,
    reason="H-GMS-E settles near 0.65 here; the AP-side UL estimates do not balance FD and HD users",
)
def test_hgms_e_balances_users_at_sigma_two():
    results = _grid([_sim('hgms-e', 0.95, horizon=1_000_000, sigma=2.0)])
    assert 0.8 <= results[0].fd_hd_fairness.mean <= 1.2


def test_hgms_low_load_delay():
    results = _grid([_sim('hgms', 0.5, horizon=500_000, replications=2)])
    assert results[0].mean_queue.mean < 10


def test_aggressive_weights_cut_delay():
    names = ['half-log', 'sqrt', 'linear']
    configs = [_sim('hgms', 0.8, f=WeightFunction.named(name)) for name in names]
    half_log, sqrt, linear = (res.mean_queue.mean for res in _grid(configs))
    assert 5 * sqrt <= half_log
    assert 5 * linear <= half_log
