import itertools

import numpy as np
import pytest

from app.network import NetworkConfig, Schedule, enumerate_schedules, is_feasible, queue_step
from app.schedulers import (
    AccessDistribution, CsmaState, HgmsParams, Scheduler, SchedulerKind, WeightFunction,
    gms, hgms_step, mws, qcsma_step
)
from app.utils.errors import ConfigurationError

LOG1P = WeightFunction.named('log1p')


def _hgms(state, q, cfg, kind, rng, alpha=None, alpha_th=None):
    if alpha is None and kind is not SchedulerKind.HGMS_E:
        alpha = AccessDistribution.uniform(cfg.n_users)
    return hgms_step(state, q, cfg, LOG1P, kind, rng, HgmsParams(alpha, alpha_th))


def test_mws_prefers_fd_pair(scripted):
    cfg = NetworkConfig(1, 1)
    x = mws([3, 2, 4, 1], cfg, scripted([0.0]))
    assert x.links == (0, 1)
    assert x.weight([3, 2, 4, 1]) == 5


def test_mws_all_hd(scripted):
    assert mws([4, 1, 2, 2], NetworkConfig(0, 2), scripted([0.5])).links == (0,)


def test_mws_all_zero_ties_uniformly(scripted):
    cfg = NetworkConfig(1, 1)
    assert mws([0, 0, 0, 0], cfg, scripted([0.0])).links == ()
    # 6 tied schedules, the last of which is the FD pair
    assert mws([0, 0, 0, 0], cfg, scripted([0.99])).links == (0, 1)


def test_gms_serves_longest(scripted):
    assert gms([3, 2, 4, 1], NetworkConfig(1, 1), scripted([0.0])).links == (2,)
    assert gms([0, 0, 1, 9, 0, 0], NetworkConfig(2, 1), scripted([0.0])).links == (2, 3)


def test_gms_all_zero(scripted):
    cfg = NetworkConfig(1, 1)
    assert gms([0] * 4, cfg, scripted([0.0])).links == (0, 1)
    assert gms([0] * 4, cfg, scripted([0.99])).links == (3,)


def test_mws_unique_winner_consumes_one_draw(scripted):
    cfg = NetworkConfig(2, 2)
    for q, links in (([1, 8, 2, 2, 0, 7, 3, 0], (0, 1)), ([1, 2, 2, 2, 0, 7, 3, 0], (5,))):
        rng = scripted([0.7])
        assert mws(q, cfg, rng).links == links
        assert rng.consumed == 1
        rng = scripted([0.7])
        assert gms(q, cfg, rng).links == links
        assert rng.consumed == 1


def test_mws_ties_keep_link_then_pair_order(scripted):
    cfg = NetworkConfig(1, 1)
    # winners: link 2, then the FD pair
    assert mws([2, 3, 5, 0], cfg, scripted([0.4])).links == (2,)
    assert mws([2, 3, 5, 0], cfg, scripted([0.6])).links == (0, 1)


def test_centralized_match_brute_force():
    rng = np.random.default_rng(2024)
    for _ in range(1000):
        n_users = int(rng.integers(1, 5))
        n_fd = int(rng.integers(0, n_users + 1))
        cfg = NetworkConfig(n_fd, n_users - n_fd)
        q = rng.integers(0, 21, cfg.n_links).tolist()

        best = max(x.weight(q) for x in enumerate_schedules(cfg))
        x = mws(q, cfg, rng)
        assert is_feasible(cfg, x)
        assert x.weight(q) == best

        y = gms(q, cfg, rng)
        assert is_feasible(cfg, y)
        assert any(q[l] == max(q) for l in y.links)


def test_qcsma_release(scripted):
    cfg = NetworkConfig(0, 3)
    state = CsmaState(4, Schedule((4,), cfg.n_links))
    # 0.3 makes link 4 the decision link, 0.99 fails its coin
    x, new_state = qcsma_step(state, [0, 0, 0, 0, 2, 0], cfg, LOG1P, scripted([0.3, 0.99]))
    assert not x
    assert new_state.initiator is None
    assert not new_state.last_schedule


def test_qcsma_fd_dl_initiator_pulls_pair(scripted):
    cfg = NetworkConfig(1, 1)
    rng = scripted([0.15, 0.0])
    x, state = qcsma_step(CsmaState.initial(cfg), [0] * 4, cfg, LOG1P, rng)
    assert x.links == (0, 1)
    assert state.initiator == 1
    assert rng.consumed == 2


def test_qcsma_no_decision_link(scripted):
    cfg = NetworkConfig(1, 1)
    busy = CsmaState(1, Schedule((0, 1), cfg.n_links))
    for state in (CsmaState.initial(cfg), busy):
        rng = scripted([0.9])
        x, new_state = qcsma_step(state, [5] * 4, cfg, LOG1P, rng)
        assert x == state.last_schedule
        assert new_state is state
        assert rng.consumed == 1


def test_qcsma_busy_channel_ignores_other_links(scripted):
    cfg = NetworkConfig(1, 1)
    state = CsmaState(1, Schedule((0, 1), cfg.n_links))
    # 0.05 selects the FD counterpart of the initiator, which may not act
    rng = scripted([0.05])
    x, new_state = qcsma_step(state, [0] * 4, cfg, LOG1P, rng)
    assert x.links == (0, 1)
    assert new_state is state
    assert rng.consumed == 1

    rng = scripted([0.15, 0.0])
    x, new_state = qcsma_step(state, [0] * 4, cfg, LOG1P, rng)
    assert x.links == (0, 1)
    assert new_state.initiator == 1
    assert rng.consumed == 2


def _initiations(step, cfg, slots, seed):
    rng = np.random.default_rng(seed)
    counts = [0] * cfg.n_links
    for _ in range(slots):
        _, state = step(rng)
        if state.initiator is not None:
            counts[state.initiator] += 1
    return counts


def test_qcsma_initiators_are_uniform():
    cfg = NetworkConfig(1, 2)
    q = [0] * cfg.n_links
    idle = CsmaState.initial(cfg)
    slots = 100_000
    counts = _initiations(lambda rng: qcsma_step(idle, q, cfg, LOG1P, rng), cfg, slots, 5)

    n = cfg.n_links
    decided = (1 - 1 / n) ** (n - 1)
    started = sum(counts)
    # coin succeeds w.p. 1/2 at q = 0
    p_start = 0.5 * decided
    assert abs(started / slots - p_start) <= 3 * np.sqrt(p_start * (1 - p_start) / slots)
    se = np.sqrt((1 / n) * (1 - 1 / n) / started)
    for c in counts:
        assert abs(c / started - 1 / n) <= 3 * se


def test_hgms_longest_dl_lowest_index_wins(scripted):
    cfg = NetworkConfig(0, 4)
    q = [0, 5, 0, 9, 0, 9, 0, 2]
    # poll the AP (0.9 > 4/5), then transmit
    x, state = _hgms(CsmaState.initial(cfg), q, cfg, SchedulerKind.HGMS, scripted([0.9, 0.0]))
    assert x.links == (3,)
    assert state.initiator == 3


def test_hgms_hd_dl_alone(scripted):
    cfg = NetworkConfig(1, 1)
    x, _ = _hgms(CsmaState.initial(cfg), [0, 0, 0, 4], cfg, SchedulerKind.HGMS, scripted([0.9, 0.0]))
    assert x.links == (3,)


def test_hgms_fd_ul_pulls_pair(scripted):
    cfg = NetworkConfig(2, 2)
    x, state = _hgms(CsmaState.initial(cfg), [0] * 8, cfg, SchedulerKind.HGMS, scripted([0.1, 0.0]))
    assert x.links == (0, 1)
    assert state.initiator == 0


def test_hgms_keeps_initiator(scripted):
    cfg = NetworkConfig(2, 2)
    state = CsmaState(2, Schedule((2, 3), cfg.n_links))
    rng = scripted([0.0])
    x, new_state = _hgms(state, [0, 30, 0, 0, 0, 0, 0, 50], cfg, SchedulerKind.HGMS, rng)
    assert x.links == (2, 3)
    assert new_state.initiator == 2
    assert rng.consumed == 1


def test_hgms_r_draw_order(scripted):
    cfg = NetworkConfig(0, 4)
    rng = scripted([0.6, 0.9, 0.0])
    x, _ = _hgms(CsmaState.initial(cfg), [0] * 8, cfg, SchedulerKind.HGMS_R, rng)
    assert x.links == (5,)
    assert rng.consumed == 3


def test_hgms_e_refreshes_estimates(scripted):
    cfg = NetworkConfig(0, 2)
    state = CsmaState(0, Schedule((0,), cfg.n_links), (0, 0))
    x, new_state = _hgms(state, [6, 0, 3, 0], cfg, SchedulerKind.HGMS_E, scripted([0.99]), alpha_th=0.01)
    assert not x
    assert new_state.ul_estimates == (6, 0)
    assert new_state.initiator is None


def test_hgms_e_polls_on_estimates(scripted):
    cfg = NetworkConfig(0, 2)
    state = CsmaState.initial(cfg, with_estimates=True)
    # estimates are all zero, so DL2 (q=8) dominates the polling distribution
    x, _ = _hgms(state, [5, 0, 5, 8], cfg, SchedulerKind.HGMS_E, scripted([0.5, 0.0]), alpha_th=0.01)
    assert x.links == (3,)


def test_hgms_rejects_malformed_alpha(scripted):
    cfg = NetworkConfig(1, 1)
    with pytest.raises(ConfigurationError):
        _hgms(CsmaState.initial(cfg), [0] * 4, cfg, SchedulerKind.HGMS, scripted([0.5]),
              alpha=AccessDistribution.uniform(3))
    with pytest.raises(ConfigurationError):
        Scheduler(SchedulerKind.HGMS, cfg, LOG1P)
    with pytest.raises(ConfigurationError):
        Scheduler(SchedulerKind.HGMS_E, cfg, LOG1P, alpha_th=1.0)


def test_csma_state_invariant():
    with pytest.raises(ValueError):
        CsmaState(None, Schedule((0,), 4))
    with pytest.raises(ValueError):
        CsmaState(0, Schedule.empty(4))


@pytest.mark.parametrize('kind', list(SchedulerKind))
def test_schedules_stay_feasible(kind):
    cfg = NetworkConfig(2, 2)
    scheduler = Scheduler(
        kind, cfg, LOG1P,
        alpha=AccessDistribution.uniform(cfg.n_users),
        alpha_th=0.01 if kind is SchedulerKind.HGMS_E else None,
    )
    rng = np.random.default_rng(11)
    state = scheduler.initial_state()
    q = [0] * cfg.n_links
    for _ in range(2000):
        x, state = scheduler.step(state, q, rng)
        assert is_feasible(cfg, x)
        assert (state.initiator is None) == (not state.last_schedule)
        a = (rng.random(cfg.n_links) < 0.1).astype(int).tolist()
        q = list(queue_step(q, a, x))


@pytest.mark.parametrize('distributed', [False, True])
def test_distributed_initiation_polling(scripted, distributed):
    cfg = NetworkConfig(0, 2)
    alpha = AccessDistribution.from_users([0.4, 0.4])
    scheduler = Scheduler(SchedulerKind.HGMS, cfg, LOG1P, alpha=alpha, distributed_initiation=distributed)
    # emulated shares are (0.24, 0.24), so 0.5 polls the AP (DL1) instead of UL2
    x, _ = scheduler.step(scheduler.initial_state(), [0] * 4, scripted([0.5, 0.0]))
    assert x.links == ((1,) if distributed else (2,))


def test_kinds_and_labels():
    assert [k.label for k in SchedulerKind] == ['MWS', 'GMS', 'Q-CSMA', 'H-GMS', 'H-GMS-R', 'H-GMS-E']
    assert all(k.is_centralized for k in (SchedulerKind.MWS, SchedulerKind.GMS))
    assert list(itertools.compress(SchedulerKind, [k.is_hgms for k in SchedulerKind])) == [
        SchedulerKind.HGMS, SchedulerKind.HGMS_R, SchedulerKind.HGMS_E
    ]


def test_hgms_polls_with_fixed_alpha():
    cfg = NetworkConfig(1, 2)
    alpha = AccessDistribution.from_users([0.2, 0.3, 0.1])
    q = [0] * cfg.n_links
    idle = CsmaState.initial(cfg)
    counts = _initiations(
        lambda rng: _hgms(idle, q, cfg, SchedulerKind.HGMS, rng, alpha=alpha), cfg, 100_000, 9
    )
    started = sum(counts)
    # all DLs tie at 0, so the AP always nominates DL1 (link 1)
    expected = {0: 0.2, 2: 0.3, 4: 0.1, 1: 0.4}
    for link, share in expected.items():
        se = np.sqrt(share * (1 - share) / started)
        assert abs(counts[link] / started - share) <= 3 * se, link
    assert counts[3] == counts[5] == 0


def test_hgms_initiates_only_the_longest_dl():
    cfg = NetworkConfig(2, 3)
    rng = np.random.default_rng(21)
    seen = 0
    for _ in range(3000):
        q = [0] * cfg.n_links
        q[0::2] = rng.integers(0, 30, cfg.n_users).tolist()
        q[1::2] = rng.permutation(cfg.n_users).tolist()
        _, state = _hgms(CsmaState.initial(cfg), q, cfg, SchedulerKind.HGMS, rng)
        if state.initiator is not None and state.initiator % 2 == 1:
            seen += 1
            assert q[state.initiator] == cfg.n_users - 1
    assert seen > 0


# HD users 1..3 of NetworkConfig(1, 3) relabelled as 3, 1, 2
HD_PERM = (0, 3, 1, 2)


def _relabel_link(link):
    return 2 * HD_PERM[link // 2] + link % 2


def _relabel_queues(q):
    out = [0] * len(q)
    for link, v in enumerate(q):
        out[_relabel_link(link)] = v
    return out


@pytest.mark.parametrize('kind', list(SchedulerKind))
def test_hd_relabeling_invariance(kind):
    cfg = NetworkConfig(1, 3)
    q = [3, 4, 9, 6, 2, 12, 5, 7]
    q_relabelled = _relabel_queues(q)
    scheduler = Scheduler(
        kind, cfg, LOG1P,
        alpha=AccessDistribution.uniform(cfg.n_users),
        alpha_th=0.01 if kind is SchedulerKind.HGMS_E else None,
    )

    def outcomes(queues, relabel, seed, slots):
        rng = np.random.default_rng(seed)
        counts = {}
        for _ in range(slots):
            x, _ = scheduler.step(scheduler.initial_state(), queues, rng)
            key = tuple(sorted(map(_relabel_link, x.links))) if relabel else x.links
            counts[key] = counts.get(key, 0) + 1
        return counts

    if kind.is_centralized:
        # queue values are distinct, so the winner is unique
        assert outcomes(q_relabelled, False, 1, 1) == outcomes(q, True, 2, 1)
        return

    original = outcomes(q, True, 3, 20_000)
    relabelled = outcomes(q_relabelled, False, 4, 20_000)
    assert original.keys() == relabelled.keys()
    for key, c1 in original.items():
        c2 = relabelled[key]
        assert abs(c1 - c2) <= 4 * np.sqrt(c1 + c2), (key, c1, c2)
