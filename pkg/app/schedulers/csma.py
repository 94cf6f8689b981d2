"""
Distributed CSMA-style schedulers: the Q-CSMA baseline and the H-GMS family.

Both share one mechanism. An initiator link transmits with its logistic
transmission probability, pulling in its FD counterpart, and a failed coin
releases the channel.

H-GMS lets the AP poll an initiator whenever the channel was idle, and the
initiator keeps re-drawing its coin for as long as the schedule stays
nonempty. Q-CSMA has no AP coordination: each slot a decision link is formed
by contention among all 2N links and only that link may act. An idle channel
takes the decision link as initiator; a busy channel changes only when the
decision link is the current initiator.

Per slot, random draws are consumed in a fixed order: DL nomination
(H-GMS-R only), initiator or decision link, transmission coin.
"""
from bisect import bisect_right
from typing import Optional, Sequence

from app.network.topology import NetworkConfig, Schedule
from app.schedulers.access import AccessDistribution, emulated_polling, hgms_access_dist_e
from app.schedulers.state import CsmaState, HgmsParams, RandomSource, SchedulerKind
from app.schedulers.weights import WeightFunction, tx_prob


def _transmit(state: CsmaState,
              initiator: int,
              q: Sequence[int],
              cfg: NetworkConfig,
              f: WeightFunction,
              rng: RandomSource,
              ul_estimates: Optional[tuple[int, ...]]) -> tuple[Schedule, CsmaState]:
    if rng.random() < tx_prob(f, q[initiator]):
        schedule = Schedule.for_link(cfg, initiator)
        return schedule, CsmaState(initiator, schedule, ul_estimates)
    if not state.last_schedule and state.ul_estimates == ul_estimates:
        return state.last_schedule, state
    return Schedule.empty(cfg.n_links), CsmaState(None, Schedule.empty(cfg.n_links), ul_estimates)


def _contention_winner(rng: RandomSource, n_links: int) -> Optional[int]:
    # every link sends an intent w.p. 1/n; the decision link exists iff exactly one did
    share = (1.0 / n_links) * (1.0 - 1.0 / n_links) ** (n_links - 1)
    u = rng.random()
    if u >= n_links * share:
        return None
    return min(int(u / share), n_links - 1)


def qcsma_step(state: CsmaState,
               q: Sequence[int],
               cfg: NetworkConfig,
               f: WeightFunction,
               rng: RandomSource) -> tuple[Schedule, CsmaState]:
    """
    One slot of the Q-CSMA baseline: all 2N links contend with equal access
    probability, without AP-side consolidation of the DLs.

    One draw forms the decision link. With none the schedule is carried over.
    On an idle channel the decision link becomes initiator and draws its
    coin. On a busy channel only the current initiator may act, re-drawing
    its coin; any other decision link leaves the schedule untouched.

    Args:
        state (CsmaState): State after the previous slot.
        q (Sequence[int]): Queue lengths at the beginning of the slot.
        cfg (NetworkConfig): The network.
        f (WeightFunction): Weight function of the transmission probability.
        rng (RandomSource): Random stream.

    Returns:
        tuple[Schedule, CsmaState]: The slot's schedule and the new state.
    """
    decision = _contention_winner(rng, cfg.n_links)
    if decision is None:
        return state.last_schedule, state
    if state.last_schedule and decision != state.initiator:
        return state.last_schedule, state
    return _transmit(state, decision, q, cfg, f, rng, state.ul_estimates)


def _longest_dl(q: Sequence[int], n_users: int) -> int:
    # lowest user index wins ties
    best_user, best = 0, q[1]
    for u in range(1, n_users):
        if q[2 * u + 1] > best:
            best_user, best = u, q[2 * u + 1]
    return best_user


def _refresh_estimates(state: CsmaState, q: Sequence[int]) -> Optional[tuple[int, ...]]:
    # a UL that transmitted last slot reported its queue, which is q now
    estimates = state.ul_estimates
    if estimates is None:
        return None
    reported = [l // 2 for l in state.last_schedule.links if l % 2 == 0]
    if not reported:
        return estimates
    updated = list(estimates)
    for u in reported:
        updated[u] = q[2 * u]
    return tuple(updated)


def _polling_distribution(kind: SchedulerKind,
                          params: HgmsParams,
                          ul_estimates: Optional[tuple[int, ...]],
                          q_dl_star: int,
                          cfg: NetworkConfig) -> AccessDistribution:
    if kind is SchedulerKind.HGMS_E:
        assert ul_estimates is not None and params.alpha_th is not None
        return hgms_access_dist_e(ul_estimates, q_dl_star, cfg.n_users, params.alpha_th)
    assert params.alpha is not None
    if params.distributed_initiation:
        return emulated_polling(params.alpha)
    return params.alpha


def hgms_step(state: CsmaState,
              q: Sequence[int],
              cfg: NetworkConfig,
              f: WeightFunction,
              kind: SchedulerKind,
              rng: RandomSource,
              params: HgmsParams,
              polling: Optional[AccessDistribution] = None) -> tuple[Schedule, CsmaState]:
    """
    One slot of H-GMS, H-GMS-R or H-GMS-E.

    On an idle channel the AP nominates one DL (the longest for H-GMS and
    H-GMS-E, a uniform one for H-GMS-R) and polls an initiator among the N ULs
    and that DL. Otherwise the previous initiator is kept. H-GMS-E refreshes
    the estimate of every UL that transmitted in the previous slot.

    Args:
        state (CsmaState): State after the previous slot.
        q (Sequence[int]): Queue lengths at the beginning of the slot.
        cfg (NetworkConfig): The network.
        f (WeightFunction): Weight function of the transmission probability.
        kind (SchedulerKind): Which member of the family.
        rng (RandomSource): Random stream.
        params (HgmsParams): Access parameters.
        polling (Optional[AccessDistribution]): Precomputed fixed polling
            distribution; derived from ``params`` when omitted.

    Returns:
        tuple[Schedule, CsmaState]: The slot's schedule and the new state.

    Raises:
        ConfigurationError: If ``params`` do not fit ``kind``.
    """
    if not kind.is_hgms:
        raise ValueError(f"{kind.label} is not an H-GMS variant")
    params.check(kind, cfg)
    estimates = _refresh_estimates(state, q)

    if state.last_schedule:
        initiator = state.initiator
        assert initiator is not None
        return _transmit(state, initiator, q, cfg, f, rng, estimates)

    n = cfg.n_users
    if kind is SchedulerKind.HGMS_R:
        i_star = min(int(rng.random() * n), n - 1)
    else:
        i_star = _longest_dl(q, n)
    if polling is None or kind is SchedulerKind.HGMS_E:
        polling = _polling_distribution(kind, params, estimates, q[2 * i_star + 1], cfg)

    polled = bisect_right(polling.cumulative(), rng.random())
    initiator = 2 * polled if polled < n else 2 * i_star + 1
    return _transmit(state, initiator, q, cfg, f, rng, estimates)
