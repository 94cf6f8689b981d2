"""
Centralized schedulers: max-weight and greedy maximal scheduling.
"""
from operator import add
from typing import Sequence

from app.network.topology import NetworkConfig, Schedule
from app.schedulers.state import RandomSource


def _pick(rng: RandomSource, candidates: list):
    return candidates[min(int(rng.random() * len(candidates)), len(candidates) - 1)]


def _mws_winners(q: Sequence[int], pair_weights: list[int], best: int) -> list[tuple[int, ...]]:
    # order: empty (only at best 0), single links, FD pairs
    winners: list[tuple[int, ...]] = [()] if best == 0 else []
    winners.extend((l,) for l, w in enumerate(q) if w == best)
    winners.extend((2 * u, 2 * u + 1) for u, w in enumerate(pair_weights) if w == best)
    return winners


def mws(q: Sequence[int], cfg: NetworkConfig, rng: RandomSource) -> Schedule:
    """
    Max-weight schedule over S.

    Args:
        q (Sequence[int]): Queue lengths.
        cfg (NetworkConfig): The network.
        rng (RandomSource): Random stream for the tie-break.

    Returns:
        Schedule: A schedule maximizing the served queue length, chosen
            uniformly among all maximizers (the empty schedule ties only when
            every queue is empty).
    """
    n_pair = 2 * cfg.n_fd
    pair_weights = list(map(add, q[0:n_pair:2], q[1:n_pair:2]))
    best = max(max(q), max(pair_weights, default=0))
    if best > 0 and q.count(best) + pair_weights.count(best) == 1:
        if best in pair_weights:
            u = pair_weights.index(best)
            winner = (2 * u, 2 * u + 1)
        else:
            winner = (q.index(best),)
        return Schedule(_pick(rng, [winner]), cfg.n_links)
    return Schedule(_pick(rng, _mws_winners(q, pair_weights, best)), cfg.n_links)


def gms(q: Sequence[int], cfg: NetworkConfig, rng: RandomSource) -> Schedule:
    """
    Greedy maximal schedule: serve the longest queue, together with its FD
    counterpart if it belongs to an FD user. Ties are broken uniformly.
    """
    longest = max(q)
    if q.count(longest) == 1:
        star = _pick(rng, [q.index(longest)])
    else:
        star = _pick(rng, [l for l, v in enumerate(q) if v == longest])
    return Schedule.for_link(cfg, star)
