"""
Fairness ratios and replication statistics.
"""
import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from app.network.topology import NetworkConfig


@dataclass(frozen=True)
class MetricSummary:
    """Mean and standard error of a scalar over replications."""
    mean: float
    stderr: float

    @classmethod
    def of(cls, values: Sequence[float]) -> 'MetricSummary':
        arr = np.asarray(values, dtype=float)
        if arr.size < 2:
            return cls(float(arr.mean()), 0.0)
        return cls(float(arr.mean()), float(arr.std(ddof=1) / math.sqrt(arr.size)))


def fd_hd_ratio(cfg: NetworkConfig, per_link_mean: Sequence[float]) -> Optional[float]:
    """
    Mean UL+DL queue of FD users over that of HD users; None if either class
    is empty or the HD users hold no backlog.
    """
    if cfg.n_fd == 0 or cfg.n_hd == 0:
        return None
    per_user = [per_link_mean[2 * u] + per_link_mean[2 * u + 1] for u in range(cfg.n_users)]
    fd = sum(per_user[:cfg.n_fd]) / cfg.n_fd
    hd = sum(per_user[cfg.n_fd:]) / cfg.n_hd
    return None if hd == 0 else fd / hd


def ul_dl_ratio(cfg: NetworkConfig, per_link_mean: Sequence[float]) -> Optional[float]:
    """Mean UL queue over mean DL queue; None if the DLs hold no backlog."""
    ul = sum(per_link_mean[0::2]) / cfg.n_users
    dl = sum(per_link_mean[1::2]) / cfg.n_users
    return None if dl == 0 else ul / dl


def fairness_fd_hd(result) -> Optional[float]:
    """FD/HD fairness of a ``SimResult``."""
    return fd_hd_ratio(result.cfg, result.per_link_mean_queue)


def fairness_ul_dl(result) -> Optional[float]:
    """UL/DL fairness of a ``SimResult``."""
    return ul_dl_ratio(result.cfg, result.per_link_mean_queue)


def throughput_stderr(served_by_decile: Sequence[Sequence[int]], horizon: int) -> tuple[float, ...]:
    """
    Batch-means standard error of each link's throughput, treating the ten
    decile windows of one replication as batches.

    Args:
        served_by_decile (Sequence[Sequence[int]]): Packets served per window
            and link, as in ``SimResult.served_by_decile``.
        horizon (int): Slots simulated; at least 10.

    Returns:
        tuple[float, ...]: One standard error per link.
    """
    ends = np.array([horizon * k // 10 for k in range(11)])
    widths = np.diff(ends)
    if np.any(widths == 0):
        raise ValueError(f"horizon {horizon} is too short for ten batches")
    rates = np.asarray(served_by_decile, dtype=float) / widths[:, None]
    return tuple((rates.std(axis=0, ddof=1) / math.sqrt(len(widths))).tolist())
