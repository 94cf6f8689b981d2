"""
Access probability distributions used by the AP to poll an initiator link.
"""
import math
from dataclasses import dataclass
from typing import Sequence

from app.utils.errors import ConfigurationError

SUM_TOL = 1e-12


@dataclass(frozen=True)
class AccessDistribution:
    """
    Polling probabilities over the N ULs and the AP's nominated DL.

    Attributes:
        alpha_user (tuple[float, ...]): Probability of polling UL i, per user.
        alpha_ap (float): Probability of the AP's own DL, ``1 - sum(alpha_user)``.
    """
    alpha_user: tuple[float, ...]
    alpha_ap: float

    def __post_init__(self):
        if any(a <= 0 for a in self.alpha_user) or self.alpha_ap <= 0:
            raise ConfigurationError(
                f"access probabilities must be positive: {self.alpha_user}, {self.alpha_ap}"
            )
        total = math.fsum(self.alpha_user) + self.alpha_ap
        if abs(total - 1.0) > SUM_TOL:
            raise ConfigurationError(f"access probabilities sum to {total!r}, not 1")

    @classmethod
    def uniform(cls, n_users: int) -> 'AccessDistribution':
        """The ``1/(1+N)`` distribution."""
        share = 1.0 / (n_users + 1)
        return cls.from_users([share] * n_users)

    @classmethod
    def from_users(cls, alpha_user: Sequence[float]) -> 'AccessDistribution':
        """Complete per-user probabilities with the AP's remaining share."""
        alpha_user = tuple(float(a) for a in alpha_user)
        return cls(alpha_user, 1.0 - math.fsum(alpha_user))

    @classmethod
    def normalized(cls, raw_user: Sequence[float], raw_ap: float) -> 'AccessDistribution':
        """Normalize positive raw shares into a distribution."""
        total = math.fsum(raw_user) + raw_ap
        alpha_user = tuple(a / total for a in raw_user)
        # absorb rounding into the AP share so the sum is 1
        return cls(alpha_user, 1.0 - math.fsum(alpha_user))

    @property
    def n_users(self) -> int:
        return len(self.alpha_user)

    @property
    def alpha_max(self) -> float:
        return max(max(self.alpha_user, default=0.0), self.alpha_ap)

    def as_list(self) -> list[float]:
        """``[alpha_1, ..., alpha_N, alpha_AP]``."""
        return [*self.alpha_user, self.alpha_ap]

    def cumulative(self) -> tuple[float, ...]:
        """Cumulative sums of ``as_list()``, for inverse-CDF sampling."""
        acc, out = 0.0, []
        for a in self.alpha_user:
            acc += a
            out.append(acc)
        return tuple(out)


def hgms_access_dist_e(ul_estimates: Sequence[int],
                       q_dl_star: int,
                       n: int,
                       alpha_th: float) -> AccessDistribution:
    """
    Adaptive access distribution of H-GMS-E.

    Each UL and the AP get a raw share proportional to its (estimated) queue
    length over the total, floored at ``alpha_th``; shares are then normalized.

    Args:
        ul_estimates (Sequence[int]): AP-side estimates of the UL queues.
        q_dl_star (int): Queue length of the AP's nominated DL.
        n (int): Number of users.
        alpha_th (float): Minimum raw share, in (0, 1).

    Returns:
        AccessDistribution: The normalized distribution.
    """
    if not 0.0 < alpha_th < 1.0:
        raise ConfigurationError(f"alpha_th must lie in (0, 1), got {alpha_th}")
    if len(ul_estimates) != n:
        raise ConfigurationError(f"expected {n} UL estimates, got {len(ul_estimates)}")
    denom = sum(ul_estimates) + q_dl_star
    if denom == 0:
        return AccessDistribution.normalized([alpha_th] * n, alpha_th)
    raw_user = [max(qu / denom, alpha_th) for qu in ul_estimates]
    raw_ap = max(q_dl_star / denom, alpha_th)
    return AccessDistribution.normalized(raw_user, raw_ap)


def emulated_polling(alpha: AccessDistribution) -> AccessDistribution:
    """
    Polling probabilities realised by contention-based initiation.

    User i wins the initiation mini-slot when it alone sends an initiation
    message, ``alpha_i * prod_{i' != i} (1 - alpha_i')``; the AP's DL takes over
    on idleness or collision.
    """
    survive = [1.0 - a for a in alpha.alpha_user]
    emulated = []
    for i, a in enumerate(alpha.alpha_user):
        emulated.append(a * math.prod(survive[:i] + survive[i + 1:]))
    return AccessDistribution.from_users(emulated)
