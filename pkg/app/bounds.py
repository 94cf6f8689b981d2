"""
Lower bounds on the long-term average queue length per link.

The fundamental bound holds for every scheduler; the H-GMS bound adds the
contention cost of fixed-alpha H-GMS and H-GMS-R.
"""
import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from app.network.arrivals import ArrivalModel, BernoulliArrivals
from app.network.capacity import RateVector, equal_rate_vector
from app.network.topology import LinkRef, NetworkConfig
from app.schedulers.access import AccessDistribution
from app.schedulers.weights import WeightFunction, tx_prob_inverse
from app.utils.errors import SaturatedCliqueError


@dataclass(frozen=True)
class CliqueSpec:
    """
    A set of mutually conflicting links with the moments of their arrivals.

    Attributes:
        links (tuple[LinkRef, ...]): Member links.
        rates (tuple[float, ...]): Mean arrivals per member.
        variances (tuple[float, ...]): Arrival variance per member.
    """
    links: tuple[LinkRef, ...]
    rates: tuple[float, ...]
    variances: tuple[float, ...]

    def __post_init__(self):
        if not len(self.links) == len(self.rates) == len(self.variances):
            raise ValueError("clique members, rates and variances differ in length")

    @classmethod
    def of(cls, members: Sequence[int], arrivals: ArrivalModel) -> 'CliqueSpec':
        """The clique on flat link indices ``members``, moments from ``arrivals``."""
        mean, var = arrivals.mean, arrivals.variance
        return cls(
            links=tuple(LinkRef.from_index(l) for l in members),
            rates=tuple(mean[l] for l in members),
            variances=tuple(var[l] for l in members),
        )

    @property
    def total_rate(self) -> float:
        return math.fsum(self.rates)


def clique_lb(c: CliqueSpec) -> float:
    """
    Lower bound on the expected sum of queue lengths in a clique.

    Raises:
        SaturatedCliqueError: If the clique's total rate is not below 1.
    """
    lam_c = c.total_rate
    if lam_c >= 1.0:
        raise SaturatedCliqueError(f"clique rate {lam_c} is not below 1")
    return math.fsum(
        lam + var - lam * lam_c for lam, var in zip(c.rates, c.variances)
    ) / (2.0 * (1.0 - lam_c))


def emax_partition(cfg: NetworkConfig, lam: RateVector) -> tuple[list[int], list[int]]:
    """
    Split the links into the maximal clique E_max and the rest E_min.

    E_max holds both links of every HD user and the higher-rate link of every
    FD user; on equal FD rates the UL goes to E_max.

    Returns:
        tuple[list[int], list[int]]: Flat indices of E_max and of E_min.
    """
    cfg.check_length(lam, 'rate vector')
    e_max, e_min = [], []
    for u in range(cfg.n_users):
        ul, dl = 2 * u, 2 * u + 1
        if u >= cfg.n_fd:
            e_max.extend((ul, dl))
        elif lam[ul] >= lam[dl]:
            e_max.append(ul)
            e_min.append(dl)
        else:
            e_max.append(dl)
            e_min.append(ul)
    return sorted(e_max), sorted(e_min)


def fundamental_lb(cfg: NetworkConfig,
                   lam: RateVector,
                   arrivals: Optional[ArrivalModel] = None) -> float:
    """
    Lower bound on the per-link average queue length under any scheduler.

    Args:
        cfg (NetworkConfig): The network.
        lam (RateVector): Arrival rates.
        arrivals (Optional[ArrivalModel]): Arrival process; Bernoulli at
            ``lam`` when omitted.

    Returns:
        float: The clique bound of E_max divided by 2N.

    Raises:
        SaturatedCliqueError: If E_max is saturated.
    """
    arrivals = arrivals if arrivals is not None else BernoulliArrivals(lam)
    e_max, _ = emax_partition(cfg, lam)
    return clique_lb(CliqueSpec.of(e_max, arrivals)) / cfg.n_links


def hgms_lb(cfg: NetworkConfig,
            lam: RateVector,
            arrivals: Optional[ArrivalModel],
            alpha: Optional[AccessDistribution],
            f: WeightFunction,
            loose: bool = False) -> float:
    """
    Lower bound on the per-link average queue length under fixed-alpha H-GMS
    and H-GMS-R.

    Args:
        cfg (NetworkConfig): The network.
        lam (RateVector): Arrival rates.
        arrivals (Optional[ArrivalModel]): Arrival process; Bernoulli at
            ``lam`` when omitted.
        alpha (Optional[AccessDistribution]): The fixed access distribution.
        f (WeightFunction): Weight function of the transmission probability.
        loose (bool): Take ``alpha_max = 1``, a valid but loose bound for the
            adaptive H-GMS-E; ``alpha`` may then be omitted.

    Returns:
        float: The larger of the fundamental bound and the contention term.
    """
    fundamental = fundamental_lb(cfg, lam, arrivals)
    if loose:
        alpha_max = 1.0
    else:
        if alpha is None:
            raise ValueError("alpha is required unless loose=True")
        alpha_max = alpha.alpha_max

    e_max, _ = emax_partition(cfg, lam)
    lam_emax = math.fsum(lam[l] for l in e_max)
    lam_min = min(lam)
    if lam_min <= 0.0:
        return fundamental
    share = lam_min / alpha_max
    ratio = share / (1.0 - lam_emax + share)
    contention = (1.0 - cfg.n_fd / cfg.n_links) * tx_prob_inverse(f, ratio)
    return max(fundamental, contention)


def bound_turning_point(cfg: NetworkConfig,
                        alpha: AccessDistribution,
                        f: WeightFunction,
                        lo: float = 1e-3,
                        hi: float = 0.999,
                        tol: float = 1e-6,
                        rates: Callable[[NetworkConfig, float], RateVector] = equal_rate_vector,
                        ) -> Optional[float]:
    """
    Smallest traffic intensity at which the H-GMS bound leaves the
    fundamental bound, found by bisection.

    Returns:
        Optional[float]: The turning point, or None if the bounds coincide on
            the whole of [lo, hi].
    """
    def above(rho: float) -> bool:
        lam = rates(cfg, rho)
        return hgms_lb(cfg, lam, None, alpha, f) > fundamental_lb(cfg, lam)

    if not above(hi):
        return None
    if above(lo):
        return lo
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if above(mid):
            hi = mid
        else:
            lo = mid
    return hi
