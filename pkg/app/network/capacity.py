"""
Arrival rate vectors and capacity-region arithmetic.
"""
from dataclasses import dataclass
from typing import Iterator

from app.network.topology import NetworkConfig
from app.utils.errors import UndefinedInputError

CAPACITY_TOL = 1e-12


@dataclass(frozen=True)
class RateVector:
    """
    Per-link arrival rates in packets/slot, indexed like the links.

    Vectors outside the capacity region are accepted; only the bound
    computations reject saturated inputs.
    """
    lam: tuple[float, ...]

    def __post_init__(self):
        for v in self.lam:
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"arrival rate {v} outside [0, 1]")

    @classmethod
    def zeros(cls, cfg: NetworkConfig) -> 'RateVector':
        return cls((0.0,) * cfg.n_links)

    def __len__(self) -> int:
        return len(self.lam)

    def __getitem__(self, index: int) -> float:
        return self.lam[index]

    def __iter__(self) -> Iterator[float]:
        return iter(self.lam)

    def scaled(self, factor: float) -> 'RateVector':
        return RateVector(tuple(v * factor for v in self.lam))


def capacity_load(cfg: NetworkConfig, lam: RateVector) -> float:
    """
    Load of ``lam`` against the HD-FD capacity region.

    FD users contribute the larger of their UL and DL rates, HD users the sum.
    ``lam`` lies in the HD-FD capacity region iff the result is at most 1.
    """
    cfg.check_length(lam, 'rate vector')
    load = 0.0
    for u in range(cfg.n_users):
        ul, dl = lam[2 * u], lam[2 * u + 1]
        load += max(ul, dl) if u < cfg.n_fd else ul + dl
    return load


def hd_capacity_load(cfg: NetworkConfig, lam: RateVector) -> float:
    """Load of ``lam`` against the all-HD capacity region: the plain rate sum."""
    cfg.check_length(lam, 'rate vector')
    return sum(lam)


def in_capacity_region(cfg: NetworkConfig, lam: RateVector) -> bool:
    return capacity_load(cfg, lam) <= 1.0 + CAPACITY_TOL


def in_hd_capacity_region(cfg: NetworkConfig, lam: RateVector) -> bool:
    return hd_capacity_load(cfg, lam) <= 1.0 + CAPACITY_TOL


def gamma_expansion(cfg: NetworkConfig, lam0: RateVector) -> float:
    """
    Capacity expansion factor of a boundary rate vector of the HD region.

    The HD-FD region is cut out by a single linear constraint, so the
    supremum of the feasible scaling is exactly ``1 / capacity_load``.

    Args:
        cfg (NetworkConfig): The network.
        lam0 (RateVector): A vector with ``hd_capacity_load(lam0) == 1``.

    Returns:
        float: The factor gamma, in [1, 2] for boundary inputs.

    Raises:
        UndefinedInputError: If ``lam0`` carries no load.
    """
    load = capacity_load(cfg, lam0)
    if load <= 0.0:
        raise UndefinedInputError("capacity expansion is undefined for a zero rate vector")
    return 1.0 / load


def equal_rate_vector(cfg: NetworkConfig, rho: float) -> RateVector:
    """Every link gets ``rho / (N_F + 2 N_H)``, so that ``capacity_load == rho``."""
    return sigma_rate_vector(cfg, 1.0, rho)


def sigma_rate_vector(cfg: NetworkConfig, sigma: float, rho: float) -> RateVector:
    """
    Rates with FD links ``sigma`` times as loaded as HD links.

    Args:
        cfg (NetworkConfig): The network.
        sigma (float): FD-to-HD rate ratio, positive.
        rho (float): Traffic intensity, the resulting ``capacity_load``.

    Returns:
        RateVector: FD links at ``rho*sigma/(sigma*N_F + 2*N_H)``, HD links
            at ``rho/(sigma*N_F + 2*N_H)``.
    """
    if sigma <= 0:
        raise ValueError(f"sigma must be positive, got {sigma}")
    if rho < 0:
        raise ValueError(f"rho must be nonnegative, got {rho}")
    denom = sigma * cfg.n_fd + 2 * cfg.n_hd
    v_f = rho * sigma / denom
    v_h = rho / denom
    return RateVector(tuple(
        v_f if cfg.is_fd_link(l) else v_h for l in range(cfg.n_links)
    ))
