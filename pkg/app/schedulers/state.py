"""
Scheduler identities and the state carried between slots.
"""
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Protocol

from app.network.topology import NetworkConfig, Schedule
from app.schedulers.access import AccessDistribution
from app.utils.errors import ConfigurationError


class RandomSource(Protocol):
    """Anything with ``random() -> float`` in [0, 1), e.g. ``np.random.Generator``."""
    def random(self) -> float: ...


class SchedulerKind(Enum):
    MWS = 'mws'
    GMS = 'gms'
    QCSMA = 'qcsma'
    HGMS = 'hgms'
    HGMS_R = 'hgms-r'
    HGMS_E = 'hgms-e'

    @property
    def is_centralized(self) -> bool:
        return self in (SchedulerKind.MWS, SchedulerKind.GMS)

    @property
    def is_hgms(self) -> bool:
        return self in (SchedulerKind.HGMS, SchedulerKind.HGMS_R, SchedulerKind.HGMS_E)

    @property
    def label(self) -> str:
        return _LABELS[self]


_LABELS = {
    SchedulerKind.MWS: 'MWS',
    SchedulerKind.GMS: 'GMS',
    SchedulerKind.QCSMA: 'Q-CSMA',
    SchedulerKind.HGMS: 'H-GMS',
    SchedulerKind.HGMS_R: 'H-GMS-R',
    SchedulerKind.HGMS_E: 'H-GMS-E',
}


@dataclass(frozen=True)
class HgmsParams:
    """
    Access parameters of the H-GMS family.

    Attributes:
        alpha (Optional[AccessDistribution]): Fixed polling distribution
            (H-GMS, H-GMS-R).
        alpha_th (Optional[float]): Share floor of the adaptive distribution
            (H-GMS-E).
        distributed_initiation (bool): Poll with the distribution realised by
            contention-based initiation instead of ``alpha``.
    """
    alpha: Optional[AccessDistribution] = None
    alpha_th: Optional[float] = None
    distributed_initiation: bool = False

    def check(self, kind: SchedulerKind, cfg: NetworkConfig):
        """
        Raises:
            ConfigurationError: If the parameters do not fit ``kind``.
        """
        if kind is SchedulerKind.HGMS_E:
            if self.alpha_th is None or not 0.0 < self.alpha_th < 1.0:
                raise ConfigurationError(f"H-GMS-E needs alpha_th in (0, 1), got {self.alpha_th}")
        elif kind.is_hgms:
            if self.alpha is None:
                raise ConfigurationError(f"{kind.label} needs an access distribution")
            if self.alpha.n_users != cfg.n_users:
                raise ConfigurationError(
                    f"access distribution covers {self.alpha.n_users} users, "
                    f"network has {cfg.n_users}"
                )


@dataclass(frozen=True)
class CsmaState:
    """
    State a distributed scheduler keeps between slots.

    Attributes:
        initiator (Optional[int]): Flat index of the initiator link; present
            iff ``last_schedule`` is nonempty.
        last_schedule (Schedule): The schedule of the previous slot.
        ul_estimates (Optional[tuple[int, ...]]): AP-side UL queue estimates,
            H-GMS-E only.
    """
    initiator: Optional[int]
    last_schedule: Schedule
    ul_estimates: Optional[tuple[int, ...]] = None

    def __post_init__(self):
        if (self.initiator is None) == bool(self.last_schedule):
            raise ValueError("initiator must be present iff the last schedule is nonempty")

    @classmethod
    def initial(cls, cfg: NetworkConfig, with_estimates: bool = False) -> 'CsmaState':
        return cls(
            initiator=None,
            last_schedule=Schedule.empty(cfg.n_links),
            ul_estimates=(0,) * cfg.n_users if with_estimates else None,
        )
