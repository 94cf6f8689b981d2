"""
Collocated star topology, link indexing, feasible schedules and queue dynamics.

Links are addressed by a flat index: user i (1-based) owns UL at 2(i-1) and
DL at 2(i-1)+1. The first ``n_fd`` users are FD-capable.
"""
from dataclasses import dataclass
from enum import Enum
from typing import Iterator, Sequence

from app.utils.errors import ConfigurationError, DimensionError


class Direction(Enum):
    """Direction of a link relative to the AP."""
    UL = 0
    DL = 1


@dataclass(frozen=True)
class LinkRef:
    """A (user, direction) pair. ``user`` is 1-based."""
    user: int
    direction: Direction

    @property
    def index(self) -> int:
        """Flat link index."""
        return 2 * (self.user - 1) + self.direction.value

    @classmethod
    def from_index(cls, index: int) -> 'LinkRef':
        return cls(user=index // 2 + 1, direction=Direction(index % 2))

    def __str__(self) -> str:
        return f"{self.direction.name}{self.user}"


@dataclass(frozen=True)
class NetworkConfig:
    """
    Counts of FD and HD users of a collocated infrastructure network.

    Attributes:
        n_fd (int): Number of FD users, occupying user indices 1..n_fd.
        n_hd (int): Number of HD users.
    """
    n_fd: int
    n_hd: int

    def __post_init__(self):
        if self.n_fd < 0 or self.n_hd < 0:
            raise ConfigurationError(
                f"user counts must be nonnegative, got n_fd={self.n_fd}, n_hd={self.n_hd}"
            )
        if self.n_fd + self.n_hd < 1:
            raise ConfigurationError("network needs at least one user")

    @property
    def n_users(self) -> int:
        return self.n_fd + self.n_hd

    @property
    def n_links(self) -> int:
        return 2 * (self.n_fd + self.n_hd)

    def is_fd_user(self, user: int) -> bool:
        """Whether the 1-based ``user`` is FD-capable."""
        return user <= self.n_fd

    def is_fd_link(self, index: int) -> bool:
        """Whether link ``index`` belongs to an FD user."""
        return index // 2 < self.n_fd

    def check_length(self, values: Sequence, what: str = 'vector'):
        """
        Raise if ``values`` does not carry one entry per link.

        Raises:
            DimensionError: On a length mismatch.
        """
        if len(values) != self.n_links:
            raise DimensionError(
                f"{what} has {len(values)} entries, expected {self.n_links}"
            )


@dataclass(frozen=True)
class Schedule:
    """
    A link activation vector, stored as the sorted tuple of active link indices.

    Attributes:
        links (tuple[int, ...]): Active link indices.
        n_links (int): Total number of links 2N.
    """
    links: tuple[int, ...]
    n_links: int

    @classmethod
    def empty(cls, n_links: int) -> 'Schedule':
        return cls((), n_links)

    @classmethod
    def for_link(cls, cfg: NetworkConfig, index: int) -> 'Schedule':
        """The schedule a link activates: itself, or its user's UL-DL pair if FD."""
        if cfg.is_fd_link(index):
            base = index - index % 2
            return cls((base, base + 1), cfg.n_links)
        return cls((index,), cfg.n_links)

    @classmethod
    def from_bits(cls, bits: Sequence[int]) -> 'Schedule':
        return cls(tuple(i for i, b in enumerate(bits) if b), len(bits))

    @property
    def bits(self) -> tuple[int, ...]:
        active = set(self.links)
        return tuple(1 if i in active else 0 for i in range(self.n_links))

    def __bool__(self) -> bool:
        return len(self.links) > 0

    def weight(self, q: Sequence[int]) -> int:
        """Total queue length served by this schedule."""
        return sum(q[l] for l in self.links)


@dataclass(frozen=True)
class QueueVector:
    """Per-link backlogs in packets."""
    q: tuple[int, ...]

    def __post_init__(self):
        if any(v < 0 for v in self.q):
            raise ValueError(f"queue lengths must be nonnegative: {self.q}")

    @classmethod
    def zeros(cls, cfg: NetworkConfig) -> 'QueueVector':
        return cls((0,) * cfg.n_links)

    def __len__(self) -> int:
        return len(self.q)

    def __getitem__(self, index: int) -> int:
        return self.q[index]

    def __iter__(self) -> Iterator[int]:
        return iter(self.q)


def enumerate_schedules(cfg: NetworkConfig) -> list[Schedule]:
    """
    Enumerate the schedule set S of a collocated network.

    Args:
        cfg (NetworkConfig): The network.

    Returns:
        list[Schedule]: The empty schedule, every single link, then every FD
            UL-DL pair; 1 + 2N + N_F schedules in total.
    """
    n = cfg.n_links
    schedules = [Schedule.empty(n)]
    schedules.extend(Schedule((l,), n) for l in range(n))
    schedules.extend(Schedule((2 * u, 2 * u + 1), n) for u in range(cfg.n_fd))
    return schedules


def is_feasible(cfg: NetworkConfig, x: Sequence[int] | Schedule) -> bool:
    """
    Check membership of an activation vector in S.

    Args:
        cfg (NetworkConfig): The network.
        x (Sequence[int] | Schedule): Bit per link, or a Schedule.

    Returns:
        bool: True iff ``x`` is empty, a single link, or one FD user's pair.

    Raises:
        DimensionError: If ``x`` does not have 2N entries.
    """
    if isinstance(x, Schedule):
        if x.n_links != cfg.n_links:
            raise DimensionError(
                f"schedule spans {x.n_links} links, expected {cfg.n_links}"
            )
        active = list(x.links)
    else:
        cfg.check_length(x, 'schedule')
        active = [i for i, b in enumerate(x) if b]

    if len(active) <= 1:
        return True
    if len(active) == 2:
        ul, dl = active
        return ul % 2 == 0 and dl == ul + 1 and cfg.is_fd_link(ul)
    return False


def queue_step(q: Sequence[int],
               a: Sequence[int],
               x: Sequence[int] | Schedule) -> QueueVector:
    """
    Advance the queues by one slot: ``q' = max(0, q + a - x)`` per link.

    Args:
        q (Sequence[int]): Backlogs at the beginning of the slot.
        a (Sequence[int]): Arrivals during the slot.
        x (Sequence[int] | Schedule): Activation vector of the slot.

    Returns:
        QueueVector: Backlogs at the end of the slot.
    """
    bits = x.bits if isinstance(x, Schedule) else x
    if not len(q) == len(a) == len(bits):
        raise DimensionError(
            f"length mismatch: q={len(q)}, a={len(a)}, x={len(bits)}"
        )
    return QueueVector(tuple(max(0, qi + ai - xi) for qi, ai, xi in zip(q, a, bits)))
