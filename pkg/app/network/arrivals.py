"""
Per-link arrival processes.

An arrival model exposes the first two moments used by the delay bounds and
draws arrivals block-wise for the simulator.
"""
from dataclasses import dataclass

import numpy as np

from app.network.capacity import RateVector


@dataclass(frozen=True)
class ArrivalModel:
    """Base class of the per-link arrival processes."""

    @property
    def mean(self) -> tuple[float, ...]:
        """Per-link mean arrivals, packets/slot."""
        raise NotImplementedError

    @property
    def variance(self) -> tuple[float, ...]:
        """Per-link arrival variance, packets^2/slot."""
        raise NotImplementedError

    @property
    def a_max(self) -> int:
        """Largest number of packets a link can receive in one slot."""
        raise NotImplementedError

    def draw(self, rng: np.random.Generator, first_slot: int, n_slots: int) -> np.ndarray:
        """
        Draw arrivals for slots ``first_slot .. first_slot + n_slots - 1``.

        Returns:
            np.ndarray: Integer array of shape (n_slots, n_links).
        """
        raise NotImplementedError


@dataclass(frozen=True)
class BernoulliArrivals(ArrivalModel):
    """Independent Bernoulli(lambda_l) arrivals on every link."""
    rates: RateVector

    @property
    def mean(self) -> tuple[float, ...]:
        return tuple(self.rates)

    @property
    def variance(self) -> tuple[float, ...]:
        return tuple(v * (1.0 - v) for v in self.rates)

    @property
    def a_max(self) -> int:
        return 1

    def draw(self, rng: np.random.Generator, first_slot: int, n_slots: int) -> np.ndarray:
        lam = np.asarray(self.rates.lam, dtype=float)
        return (rng.random((n_slots, lam.size)) < lam).astype(np.int64)


@dataclass(frozen=True)
class BatchArrivals(ArrivalModel):
    """
    Deterministic batches: link l receives ``batch[l]`` packets in every slot
    t with ``t % period[l] == 0``.
    """
    batch: tuple[int, ...]
    period: tuple[int, ...]

    def __post_init__(self):
        if len(self.batch) != len(self.period):
            raise ValueError("batch and period must have the same length")
        if any(k < 0 for k in self.batch) or any(p < 1 for p in self.period):
            raise ValueError("batch sizes must be >= 0 and periods >= 1")

    @property
    def mean(self) -> tuple[float, ...]:
        return tuple(k / p for k, p in zip(self.batch, self.period))

    @property
    def variance(self) -> tuple[float, ...]:
        return tuple(k * k * (p - 1) / (p * p) for k, p in zip(self.batch, self.period))

    @property
    def a_max(self) -> int:
        return max(self.batch, default=0)

    def draw(self, rng: np.random.Generator, first_slot: int, n_slots: int) -> np.ndarray:
        slots = np.arange(first_slot, first_slot + n_slots)[:, None]
        period = np.asarray(self.period)[None, :]
        batch = np.asarray(self.batch, dtype=np.int64)[None, :]
        return np.where(slots % period == 0, batch, 0)
