"""
Deterministic random streams for simulation replications.
"""
import numpy as np

_MASK64 = (1 << 64) - 1


def mix64(x: int) -> int:
    """splitmix64 finalizer."""
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return x ^ (x >> 31)


def derive_seed(master_seed: int, replication: int) -> int:
    """Seed of replication ``replication``: ``mix64(master_seed XOR replication)``."""
    return mix64((master_seed ^ replication) & _MASK64)


def replication_streams(seed: int) -> tuple[np.random.Generator, np.random.Generator]:
    """
    Two independent generators for one replication: arrivals, then scheduler
    decisions. Arrivals do not depend on the schedule, so they can be drawn
    block-wise without disturbing the order of the scheduler's draws.
    """
    arrivals, decisions = np.random.SeedSequence(seed).spawn(2)
    return np.random.default_rng(arrivals), np.random.default_rng(decisions)


class UniformStream:
    """Serves uniforms one at a time from blocks drawn off a generator."""

    def __init__(self, rng: np.random.Generator, block: int = 8192):
        self._rng = rng
        self._block = block
        self._buf: list[float] = []
        self._pos = 0

    def random(self) -> float:
        if self._pos >= len(self._buf):
            self._buf = self._rng.random(self._block).tolist()
            self._pos = 0
        v = self._buf[self._pos]
        self._pos += 1
        return v
