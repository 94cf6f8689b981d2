"""
Weight functions and the logistic transmission probability they induce.
"""
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Optional

from app.utils.errors import ProbabilityDomainError


class WeightKind(Enum):
    HALF_LOG = 'half-log'
    LOG1P = 'log1p'
    SQRT = 'sqrt'
    LINEAR = 'linear'
    CUSTOM = 'custom'


_FORWARD: dict[WeightKind, Callable[[float], float]] = {
    WeightKind.HALF_LOG: lambda x: 0.5 * math.log1p(x),
    WeightKind.LOG1P: math.log1p,
    WeightKind.SQRT: math.sqrt,
    WeightKind.LINEAR: lambda x: x,
}

# inverses on [f(0), inf)
_INVERSE: dict[WeightKind, Callable[[float], float]] = {
    WeightKind.HALF_LOG: lambda y: math.expm1(2.0 * y),
    WeightKind.LOG1P: math.expm1,
    WeightKind.SQRT: lambda y: y * y,
    WeightKind.LINEAR: lambda y: y,
}

# lim f(x) / log(x) as x -> inf
_LOG_GROWTH: dict[WeightKind, float] = {
    WeightKind.HALF_LOG: 0.5,
    WeightKind.LOG1P: 1.0,
    WeightKind.SQRT: math.inf,
    WeightKind.LINEAR: math.inf,
}


@dataclass(frozen=True)
class WeightFunction:
    """
    A nonnegative, strictly increasing map from queue length to contention weight.

    Attributes:
        kind (WeightKind): One of the closed forms, or CUSTOM.
        func (Optional[Callable]): The map for CUSTOM weights.
        inverse (Optional[Callable]): Its inverse, if known; otherwise the
            inverse is found by bisection.
        growth (Optional[float]): lim f(x)/log(x) for CUSTOM weights, if known.
    """
    kind: WeightKind
    func: Optional[Callable[[float], float]] = field(default=None, compare=False)
    inverse: Optional[Callable[[float], float]] = field(default=None, compare=False)
    growth: Optional[float] = None

    def __post_init__(self):
        if self.kind is WeightKind.CUSTOM:
            if self.func is None:
                raise ValueError("custom weight function needs 'func'")
            if self.func(0.0) < 0:
                raise ValueError("weight function must satisfy f(0) >= 0")

    @classmethod
    def named(cls, name: str) -> 'WeightFunction':
        """Build a closed-form weight function from its name, e.g. ``'log1p'``."""
        kind = WeightKind(name)
        if kind is WeightKind.CUSTOM:
            raise ValueError("custom weight functions cannot be built by name")
        return cls(kind)

    @property
    def name(self) -> str:
        return self.kind.value

    def __call__(self, x: float) -> float:
        if self.kind is WeightKind.CUSTOM:
            assert self.func is not None
            return self.func(x)
        return _FORWARD[self.kind](x)

    def invert(self, y: float) -> float:
        """The x >= 0 with f(x) = y; 0 when y is below f(0)."""
        if y <= self(0.0):
            return 0.0
        if self.kind is not WeightKind.CUSTOM:
            return _INVERSE[self.kind](y)
        if self.inverse is not None:
            return self.inverse(y)
        lo, hi = 0.0, 1.0
        while self(hi) < y:
            lo, hi = hi, hi * 2.0
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            if self(mid) < y:
                lo = mid
            else:
                hi = mid
            if hi - lo <= 1e-12 * max(1.0, hi):
                break
        return 0.5 * (lo + hi)

    @property
    def log_growth(self) -> float:
        """lim f(x)/log(x); ``nan`` for a custom weight with unknown growth."""
        if self.kind is WeightKind.CUSTOM:
            return math.nan if self.growth is None else self.growth
        return _LOG_GROWTH[self.kind]

    @property
    def aggressiveness(self) -> str:
        """'sub-log', 'log' or 'super-log' according to ``log_growth``."""
        g = self.log_growth
        if math.isnan(g):
            return 'unknown'
        if g < 1.0:
            return 'sub-log'
        if g > 1.0:
            return 'super-log'
        return 'log'


# largest double below 1; tx_prob saturates here instead of reaching 1
P_MAX = math.nextafter(1.0, 0.0)
# log-odds up to which tx_prob_inverse(f, tx_prob(f, q)) recovers q to 1e-9
MAX_EXACT_LOG_ODDS = 16.0


def weight_eval(f: WeightFunction, x: float) -> float:
    """Evaluate ``f`` at a queue length ``x >= 0``."""
    return f(x)


def tx_prob(f: WeightFunction, q: float) -> float:
    """
    Logistic transmission probability ``e^f(q) / (1 + e^f(q))``.

    The result always lies in (0, 1): once ``f(q)`` exceeds about 36.7 the
    logistic rounds to 1 in double precision and is held at ``P_MAX``. Such
    queues still transmit with probability indistinguishable from 1, but
    ``tx_prob_inverse`` can only return the saturation point for them.

    Args:
        f (WeightFunction): The weight function.
        q (float): Queue length, nonnegative.

    Returns:
        float: The transmission probability.
    """
    return min(1.0 / (1.0 + math.exp(-f(q))), P_MAX)


def tx_prob_inverse(f: WeightFunction, p: float) -> float:
    """
    Queue length at which ``tx_prob(f, q) == p``.

    Probabilities below ``tx_prob(f, 0)`` map to 0. The round trip through
    ``tx_prob`` is exact to 1e-9 while ``f(q) <= MAX_EXACT_LOG_ODDS``.

    Raises:
        ProbabilityDomainError: If ``p`` is outside (0, 1).
    """
    if not 0.0 < p < 1.0:
        raise ProbabilityDomainError(f"transmission probability {p} outside (0, 1)")
    return f.invert(math.log(p) - math.log1p(-p))
