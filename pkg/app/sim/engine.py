"""
Slotted simulation kernel.

Each slot: the scheduler decides on the beginning-of-slot queues, arrivals
are drawn, then every queue is updated with ``max(0, q + a - x)``. Time
averages use the queues after the update, over slots ``warmup+1 .. horizon``.
"""
import logging
from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np

from app.network.arrivals import ArrivalModel, BernoulliArrivals
from app.network.capacity import RateVector
from app.network.topology import NetworkConfig, is_feasible
from app.schedulers import Scheduler
from app.schedulers.access import AccessDistribution
from app.schedulers.state import SchedulerKind
from app.schedulers.weights import WeightFunction, WeightKind
from app.sim.metrics import MetricSummary, fd_hd_ratio, ul_dl_ratio
from app.sim.streams import UniformStream, derive_seed, replication_streams
from app.utils.errors import ConfigurationError

SEED = 38567114
DEFAULT_HORIZON = 10 ** 6
DEFAULT_REPLICATIONS = 10
ARRIVAL_BLOCK = 4096


@dataclass(frozen=True)
class SimConfig:
    """
    Everything that determines a simulation, apart from the replication seed.

    Attributes:
        cfg (NetworkConfig): The network.
        lam (RateVector): Per-link arrival rates.
        scheduler (SchedulerKind): Scheduling algorithm.
        f (WeightFunction): Weight function of the transmission probability.
        alpha (Optional[AccessDistribution]): Fixed access distribution of
            H-GMS and H-GMS-R; uniform ``1/(1+N)`` when omitted.
        alpha_th (float): Share floor of H-GMS-E.
        arrivals (Optional[ArrivalModel]): Arrival process; Bernoulli at
            ``lam`` when omitted.
        horizon (int): Slots per replication.
        replications (int): Number of independent replications.
        master_seed (int): Seed all replication seeds derive from.
        sample_stride (Optional[int]): Record the average queue every this
            many slots.
        warmup (int): Slots excluded from the time averages.
        distributed_initiation (bool): Poll with the contention-emulated
            distribution (fixed-alpha H-GMS variants).
        check_feasibility (bool): Assert schedule feasibility every slot.
    """
    cfg: NetworkConfig
    lam: RateVector
    scheduler: SchedulerKind
    f: WeightFunction = field(default_factory=lambda: WeightFunction(WeightKind.LOG1P))
    alpha: Optional[AccessDistribution] = None
    alpha_th: float = 0.01
    arrivals: Optional[ArrivalModel] = None
    horizon: int = DEFAULT_HORIZON
    replications: int = DEFAULT_REPLICATIONS
    master_seed: int = SEED
    sample_stride: Optional[int] = None
    warmup: int = 0
    distributed_initiation: bool = False
    check_feasibility: bool = False

    def __post_init__(self):
        if self.horizon < 1:
            raise ConfigurationError(f"horizon must be >= 1, got {self.horizon}")
        if self.replications < 1:
            raise ConfigurationError(f"replications must be >= 1, got {self.replications}")
        if not 0 <= self.warmup < self.horizon:
            raise ConfigurationError(f"warmup must lie in [0, horizon), got {self.warmup}")
        if self.sample_stride is not None and self.sample_stride < 1:
            raise ConfigurationError(f"sample_stride must be >= 1, got {self.sample_stride}")
        self.cfg.check_length(self.lam, 'rate vector')

    @property
    def arrival_model(self) -> ArrivalModel:
        return self.arrivals if self.arrivals is not None else BernoulliArrivals(self.lam)

    @property
    def access(self) -> AccessDistribution:
        """The fixed access distribution in effect."""
        return self.alpha if self.alpha is not None else AccessDistribution.uniform(self.cfg.n_users)

    def make_scheduler(self) -> Scheduler:
        kind = self.scheduler
        return Scheduler(
            kind,
            self.cfg,
            self.f,
            alpha=self.access if kind.is_hgms and kind is not SchedulerKind.HGMS_E else None,
            alpha_th=self.alpha_th if kind is SchedulerKind.HGMS_E else None,
            distributed_initiation=self.distributed_initiation,
        )

    def with_(self, **changes) -> 'SimConfig':
        return replace(self, **changes)


@dataclass(frozen=True)
class SimResult:
    """
    Outcome of one replication.

    Attributes:
        cfg (NetworkConfig): The simulated network.
        per_link_mean_queue (tuple[float, ...]): Time-average queue per link.
        overall_mean_queue (float): Mean of ``per_link_mean_queue``.
        fd_hd_fairness (Optional[float]): FD/HD queue ratio, None if undefined.
        ul_dl_fairness (Optional[float]): UL/DL queue ratio, None if undefined.
        per_link_throughput (tuple[float, ...]): Served packets per slot.
        sample_path (Optional[tuple[tuple[int, float], ...]]): (slot, average
            queue per link) every ``sample_stride`` slots.
        seed_used (int): The replication seed.
        arrived (tuple[int, ...]): Packets arrived per link.
        served (tuple[int, ...]): Packets served per link.
        final_queue (tuple[int, ...]): Queues after the last slot.
        middle_decile_mean (Optional[float]): Average queue per link over
            slots (0.5H, 0.6H].
        last_decile_mean (Optional[float]): Average queue per link over
            slots (0.9H, H].
        served_by_decile (tuple[tuple[int, ...], ...]): Packets served per
            link in each of the ten windows (kH/10, (k+1)H/10].
    """
    cfg: NetworkConfig
    per_link_mean_queue: tuple[float, ...]
    overall_mean_queue: float
    fd_hd_fairness: Optional[float]
    ul_dl_fairness: Optional[float]
    per_link_throughput: tuple[float, ...]
    sample_path: Optional[tuple[tuple[int, float], ...]]
    seed_used: int
    arrived: tuple[int, ...]
    served: tuple[int, ...]
    final_queue: tuple[int, ...]
    middle_decile_mean: Optional[float]
    last_decile_mean: Optional[float]
    served_by_decile: tuple[tuple[int, ...], ...]

    @property
    def drift_ratio(self) -> Optional[float]:
        """Last-decile over middle-decile average queue."""
        if not self.middle_decile_mean or self.last_decile_mean is None:
            return None
        return self.last_decile_mean / self.middle_decile_mean


@dataclass(frozen=True)
class ReplicatedResult:
    """Aggregate of the replications of one ``SimConfig``."""
    config: SimConfig
    runs: tuple[SimResult, ...]
    mean_queue: MetricSummary
    fd_hd_fairness: Optional[MetricSummary]
    ul_dl_fairness: Optional[MetricSummary]
    per_link_mean_queue: tuple[float, ...]
    per_link_throughput: tuple[float, ...]


def run_once(sc: SimConfig, seed: int) -> SimResult:
    """
    Simulate one replication.

    Args:
        sc (SimConfig): The simulation.
        seed (int): Replication seed; the trajectory is a function of
            ``(sc, seed)`` only.

    Returns:
        SimResult: Time averages and counters of the replication.
    """
    logger = logging.getLogger('Engine')
    cfg = sc.cfg
    n_links = cfg.n_links
    horizon = sc.horizon
    stride = sc.sample_stride or 0
    logger.debug("Replication seed=%d: %s, %d slots", seed, sc.scheduler.label, horizon)

    arrival_rng, decision_rng = replication_streams(seed)
    uniforms = UniformStream(decision_rng)
    model = sc.arrival_model
    scheduler = sc.make_scheduler()
    state = scheduler.initial_state()

    q = [0] * n_links
    # acc[l] sums q_l over slots before mark[l]; q_l is constant from mark[l] on
    acc = [0] * n_links
    mark = [1] * n_links
    arrived = [0] * n_links
    served = [0] * n_links
    total = 0
    path: list[tuple[int, float]] = []

    b_mid_lo, b_mid_hi = horizon * 5 // 10, horizon * 6 // 10
    b_last_lo = horizon * 9 // 10
    boundaries = {b for b in (sc.warmup, b_mid_lo, b_mid_hi, b_last_lo) if b > 0}
    snapshots: dict[int, list[int]] = {0: [0] * n_links}
    decile_ends = [horizon * k // 10 for k in range(11)]
    served_at: dict[int, list[int]] = {0: [0] * n_links}
    marks = boundaries | set(decile_ends[1:])

    def flush(t: int) -> list[int]:
        for l in range(n_links):
            acc[l] += q[l] * (t + 1 - mark[l])
            mark[l] = t + 1
        return list(acc)

    for block_start in range(1, horizon + 1, ARRIVAL_BLOCK):
        n_slots = min(ARRIVAL_BLOCK, horizon - block_start + 1)
        block = model.draw(arrival_rng, block_start, n_slots)
        rows, cols = np.nonzero(block)
        ev_slot = (rows + block_start).tolist()
        ev_link = cols.tolist()
        ev_count = block[rows, cols].tolist()
        n_events, ei = len(ev_slot), 0

        for t in range(block_start, block_start + n_slots):
            schedule, state = scheduler.step(state, q, uniforms)
            if sc.check_feasibility:
                assert is_feasible(cfg, schedule), f"infeasible schedule {schedule} at slot {t}"

            incoming: dict[int, int] = {}
            while ei < n_events and ev_slot[ei] == t:
                incoming[ev_link[ei]] = ev_count[ei]
                ei += 1

            for l in schedule.links:
                a = incoming.pop(l, 0)
                old = q[l]
                new = old + a - 1 if old + a > 0 else 0
                arrived[l] += a
                served[l] += old + a - new
                if new != old:
                    acc[l] += old * (t - mark[l])
                    mark[l] = t
                    q[l] = new
                    total += new - old
            for l, a in incoming.items():
                arrived[l] += a
                acc[l] += q[l] * (t - mark[l])
                mark[l] = t
                q[l] += a
                total += a

            if stride and t % stride == 0:
                path.append((t, total / n_links))
            if t in marks:
                if t in boundaries:
                    snapshots[t] = flush(t)
                served_at[t] = list(served)

    final = flush(horizon)
    base = snapshots[sc.warmup]
    span = horizon - sc.warmup
    per_link_mean = tuple((final[l] - base[l]) / span for l in range(n_links))

    def window_mean(lo: int, hi: int) -> Optional[float]:
        if hi <= lo:
            return None
        return (sum(snapshots[hi]) - sum(snapshots[lo])) / (n_links * (hi - lo))

    logger.debug("Replication seed=%d done: %.4f packets per link", seed, sum(per_link_mean) / n_links)
    snapshots[horizon] = final
    return SimResult(
        cfg=cfg,
        per_link_mean_queue=per_link_mean,
        overall_mean_queue=sum(per_link_mean) / n_links,
        fd_hd_fairness=fd_hd_ratio(cfg, per_link_mean),
        ul_dl_fairness=ul_dl_ratio(cfg, per_link_mean),
        per_link_throughput=tuple(s / horizon for s in served),
        sample_path=tuple(path) if stride else None,
        seed_used=seed,
        arrived=tuple(arrived),
        served=tuple(served),
        final_queue=tuple(q),
        middle_decile_mean=window_mean(b_mid_lo, b_mid_hi),
        last_decile_mean=window_mean(b_last_lo, horizon),
        served_by_decile=tuple(
            tuple(b - a for a, b in zip(served_at[lo], served_at[hi]))
            for lo, hi in zip(decile_ends, decile_ends[1:])
        ),
    )


def _summary(values: list[Optional[float]]) -> Optional[MetricSummary]:
    if any(v is None for v in values):
        return None
    return MetricSummary.of([v for v in values if v is not None])


def aggregate(sc: SimConfig, runs: list[SimResult]) -> ReplicatedResult:
    """Combine replications, given in replication order, into means and standard errors."""
    n_links = sc.cfg.n_links
    return ReplicatedResult(
        config=sc,
        runs=tuple(runs),
        mean_queue=MetricSummary.of([r.overall_mean_queue for r in runs]),
        fd_hd_fairness=_summary([r.fd_hd_fairness for r in runs]),
        ul_dl_fairness=_summary([r.ul_dl_fairness for r in runs]),
        per_link_mean_queue=tuple(
            sum(r.per_link_mean_queue[l] for r in runs) / len(runs) for l in range(n_links)
        ),
        per_link_throughput=tuple(
            sum(r.per_link_throughput[l] for r in runs) / len(runs) for l in range(n_links)
        ),
    )


def replicate(sc: SimConfig) -> ReplicatedResult:
    """
    Run every replication of ``sc`` sequentially. Replication k uses seed
    ``derive_seed(sc.master_seed, k)``.
    """
    runs = [run_once(sc, derive_seed(sc.master_seed, k)) for k in range(sc.replications)]
    return aggregate(sc, runs)
