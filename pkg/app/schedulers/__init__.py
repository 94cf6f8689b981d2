from typing import Optional, Sequence

from app.network.topology import NetworkConfig, Schedule
from app.schedulers.access import AccessDistribution, emulated_polling, hgms_access_dist_e
from app.schedulers.centralized import gms, mws
from app.schedulers.csma import hgms_step, qcsma_step
from app.schedulers.state import CsmaState, HgmsParams, RandomSource, SchedulerKind
from app.schedulers.weights import (
    WeightFunction, WeightKind, tx_prob, tx_prob_inverse, weight_eval
)

__all__ = [
    'AccessDistribution', 'emulated_polling', 'hgms_access_dist_e', 'gms', 'mws',
    'hgms_step', 'qcsma_step', 'CsmaState', 'HgmsParams', 'RandomSource',
    'SchedulerKind', 'WeightFunction', 'WeightKind', 'tx_prob', 'tx_prob_inverse',
    'weight_eval', 'Scheduler',
]


class Scheduler:
    """
    Binds a scheduler kind to its network, weight function and access
    parameters, exposing one ``step`` signature for every kind.
    """

    def __init__(self,
                 kind: SchedulerKind,
                 cfg: NetworkConfig,
                 f: WeightFunction,
                 alpha: Optional[AccessDistribution] = None,
                 alpha_th: Optional[float] = None,
                 distributed_initiation: bool = False):
        self.kind = kind
        self.cfg = cfg
        self.f = f
        self.params = HgmsParams(alpha, alpha_th, distributed_initiation)
        self._polling: Optional[AccessDistribution] = None
        if kind.is_hgms:
            self.params.check(kind, cfg)
            if kind is not SchedulerKind.HGMS_E:
                assert alpha is not None
                self._polling = emulated_polling(alpha) if distributed_initiation else alpha

    def initial_state(self) -> CsmaState:
        return CsmaState.initial(self.cfg, with_estimates=self.kind is SchedulerKind.HGMS_E)

    def step(self,
             state: CsmaState,
             q: Sequence[int],
             rng: RandomSource) -> tuple[Schedule, CsmaState]:
        """
        Decide the schedule of one slot from the beginning-of-slot queues.

        Returns:
            tuple[Schedule, CsmaState]: The schedule and the state to pass to
                the next call.
        """
        match self.kind:
            case SchedulerKind.MWS:
                return mws(q, self.cfg, rng), state
            case SchedulerKind.GMS:
                return gms(q, self.cfg, rng), state
            case SchedulerKind.QCSMA:
                return qcsma_step(state, q, self.cfg, self.f, rng)
            case _:
                return hgms_step(
                    state, q, self.cfg, self.f, self.kind, rng, self.params, self._polling
                )
