"""
Scenario runners. Each returns plot-ready rows plus the metadata needed to
replay them.
"""
import logging
from dataclasses import dataclass, field
from typing import Any, Callable, Optional

from app.bounds import bound_turning_point, fundamental_lb, hgms_lb
from app.network.capacity import capacity_load, gamma_expansion, hd_capacity_load
from app.schedulers.state import SchedulerKind
from app.schedulers.weights import WeightFunction
from app.experiments.spec import ScenarioSpec
from app.sim.pool import run_grid
from app.utils.errors import SaturatedCliqueError

SHARED_COLUMNS = ('scenario', 'scheduler', 'rho', 'seed')

COLUMNS: dict[str, tuple[str, ...]] = {
    'delay-sweep': (
        *SHARED_COLUMNS, 'weight', 'n_fd', 'n_hd', 'mean_queue', 'stderr',
        'fundamental_lb', 'hgms_lb',
    ),
    'sample-path': (
        *SHARED_COLUMNS, 'weight', 'n_fd', 'n_hd', 'slot', 'avg_queue',
    ),
    'fairness': (
        *SHARED_COLUMNS, 'mode', 'x', 'weight', 'n_fd', 'n_hd', 'sigma',
        'fd_hd_ratio', 'ul_dl_ratio', 'mean_queue',
    ),
    'weight-table': (
        *SHARED_COLUMNS, 'weight', 'aggressiveness', 'mean_queue', 'qcsma_mean_queue', 'ratio',
    ),
    'bounds-curve': (
        *SHARED_COLUMNS, 'weight', 'n_fd', 'n_hd', 'capacity_load', 'gamma',
        'fundamental_lb', 'hgms_lb', 'loose_lb',
    ),
    'custom': (
        *SHARED_COLUMNS, 'weight', 'n_fd', 'n_hd', 'sigma', 'mean_queue', 'stderr',
        'fd_hd_ratio', 'ul_dl_ratio', 'throughput', 'fundamental_lb', 'hgms_lb',
    ),
}

_TABLE_VARIANTS = ('hgms-r', 'hgms', 'hgms-e')


@dataclass
class ScenarioOutput:
    """Rows of one scenario, in emission order, with replay metadata."""
    scenario: str
    columns: tuple[str, ...]
    rows: list[dict[str, Any]] = field(default_factory=list)
    metadata: dict[str, Any] = field(default_factory=dict)


def _label(name: str) -> str:
    return SchedulerKind(name).label


def _bounds(spec: ScenarioSpec, rho: float, weight: str,
            n_fd: Optional[int] = None, sigma: float = 1.0) -> tuple[Optional[float], Optional[float]]:
    cfg = spec.network(n_fd)
    lam = spec.rates(cfg, rho, sigma)
    try:
        return (
            fundamental_lb(cfg, lam),
            hgms_lb(cfg, lam, None, spec.access(), WeightFunction.named(weight)),
        )
    except SaturatedCliqueError:
        logging.getLogger('Scenario').warning(
            "E_max saturated at rho=%s, bounds unavailable", rho
        )
        return None, None


def _turning_point(spec: ScenarioSpec, weight: str) -> Optional[float]:
    return bound_turning_point(spec.network(), spec.access(), WeightFunction.named(weight))


def scenario_delay_sweep(spec: ScenarioSpec, num_workers: int = 1) -> ScenarioOutput:
    """Average queue per link over the rho grid, per scheduler, next to both bounds."""
    cells = [
        (weight, name, rho)
        for weight in spec.weights
        for name in spec.schedulers
        for rho in spec.rhos
    ]
    results = run_grid(
        [spec.sim_config(name, rho, weight=weight) for weight, name, rho in cells],
        num_workers,
    )
    cfg = spec.network()
    out = ScenarioOutput('delay-sweep', COLUMNS['delay-sweep'])
    for (weight, name, rho), res in zip(cells, results):
        fund, improved = _bounds(spec, rho, weight)
        out.rows.append({
            'scenario': 'delay-sweep', 'scheduler': _label(name), 'rho': rho,
            'seed': spec.master_seed, 'weight': weight, 'n_fd': cfg.n_fd, 'n_hd': cfg.n_hd,
            'mean_queue': res.mean_queue.mean, 'stderr': res.mean_queue.stderr,
            'fundamental_lb': fund, 'hgms_lb': improved,
        })
    out.metadata['turning_point'] = {w: _turning_point(spec, w) for w in spec.weights}
    return out


def scenario_sample_path(spec: ScenarioSpec, num_workers: int = 1) -> ScenarioOutput:
    """Downsampled average-queue trajectory of one replication per scheduler."""
    configs = [
        spec.sim_config(name, spec.rho, replications=1, sample_stride=spec.sample_stride)
        for name in spec.schedulers
    ]
    results = run_grid(configs, num_workers)
    cfg = spec.network()
    out = ScenarioOutput('sample-path', COLUMNS['sample-path'])
    for name, res in zip(spec.schedulers, results):
        path = res.runs[0].sample_path or ()
        for slot, avg in path:
            out.rows.append({
                'scenario': 'sample-path', 'scheduler': _label(name), 'rho': spec.rho,
                'seed': spec.master_seed, 'weight': spec.weights[0],
                'n_fd': cfg.n_fd, 'n_hd': cfg.n_hd, 'slot': slot, 'avg_queue': avg,
            })
    return out


def _table_ratio(baseline: float, variant: float) -> Optional[float]:
    return None if variant == 0 else baseline / variant


def scenario_weight_table(spec: ScenarioSpec, num_workers: int = 1) -> ScenarioOutput:
    """Q-CSMA's average queue over that of each H-GMS variant, per (f, rho)."""
    names = ('qcsma', *_TABLE_VARIANTS)
    cells = [(weight, rho, name) for weight in spec.weights for rho in spec.rhos for name in names]
    results = run_grid(
        [spec.sim_config(name, rho, weight=weight) for weight, rho, name in cells],
        num_workers,
    )
    means = {cell: res.mean_queue.mean for cell, res in zip(cells, results)}

    out = ScenarioOutput('weight-table', COLUMNS['weight-table'])
    for weight in spec.weights:
        f = WeightFunction.named(weight)
        for rho in spec.rhos:
            baseline = means[weight, rho, 'qcsma']
            for name in _TABLE_VARIANTS:
                mean = means[weight, rho, name]
                out.rows.append({
                    'scenario': 'weight-table', 'scheduler': _label(name), 'rho': rho,
                    'seed': spec.master_seed, 'weight': weight,
                    'aggressiveness': f.aggressiveness, 'mean_queue': mean,
                    'qcsma_mean_queue': baseline, 'ratio': _table_ratio(baseline, mean),
                })
    return out


def scenario_fairness(spec: ScenarioSpec, num_workers: int = 1) -> ScenarioOutput:
    """FD/HD and UL/DL fairness curves over sigma, N_F or rho."""
    mode = spec.fairness_mode
    if mode == 'sigma':
        points = [(x, {'sigma': x}) for x in spec.sigmas]
    elif mode == 'nfd':
        points = [(x, {'n_fd': x}) for x in spec.n_fds]
    else:
        points = [(x, {'rho': x}) for x in spec.rhos]

    cells = []
    for name in spec.schedulers:
        for x, params in points:
            rho = params.get('rho', spec.rho)
            sigma = params.get('sigma', spec.sigma)
            n_fd = params.get('n_fd', spec.n_fd)
            cells.append((name, x, rho, sigma, n_fd))
    results = run_grid(
        [spec.sim_config(name, rho, n_fd=n_fd, sigma=sigma) for name, _, rho, sigma, n_fd in cells],
        num_workers,
    )

    out = ScenarioOutput('fairness', COLUMNS['fairness'])
    for (name, x, rho, sigma, n_fd), res in zip(cells, results):
        out.rows.append({
            'scenario': 'fairness', 'scheduler': _label(name), 'rho': rho,
            'seed': spec.master_seed, 'mode': mode, 'x': x, 'weight': spec.weights[0],
            'n_fd': n_fd, 'n_hd': spec.n_users - n_fd, 'sigma': sigma,
            'fd_hd_ratio': res.fd_hd_fairness.mean if res.fd_hd_fairness else None,
            'ul_dl_ratio': res.ul_dl_fairness.mean if res.ul_dl_fairness else None,
            'mean_queue': res.mean_queue.mean,
        })
    return out


def scenario_bounds_curve(spec: ScenarioSpec, num_workers: int = 1) -> ScenarioOutput:
    """Both lower bounds over the rho grid; no simulation."""
    cfg = spec.network()
    out = ScenarioOutput('bounds-curve', COLUMNS['bounds-curve'])
    for weight in spec.weights:
        for rho in spec.rhos:
            lam = spec.rates(cfg, rho, spec.sigma)
            fund, improved = _bounds(spec, rho, weight, sigma=spec.sigma)
            loose = None
            if spec.loose_bound and fund is not None:
                loose = hgms_lb(cfg, lam, None, None, WeightFunction.named(weight), loose=True)
            out.rows.append({
                'scenario': 'bounds-curve', 'scheduler': _label('hgms'), 'rho': rho,
                'seed': spec.master_seed, 'weight': weight, 'n_fd': cfg.n_fd, 'n_hd': cfg.n_hd,
                'capacity_load': capacity_load(cfg, lam),
                'gamma': gamma_expansion(cfg, lam.scaled(1.0 / hd_capacity_load(cfg, lam))),
                'fundamental_lb': fund, 'hgms_lb': improved, 'loose_lb': loose,
            })
    out.metadata['turning_point'] = {w: _turning_point(spec, w) for w in spec.weights}
    return out


def scenario_custom(spec: ScenarioSpec, num_workers: int = 1) -> ScenarioOutput:
    """One row per scheduler at a single (rho, sigma) point."""
    results = run_grid(
        [spec.sim_config(name, spec.rho, sigma=spec.sigma) for name in spec.schedulers],
        num_workers,
    )
    cfg = spec.network()
    fund, improved = _bounds(spec, spec.rho, spec.weights[0], sigma=spec.sigma)
    out = ScenarioOutput('custom', COLUMNS['custom'])
    for name, res in zip(spec.schedulers, results):
        out.rows.append({
            'scenario': 'custom', 'scheduler': _label(name), 'rho': spec.rho,
            'seed': spec.master_seed, 'weight': spec.weights[0],
            'n_fd': cfg.n_fd, 'n_hd': cfg.n_hd, 'sigma': spec.sigma,
            'mean_queue': res.mean_queue.mean, 'stderr': res.mean_queue.stderr,
            'fd_hd_ratio': res.fd_hd_fairness.mean if res.fd_hd_fairness else None,
            'ul_dl_ratio': res.ul_dl_fairness.mean if res.ul_dl_fairness else None,
            'throughput': sum(res.per_link_throughput),
            'fundamental_lb': fund, 'hgms_lb': improved,
        })
    return out


SCENARIOS: dict[str, Callable[[ScenarioSpec, int], ScenarioOutput]] = {
    'delay-sweep': scenario_delay_sweep,
    'sample-path': scenario_sample_path,
    'weight-table': scenario_weight_table,
    'fairness': scenario_fairness,
    'bounds-curve': scenario_bounds_curve,
    'custom': scenario_custom,
}


def run_scenario(spec: ScenarioSpec, num_workers: int = 1) -> ScenarioOutput:
    logging.getLogger('Scenario').info("Running scenario '%s'...", spec.scenario)
    return SCENARIOS[spec.scenario](spec, num_workers)
