"""
Scenario specifications and config file ingestion.

A config file is a flat JSON object whose keys are the fields of
``ScenarioSpec``; absent keys take the scenario's defaults.
"""
import json
import math
from dataclasses import asdict, dataclass, fields, replace
from pathlib import Path
from typing import Any, Literal, Optional, get_args

from app.network.capacity import RateVector, equal_rate_vector, sigma_rate_vector
from app.network.topology import NetworkConfig
from app.schedulers.access import AccessDistribution
from app.schedulers.state import SchedulerKind
from app.schedulers.weights import WeightFunction
from app.sim.engine import DEFAULT_HORIZON, DEFAULT_REPLICATIONS, SEED, SimConfig
from app.utils.errors import (
    ConfigurationError, OutOfRangeError, SchedError, UnknownKeyError
)

ScenarioName = Literal[
    'sample-path', 'delay-sweep', 'fairness', 'weight-table', 'bounds-curve', 'custom'
]
FairnessMode = Literal['sigma', 'nfd', 'rho']

QUICK_HORIZON = 10 ** 5
QUICK_REPLICATIONS = 5

_ALL_SCHEDULERS = ('mws', 'gms', 'qcsma', 'hgms-r', 'hgms', 'hgms-e')
_DISTRIBUTED = ('qcsma', 'hgms-r', 'hgms', 'hgms-e')
_TABLE_WEIGHTS = ('half-log', 'log1p', 'sqrt', 'linear')
# scenarios whose grids must stay strictly inside the capacity region
_STABLE_ONLY = ('delay-sweep', 'fairness', 'weight-table', 'bounds-curve')


def _grid(lo: float, hi: float, n: int = 10) -> tuple[float, ...]:
    return tuple(round(lo + (hi - lo) * k / (n - 1), 12) for k in range(n))


@dataclass(frozen=True)
class ScenarioSpec:
    """
    A validated experiment description.

    Single-valued fields (``rho``, ``sigma``, ``n_fd``) fix the parameters a
    scenario does not sweep; the tuple fields are the sweep grids.
    """
    scenario: ScenarioName = 'custom'
    n_users: int = 10
    n_fd: int = 5
    rho: float = 0.8
    rhos: tuple[float, ...] = _grid(0.5, 0.95)
    sigma: float = 1.0
    sigmas: tuple[float, ...] = _grid(1.0, 2.0)
    n_fds: tuple[int, ...] = tuple(range(1, 10))
    schedulers: tuple[str, ...] = ('hgms',)
    weights: tuple[str, ...] = ('log1p',)
    alpha: Optional[tuple[float, ...]] = None
    alpha_th: float = 0.01
    horizon: int = DEFAULT_HORIZON
    replications: int = DEFAULT_REPLICATIONS
    master_seed: int = SEED
    sample_stride: int = 1000
    warmup: int = 0
    fairness_mode: FairnessMode = 'rho'
    distributed_initiation: bool = False
    loose_bound: bool = False
    out: Optional[str] = None
    format: Literal['csv', 'json'] = 'csv'

    def __post_init__(self):
        _validate(self)

    def network(self, n_fd: Optional[int] = None) -> NetworkConfig:
        n_fd = self.n_fd if n_fd is None else n_fd
        return NetworkConfig(n_fd=n_fd, n_hd=self.n_users - n_fd)

    def access(self) -> AccessDistribution:
        if self.alpha is None:
            return AccessDistribution.uniform(self.n_users)
        return AccessDistribution.from_users(self.alpha)

    def rates(self, cfg: NetworkConfig, rho: float, sigma: float = 1.0) -> RateVector:
        if sigma == 1.0:
            return equal_rate_vector(cfg, rho)
        return sigma_rate_vector(cfg, sigma, rho)

    def sim_config(self,
                   scheduler: str,
                   rho: float,
                   *,
                   n_fd: Optional[int] = None,
                   sigma: float = 1.0,
                   weight: Optional[str] = None,
                   replications: Optional[int] = None,
                   sample_stride: Optional[int] = None) -> SimConfig:
        """The ``SimConfig`` of one grid cell."""
        cfg = self.network(n_fd)
        return SimConfig(
            cfg=cfg,
            lam=self.rates(cfg, rho, sigma),
            scheduler=SchedulerKind(scheduler),
            f=WeightFunction.named(weight or self.weights[0]),
            alpha=self.access(),
            alpha_th=self.alpha_th,
            horizon=self.horizon,
            replications=replications or self.replications,
            master_seed=self.master_seed,
            sample_stride=sample_stride,
            warmup=self.warmup,
            distributed_initiation=self.distributed_initiation,
        )


# per-scenario defaults layered under the config file
SCENARIO_DEFAULTS: dict[str, dict[str, Any]] = {
    'sample-path': {'rho': 0.95, 'schedulers': _ALL_SCHEDULERS, 'replications': 1},
    'delay-sweep': {'schedulers': _ALL_SCHEDULERS},
    'fairness': {'schedulers': _DISTRIBUTED},
    'weight-table': {
        'rhos': (0.8, 0.98),
        'schedulers': _DISTRIBUTED,
        'weights': ('half-log', 'log1p', 'linear'),
    },
    'bounds-curve': {'rhos': _grid(0.05, 0.95)},
    'custom': {},
}


def _fail(exc: type[SchedError], message: str):
    raise exc(message)


def _validate(spec: ScenarioSpec):
    if spec.scenario not in get_args(ScenarioName):
        _fail(OutOfRangeError, f"unknown scenario '{spec.scenario}'")
    if spec.n_users < 1:
        _fail(OutOfRangeError, f"n_users must be >= 1, got {spec.n_users}")
    if not 0 <= spec.n_fd <= spec.n_users:
        _fail(OutOfRangeError, f"n_fd must lie in [0, {spec.n_users}], got {spec.n_fd}")
    if not spec.schedulers:
        _fail(ConfigurationError, "scheduler list is empty")
    for name in spec.schedulers:
        if name not in _ALL_SCHEDULERS:
            _fail(OutOfRangeError, f"unknown scheduler '{name}', expected one of {_ALL_SCHEDULERS}")
    if not spec.weights:
        _fail(ConfigurationError, "weight function list is empty")
    for name in spec.weights:
        if name not in _TABLE_WEIGHTS:
            _fail(OutOfRangeError, f"unknown weight function '{name}', expected one of {_TABLE_WEIGHTS}")
    if not spec.rhos or not spec.sigmas or not spec.n_fds:
        _fail(ConfigurationError, "sweep grids must be nonempty")

    upper = 1.0 if spec.scenario in _STABLE_ONLY else math.inf
    for rho in (spec.rho, *spec.rhos):
        if not 0.0 < rho < upper:
            _fail(OutOfRangeError, f"rho={rho} outside (0, {upper}) for scenario '{spec.scenario}'")
    for sigma in (spec.sigma, *spec.sigmas):
        if not sigma > 0:
            _fail(OutOfRangeError, f"sigma must be positive, got {sigma}")
    for n_fd in spec.n_fds:
        if not 0 <= n_fd <= spec.n_users:
            _fail(OutOfRangeError, f"n_fds entry {n_fd} outside [0, {spec.n_users}]")

    if spec.alpha is not None:
        if len(spec.alpha) != spec.n_users:
            _fail(OutOfRangeError, f"alpha needs {spec.n_users} entries, got {len(spec.alpha)}")
        try:
            AccessDistribution.from_users(spec.alpha)
        except ConfigurationError as e:
            _fail(OutOfRangeError, str(e))
    if not 0.0 < spec.alpha_th < 1.0:
        _fail(OutOfRangeError, f"alpha_th must lie in (0, 1), got {spec.alpha_th}")
    if spec.horizon < 1 or spec.replications < 1 or spec.sample_stride < 1:
        _fail(OutOfRangeError, "horizon, replications and sample_stride must be >= 1")
    if not 0 <= spec.warmup < spec.horizon:
        _fail(OutOfRangeError, f"warmup must lie in [0, horizon), got {spec.warmup}")
    if spec.fairness_mode not in get_args(FairnessMode):
        _fail(OutOfRangeError, f"unknown fairness mode '{spec.fairness_mode}'")
    if spec.format not in ('csv', 'json'):
        _fail(OutOfRangeError, f"unknown output format '{spec.format}'")

    # every cell must yield a valid rate vector
    try:
        for n_fd in {spec.n_fd, *spec.n_fds}:
            cfg = spec.network(n_fd)
            for rho in (spec.rho, *spec.rhos):
                for sigma in (spec.sigma, *spec.sigmas):
                    spec.rates(cfg, rho, sigma)
    except ValueError as e:
        if isinstance(e, SchedError):
            raise
        _fail(OutOfRangeError, str(e))


_FIELD_NAMES = tuple(f.name for f in fields(ScenarioSpec))
_TUPLE_FIELDS = ('rhos', 'sigmas', 'n_fds', 'schedulers', 'weights', 'alpha')
_INT_FIELDS = ('n_users', 'n_fd', 'horizon', 'replications', 'master_seed', 'sample_stride', 'warmup')
_FLOAT_FIELDS = ('rho', 'sigma', 'alpha_th')


def _coerce(key: str, value: Any) -> Any:
    try:
        if key in _TUPLE_FIELDS:
            if value is None:
                return None
            if isinstance(value, (str, int, float)):
                value = [value]
            items = tuple(value)
            if key == 'n_fds':
                return tuple(int(v) for v in items)
            if key in ('rhos', 'sigmas', 'alpha'):
                return tuple(float(v) for v in items)
            return tuple(str(v) for v in items)
        if key in _INT_FIELDS:
            if isinstance(value, float) and not value.is_integer():
                raise ValueError(f"expected an integer, got {value}")
            return int(value)
        if key in _FLOAT_FIELDS:
            return float(value)
        if key in ('distributed_initiation', 'loose_bound'):
            if not isinstance(value, bool):
                raise ValueError(f"expected true/false, got {value!r}")
        return value
    except (TypeError, ValueError) as e:
        raise OutOfRangeError(f"bad value for '{key}': {e}") from None


def spec_from_dict(data: dict[str, Any], scenario: Optional[str] = None) -> ScenarioSpec:
    """
    Build a validated spec from config keys over the scenario's defaults.

    Args:
        data (dict[str, Any]): Config keys.
        scenario (Optional[str]): Scenario name; overrides ``data['scenario']``.

    Raises:
        UnknownKeyError: On keys outside the schema.
        OutOfRangeError: On out-of-range values.
        ConfigurationError: On structurally invalid specs.
    """
    unknown = sorted(set(data) - set(_FIELD_NAMES))
    if unknown:
        raise UnknownKeyError(f"unknown config keys: {', '.join(unknown)}")
    name = scenario or data.get('scenario', 'custom')
    if name not in SCENARIO_DEFAULTS:
        raise OutOfRangeError(f"unknown scenario '{name}'")
    merged = {**SCENARIO_DEFAULTS[name], **data, 'scenario': name}
    return ScenarioSpec(**{k: _coerce(k, v) for k, v in merged.items()})


def spec_to_dict(spec: ScenarioSpec) -> dict[str, Any]:
    """Config keys of ``spec``; ``spec_from_dict`` inverts it."""
    return {k: list(v) if isinstance(v, tuple) else v for k, v in asdict(spec).items()}


def load_config(path: Path | str, scenario: Optional[str] = None) -> ScenarioSpec:
    """
    Read a config file, or the ``config`` object of an emitted JSON summary.

    Raises:
        ConfigurationError: If the file is unreadable or not a JSON object.
    """
    try:
        data = json.loads(Path(path).read_text(encoding='utf-8'))
    except OSError as e:
        raise ConfigurationError(f"cannot read config {path}: {e}") from None
    except json.JSONDecodeError as e:
        raise ConfigurationError(f"config {path} is not valid JSON: {e}") from None
    if not isinstance(data, dict):
        raise ConfigurationError(f"config {path} must hold a JSON object")
    if 'config' in data and 'metadata' in data:
        data = data['config']
    return spec_from_dict(data, scenario)


def apply_overrides(spec: ScenarioSpec, quick: bool = False, **overrides) -> ScenarioSpec:
    """Apply CLI flags; ``None`` values leave ``spec`` untouched."""
    changes = {k: v for k, v in overrides.items() if v is not None}
    if quick:
        changes.setdefault('horizon', QUICK_HORIZON)
        changes.setdefault('replications', min(spec.replications, QUICK_REPLICATIONS))
    if not changes:
        return spec
    return replace(spec, **changes)
