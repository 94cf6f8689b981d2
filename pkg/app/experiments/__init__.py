from app.experiments.spec import (
    QUICK_HORIZON, QUICK_REPLICATIONS, SCENARIO_DEFAULTS, ScenarioSpec,
    apply_overrides, load_config, spec_from_dict, spec_to_dict
)
from app.experiments.scenarios import (
    COLUMNS, SCENARIOS, ScenarioOutput, run_scenario, scenario_bounds_curve,
    scenario_custom, scenario_delay_sweep, scenario_fairness, scenario_sample_path,
    scenario_weight_table
)
from app.experiments.output import check_writable, emit, summary

__all__ = [
    'QUICK_HORIZON', 'QUICK_REPLICATIONS', 'SCENARIO_DEFAULTS', 'ScenarioSpec',
    'apply_overrides', 'load_config', 'spec_from_dict', 'spec_to_dict',
    'COLUMNS', 'SCENARIOS', 'ScenarioOutput', 'run_scenario', 'scenario_bounds_curve',
    'scenario_custom', 'scenario_delay_sweep', 'scenario_fairness', 'scenario_sample_path',
    'scenario_weight_table', 'check_writable', 'emit', 'summary',
]
