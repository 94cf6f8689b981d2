from app.sim.engine import (
    SEED, SimConfig, SimResult, ReplicatedResult, run_once, replicate, aggregate
)
from app.sim.metrics import MetricSummary, fairness_fd_hd, fairness_ul_dl, throughput_stderr
from app.sim.pool import run_grid
from app.sim.streams import derive_seed
