from app.network.topology import (
    Direction, LinkRef, NetworkConfig, Schedule, QueueVector,
    enumerate_schedules, is_feasible, queue_step,
)
from app.network.capacity import (
    RateVector, capacity_load, hd_capacity_load, in_capacity_region,
    in_hd_capacity_region, gamma_expansion, equal_rate_vector, sigma_rate_vector,
)
from app.network.arrivals import ArrivalModel, BernoulliArrivals, BatchArrivals

__all__ = [
    'Direction', 'LinkRef', 'NetworkConfig', 'Schedule', 'QueueVector',
    'enumerate_schedules', 'is_feasible', 'queue_step',
    'RateVector', 'capacity_load', 'hd_capacity_load', 'in_capacity_region',
    'in_hd_capacity_region', 'gamma_expansion', 'equal_rate_vector', 'sigma_rate_vector',
    'ArrivalModel', 'BernoulliArrivals', 'BatchArrivals',
]
