import pytest

from app.bounds import (
    CliqueSpec, bound_turning_point, clique_lb, emax_partition, fundamental_lb, hgms_lb
)
from app.network import (
    BernoulliArrivals, LinkRef, NetworkConfig, RateVector, capacity_load, equal_rate_vector
)
from app.schedulers import AccessDistribution, WeightFunction
from app.utils.errors import SaturatedCliqueError

LOG1P = WeightFunction.named('log1p')
HALF_FD = NetworkConfig(5, 5)
ALL_HD = NetworkConfig(0, 10)


def _clique(rates):
    return CliqueSpec(
        links=tuple(LinkRef.from_index(l) for l in range(len(rates))),
        rates=tuple(rates),
        variances=tuple(v * (1 - v) for v in rates),
    )


def test_clique_lb():
    assert clique_lb(_clique([0.5])) == pytest.approx(0.5)
    assert clique_lb(_clique([0.0] * 6)) == 0.0
    assert clique_lb(_clique([0.0475] * 20)) == pytest.approx(9.52375)


def test_clique_lb_saturated():
    with pytest.raises(SaturatedCliqueError):
        clique_lb(_clique([0.5, 0.5]))


def test_clique_spec_of_arrivals():
    lam = RateVector((0.1, 0.2, 0.3, 0.4))
    c = CliqueSpec.of([1, 3], BernoulliArrivals(lam))
    assert c.rates == (0.2, 0.4)
    assert c.variances == pytest.approx((0.16, 0.24))
    assert c.total_rate == pytest.approx(0.6)


def test_emax_partition():
    e_max, e_min = emax_partition(ALL_HD, equal_rate_vector(ALL_HD, 0.5))
    assert e_max == list(range(20))
    assert e_min == []

    cfg = NetworkConfig(2, 1)
    e_max, e_min = emax_partition(cfg, RateVector((0.2, 0.1, 0.1, 0.1, 0.05, 0.05)))
    assert e_max == [0, 2, 4, 5]
    assert e_min == [1, 3]


def test_emax_carries_capacity_load():
    for rho in (0.3, 0.9, 0.999):
        lam = equal_rate_vector(HALF_FD, rho)
        e_max, _ = emax_partition(HALF_FD, lam)
        assert sum(lam[l] for l in e_max) == pytest.approx(capacity_load(HALF_FD, lam), abs=1e-12)


def test_fundamental_lb():
    assert fundamental_lb(ALL_HD, equal_rate_vector(ALL_HD, 0.95)) == pytest.approx(0.4761875)
    lam = 0.95 / 15
    expected = 0.95 * (2 - 0.95 - lam) / (2 * 0.05 * 20)
    assert fundamental_lb(HALF_FD, equal_rate_vector(HALF_FD, 0.95)) == pytest.approx(expected)
    assert fundamental_lb(HALF_FD, equal_rate_vector(HALF_FD, 0.0)) == 0.0


def test_fundamental_lb_explicit_arrivals():
    lam = equal_rate_vector(HALF_FD, 0.7)
    assert fundamental_lb(HALF_FD, lam, BernoulliArrivals(lam)) == fundamental_lb(HALF_FD, lam)


def test_hgms_lb():
    lam = equal_rate_vector(HALF_FD, 0.95)
    alpha = AccessDistribution.uniform(10)
    assert hgms_lb(HALF_FD, lam, None, alpha, LOG1P) == pytest.approx(9.7, rel=1e-9)


def test_hgms_lb_clamps_to_fundamental():
    lam = equal_rate_vector(HALF_FD, 0.05)
    alpha = AccessDistribution.uniform(10)
    assert hgms_lb(HALF_FD, lam, None, alpha, LOG1P) == fundamental_lb(HALF_FD, lam)


def test_hgms_lb_loose():
    lam = equal_rate_vector(HALF_FD, 0.95)
    tight = hgms_lb(HALF_FD, lam, None, AccessDistribution.uniform(10), LOG1P)
    loose = hgms_lb(HALF_FD, lam, None, None, LOG1P, loose=True)
    assert fundamental_lb(HALF_FD, lam) <= loose <= tight
    with pytest.raises(ValueError):
        hgms_lb(HALF_FD, lam, None, None, LOG1P)


def test_bounds_nondecreasing_in_rho():
    alpha = AccessDistribution.uniform(10)
    grid = [k / 100 for k in range(1, 100)]
    fund = [fundamental_lb(HALF_FD, equal_rate_vector(HALF_FD, r)) for r in grid]
    improved = [hgms_lb(HALF_FD, equal_rate_vector(HALF_FD, r), None, alpha, LOG1P) for r in grid]
    assert all(a <= b for a, b in zip(fund, fund[1:]))
    assert all(a <= b for a, b in zip(improved, improved[1:]))
    assert all(f <= h for f, h in zip(fund, improved))


def test_bound_turning_point():
    alpha = AccessDistribution.uniform(10)
    tp = bound_turning_point(HALF_FD, alpha, LOG1P)
    assert tp is not None
    assert 0.5 < tp < 0.65
    above = equal_rate_vector(HALF_FD, tp + 1e-4)
    below = equal_rate_vector(HALF_FD, tp - 1e-3)
    assert hgms_lb(HALF_FD, above, None, alpha, LOG1P) > fundamental_lb(HALF_FD, above)
    assert hgms_lb(HALF_FD, below, None, alpha, LOG1P) == fundamental_lb(HALF_FD, below)
