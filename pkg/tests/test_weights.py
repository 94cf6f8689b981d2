import math

import pytest

from app.schedulers import WeightFunction, WeightKind, tx_prob, tx_prob_inverse, weight_eval
from app.schedulers.weights import MAX_EXACT_LOG_ODDS, P_MAX
from app.utils.errors import ProbabilityDomainError

LOG1P = WeightFunction.named('log1p')


def test_weight_eval():
    assert weight_eval(LOG1P, 0) == 0.0
    assert weight_eval(WeightFunction.named('sqrt'), 4) == pytest.approx(2.0)
    assert weight_eval(WeightFunction.named('half-log'), math.e ** 2 - 1) == pytest.approx(1.0)
    assert weight_eval(WeightFunction.named('linear'), 7.5) == 7.5


@pytest.mark.parametrize('name, q, expected', [
    ('log1p', 0, 0.5),
    ('log1p', 2, 0.75),
    ('linear', 0, 0.5),
    ('half-log', 3, 2 / 3),
])
def test_tx_prob(name, q, expected):
    assert tx_prob(WeightFunction.named(name), q) == pytest.approx(expected)


def test_tx_prob_log1p_closed_form():
    for q in range(50):
        assert tx_prob(LOG1P, q) == pytest.approx((1 + q) / (2 + q))


def test_tx_prob_inverse():
    assert tx_prob_inverse(LOG1P, 0.5) == pytest.approx(0.0, abs=1e-12)
    assert tx_prob_inverse(LOG1P, 0.9) == pytest.approx(8.0)
    assert tx_prob_inverse(LOG1P, 0.3) == 0.0


@pytest.mark.parametrize('name', ['half-log', 'log1p', 'sqrt', 'linear'])
def test_tx_prob_inverse_round_trips(name):
    f = WeightFunction.named(name)
    exact = [q for q in range(101) if f(q) <= MAX_EXACT_LOG_ODDS]
    # the whole grid for the logarithmic and sqrt weights, 0..16 for linear
    assert len(exact) == (17 if name == 'linear' else 101)
    for q in exact:
        assert tx_prob_inverse(f, tx_prob(f, q)) == pytest.approx(q, rel=1e-9, abs=1e-9)


@pytest.mark.parametrize('name, top', [('half-log', 100), ('log1p', 100), ('sqrt', 100), ('linear', 30)])
def test_tx_prob_strictly_increasing(name, top):
    f = WeightFunction.named(name)
    probs = [tx_prob(f, q) for q in range(top + 1)]
    assert all(a < b for a, b in zip(probs, probs[1:]))


@pytest.mark.parametrize('q', [37, 40, 100, 10 ** 6])
def test_tx_prob_saturates_below_one(q):
    f = WeightFunction.named('linear')
    p = tx_prob(f, q)
    assert 0.0 < p < 1.0
    assert p == P_MAX
    assert tx_prob_inverse(f, p) == pytest.approx(36.7, abs=0.1)


@pytest.mark.parametrize('p', [0.0, 1.0, -0.2, 1.5])
def test_tx_prob_inverse_domain(p):
    with pytest.raises(ProbabilityDomainError):
        tx_prob_inverse(LOG1P, p)


def test_custom_weight_inverts_by_bisection():
    f = WeightFunction(WeightKind.CUSTOM, func=lambda x: math.log1p(x) ** 2)
    assert f.invert(4.0) == pytest.approx(math.e ** 2 - 1, rel=1e-9)
    assert f.aggressiveness == 'unknown'


def test_aggressiveness():
    assert WeightFunction.named('half-log').aggressiveness == 'sub-log'
    assert LOG1P.aggressiveness == 'log'
    assert WeightFunction.named('sqrt').aggressiveness == 'super-log'
    assert WeightFunction.named('linear').log_growth == math.inf


def test_named_rejects_unknown():
    with pytest.raises(ValueError):
        WeightFunction.named('cubic')
    with pytest.raises(ValueError):
        WeightFunction.named('custom')
