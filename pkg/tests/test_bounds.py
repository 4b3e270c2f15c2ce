import math

import numpy as np
import pytest

from imac import (
    DomainError,
    GenieParams,
    OptimizerSettings,
    bounds,
    exact_sum_capacity,
    genie_objective,
    lower_bound_tin,
    new_channel,
    upper_bound,
)
from imac.bounds import grid_search

from .conftest import random_channel

LOG3 = math.log2(3)


def test_genie_objective_values():
    assert genie_objective(new_channel(1, 1, 0, 0), GenieParams(0, 1)) == pytest.approx(LOG3, abs=1e-12)
    # INR = 0.1125, A = 1 + 1 + 0.15^2
    expected = math.log2(1 + 0.1125 + 2.0225 / 1.1125)
    got = genie_objective(new_channel(1, 1, 0.3, 0.15), GenieParams(0, 1))
    assert got == pytest.approx(expected, abs=1e-12)
    assert got == pytest.approx(1.551136, abs=1e-6)


def test_genie_objective_domain():
    with pytest.raises(DomainError):
        genie_objective(new_channel(1, 1, 1, 1), GenieParams(1, 0))
    with pytest.raises(DomainError):
        GenieParams(0.8, 0.8)
    with pytest.raises(DomainError):
        GenieParams(1.5, 0.0)


def test_genie_objective_sign_symmetry(rng):
    for _ in range(200):
        ch = random_channel(rng)
        rho = float(rng.uniform(-0.99, 0.99))
        eta = float(rng.uniform(0.05, 1)) * math.sqrt(1 - rho**2) * rng.choice([-1, 1])
        a = genie_objective(ch, GenieParams(rho, eta))
        b = genie_objective(ch, GenieParams(-rho, -eta))
        assert a == pytest.approx(b, rel=1e-12)


def test_upper_bound_zero_interference():
    value, params = upper_bound(new_channel(1, 1, 0, 0))
    assert value == pytest.approx(LOG3, abs=1e-6)
    assert abs(params.rho) < 1e-6


def test_upper_bound_not_worse_than_grid(rng):
    for _ in range(30):
        ch = random_channel(rng)
        assert upper_bound(ch)[0] <= grid_search(ch, 201)[0]


def test_finer_grid_does_not_raise_upper_bound():
    for c in [(1, 1, 0.3, 0.15), (10, 10, 0.3, 0.15), (5, 5, 0.8, 0.4), (2, 7, 0.25, 0.05)]:
        ch = new_channel(*c)
        coarse = upper_bound(ch, OptimizerSettings(grid=101))[0]
        fine = upper_bound(ch, OptimizerSettings(grid=401))[0]
        assert fine <= coarse + 1e-9


def test_upper_bound_params_feasible(rng):
    for _ in range(30):
        _, p = upper_bound(random_channel(rng))
        assert p.eta**2 <= 1 - p.rho**2 + 1e-12


@pytest.mark.parametrize(
    "ch, expected",
    [
        ((1, 1, 0, 0), LOG3),
        ((10, 10, 0.3, 0.15), math.log2(1 + 20 / 2.125)),
        ((1, 1, 2, 2), math.log2(1 + 2 / 9)),
    ],
)
def test_lower_bound_tin(ch, expected):
    assert lower_bound_tin(new_channel(*ch)) == pytest.approx(expected, abs=1e-12)


def test_tin_known_decimals():
    assert lower_bound_tin(new_channel(10, 10, 0.3, 0.15)) == pytest.approx(3.380143, abs=1e-6)
    assert lower_bound_tin(new_channel(1, 1, 2, 2)) == pytest.approx(0.289507, abs=1e-6)


def test_bounds_zero_interference():
    b = bounds(new_channel(1, 1, 0, 0))
    assert b.lower == pytest.approx(LOG3, abs=1e-9)
    assert b.upper == pytest.approx(LOG3, abs=1e-9)
    assert abs(b.gap) <= 1e-9


def test_bounds_regime_exact():
    b = bounds(new_channel(1, 1, 2, 2))
    assert b.lower == b.upper == pytest.approx(LOG3, abs=1e-12)
    assert b.source == "very-strong-combined"


def test_bounds_weak_interference():
    ch = new_channel(1, 1, 0.3, 0.15)
    b = bounds(ch)
    assert b.gap > 0
    assert b.lower == pytest.approx(lower_bound_tin(ch))
    assert b.upper == pytest.approx(b.genie)
    assert b.exact is None


def test_bounds_keep_rigorous_sides_when_closed_form_overshoots(caplog):
    b = bounds(new_channel(1, 1, 1, 3))
    assert b.exact == pytest.approx(LOG3)
    assert b.upper == pytest.approx(1.5, abs=1e-9)
    assert b.lower <= b.upper + 1e-9
    assert "outside" in caplog.text


def test_bounds_ordering_random(rng):
    for _ in range(60):
        b = bounds(random_channel(rng))
        assert b.lower <= b.upper + 1e-9
        assert b.gap == pytest.approx(b.upper - b.lower)


def test_exact_below_genie(rng):
    n = 0
    for _ in range(200):
        ch = random_channel(rng, h_max=5.0)
        exact = exact_sum_capacity(ch)
        if exact is not None:
            n += 1
            assert exact[0] <= upper_bound(ch)[0] + 1e-6
    assert n > 10


def test_bounds_json():
    data = bounds(new_channel(10, 10, 0.3, 0.15)).to_json()
    assert set(data) >= {"lower", "upper", "gap", "argmin"}
    assert set(data["argmin"]) == {"rho", "eta"}
    assert np.isclose(data["gap"], data["upper"] - data["lower"], atol=1e-8)


def test_optimizer_settings_validation():
    with pytest.raises(ValueError):
        OptimizerSettings(grid=1)
    with pytest.raises(ValueError):
        OptimizerSettings(refine=-1)
