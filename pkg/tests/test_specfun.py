import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

import oracles
from telegraph.errors import DomainError
from telegraph.specfun import (
    ACOSH_EXP_SWITCH,
    BESSEL_SWITCH,
    LOG_COSH_SWITCH,
    acosh_exp,
    bessel_i0,
    bessel_i0e,
    bessel_i1,
    bessel_i1_over_z,
    bessel_i1_over_z_e,
    bessel_i1e,
    log_cosh,
)

GRID = np.concatenate([[0.0], np.logspace(-12, np.log10(30.0), 300)])


@pytest.mark.parametrize(
    "func, z, expected",
    [
        (bessel_i0, 0.0, 1.0),
        (bessel_i0, 1.0, 1.2660658777520084),
        (bessel_i0, 2.0, 2.2795853023360673),
        (bessel_i1, 0.0, 0.0),
        (bessel_i1, 1.0, 0.5651591039924850),
        (bessel_i1, 2.0, 1.5906368546373291),
        (bessel_i1_over_z, 0.0, 0.5),
        (bessel_i1_over_z, 1.0, 0.5651591039924850),
    ],
)
def test_bessel_examples(func, z, expected):
    assert func(z) == pytest.approx(expected, rel=1e-15, abs=0)


def test_i1_over_z_tiny_argument():
    assert abs(bessel_i1_over_z(1e-8) - 0.5) <= 1e-15


@pytest.mark.parametrize("order, func", [(0, bessel_i0), (1, bessel_i1)])
def test_bessel_matches_series_oracle(order, func):
    got = func(GRID)
    ref = np.array([oracles.bessel_series(order, z) for z in GRID])
    nz = ref != 0
    rel = np.abs(got[nz] - ref[nz]) / ref[nz]
    assert rel.max() <= 1e-12
    if order == 1:
        assert got[0] == 0.0


def test_i1_over_z_agrees_with_ratio():
    z = np.logspace(-6, np.log10(30.0), 200)
    rel = np.abs(bessel_i1_over_z(z) / (bessel_i1(z) / z) - 1.0)
    assert rel.max() <= 1e-13
    assert abs(bessel_i1_over_z(1e-9) - 0.5) <= 1e-12


def test_scaled_variants_consistent():
    z = np.array([0.0, 0.5, 3.0, 14.9, 15.1, 29.0, 300.0])
    zz = z[z < 700]
    np.testing.assert_allclose(bessel_i0e(zz) * np.exp(zz), bessel_i0(zz), rtol=1e-14)
    np.testing.assert_allclose(bessel_i1e(zz) * np.exp(zz), bessel_i1(zz), rtol=1e-14)
    np.testing.assert_allclose(bessel_i1_over_z_e(zz) * np.exp(zz), bessel_i1_over_z(zz), rtol=1e-14)


def test_scaled_variants_do_not_overflow():
    assert np.isfinite(bessel_i0e(1e5))
    assert bessel_i1e(1e5) == pytest.approx(1.0 / math.sqrt(2 * math.pi * 1e5), rel=1e-5)


def test_crossover_seam_is_continuous():
    below = np.nextafter(BESSEL_SWITCH, 0)
    above = np.nextafter(BESSEL_SWITCH, np.inf)
    for func in (bessel_i0, bessel_i1, bessel_i1_over_z):
        assert func(above) == pytest.approx(func(below), rel=1e-13)
    assert oracles.bessel_series(0, above) == pytest.approx(bessel_i0(above), rel=1e-13)


def test_bessel_monotone_and_bounds():
    i0 = bessel_i0(GRID)
    i1 = bessel_i1(GRID)
    assert np.all(np.diff(i0) >= 0) and np.all(i0 >= 1.0)
    assert np.all(np.diff(i1) >= 0) and np.all(i1 >= 0.0)


@pytest.mark.parametrize("z", [0.5, 1.0, 2.0, 5.0, 10.0])
def test_derivative_of_i0_is_i1(z):
    h = 1e-5
    fd = (bessel_i0(z + h) - bessel_i0(z - h)) / (2 * h)
    assert fd == pytest.approx(bessel_i1(z), rel=1e-9)


@pytest.mark.parametrize("func", [bessel_i0, bessel_i1, bessel_i1_over_z, bessel_i0e])
def test_negative_argument_is_domain_error(func):
    with pytest.raises(DomainError):
        func(-1e-3)


def test_overflow_is_signalled():
    assert np.isfinite(bessel_i0(700.0))
    with pytest.raises(OverflowError):
        bessel_i0(720.0)
    with pytest.raises(OverflowError):
        bessel_i1(np.array([1.0, 800.0]))


def test_log_cosh_examples():
    assert log_cosh(0.0) == 0.0
    assert log_cosh(1000.0) == pytest.approx(1000.0 - math.log(2.0), rel=1e-16)
    assert log_cosh(1.0) == pytest.approx(oracles.log_cosh(1.0), rel=4e-16)
    assert log_cosh(1.0) == pytest.approx(0.4337808304830271, rel=1e-15)


def test_log_cosh_matches_oracle_across_scales():
    ys = np.concatenate([np.logspace(-10, 2.5, 200), [LOG_COSH_SWITCH]])
    got = log_cosh(ys)
    ref = np.array([oracles.log_cosh(y) for y in ys])
    assert np.max(np.abs(got - ref) / ref) <= 4e-16 * 4


@pytest.mark.parametrize("switch, func", [(LOG_COSH_SWITCH, log_cosh), (ACOSH_EXP_SWITCH, acosh_exp)])
def test_stable_branch_seams(switch, func):
    below = np.nextafter(switch, 0)
    above = np.nextafter(switch, np.inf)
    assert abs(func(above) - func(below)) <= 1e-13 * abs(func(switch))
    # array and scalar code paths agree
    assert func(np.array([below, above])) == pytest.approx([func(below), func(above)], rel=1e-15)


@given(st.floats(min_value=-700, max_value=700, allow_nan=False))
def test_log_cosh_is_even(y):
    assert log_cosh(y) == log_cosh(-y)
    assert log_cosh(y) >= 0


def test_acosh_exp_examples():
    assert acosh_exp(0.0) == 0.0
    assert acosh_exp(0.4337808304830271) == pytest.approx(1.0, abs=1e-12)
    assert acosh_exp(50.0) == pytest.approx(50.693147180559945, abs=1e-12)
    assert acosh_exp(1e-20) == pytest.approx(math.sqrt(2e-20), rel=1e-15)


def test_acosh_exp_matches_oracle():
    us = np.logspace(-12, 2.8, 200)
    ref = np.array([oracles.acosh_exp(u) for u in us])
    assert np.max(np.abs(acosh_exp(us) - ref) / ref) <= 1e-15


def test_roundtrip_within_four_ulp():
    ys = np.logspace(-8, np.log10(700.0), 5000)
    back = acosh_exp(log_cosh(ys))
    assert np.max(np.abs(back - ys) / np.spacing(ys)) <= 4
    for y in ys[::250]:
        assert abs(acosh_exp(log_cosh(float(y))) - y) <= 4 * np.spacing(y)


@given(st.floats(min_value=1e-8, max_value=700))
def test_roundtrip_property(y):
    assert abs(acosh_exp(log_cosh(y)) - y) <= 4 * np.spacing(y)


def test_acosh_exp_rejects_negative():
    with pytest.raises(DomainError):
        acosh_exp(-1.0)
    with pytest.raises(DomainError):
        acosh_exp(np.array([0.0, -1.0]))
