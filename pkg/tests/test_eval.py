import cmath
import math

import pytest

from besselphase import (
    BesselOverflowError,
    DomainError,
    EvalWarning,
    TruncationPolicy,
    besselj,
    bessely,
    estimate_error,
    eval_jy,
)
from besselphase.eval import _jy_and_derivatives
from besselphase.series import is_mp

EPS = 2.220446049250313e-16

# 300-bit mpmath values, frozen
J50_100 = -0.038698339728525383467
Y50_100 = 0.076505263944803040444
J_CPLX = complex(0.47851422536723793092, -0.13004464392162457538)  # J_{10.3+2i}(12)
Y_CPLX = complex(-0.18682565779254059348, -0.40929468768561895333)


def ulps(a: float, b: float) -> float:
    return abs(a - b) / math.ulp(b)


@pytest.mark.parametrize("z", [1.0, 10.0, 100.0, 1000.0, 12345.678])
def test_half_order_closed_form(z):
    r = eval_jy(0.5, z)
    amp = math.sqrt(2 / (math.pi * z))
    assert ulps(r.j_value, amp * math.sin(z)) <= 8
    assert ulps(r.y_value, -amp * math.cos(z)) <= 8
    assert r.modulus_terms_used == 1 and r.phase_terms_used == 1


def test_table1_point_against_frozen_values():
    r = eval_jy(50, 100)
    assert abs(r.j_value - J50_100) / abs(J50_100) <= 1e-13
    assert abs(r.y_value - Y50_100) / abs(Y50_100) <= 1e-13
    assert isinstance(r.j_value, float) and isinstance(r.y_value, float)
    assert besselj(50, 100) == r.j_value and bessely(50, 100) == r.y_value


def test_complex_order_error_within_estimate():
    r = eval_jy(10.3 + 2j, 12.0)
    err = max(abs(r.j_value - J_CPLX) / abs(J_CPLX), abs(r.y_value - Y_CPLX) / abs(Y_CPLX))
    assert err <= 3 * r.err_estimate
    assert err < 1e-5


def test_extended_precision_run():
    r = eval_jy(50, 100.0, precision=200)
    assert is_mp(r.j_value)
    assert abs(float(r.j_value) - J50_100) / abs(J50_100) < 1e-15


def test_large_order_double_vs_extended():
    nu, z = 1e6, 2e6
    ref = eval_jy(nu, z, TruncationPolicy.auto(1e-40, 1000), precision=256)
    r = eval_jy(nu, z)
    err = abs(r.j_value - float(ref.j_value)) / abs(float(ref.j_value))
    assert 1e-14 < err < 1e-8


@pytest.mark.parametrize(
    "nu,z",
    [(0.5, 3.0), (10, 11.0), (50, 100.0), (1e6, 3e6), (0.1, 1.0), (50 - 10j, 100.0), (10, 80 + 20j), (3 + 1j, 7 - 2j)],
)
def test_pythagorean_assembly(nu, z):
    r = eval_jy(nu, z)
    lhs = r.j_value**2 + r.y_value**2
    scale = abs(r.j_value) ** 2 + abs(r.y_value) ** 2
    assert abs(lhs - r.modulus_sq) <= 4 * EPS * scale


def test_real_inputs_stay_real():
    r = eval_jy(7, 20)
    assert type(r.j_value) is float and type(r.y_value) is float and type(r.alpha) is float
    r = eval_jy(7 + 0j, 20 + 0j)
    assert type(r.j_value) is float


def test_turning_point_flag():
    assert EvalWarning.NEAR_TURNING_POINT in eval_jy(20, 20.9).warnings
    assert EvalWarning.NEAR_TURNING_POINT in eval_jy(20, 10.0).warnings  # warned, not rejected
    assert EvalWarning.NEAR_TURNING_POINT not in eval_jy(20, 21.5).warnings


def test_branch_cut_flag():
    z = 100 * cmath.exp(0.97j * math.pi)
    assert EvalWarning.NEAR_BRANCH_CUT in eval_jy(10, z).warnings
    assert not eval_jy(10, 100 * cmath.exp(0.5j)).warnings


def test_roundoff_flag():
    assert EvalWarning.LARGE_ARGUMENT_ROUNDOFF in eval_jy(1e6, 1e7).warnings
    assert EvalWarning.LARGE_ARGUMENT_ROUNDOFF not in eval_jy(50, 100).warnings


def test_overflow_is_reported():
    with pytest.raises(BesselOverflowError):
        eval_jy(10, 10 + 800j)


@pytest.mark.parametrize("z", [0.0, -2.0, complex(-2, 0)])
def test_domain(z):
    with pytest.raises(DomainError):
        eval_jy(1, z)


@pytest.mark.parametrize("nu", [10.0, 50.0])
def test_wronskian(nu):
    z = 3 * nu
    j, y, jp, yp = _jy_and_derivatives(nu, z)
    w = 2 / (math.pi * z)
    assert abs(j * yp - jp * y - w) <= 1e-10 * w


def test_wronskian_at_order_one_tracks_truncation():
    # nu=1, z=3 sits where the smallest modulus term is ~2e-3; the identity
    # can only hold to that level
    j, y, jp, yp = _jy_and_derivatives(1.0, 3.0)
    w = 2 / (math.pi * 3)
    err = abs(j * yp - jp * y - w) / w
    assert err <= 3 * eval_jy(1.0, 3.0).err_estimate


def test_estimate_error():
    r = eval_jy(50, 100)
    assert estimate_error(r, 100) == pytest.approx(EPS * abs(r.alpha))
    # |alpha| = |z - 25 pi - pi/4 + ...| ~ 33 here, so the floor is ~7e-15,
    # the same scale as the errors measured on the table1 grid
    assert 1e-15 < estimate_error(r) < 5e-14
    assert estimate_error(eval_jy(1e5, 1e6)) >= 1e-10
    assert estimate_error(eval_jy(0.5, 0.1)) < 2 * EPS
