from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from besselphase import DomainError, Order, TermSequence, modulus_term_ratios, reciprocal_series
from besselphase.series import iter_reciprocal


def fraction_t(mu: Fraction, n_max: int) -> list[Fraction]:
    # exact t_1..t_n straight from the recurrence
    out, t = [], Fraction(1)
    for n in range(1, n_max + 1):
        k = 2 * n - 1
        t = t * (mu - k * k) / 4 * Fraction(k, 2 * n)
        out.append(t)
    return out


def fraction_s(t: list[Fraction]) -> list[Fraction]:
    s: list[Fraction] = []
    for n in range(1, len(t) + 1):
        conv = sum((t[j - 1] * s[n - j - 1] for j in range(1, n)), Fraction(0))
        s.append(-(t[n - 1] + conv))
    return s


def test_order_mu_is_derived():
    assert Order(0.5).mu == 1.0
    assert Order(3.0).mu == 36.0
    assert Order(1 + 2j).mu == 4 * (1 + 2j) ** 2
    assert Order(2 + 0j).is_real


def test_first_modulus_ratio_at_order_zero():
    assert modulus_term_ratios(0.0, 1.0, 1).ratios == (-0.125,)


def test_order_one_at_z_two_matches_fractions():
    t = fraction_t(Fraction(4), 2)
    assert t == [Fraction(3, 8), Fraction(-45, 128)]
    # z**4 = 16 at z = 2, so the second ratio is -45/2048
    expect = (t[0] / 4, t[1] / 16)
    assert expect == (Fraction(3, 32), Fraction(-45, 2048))
    seq = modulus_term_ratios(1.0, 2.0, 2)
    assert seq.ratios == tuple(float(e) for e in expect)


def test_half_order_is_exactly_zero():
    seq = modulus_term_ratios(0.5, 7.3, 50)
    assert all(r == 0.0 for r in seq.ratios)
    assert all(s == 0.0 for s in reciprocal_series(seq).ratios)


def test_magnitudes_and_kind():
    seq = modulus_term_ratios(3 + 1j, 10.0, 5)
    assert seq.kind == "modulus" and len(seq) == 5
    assert seq.magnitudes == tuple(abs(r) for r in seq.ratios)
    with pytest.raises(ValueError):
        TermSequence("other", ())
    with pytest.raises(ValueError):
        reciprocal_series(reciprocal_series(seq))


def test_input_validation():
    with pytest.raises(DomainError):
        modulus_term_ratios(1.0, 0.0, 3)
    with pytest.raises(ValueError):
        modulus_term_ratios(1.0, 2.0, 0)


def test_reciprocal_first_two_terms():
    a = TermSequence("modulus", (0.3, -0.2))
    b = reciprocal_series(a).ratios
    assert b[0] == -0.3
    assert b[1] == pytest.approx(0.2 + 0.09, rel=1e-15)


@pytest.mark.parametrize("mu", [Fraction(0), Fraction(4), Fraction(37, 3), Fraction(400), Fraction(-7, 2)])
def test_low_phase_coefficients_match_closed_forms(mu):
    s = fraction_s(fraction_t(mu, 3))
    assert s[0] == -(mu - 1) / 8
    assert s[1] == -(mu**2 - 26 * mu + 25) / 128
    assert s[2] == -(mu**3 - 115 * mu**2 + 1187 * mu - 1073) / 1024


@pytest.mark.parametrize("mu", [0.0, 4.0, 12.34, 400.0, 1e4])
def test_float_phase_coefficients_at_unit_z(mu):
    nu = (mu / 4) ** 0.5
    s = reciprocal_series(modulus_term_ratios(nu, 1.0, 3)).ratios
    mu = 4 * nu * nu
    expect = (
        -(mu - 1) / 8,
        -(mu**2 - 26 * mu + 25) / 128,
        -(mu**3 - 115 * mu**2 + 1187 * mu - 1073) / 1024,
    )
    for got, want in zip(s, expect):
        assert got == pytest.approx(want, rel=1e-12, abs=1e-12)


@pytest.mark.parametrize("nu", [0.0, 1.0, 7.5, 20.0, 3 + 2j])
@pytest.mark.parametrize("z", [5.0, 37.0, 100.0, 50 + 20j])
def test_ratio_form_matches_naive_powers(nu, z):
    n = 12
    ratios = modulus_term_ratios(nu, z, n).ratios
    mu = 4 * nu * nu
    t = 1
    for k in range(1, n + 1):
        t = t * (mu - (2 * k - 1) ** 2) / 4 * (2 * k - 1) / (2 * k)
        naive = t / z ** (2 * k)
        assert abs(ratios[k - 1] - naive) <= 1e-13 * abs(naive)


def test_huge_order_does_not_overflow():
    ratios = modulus_term_ratios(1e18, 2e18, 30).ratios
    assert all(np.isfinite(abs(r)) and r != 0 for r in ratios)
    assert abs(ratios[0] - 0.5 * (4e36 - 1) / 8 / 4e36 * 2) < 1e-12


coeff_lists = st.lists(st.floats(-2, 2, allow_nan=False), min_size=1, max_size=20)


@settings(max_examples=100, deadline=None)
@given(coeff_lists)
def test_reciprocal_product_is_one(a):
    b = list(iter_reciprocal(a))
    # coefficients of x^1..x^N in (1 + sum a x^n)(1 + sum b x^n)
    scale = 1 + max(abs(v) for v in a + b)
    for n in range(1, len(a) + 1):
        c = a[n - 1] + b[n - 1] + sum(a[j - 1] * b[n - j - 1] for j in range(1, n))
        assert abs(c) <= 1e-12 * scale**n
