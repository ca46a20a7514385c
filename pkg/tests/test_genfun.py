from __future__ import annotations

import json
import math
from fractions import Fraction

import mpmath
import pytest

from hcizlab import hurwitz
from hcizlab.combinatorics import enumerate_partitions
from hcizlab.genfun import (
    SeriesError,
    TruncatedSeries,
    c_g_series,
    eta_series,
    gamma_series,
    genus_expansion,
    genus_series_all_ones,
    hypergeometric_coefficient,
    radius_estimate,
    s_closed_form,
    s_coefficients,
    s_prime_coefficient,
    s_prime_hypergeometric,
    s_residual,
    sj_residuals,
    solve_sj_system,
    uniform_moments,
    upper_bound_chain,
)

Z_C = 2 / 27


def test_series_arithmetic():
    x = TruncatedSeries([0, 1, 0, 0, 0, 0])
    e = x.exp()
    assert e.coeffs == [1, 1, Fraction(1, 2), Fraction(1, 6), Fraction(1, 24), Fraction(1, 120)]
    assert (e.log() - x).is_zero()
    one_minus = TruncatedSeries([1, -1, 0, 0, 0, 0])
    assert (one_minus * one_minus.inverse()).coeffs == [1, 0, 0, 0, 0, 0]
    assert one_minus.power(-2).coeffs == [1, 2, 3, 4, 5, 6]
    assert x.derivative().coeffs[0] == 1


def test_s_coefficients():
    s = s_coefficients(20)
    assert s.coeffs[1:5] == [1, 4, 28, 240]
    assert s_residual(s).is_zero()
    assert all(Fraction(c).denominator == 1 for c in s.coeffs)
    with pytest.raises(ValueError):
        s_coefficients(0)


def test_s_ratio_limit():
    r = s_closed_form(2000) / s_closed_form(1999)
    assert abs(float(r) - 13.5) < 0.02


def test_hypergeometric_matches_derivative():
    s = s_coefficients(31)
    for n in range(31):
        assert hypergeometric_coefficient(n) == s_prime_coefficient(n) == (n + 1) * s.coeffs[n + 1]
    assert s_prime_coefficient(1) == 8


def test_hypergeometric_values():
    assert s_prime_hypergeometric(0).value == 1
    hv = s_prime_hypergeometric(0.05, tol=1e-20)
    # derivative of the s partial sum, with a geometric tail bound on the omitted terms
    n = 120
    s = s_coefficients(n)
    partial = sum(k * float(s.coeffs[k]) * 0.05 ** (k - 1) for k in range(1, n + 1))
    q = 13.5 * 0.05
    tail = (n + 1) * float(s_closed_form(n + 1)) * 0.05**n / (1 - q) ** 2
    assert abs(hv.value - partial) <= hv.remainder_bound + tail + 1e-14
    assert abs(hv.value - complex(mpmath.hyp2f1(mpmath.mpf(2) / 3, mpmath.mpf(4) / 3, 1.5, 27 * 0.05 / 2))) < 1e-15
    with pytest.raises(ValueError):
        s_prime_hypergeometric(0.08)


def _coef(series, n, **phis):
    exps = [0] * series.K
    for name, e in phis.items():
        exps[int(name[1:]) - 1] = e
    return series.coefficient(n, tuple(exps))


def test_sj_printed_terms():
    s1, s2, s3, s4 = solve_sj_system(4, 4)
    assert _coef(s1, 1, p1=1) == 1
    assert _coef(s1, 2, p1=2) == 4
    assert _coef(s1, 3, p1=1, p2=1) == 12 and _coef(s1, 3, p1=3) == 28
    assert _coef(s1, 4, p1=1, p3=1) == 40 and _coef(s1, 4, p1=2, p2=1) == 216 and _coef(s1, 4, p1=4) == 240
    assert _coef(s2, 2, p2=1) == 1
    assert _coef(s2, 3, p1=1, p2=1) == 8
    assert _coef(s2, 4, p2=2) == 24 and _coef(s2, 4, p1=2, p2=1) == 72
    assert _coef(s3, 3, p3=1) == 1
    assert _coef(s4, 4, p4=1) == 1
    assert len(s1.terms) == 7 and len(s2.terms) == 4


def test_s3_second_term():
    # the printed "12 phi_2^2 z^2" cannot occur in s_3 = phi_3 z^3 (...); the next term is 12 phi_1 phi_3 z^4
    s3 = solve_sj_system(4, 4)[2]
    assert {k: v for k, v in s3.terms.items()} == {(3, (0, 0, 1, 0)): 1, (4, (1, 0, 1, 0)): 12}


def test_sj_residuals_and_grading():
    sols = solve_sj_system(5, 7)
    assert all(r.is_zero() for r in sj_residuals(sols))
    assert all(s.is_graded() for s in sols)


def test_sj_specialisation():
    sols = solve_sj_system(3, 20)
    phi = [1, 0, 0]
    assert sols[0].evaluate_phi(phi).coeffs == s_coefficients(20).coeffs
    assert all(s.evaluate_phi(phi).is_zero() for s in sols[1:])


def test_gamma_eta():
    assert gamma_series(4).evaluate(1, upto=1) == 2
    assert eta_series(0, 4).coeffs[1] == 6
    assert all(eta_series(j, 3).coeffs[1] == 6 for j in range(5))
    assert eta_series(1, 4).coeffs[2] == 60
    with pytest.raises(ValueError):
        eta_series(-1, 2)


def test_all_ones_examples():
    s0 = genus_series_all_ones(0, 4)
    assert s0.coeffs[1] == 1 and s0.coeffs[2] == 2
    assert genus_series_all_ones(1, 3).coeffs[1] == 0
    assert genus_series_all_ones(2, 3).coeffs[1] == 0


@pytest.mark.parametrize("g", [0, 1, 2])
def test_all_ones_matches_hurwitz(g):
    ser = genus_series_all_ones(g, 6)
    for d in range(1, 7):
        parts = enumerate_partitions(d)
        total = sum(hurwitz.connected_double(a, b, g) for a in parts for b in parts)
        assert ser.coeffs[d] == Fraction(total, math.factorial(d))
        assert ser.coeffs[d] >= 0


@pytest.mark.parametrize("g", [0, 1, 2])
def test_signed_variant_vanishes(g):
    ones = [1] * 8
    ser = c_g_series(g, ones, ones, 8, 1).series
    expected = [0, -1] + [0] * 7 if g == 0 else [0] * 9
    assert ser.coeffs == expected


def test_genus_expansion_matches_assembly():
    phi = [Fraction(1, 2), Fraction(-1, 3), Fraction(1, 5), Fraction(2, 7), 0]
    psi = [Fraction(1, 3), Fraction(1, 4), Fraction(-1, 2), 0, Fraction(1, 9)]
    rows = genus_expansion(phi, psi, 5, 2)
    for g in range(3):
        for d in range(1, 6):
            expected = 0
            for al in enumerate_partitions(d):
                for be in enumerate_partitions(d):
                    pa = math.prod(phi[k - 1] for k in al)
                    pb = math.prod(psi[k - 1] for k in be)
                    expected += (-1) ** (d + len(al) + len(be)) * hurwitz.connected_double(al, be, g) * pa * pb
            assert rows[g][d] == expected


def test_uniform_moments_series():
    phi = uniform_moments(6)
    assert phi == [0, Fraction(1, 3), 0, Fraction(1, 5), 0, Fraction(1, 7)]
    ser = c_g_series(0, phi, phi, 4, 1)
    assert ser.series.coeffs[1] == 0
    d2 = sum(
        (-1) ** (2 + len(a) + len(b)) * hurwitz.connected_double(a, b, 0)
        * math.prod(phi[k - 1] for k in a) * math.prod(phi[k - 1] for k in b)
        for a in enumerate_partitions(2) for b in enumerate_partitions(2)
    )
    assert ser.series.coeffs[2] == Fraction(d2, 2)
    assert ser.radius_of_validity == Fraction(2, 27)
    with pytest.raises(ValueError):
        c_g_series(0, [2], [0], 1, 1)


def test_c0_first_coefficient():
    phi, psi = [Fraction(3, 4), 0], [Fraction(-1, 2), 0]
    assert c_g_series(0, phi, psi, 1).series.coeffs[1] == -phi[0] * psi[0]


@pytest.mark.parametrize("g", [0, 1, 2])
def test_upper_bound_chain(g):
    # d = 1 has no transposition class, so the chain starts at d = 2
    for d in range(2, 9):
        lo, mid, hi = upper_bound_chain(g, d)
        assert lo <= mid <= hi


def test_series_export():
    obj = json.loads(json.dumps(s_coefficients(3).to_json_obj()))
    assert obj["coefficients"][2] == ["4", "1"]


def test_radius_calibration():
    geo = TruncatedSeries([3**n for n in range(25)])
    for method in ("ratio", "cauchy_hadamard", "domb_sykes"):
        assert abs(radius_estimate(geo, method).radius - 1 / 3) < 1e-9
    with pytest.raises(SeriesError):
        radius_estimate(TruncatedSeries([1] * 5))
    with pytest.raises(ValueError):
        radius_estimate(geo, "nope")


def test_radius_of_s():
    rep = radius_estimate(s_coefficients(40), "domb_sykes")
    assert 0.95 * Z_C <= rep.radius <= 1.05 * Z_C
