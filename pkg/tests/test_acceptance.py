"""Acceptance criteria 1-11, each at its stated tolerance and runtime budget.

Run with ``pytest tests/test_acceptance.py``; the terminal summary prints one
PASS/FAIL line per criterion.
"""

from __future__ import annotations

import math
import random
import time
from fractions import Fraction

import pytest

from hcizlab import class_algebra, genfun, hciz, hurwitz, weingarten, zeros
from hcizlab.combinatorics import enumerate_partitions

Z_C = 2 / 27


class Budget:
    def __init__(self, seconds: float):
        self.seconds = seconds

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start
        if exc[0] is None:
            assert self.elapsed < self.seconds, f"took {self.elapsed:.1f}s, budget {self.seconds}s"


def test_criterion_01_oracle_equivalence():
    with Budget(60):
        for d in range(1, 6):
            parts = enumerate_partitions(d)
            for g in range(3):
                for a in parts:
                    for b in parts:
                        r = hurwitz.ray_count(a, b, g)
                        brute = hurwitz.brute_force_count(a, b, r) if r >= 0 else 0
                        assert brute == hurwitz.connected_double(a, b, g), (a, b, g)


def test_criterion_02_closed_form():
    with Budget(120):
        for d in range(1, 9):
            for a in enumerate_partitions(d):
                assert hurwitz.genus_zero_closed_form(a) == hurwitz.connected_double(a, (1,) * d, 0), a
        spots = [((1,), (1,), 1), ((2,), (1, 1), 1), ((1, 1, 1), (1, 1, 1), 8)]
        for a, b, v in spots:
            assert hurwitz.brute_force_count(a, b, hurwitz.ray_count(a, b, 0)) == v
            assert hurwitz.connected_double(a, b, 0) == v


def test_criterion_03_weingarten_consistency():
    with Budget(120):
        for d in range(1, 6):
            for N in range(d, 9):
                assert weingarten.weingarten_exact(d, N).by_class == weingarten.weingarten_by_characters(d, N).by_class
        for d, N in ((3, 2), (4, 2), (4, 3)):
            prod = weingarten.gram_times(weingarten.weingarten_exact(d, N))
            n = len(prod)
            assert all(prod[i][j] == (1 if i == j else 0) for i in range(n) for j in range(n))
        for d in range(2, 6):
            for N in range(d, 9):
                rep = weingarten.series_convergence(d, N, 30)
                assert rep.within_tail_bound and rep.passed, (d, N, rep.root_rates)


def test_criterion_04_determinant_identities():
    with Budget(300):
        for d in range(2, 6):
            assert class_algebra.zagier_determinant_check(d), d
        for d in range(1, 5):
            for N in range(1, 7):
                assert class_algebra.gram_determinant_check(d, N), (d, N)
                assert class_algebra.gram_is_singular(d, N) == (N < d), (d, N)


def test_criterion_05_eh_reciprocity():
    with Budget(60):
        for d in range(1, 6):
            assert class_algebra.eh_reciprocity_check(d, 6)
            for r in range(7):
                target = class_algebra.permutations_of_norm(d, r)
                assert class_algebra.jm_action_coefficients(r, d, "elementary") == target
                assert class_algebra.jm_action_coefficients(r, d, "elementary", engine="walk") == target


def _rational_spectra(N: int) -> list[hciz.SpectrumPair]:
    return [
        hciz.SpectrumPair(tuple(Fraction(k, N) for k in range(N)), tuple(Fraction(-k, N + 1) for k in range(N))),
        hciz.SpectrumPair(tuple(Fraction((-1) ** k * (k + 1), N + 1) for k in range(N)),
                          tuple(Fraction(2 * k - N + 1, N) for k in range(N))),
    ]


def test_criterion_06_derivative_closure():
    with Budget(120):
        for N in (3, 4, 5):
            for spec in _rational_spectra(N):
                assert spec.bound <= 1
                exact = hciz.free_energy_derivatives(hciz.partition_derivatives(3, spec), N)
                for d in (1, 2, 3):
                    gaps = []
                    for g_max in range(7):
                        ser = hciz.leading_derivative_series(d, spec, g_max)
                        gap = abs(float(exact[d - 1] - ser.partial_sum()))
                        assert gap <= ser.tail_bound, (N, d, g_max)
                        gaps.append(gap)
                    if (math.factorial(d) / N) ** 2 < 1:
                        assert all(y <= x for x, y in zip(gaps, gaps[1:])), (N, d, gaps)


THREE_WAY = [
    (hciz.SpectrumPair((0, 1), (0, 1)), 0.1),
    (hciz.SpectrumPair((0, 1), (0, 1)), 0.3j),
    (hciz.SpectrumPair((0.3, -0.7, 1.1), (0.2, 0.9, -0.4)), 0.1),
    (hciz.SpectrumPair((0.3, -0.7, 1.1), (0.2, 0.9, -0.4)), 0.3j),
    (hciz.SpectrumPair((1, 0, -1), (0.5, -0.25, 0.75)), 0.1),
    (hciz.SpectrumPair((1, 0, -1), (0.5, -0.25, 0.75)), 0.3j),
]


def test_criterion_07_three_way_agreement():
    with Budget(600):
        for spec, z in THREE_WAY:
            det = complex(hciz.hciz_determinant(z, spec, method="matrix"))
            mac = hciz.maclaurin_series(z, spec, 40)
            assert abs(det - complex(mac.value)) <= mac.remainder_bound + 1e-30, (spec, z)
            est = hciz.hciz_monte_carlo(z, spec, 100_000, seed=2024)
            assert est.agrees_with(det, n_se=4), (spec, z, est.mean, det)
        rng = random.Random(7)
        zs = []
        while len(zs) < 20:
            z = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
            if abs(z) < 1:
                zs.append(z)
        for spec in {s for s, _ in THREE_WAY}:
            for z, re_f, bound in hciz.re_f_bound_check(spec, zs + [z for _, z in THREE_WAY]):
                assert re_f <= bound, (spec, z, re_f, bound)


def _coef(series, n, exps):
    return series.coefficient(n, tuple(exps))


def test_criterion_08_generating_functions():
    with Budget(60):
        s = genfun.s_coefficients(20)
        assert s.coeffs[1:5] == [1, 4, 28, 240]
        assert all(s.coeffs[n] == genfun.s_closed_form(n) for n in range(1, 21))
        assert genfun.s_residual(s).is_zero()
        for n in range(20):
            assert genfun.hypergeometric_coefficient(n) == (n + 1) * s.coeffs[n + 1]
        s1, s2, s3, s4 = genfun.solve_sj_system(4, 4)
        assert s1.terms == {
            (1, (1, 0, 0, 0)): 1, (2, (2, 0, 0, 0)): 4, (3, (1, 1, 0, 0)): 12, (3, (3, 0, 0, 0)): 28,
            (4, (1, 0, 1, 0)): 40, (4, (2, 1, 0, 0)): 216, (4, (4, 0, 0, 0)): 240,
        }
        assert s2.terms == {(2, (0, 1, 0, 0)): 1, (3, (1, 1, 0, 0)): 8, (4, (0, 2, 0, 0)): 24, (4, (2, 1, 0, 0)): 72}
        # s_3 as printed: phi_3 z^3 + 12 (...) + ...; the only next term of a graded solution is 12 phi_1 phi_3 z^4
        assert s3.terms == {(3, (0, 0, 1, 0)): 1, (4, (1, 0, 1, 0)): 12}
        assert _coef(s3, 2, (0, 2, 0, 0)) == 0
        assert s4.terms == {(4, (0, 0, 0, 1)): 1}


def test_criterion_09_critical_point():
    with Budget(600):
        s_rep = genfun.radius_estimate(genfun.s_coefficients(40), "domb_sykes")
        h0_rep = genfun.radius_estimate(genfun.genus_series_all_ones(0, 20), "domb_sykes")
        h1_rep = genfun.radius_estimate(genfun.genus_series_all_ones(1, 20), "domb_sykes")
        rel = {"s": s_rep.radius / Z_C, "H0": h0_rep.radius / Z_C, "H1": h1_rep.radius / Z_C}
        print("radius / z_c:", rel)
        failures = []
        if abs(rel["s"] - 1) > 0.05:
            failures.append("s(z) outside 5%")
        if abs(rel["H0"] - 1) > 0.05:
            failures.append("H0(z;1,1) outside 5%")
        if abs(rel["H1"] - 1) > 0.10:
            failures.append("H1(z;1,1) outside 10%")
        assert not failures, f"{failures}; estimates {rel}"


def test_criterion_10_free_energy_convergence():
    with Budget(900):
        res = hciz.convergence_experiment(0.05, [8, 16, 32, 64], 12)
        print(res.to_csv())
        assert res.decreasing, [r["gap"] for r in res.rows]
        assert -2.6 <= res.slope <= -1.4, res.slope


def test_criterion_11_zeros():
    with Budget(120):
        rows = zeros.zero_atlas([2, 3, 4], k_window=2)
        assert rows and max(r["residual"] for r in rows) < 1e-10
        lattice = zeros.predicted_zeros(0, 1, (0, 1), k_window=5)
        for z, _, _, k in lattice.zeros:
            assert z.real == 0 and z.imag == 2 * k * math.pi / 2
        for M in (0.5, 1, 2):
            for N in range(2, 17):
                for b in ([float(x) for x in hciz.uniform_locations(N, M)], [-M + 2 * M * k / (N - 1) for k in range(N)]):
                    rep = zeros.smallest_zero_bound_uniform(M, N, b)
                    assert rep["smallest"] >= rep["bound"] * (1 - 1e-12)
                    assert rep["bound"] == math.pi / (2 * M * M) and rep["bound"] > Z_C / (M * M)
        vals = [zeros.cauchy_counterexample(N) for N in range(4, 65)]
        assert all(b < a for a, b in zip(vals, vals[1:]))
        assert vals[-1] < vals[0] / 10
