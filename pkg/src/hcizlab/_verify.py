"""Invariant suite behind ``hcizlab verify``.

Each check returns ``(passed, detail)``. The quick profile runs in well
under two minutes on one core; the full profile adds the larger ranges and
the free-energy convergence experiment.
"""

from __future__ import annotations

import time
from fractions import Fraction
from math import factorial

from . import class_algebra, genfun, hciz, hurwitz, weingarten, zeros
from .characters import character_table, corrupted_table
from .combinatorics import enumerate_partitions, partition_count


def _orthogonality(d_max: int, inject_fault: bool):
    for d in range(1, d_max + 1):
        table = corrupted_table(d) if inject_fault and d == d_max else character_table(d)
        bad = table.column_orthogonality_defects() + table.row_orthogonality_defects()
        if bad:
            return False, f"d={d}: {len(bad)} defects, first {bad[0]}"
    return True, f"d <= {d_max}"


def _partitions(d_max: int):
    bad = [d for d in range(d_max + 1) if len(enumerate_partitions(d)) != partition_count(d)] if d_max else []
    return not bad, f"p(d) for d <= {d_max}" + (f"; mismatch at {bad}" if bad else "")


def _brute_vs_character(d_max: int, g_max: int):
    for d in range(1, d_max + 1):
        parts = enumerate_partitions(d)
        for g in range(g_max + 1):
            for a in parts:
                for b in parts:
                    r = hurwitz.ray_count(a, b, g)
                    brute = hurwitz.brute_force_count(a, b, r) if r >= 0 else 0
                    if brute != hurwitz.connected_double(a, b, g):
                        return False, f"H_{g}({a},{b})"
    return True, f"d <= {d_max}, g <= {g_max}"


def _closed_form(d_max: int):
    for d in range(1, d_max + 1):
        for a in enumerate_partitions(d):
            if hurwitz.genus_zero_closed_form(a) != hurwitz.connected_double(a, (1,) * d, 0):
                return False, f"alpha={a}"
    return True, f"d <= {d_max}"


def _structural(d_max: int, g_max: int):
    report = hurwitz.structural_identity_suite(d_max, g_max)
    bad = {k: len(v[1]) for k, v in report.items() if not v[0]}
    return not bad, f"d <= {d_max}, g <= {g_max}" + (f"; failures {bad}" if bad else "")


def _eh(d_max: int, r_max: int):
    ok = all(class_algebra.eh_reciprocity_check(d, r_max) for d in range(1, d_max + 1))
    return ok, f"d <= {d_max}, r <= {r_max}"


def _gram(d_max: int, N_max: int):
    for d in range(1, d_max + 1):
        for N in range(1, N_max + 1):
            if not class_algebra.gram_determinant_check(d, N):
                return False, f"d={d}, N={N}"
            if class_algebra.gram_is_singular(d, N) != (N < d):
                return False, f"singularity pattern at d={d}, N={N}"
    return True, f"d <= {d_max}, N <= {N_max}"


def _zagier(d_max: int):
    ok = all(class_algebra.zagier_determinant_check(d) for d in range(2, d_max + 1))
    return ok, f"d <= {d_max}"


def _weingarten(d_max: int, N_max: int):
    for d in range(1, d_max + 1):
        for N in range(d, N_max + 1):
            if weingarten.weingarten_exact(d, N).by_class != weingarten.weingarten_by_characters(d, N).by_class:
                return False, f"tables differ at d={d}, N={N}"
    for d, N in ((3, 2), (4, 2), (4, 3)):
        table = weingarten.weingarten_exact(d, N)
        prod = weingarten.gram_times(table)
        n = len(prod)
        if any(prod[i][j] != (1 if i == j else 0) for i in range(n) for j in range(n)):
            return False, f"Gram*W != I at d={d}, N={N}"
    return True, f"d <= {d_max}, N <= {N_max}, unstable (3,2),(4,2),(4,3)"


def _weingarten_series(d_max: int, N_max: int):
    for d in range(2, d_max + 1):
        for N in range(d, N_max + 1):
            if not weingarten.series_convergence(d, N, 30).passed:
                return False, f"d={d}, N={N}"
    return True, f"d <= {d_max}, N <= {N_max}"


def _weingarten_mc(samples: int, workers: int):
    patterns = [((1, 1), (1, 1), (1, 1), (1, 1), 3), ((1, 2), (1, 2), (1, 1), (1, 1), 2), ((1, 2, 1), (1, 2, 1), (1, 2, 2), (1, 2, 2), 2)]
    for I, Ip, J, Jp, N in patterns:
        exact = weingarten.correlation(I, Ip, J, Jp, N)
        est = weingarten.monte_carlo_correlation(I, Ip, J, Jp, N, samples, seed=11, workers=workers)
        if not est.agrees_with(exact):
            return False, f"{I},{Ip},{J},{Jp} at N={N}: {est.mean} vs {exact}"
    return True, f"{len(patterns)} patterns, {samples} samples"


def _derivative_routes():
    spec = hciz.SpectrumPair((Fraction(1, 2), Fraction(-1, 3), 1), (Fraction(2, 5), 0, -1))
    a = hciz.partition_derivatives(3, spec, "schur")
    ok = a == hciz.partition_derivatives(3, spec, "characters") == hciz.partition_derivatives(3, spec, "weingarten")
    small = hciz.SpectrumPair((1, -1), (Fraction(1, 2), 2))
    ok = ok and hciz.partition_derivatives(4, small, "schur") == hciz.partition_derivatives(4, small, "weingarten")
    return ok, "schur = characters = weingarten (stable and unstable)"


def _genus_closure():
    details = []
    for N in (3, 4, 5):
        spec = hciz.SpectrumPair(tuple(Fraction(k, N) for k in range(N)), tuple(Fraction(-k, N + 1) for k in range(N)))
        fd = hciz.free_energy_derivatives(hciz.partition_derivatives(3, spec), N)
        for d in (1, 2, 3):
            ser = hciz.leading_derivative_series(d, spec, 6)
            gap = abs(float(fd[d - 1] - ser.partial_sum()))
            if gap > ser.tail_bound:
                return False, f"N={N}, d={d}: gap {gap} > tail {ser.tail_bound}"
            details.append(gap)
    return True, f"max gap {max(details):.2e}"


def _three_way(samples: int, workers: int):
    spec = hciz.SpectrumPair((0.3, -0.7, 1.1), (0.2, 0.9, -0.4))
    for z in (0.2, 0.3j):
        det = complex(hciz.hciz_determinant(z, spec, method="matrix"))
        mac = hciz.maclaurin_series(z, spec, 40)
        mc = hciz.hciz_monte_carlo(z, spec, samples, 5, workers)
        if abs(det - complex(mac.value)) > mac.remainder_bound + 1e-30 or not mc.agrees_with(det):
            return False, f"z={z}"
    return True, "determinant, series and Monte Carlo agree"


def _genfun():
    s = genfun.s_coefficients(20)
    if not genfun.s_residual(s).is_zero():
        return False, "functional equation residual"
    sols = genfun.solve_sj_system(4, 6)
    if not all(r.is_zero() for r in genfun.sj_residuals(sols)):
        return False, "s_j residual"
    ones = genfun.genus_series_all_ones(0, 6)
    for d in range(1, 7):
        parts = enumerate_partitions(d)
        tot = sum(hurwitz.connected_double(a, b, 0) for a in parts for b in parts)
        if ones[d] * factorial(d) != tot:
            return False, f"all-ones coefficient d={d}"
    return True, "s, s_j system, all-ones series"


def _radius(series_name: str):
    if series_name == "s":
        rep = genfun.radius_estimate(genfun.s_coefficients(40), "domb_sykes")
    else:
        rep = genfun.radius_estimate(genfun.genus_series_all_ones(0, 20), "domb_sykes")
    rel = rep.radius / (2 / 27)
    return abs(rel - 1) <= 0.05, f"radius / z_c = {rel:.4f}"


def _zeros():
    rows = zeros.zero_atlas(k_window=2)
    worst = max(r["residual"] for r in rows)
    lattice = [z.imag for z in zeros.predicted_zeros(0, 1, (0, 1), k_window=2).points]
    ok = worst < 1e-10 and all(abs(x / 3.141592653589793 - round(x / 3.141592653589793)) < 1e-14 for x in lattice)
    return ok, f"{len(rows)} zeros, worst residual {worst:.1e}"


def _cauchy():
    vals = [zeros.cauchy_counterexample(N) for N in range(4, 65)]
    return all(b < a for a, b in zip(vals, vals[1:])), f"modulus {vals[0]:.3f} -> {vals[-1]:.4f}"


def _convergence():
    res = hciz.convergence_experiment(0.05, [8, 16, 32, 64], 12)
    ok = res.decreasing and res.slope is not None and -2.6 <= res.slope <= -1.4
    return ok, f"slope {res.slope:.3f}"


def checks(profile: str, inject_fault: bool, workers: int):
    quick = [
        ("combinatorics_core", "partition_counts", lambda: _partitions(20)),
        ("characters", "orthogonality", lambda: _orthogonality(7, inject_fault)),
        ("class_algebra", "eh_reciprocity", lambda: _eh(4, 5)),
        ("class_algebra", "gram_determinant", lambda: _gram(4, 6)),
        ("class_algebra", "zagier_product", lambda: _zagier(4)),
        ("monotone_hurwitz", "brute_equals_character", lambda: _brute_vs_character(4, 1)),
        ("monotone_hurwitz", "closed_form", lambda: _closed_form(8)),
        ("monotone_hurwitz", "structural_identities", lambda: _structural(6, 2)),
        ("weingarten", "exact_equals_characters", lambda: _weingarten(4, 6)),
        ("weingarten", "series_convergence", lambda: _weingarten_series(4, 6)),
        ("weingarten", "monte_carlo", lambda: _weingarten_mc(20_000, workers)),
        ("hciz_model", "derivative_routes", _derivative_routes),
        ("hciz_model", "genus_closure", _genus_closure),
        ("hciz_model", "three_way_agreement", lambda: _three_way(50_000, workers)),
        ("genfun", "series_identities", _genfun),
        ("genfun", "radius_s", lambda: _radius("s")),
        ("zeros", "predicted_zeros", _zeros),
        ("zeros", "cauchy_trend", _cauchy),
    ]
    if profile == "quick":
        return quick
    return quick + [
        ("class_algebra", "zagier_product_d5", lambda: _zagier(5)),
        ("monotone_hurwitz", "brute_equals_character_full", lambda: _brute_vs_character(5, 2)),
        ("weingarten", "exact_equals_characters_full", lambda: _weingarten(5, 8)),
        ("hciz_model", "convergence_experiment", _convergence),
        ("genfun", "radius_all_ones", lambda: _radius("all_ones")),
    ]


def run_suite(profile: str = "quick", inject_fault: bool = False, workers: int = 1) -> list[dict]:
    report = []
    for module, name, fn in checks(profile, inject_fault, workers):
        t = time.perf_counter()
        try:
            passed, detail = fn()
        except Exception as exc:  # a crashing check is a failing check
            passed, detail = False, f"{type(exc).__name__}: {exc}"
        report.append({"module": module, "name": name, "passed": bool(passed), "detail": detail,
                       "seconds": time.perf_counter() - t})
    return report
