"""Zeros of the HCIZ integral for arithmetic-progression spectra.

If a_i = a_1 + (i - 1) hbar, the determinant det[exp(-z N a_i b_j)] is a
Vandermonde determinant in x_j = exp(-z N hbar b_j) times a nonvanishing
factor, so I_N(z) vanishes exactly when two x_j coincide:

    z = 2 k pi i / (N hbar (b_j - b_i)),   k != 0.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field

import mpmath

from .hciz import SpectrumPair, cauchy_locations, hciz_monte_carlo, scalar_closed_form, uniform_locations

DEFAULT_K_WINDOW = 3
RESIDUAL_TOL = 1e-10


@dataclass
class ZeroPrediction:
    N: int
    hbar: float
    b: tuple
    k_window: int
    zeros: list = field(default_factory=list)  # (z, i, j, k), 1-based i < j
    a1: float = 0.0

    @property
    def points(self) -> list[complex]:
        return [z for z, *_ in self.zeros]

    def spectrum(self) -> SpectrumPair:
        a = tuple(self.a1 + i * self.hbar for i in range(self.N))
        return SpectrumPair(a, tuple(self.b))


def predicted_zeros(a1: float, hbar: float, b, N: int | None = None, k_window: int = DEFAULT_K_WINDOW) -> ZeroPrediction:
    """All 2 k pi i / (N hbar (b_j - b_i)), 1 <= i < j <= N, 0 < |k| <= k_window, deduplicated."""
    b = tuple(b)
    N = len(b) if N is None else N
    if len(b) != N:
        raise ValueError(f"need N={N} eigenvalues, got {len(b)}")
    if hbar <= 0:
        raise ValueError("hbar must be positive")
    if any(b[i + 1] <= b[i] for i in range(N - 1)):
        raise ValueError("b must be strictly increasing (repeated values are not allowed)")
    seen = {}
    for i in range(N):
        for j in range(i + 1, N):
            for k in range(-k_window, k_window + 1):
                if k == 0:
                    continue
                im = 2 * k * math.pi / (N * hbar * (b[j] - b[i]))
                key = round(im, 12)
                if key not in seen:
                    seen[key] = (complex(0.0, im), i + 1, j + 1, k)
    zeros = sorted(seen.values(), key=lambda t: t[0].imag)
    return ZeroPrediction(N, hbar, b, k_window, zeros, a1)


def verify_zero(z, spec: SpectrumPair, precision: int = 50) -> float:
    """|det[exp(-z N a_i b_j)]| divided by the product of the row sup-norms."""
    if z == 0:
        raise ValueError("z = 0 is excluded: the determinant vanishes there trivially")
    if not spec.simple:
        raise ValueError("spectra must be simple")
    N = spec.N
    with mpmath.workdps(precision):
        zz = mpmath.mpmathify(z)
        a = [mpmath.mpmathify(float(x)) for x in spec.a]
        b = [mpmath.mpmathify(float(x)) for x in spec.b]
        E = mpmath.matrix(N, N)
        norm = mpmath.mpf(1)
        for i in range(N):
            row = [mpmath.exp(-zz * N * a[i] * b[j]) for j in range(N)]
            norm *= max(abs(v) for v in row)
            for j in range(N):
                E[i, j] = row[j]
        return float(abs(mpmath.det(E)) / norm)


def complete_below(pred: ZeroPrediction) -> float:
    """Imaginary height below which ``pred`` lists every zero (the window cuts higher k only)."""
    spread = pred.b[-1] - pred.b[0]
    return 2 * math.pi * (pred.k_window + 1) / (pred.N * pred.hbar * spread)


def midpoint_residuals(pred: ZeroPrediction, precision: int = 50) -> list[tuple[float, float]]:
    """Residuals halfway between adjacent listed zeros on the positive axis, inside the complete range."""
    top = complete_below(pred)
    ims = sorted({round(z.imag, 12) for z in pred.points if 0 < z.imag < top})
    ims = [0.0] + ims
    spec = pred.spectrum()
    return [((x + y) / 2, verify_zero(complex(0, (x + y) / 2), spec, precision)) for x, y in zip(ims, ims[1:])]


def smallest_zero_bound_uniform(M: float, N: int, b) -> dict:
    """Smallest predicted zero modulus for uniform classical locations on [-M, M] against pi / (2 M^2)."""
    b = sorted(b)
    if any(abs(x) > M for x in b):
        raise ValueError("b must lie in [-M, M]")
    hbar = 2 * M / N
    smallest = 2 * math.pi / (N * hbar * (b[-1] - b[0]))
    bound = math.pi / (2 * M * M)
    if smallest < bound * (1 - 1e-12):
        raise AssertionError(f"smallest zero {smallest} below the bound {bound}")
    return {"N": N, "M": M, "smallest": smallest, "bound": bound, "z_c_scaled": 2 / 27 / (M * M),
            "a": [float(x) for x in uniform_locations(N, M)]}


def cauchy_counterexample(N: int, M: float = 1.0) -> float:
    """pi / (M (b_N - b_1)) for b the Cauchy classical locations."""
    if N < 2:
        raise ValueError("need N >= 2")
    b = cauchy_locations(N)
    return math.pi / (M * (b[-1] - b[0]))


def scalar_case_check(omega, b, N: int | None = None, zs=(0.1, 0.3, 0.2j, -0.4 + 0.1j), samples: int = 20_000,
                      seed: int = 0) -> bool:
    """A = omega I: Monte Carlo matches exp(-z omega N Tr B) and |I| stays clear of zero."""
    b = tuple(b)
    N = len(b) if N is None else N
    spec = SpectrumPair((omega,) * N, b)
    trb = abs(sum(complex(x) for x in b))
    for z in zs:
        exact = scalar_closed_form(z, omega, b)
        est = hciz_monte_carlo(z, spec, samples, seed)
        if not est.agrees_with(exact):
            return False
        if abs(exact) < math.exp(-abs(z) * abs(omega) * N * trb) / 2:
            return False
    return True


def zero_atlas(N_list=(2, 3, 4), spectra=None, k_window: int = 2, precision: int = 50) -> list[dict]:
    """Rows (N, i, j, k, im_z, residual) for predicted zeros of several spectra."""
    rows = []
    for N in N_list:
        for b in (spectra or default_b_spectra)(N):
            pred = predicted_zeros(0.0, 1.0, b, N, k_window)
            spec = pred.spectrum()
            for z, i, j, k in pred.zeros:
                rows.append({"N": N, "i": i, "j": j, "k": k, "im_z": z.imag, "residual": verify_zero(z, spec, precision)})
    return rows


def default_b_spectra(N: int) -> list[tuple]:
    """Three test spectra: consecutive integers, uniform classical locations, an irregular set."""
    return [
        tuple(float(i) for i in range(N)),
        tuple(float(x) for x in uniform_locations(N, 1)),
        tuple(sorted(0.37 * i * i - 0.5 * i + 0.1 for i in range(N))),
    ]


def atlas_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=["N", "i", "j", "k", "im_z", "residual"])
    w.writeheader()
    w.writerows(rows)
    return buf.getvalue()
