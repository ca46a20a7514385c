"""The HCIZ integral I_N(z; A, B) and its free energy.

    I_N(z; A, B) = int exp(-z N Tr(A U B U^-1)) dU      (Haar measure on U(N))
    F_N(z; A, B) = N^-2 log I_N(z; A, B)

Four independent evaluators are provided: the determinant formula for
Hermitian spectra, its exact factorisation when one spectrum is an
arithmetic progression, the Maclaurin series through the Schur expansion

    I_N(z) = sum_{lam, l(lam) <= N} (-z N)^|lam| s_lam(a) s_lam(b) / prod_box (N + c),

and Monte Carlo over Haar unitaries. The derivative series in 1/N^2 uses
monotone double Hurwitz numbers.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial, prod

import mpmath
import numpy as np

from . import genfun, hurwitz
from .characters import character_table, complete_values, contents
from .class_algebra import class_sum, multiply
from .combinatorics import CapacityError, Partition, class_size, cycle_type, enumerate_partitions, partition_count
from .weingarten import MonteCarloEstimate, run_chunked, weingarten_table

DEFAULT_DPS = 50
NEAR_ORIGIN = 1e-2  # |z| N max|a| max|b| below this uses the series
MAX_SERIES_TERMS = 4000  # partitions summed by the Maclaurin path
MAX_HURWITZ_DEGREE = 10
MAX_WEINGARTEN_DEGREE = 6


class SpectrumError(ValueError):
    pass


class ZeroOnPathError(ArithmeticError):
    pass


def _clean(x):
    if isinstance(x, (int, Fraction)):
        return x
    if isinstance(x, complex):
        return x.real if x.imag == 0 else x
    if isinstance(x, (mpmath.mpc,)):
        return x.real if x.imag == 0 else x
    return x


def _is_real(x) -> bool:
    if isinstance(x, (int, Fraction, float, mpmath.mpf)):
        return True
    return x.imag == 0


def _mp(x):
    if isinstance(x, Fraction):
        return mpmath.mpf(x.numerator) / x.denominator
    return mpmath.mpmathify(x)


@dataclass(frozen=True)
class SpectrumPair:
    a: tuple
    b: tuple

    def __post_init__(self):
        a = tuple(_clean(x) for x in self.a)
        b = tuple(_clean(x) for x in self.b)
        if len(a) != len(b) or not a:
            raise SpectrumError(f"spectra must have the same positive length, got {len(a)} and {len(b)}")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @classmethod
    def from_lists(cls, a, b) -> "SpectrumPair":
        return cls(tuple(a), tuple(b))

    @property
    def N(self) -> int:
        return len(self.a)

    @property
    def hermitian(self) -> bool:
        return all(_is_real(x) for x in self.a + self.b)

    @property
    def simple(self) -> bool:
        return len(set(self.a)) == self.N and len(set(self.b)) == self.N

    @property
    def exact(self) -> bool:
        return all(isinstance(x, (int, Fraction)) for x in self.a + self.b)

    @property
    def bound(self):
        """Spectral bound M = max(max|a_i|, max|b_j|)."""
        return max(abs(x) for x in self.a + self.b)

    def to_dict(self) -> dict:
        def enc(x):
            if isinstance(x, Fraction):
                return str(x)
            if isinstance(x, (complex, mpmath.mpc)):
                return [float(x.real), float(x.imag)]
            return float(x) if not isinstance(x, int) else x

        return {"N": self.N, "a": [enc(x) for x in self.a], "b": [enc(x) for x in self.b]}


@dataclass
class MomentData:
    M: object
    h: int
    phi: list
    psi: list

    def __post_init__(self):
        for name, seq in (("phi", self.phi), ("psi", self.psi)):
            for k, v in enumerate(seq, start=1):
                if abs(v) > self.M**k:
                    raise SpectrumError(f"|{name}_{k}| exceeds M^{k}")

    @classmethod
    def from_spectrum(cls, spec: SpectrumPair, K: int) -> "MomentData":
        N = spec.N
        phi = [_div(power_sum(spec.a, (k,)), N) for k in range(1, K + 1)]
        psi = [_div(power_sum(spec.b, (k,)), N) for k in range(1, K + 1)]
        return cls(spec.bound, 0, phi, psi)

    @classmethod
    def uniform(cls, K: int, M=1) -> "MomentData":
        mom = genfun.uniform_moments(K, M)
        return cls(M, 0, mom, list(mom))


def _div(x, n):
    return Fraction(x, n) if isinstance(x, int) else x / n


def uniform_locations(N: int, M=1) -> list:
    """a_i = -M + 2 M i / N, i = 1..N (arithmetic with spacing 2M/N)."""
    M = Fraction(M) if isinstance(M, (int, Fraction)) else M
    return [-M + Fraction(2 * i, N) * M for i in range(1, N + 1)]


def cauchy_locations(N: int) -> list:
    """First N of the N+1 standard Cauchy quantiles tan(pi (k/(N+1) - 1/2))."""
    return [math.tan(math.pi * (k / (N + 1) - 0.5)) for k in range(1, N + 1)]


# power sums, derivatives and cumulants


def power_sum(eigs, alpha: Partition):
    """p_alpha = prod_i sum_j x_j^alpha_i; exact for rational input."""
    return prod((sum(x**k for x in eigs) for k in alpha), start=1)


def _generic_det(m: list):
    """Determinant by Gaussian elimination in whatever field the entries live in."""
    m = [list(row) for row in m]
    n = len(m)
    det = 1
    for c in range(n):
        piv = max(range(c, n), key=lambda r: abs(m[r][c]))
        if m[piv][c] == 0:
            return 0
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        inv = 1 / m[c][c] if not isinstance(m[c][c], int) else Fraction(1, m[c][c])
        for r in range(c + 1, n):
            f = m[r][c] * inv
            if f:
                for k in range(c, n):
                    m[r][k] -= f * m[c][k]
    return det


def _partitions_at_most(d: int, n: int, largest: int | None = None):
    """Partitions of d with at most n parts, reverse-lex."""
    largest = d if largest is None else largest
    if d == 0:
        yield ()
        return
    if n == 0:
        return
    for first in range(min(d, largest), 0, -1):
        if first * n < d:
            break
        for rest in _partitions_at_most(d - first, n - 1, first):
            yield (first,) + rest


def schur_value(lam: Partition, h: list):
    """s_lam from complete symmetric values h[0..] by the Jacobi-Trudi determinant."""
    n = len(lam)
    if n == 0:
        return 1

    def hh(k):
        return h[k] if 0 <= k < len(h) else 0

    return _generic_det([[hh(lam[i] - i + j) for j in range(n)] for i in range(n)])


def _schur_terms(spec: SpectrumPair, d_max: int, convert=None):
    """T_d = sum_{lam |- d, l <= N} s_lam(a) s_lam(b) / prod (N + c), d = 0..d_max."""
    a, b = spec.a, spec.b
    if convert is not None:
        a, b = [convert(x) for x in a], [convert(x) for x in b]
    ha, hb = complete_values(a, d_max), complete_values(b, d_max)
    N = spec.N
    out = [1]
    for d in range(1, d_max + 1):
        total = 0
        for lam in _partitions_at_most(d, N):
            den = prod((N + c for c in contents(lam)), start=1)
            sa = schur_value(lam, ha)
            if sa == 0:
                continue
            sb = schur_value(lam, hb)
            term = sa * sb
            total += term / den if not isinstance(term, int) else Fraction(term, den)
        out.append(total)
    return out


def _derivs_schur(d_max, spec):
    convert = None if spec.exact else _mp
    T = _schur_terms(spec, d_max, convert)
    N = spec.N
    return [(-N) ** d * factorial(d) * T[d] for d in range(1, d_max + 1)]


def _derivs_characters(d_max, spec):
    N = spec.N
    if d_max > N:
        raise CapacityError("the character route needs d <= N")
    out = []
    for d in range(1, d_max + 1):
        table = character_table(d)
        pa = {mu: power_sum(spec.a, mu) * class_size(mu) for mu in table.partitions}
        pb = {mu: power_sum(spec.b, mu) * class_size(mu) for mu in table.partitions}
        total = 0
        for lam in table.partitions:
            sa = sum(table(lam, mu) * pa[mu] for mu in table.partitions)
            sb = sum(table(lam, mu) * pb[mu] for mu in table.partitions)
            den = prod((N + c for c in contents(lam)), start=1)
            term = sa * sb
            total += Fraction(term, den) if isinstance(term, int) else term / den
        out.append((-N) ** d * total / factorial(d))
    return out


def _derivs_weingarten(d_max, spec):
    N = spec.N
    if d_max > MAX_WEINGARTEN_DEGREE:
        raise CapacityError(f"Weingarten route capped at d <= {MAX_WEINGARTEN_DEGREE}")
    out = []
    for d in range(1, d_max + 1):
        table = weingarten_table(d, N)
        total = 0
        if table.range == "stable":
            parts = enumerate_partitions(d)
            pa = {mu: power_sum(spec.a, mu) for mu in parts}
            pb = {mu: power_sum(spec.b, mu) for mu in parts}
            for al in parts:
                for be in parts:
                    prodc = multiply(class_sum(al), class_sum(be))
                    s = sum(class_size(mu) * prodc[mu] * table.by_class[mu] for mu in parts)
                    total += s * pa[al] * pb[be]
        else:
            cache_a, cache_b = {}, {}
            for (rho, sigma), w in table.by_pair.items():
                ta, tb = cycle_type(rho), cycle_type(sigma)
                if ta not in cache_a:
                    cache_a[ta] = power_sum(spec.a, ta)
                if tb not in cache_b:
                    cache_b[tb] = power_sum(spec.b, tb)
                total += w * cache_a[ta] * cache_b[tb]
        out.append((-N) ** d * total)
    return out


ROUTES = {"schur": _derivs_schur, "characters": _derivs_characters, "weingarten": _derivs_weingarten}


def partition_derivatives(d_max: int, spec: SpectrumPair, route: str = "schur") -> list:
    """[I^(1)(0), ..., I^(d_max)(0)], exact for rational spectra.

    ``schur`` sums over partitions with at most N rows and works for any d;
    ``characters`` is the stable-range character formula; ``weingarten``
    contracts the Weingarten table (restricted table when d > N).
    """
    if d_max < 1:
        return []
    try:
        fn = ROUTES[route]
    except KeyError:
        raise ValueError(f"unknown route {route!r}") from None
    return fn(d_max, spec)


def free_energy_derivatives(partition_derivs: list, N: int) -> list:
    """Cumulants of the derivative sequence, divided by N^2."""
    m = [1] + list(partition_derivs)
    c = [0]
    for d in range(1, len(m)):
        c.append(m[d] - sum(comb(d - 1, k - 1) * c[k] * m[d - k] for k in range(1, d)))
    return [_div(c[d], N * N) if isinstance(c[d], int) else c[d] / (N * N) for d in range(1, len(m))]


# genus expansion of the derivatives


def genus_tail_bound(d: int, M, N: int, g_max: int) -> float:
    """sum_{g > g_max} M^2d p(d)^2 (d!)^(2g-2+2d) / N^2g, infinite unless d! < N."""
    q = factorial(d) / N
    if q >= 1:
        return math.inf
    M = float(M)
    lead = M ** (2 * d) * partition_count(d) ** 2 * float(factorial(d)) ** (2 * d - 2)
    return lead * q ** (2 * (g_max + 1)) / (1 - q * q)


@dataclass
class DerivativeSeries:
    d: int
    coefficients: list  # C_{g,d} for g = 0..g_max
    g_max: int
    M: object
    N: int | None = None
    tail_bound: float | None = None

    def partial_sum(self, N: int | None = None, g_max: int | None = None):
        N = self.N if N is None else N
        g_max = self.g_max if g_max is None else g_max
        total = 0
        for g, c in enumerate(self.coefficients[: g_max + 1]):
            total += c / Fraction(N) ** (2 * g) if not isinstance(c, (float, complex, mpmath.mpf, mpmath.mpc)) else c / N ** (2 * g)
        return total

    def tail(self, N: int | None = None, g_max: int | None = None) -> float:
        N = self.N if N is None else N
        g_max = self.g_max if g_max is None else g_max
        return genus_tail_bound(self.d, self.M, N, g_max)


def leading_derivative_series(d: int, data, g_max: int) -> DerivativeSeries:
    """C_{g,d} = sum_{alpha,beta |- d} (-1)^(d + l(alpha) + l(beta)) H_g(alpha, beta) phi_alpha psi_beta.

    ``data`` is a SpectrumPair (phi_k = p_k(A) / N, exact for rational
    spectra) or MomentData.
    """
    if d > MAX_HURWITZ_DEGREE:
        raise CapacityError(f"derivative series capped at d <= {MAX_HURWITZ_DEGREE}")
    if isinstance(data, SpectrumPair):
        mom = MomentData.from_spectrum(data, d)
        N = data.N
    else:
        mom, N = data, None
    parts = enumerate_partitions(d)
    pa = {al: prod((mom.phi[k - 1] for k in al), start=1) for al in parts}
    pb = {be: prod((mom.psi[k - 1] for k in be), start=1) for be in parts}
    coeffs = []
    for g in range(g_max + 1):
        total = 0
        for al in parts:
            for be in parts:
                h = hurwitz.connected_double(al, be, g)
                if h:
                    total += (-1) ** (d + len(al) + len(be)) * h * pa[al] * pb[be]
        coeffs.append(total)
    tail = genus_tail_bound(d, mom.M, N, g_max) if N else None
    return DerivativeSeries(d, coeffs, g_max, mom.M, N, tail)


# evaluators


def _require_determinantal(spec: SpectrumPair) -> None:
    if not spec.hermitian:
        raise SpectrumError("the determinant formula needs real spectra")
    if not spec.simple:
        raise SpectrumError("repeated eigenvalues: the Vandermonde factor vanishes")


def _progression_step(xs):
    """Common difference if ``xs`` (in the given order) is an exact arithmetic progression."""
    if len(xs) < 2:
        return None
    ex = [Fraction(x) for x in xs]
    step = ex[1] - ex[0]
    if step == 0 or any(ex[i + 1] - ex[i] != step for i in range(len(ex) - 1)):
        return None
    return step


@dataclass
class MaclaurinValue:
    value: object
    order: int
    remainder_bound: float


def maclaurin_series(z, spec: SpectrumPair, order: int, dps: int = DEFAULT_DPS) -> MaclaurinValue:
    """Partial sum through z^order with the bound t^(D+1)/(D+1)! / (1 - t/(D+2)), t = |z| N^2 max|a| max|b|.

    The bound uses |I^(d)(0)| <= N^d (N max|a| max|b|)^d.
    """
    N = spec.N
    with mpmath.workdps(dps + 10):
        zz = mpmath.mpmathify(z)
        T = _schur_terms(spec, order, _mp)
        x = -zz * N
        value = mpmath.mpc(0)
        for d in reversed(range(order + 1)):
            value = value * x + _mp(T[d]) if not isinstance(T[d], int) else value * x + T[d]
        ma = max(abs(complex(v)) for v in spec.a)
        mb = max(abs(complex(v)) for v in spec.b)
        t = abs(complex(z)) * N * N * ma * mb
        D = order
        if t >= D + 2:
            bound = math.inf
        else:
            bound = float(mpmath.mpf(t) ** (D + 1) / mpmath.factorial(D + 1) / (1 - t / (D + 2)))
    return MaclaurinValue(+value, order, bound)


def _series_order(t: float, dps: int) -> int | None:
    """Smallest D with remainder bound below 10^-(dps+2), or None."""
    target = mpmath.mpf(10) ** (-(dps + 2))
    with mpmath.workdps(30):
        for D in range(1, 400):
            if t < D + 2 and mpmath.mpf(t) ** (D + 1) / mpmath.factorial(D + 1) / (1 - t / (D + 2)) < target:
                return D
    return None


def _series_cost(D: int, N: int) -> int:
    return sum(sum(1 for _ in _partitions_at_most(d, N)) for d in range(D + 1))


def _progression_value(zz, N, a, b, step):
    """Closed form when a is an arithmetic progression a_1 + (i-1) h.

    det[exp(-zN a_i b_j)] = prod_j exp(-zN a_1 b_j) prod_{i<j}(x_j - x_i), x_j = exp(-zN h b_j),
    and each Vandermonde factor pairs with its own (a_j - a_i)(b_j - b_i).
    """
    h = _mp(step)
    a1 = _mp(a[0])
    bs = [_mp(x) for x in b]
    u = -zz * N
    logv = sum(u * a1 * bj for bj in bs)
    value = mpmath.exp(logv)
    for i in range(N):
        for j in range(i + 1, N):
            w = u * h * (bs[j] - bs[i])
            value *= mpmath.exp(u * h * bs[i]) * mpmath.expm1(w) / w
    return value


def _matrix_value(zz, N, a, b):
    u = -zz * N
    aa = [_mp(x) for x in a]
    bb = [_mp(x) for x in b]
    E = mpmath.matrix(N, N)
    for i in range(N):
        for j in range(N):
            E[i, j] = mpmath.exp(u * aa[i] * bb[j])
    det = mpmath.det(E)
    va = prod((aa[j] - aa[i] for i in range(N) for j in range(i + 1, N)), start=mpmath.mpf(1))
    vb = prod((bb[j] - bb[i] for i in range(N) for j in range(i + 1, N)), start=mpmath.mpf(1))
    fact = prod((mpmath.factorial(k) for k in range(1, N)), start=mpmath.mpf(1))
    return det * fact / (u ** (N * (N - 1) // 2) * va * vb), E


def _cancellation_digits(zz, N, a, b) -> int:
    """Digits lost in the determinant, assuming |I| is of order one."""
    u = -zz * N
    with mpmath.workdps(30):
        aa = [_mp(x) for x in a]
        bb = [_mp(x) for x in b]
        log_rows = sum(max(mpmath.re(u * ai * bj) for bj in bb) for ai in aa)
        log_det = (
            (N * (N - 1) // 2) * mpmath.log(abs(u))
            + sum(mpmath.log(abs(aa[j] - aa[i])) for i in range(N) for j in range(i + 1, N))
            + sum(mpmath.log(abs(bb[j] - bb[i])) for i in range(N) for j in range(i + 1, N))
            - sum(mpmath.log(mpmath.factorial(k)) for k in range(1, N))
        )
        return max(0, int(mpmath.ceil((log_rows - log_det) / mpmath.log(10))))


def hciz_determinant(z, spec: SpectrumPair, precision: int | None = None, method: str = "auto"):
    """I_N(z; A, B) for real simple spectra, as an mpmath complex.

    ``method``: ``auto`` (series near 0, the progression closed form when a
    spectrum is an exact arithmetic progression, else the determinant),
    ``matrix``, ``progression`` or ``series``. The determinant path works at
    a precision raised by the estimated cancellation and is accepted only
    when a rerun with 20 more digits agrees to the requested precision.
    """
    dps = precision or DEFAULT_DPS
    if z == 0:
        return mpmath.mpc(1)
    _require_determinantal(spec)
    N = spec.N
    a, b = spec.a, spec.b
    ma = max(abs(float(x)) for x in a)
    mb = max(abs(float(x)) for x in b)
    scale = abs(complex(z)) * N * ma * mb
    if method == "auto":
        if scale < NEAR_ORIGIN:
            D = _series_order(scale * N, dps)
            if D is not None and _series_cost(D, N) <= MAX_SERIES_TERMS:
                method = "series"
        if method == "auto":
            method = "progression" if (_progression_step(a) or _progression_step(b)) else "matrix"
    if method == "series":
        D = _series_order(scale * N, dps)
        if D is None:
            raise ValueError("z too large for the Maclaurin path")
        with mpmath.workdps(dps):
            return +maclaurin_series(z, spec, D, dps).value
    if method == "progression":
        step = _progression_step(a)
        if step is None:
            step = _progression_step(b)
            if step is None:
                raise SpectrumError("neither spectrum is an arithmetic progression")
            a, b = b, a
        with mpmath.workdps(dps + 15):
            val = _progression_value(mpmath.mpmathify(z), N, a, b, step)
        with mpmath.workdps(dps):
            return mpmath.mpc(+val)
    if method != "matrix":
        raise ValueError(f"unknown method {method!r}")
    if N == 1:
        with mpmath.workdps(dps):
            return mpmath.mpc(mpmath.exp(-mpmath.mpmathify(z) * _mp(a[0]) * _mp(b[0])))
    extra = _cancellation_digits(mpmath.mpmathify(z), N, a, b) + 15
    for _ in range(6):
        with mpmath.workdps(dps + extra):
            v1, _E = _matrix_value(mpmath.mpmathify(z), N, a, b)
        with mpmath.workdps(dps + extra + 20):
            v2, _E = _matrix_value(mpmath.mpmathify(z), N, a, b)
            err = abs(v1 - v2)
            ok = err <= mpmath.mpf(10) ** (-dps - 2) * abs(v2) or v2 == 0
        if ok:
            with mpmath.workdps(dps):
                return mpmath.mpc(+v2)
        with mpmath.workdps(30):
            lost = int(mpmath.ceil(mpmath.log10(err / abs(v2)))) + dps + 2 if v2 != 0 else extra
        extra += max(lost, 20)
    raise ArithmeticError("determinant did not stabilise; I_N is too close to zero here")


def hciz_monte_carlo(z, spec: SpectrumPair, samples: int = 100_000, seed: int = 0, workers: int = 1) -> MonteCarloEstimate:
    """Mean of exp(-z N sum_ij a_i b_j |U_ij|^2) over Haar U."""
    if samples < 1000:
        raise ValueError("need at least 1000 samples")
    N = spec.N
    a = np.array([complex(x) for x in spec.a])
    b = np.array([complex(x) for x in spec.b])
    zc = complex(z)

    def kernel(U):
        w = np.abs(U) ** 2
        tr = np.einsum("i,nij,j->n", a, w, b)
        return np.exp(-zc * N * tr)

    return run_chunked(kernel, N, samples, seed, workers)


def scalar_closed_form(z, omega, b) -> complex:
    """I_N(z; omega I, B) = exp(-z omega N Tr B)."""
    N = len(b)
    return complex(mpmath.exp(-mpmath.mpmathify(z) * omega * N * sum(_mp(x) for x in b)))


# free energy


@dataclass
class FreeEnergy:
    value: complex
    log_abs: float
    phase: float
    evaluations: int


def free_energy(z, spec: SpectrumPair, path_steps: int = 4, precision: int | None = None, max_depth: int = 12,
                detail: bool = False):
    """F_N(z) = N^-2 (log|I_N(z)| + i arg I_N(z)), the argument continued along [0, z].

    Consecutive path samples must differ in phase by less than pi/2; a
    segment that does not is bisected, up to ``max_depth`` times.
    """
    N = spec.N
    if z == 0:
        return FreeEnergy(0j, 0.0, 0.0, 0) if detail else 0j
    zc = mpmath.mpmathify(z)
    count = 0
    # a scalar side makes the kernel constant on the group
    if len(set(spec.a)) == 1:
        omega, other = spec.a[0], spec.b
    elif len(set(spec.b)) == 1:
        omega, other = spec.b[0], spec.a
    else:
        omega = other = None

    def value(t):
        nonlocal count
        count += 1
        if omega is not None:
            with mpmath.workdps(precision or DEFAULT_DPS):
                return mpmath.exp(-zc * t * _mp(omega) * N * sum(_mp(x) for x in other))
        return hciz_determinant(zc * t, spec, precision)

    def walk(t0, v0, t1, v1, depth):
        if v1 == 0:
            raise ZeroOnPathError(f"I_N vanishes on the path at t={t1}")
        step = float(mpmath.arg(v1 / v0))
        if abs(step) < math.pi / 2:
            return step
        if depth >= max_depth:
            raise ZeroOnPathError("zero suspected on path: phase step stays above pi/2")
        tm = (t0 + t1) / 2
        vm = value(tm)
        return walk(t0, v0, tm, vm, depth + 1) + walk(tm, vm, t1, v1, depth + 1)

    ts = [mpmath.mpf(k) / path_steps for k in range(path_steps + 1)]
    vals = [mpmath.mpc(1)] + [value(t) for t in ts[1:]]
    phase = 0.0
    for k in range(path_steps):
        phase += walk(ts[k], vals[k], ts[k + 1], vals[k + 1], 0)
    log_abs = float(mpmath.log(abs(vals[-1])))
    F = complex(log_abs, phase) / (N * N)
    if detail:
        return FreeEnergy(F, log_abs, phase, count)
    return F


def re_f_bound_check(spec: SpectrumPair, zs, precision: int | None = None) -> list:
    """[(z, Re F_N(z), M^2 |z|)] for the bound Re F_N <= M^2 |z|."""
    M = float(spec.bound)
    out = []
    for z in zs:
        F = free_energy(z, spec, precision=precision)
        out.append((complex(z), F.real, M * M * abs(complex(z))))
    return out


# convergence to the planar limit


@dataclass
class ConvergenceResult:
    rows: list
    slope: float | None
    decreasing: bool
    d_trunc: int
    precision: int

    def to_csv(self) -> str:
        buf = io.StringIO()
        cols = ["N", "z_re", "z_im", "F_re", "F_im", "C0_re", "C0_im", "gap"]
        w = csv.DictWriter(buf, fieldnames=cols)
        w.writeheader()
        for row in self.rows:
            w.writerow({k: row[k] for k in cols})
        return buf.getvalue()


def planar_limit(z, d_trunc: int, M=1) -> complex:
    """Degree-d_trunc truncation of C_0(z) for uniform[-M, M] moments on both sides."""
    phi = genfun.uniform_moments(d_trunc, M)
    series = genfun.c_g_series(0, phi, phi, d_trunc, M).series
    with mpmath.workdps(40):
        zz = mpmath.mpmathify(z)
        total = mpmath.mpc(0)
        for c in reversed(series.coeffs):
            total = total * zz + _mp(Fraction(c))
        return complex(total)


def convergence_experiment(z, N_list, d_trunc: int = 12, M=1, precision: int | None = None,
                           family=uniform_locations) -> ConvergenceResult:
    """Gap |F_N(z) - C_0^(<= d_trunc)(z)| for spectra ``family(N, M)`` on both sides."""
    dps = precision or DEFAULT_DPS
    C0 = planar_limit(z, d_trunc, M)
    rows = []
    for N in N_list:
        locs = family(N, M)
        spec = SpectrumPair(tuple(locs), tuple(locs))
        F = free_energy(z, spec, precision=dps) if z != 0 else 0j
        gap = abs(F - C0)
        rows.append(
            {"N": N, "z_re": complex(z).real, "z_im": complex(z).imag, "F_re": F.real, "F_im": F.imag,
             "C0_re": C0.real, "C0_im": C0.imag, "gap": gap}
        )
    gaps = [r["gap"] for r in rows]
    slope = None
    if all(g > 0 for g in gaps) and len(gaps) >= 2:
        slope = float(np.polyfit(np.log([r["N"] for r in rows]), np.log(gaps), 1)[0])
    decreasing = all(gaps[i + 1] < gaps[i] for i in range(len(gaps) - 1))
    return ConvergenceResult(rows, slope, decreasing, d_trunc, dps)
