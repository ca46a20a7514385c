"""Generating functions for monotone Hurwitz numbers and the genus expansion.

The genus-specific series are computed without touching individual Hurwitz
numbers. With power sums specialised to p_k = -phi_k / u (and likewise for
psi), the character expansion of the disconnected counts becomes

    Z(w, u) = sum_d w^d sum_{lam |- d} S_lam(phi; u) S_lam(psi; u) prod_box 1/(1 - u c),
    S_lam(phi; u) = sum_{alpha |- d} chi^lam(alpha) / z_alpha * prod_i (-phi_{alpha_i}) * u^(d - l(alpha)),

a power series in w and u, and [w^d u^(2g-2+2d)] log Z = (-1)^d C_{g,d} / d!.
With p_k = +1/u the Schur polynomial is the content product
``(dim/d!) prod (1 + u c)`` and the same logarithm gives sum_{alpha,beta} H_g / d!.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial, prod

import mpmath
import numpy as np

from .characters import character_table, complete_values, contents, dimension
from .combinatorics import enumerate_partitions, partition_count, z_centralizer

Z_CRITICAL = Fraction(2, 27)


class SeriesError(ValueError):
    pass


@dataclass
class TruncatedSeries:
    """Coefficients 0..n_max of a power series, exact where the inputs are."""

    coeffs: list
    var: str = "z"

    @property
    def n_max(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, n: int):
        return self.coeffs[n] if 0 <= n < len(self.coeffs) else 0

    def __len__(self) -> int:
        return len(self.coeffs)

    def _n(self, other) -> int:
        return min(self.n_max, other.n_max)

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        n = self._n(other)
        return TruncatedSeries([self[i] + other[i] for i in range(n + 1)], self.var)

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        n = self._n(other)
        return TruncatedSeries([self[i] - other[i] for i in range(n + 1)], self.var)

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            return TruncatedSeries([c * other for c in self.coeffs], self.var)
        n = self._n(other)
        out = [0] * (n + 1)
        for i in range(n + 1):
            a = self[i]
            if a:
                for j in range(n + 1 - i):
                    out[i + j] += a * other[j]
        return TruncatedSeries(out, self.var)

    __rmul__ = __mul__

    def derivative(self) -> "TruncatedSeries":
        return TruncatedSeries([k * self.coeffs[k] for k in range(1, len(self.coeffs))] or [0], self.var)

    def inverse(self) -> "TruncatedSeries":
        a0 = self[0]
        if a0 == 0:
            raise SeriesError("series with zero constant term has no inverse")
        n = self.n_max
        out = [Fraction(1) / a0 if isinstance(a0, (int, Fraction)) else 1 / a0]
        for k in range(1, n + 1):
            s = sum(self[j] * out[k - j] for j in range(1, k + 1))
            out.append(-s * out[0])
        return TruncatedSeries(out, self.var)

    def power(self, m: int) -> "TruncatedSeries":
        """Integer power, negative exponents via the inverse."""
        base = self if m >= 0 else self.inverse()
        result = TruncatedSeries([1] + [0] * self.n_max, self.var)
        for _ in range(abs(m)):
            result = result * base
        return result

    def log(self) -> "TruncatedSeries":
        if self[0] != 1:
            raise SeriesError("log needs constant term 1")
        n = self.n_max
        out = [0] * (n + 1)
        for k in range(1, n + 1):
            s = k * self[k] - sum(j * out[j] * self[k - j] for j in range(1, k))
            out[k] = Fraction(s, k) if isinstance(s, int) else s / k
        return TruncatedSeries(out, self.var)

    def exp(self) -> "TruncatedSeries":
        if self[0] != 0:
            raise SeriesError("exp needs zero constant term")
        n = self.n_max
        out = [Fraction(1)] + [0] * n
        for k in range(1, n + 1):
            s = sum(j * self[j] * out[k - j] for j in range(1, k + 1))
            out[k] = Fraction(s, k) if isinstance(s, int) else s / k
        return TruncatedSeries(out, self.var)

    def evaluate(self, x, upto: int | None = None):
        upto = self.n_max if upto is None else upto
        total = 0
        for c in reversed(self.coeffs[: upto + 1]):
            total = total * x + c
        return total

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def to_json_obj(self) -> dict:
        out = []
        for c in self.coeffs:
            c = Fraction(c)
            out.append([str(c.numerator), str(c.denominator)])
        return {"var": self.var, "n_max": self.n_max, "coefficients": out}


def z_series(n_max: int) -> TruncatedSeries:
    return TruncatedSeries([0, 1] + [0] * (n_max - 1))


def s_closed_form(n: int) -> Fraction:
    """2^(n-1)/n * binom(3n-2, n-1)."""
    return Fraction(2 ** (n - 1) * comb(3 * n - 2, n - 1), n)


def solve_s_functional_equation(n_max: int) -> TruncatedSeries:
    """Fixed point of s = z (1 - 2 s)^-2; each sweep fixes one more coefficient."""
    s = TruncatedSeries([Fraction(0)] * (n_max + 1))
    z = z_series(n_max)
    for _ in range(n_max):
        one_minus = TruncatedSeries([Fraction(1)] + [Fraction(0)] * n_max) - s * 2
        s = z * one_minus.power(-2)
    return s


def s_residual(s: TruncatedSeries) -> TruncatedSeries:
    n = s.n_max
    one_minus = TruncatedSeries([Fraction(1)] + [Fraction(0)] * n) - s * 2
    return s - z_series(n) * one_minus.power(-2)


def s_coefficients(n_max: int) -> TruncatedSeries:
    """s(z) through z^n_max from the closed form, checked against the functional equation."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    closed = TruncatedSeries([Fraction(0)] + [s_closed_form(n) for n in range(1, n_max + 1)])
    solved = solve_s_functional_equation(n_max)
    if closed.coeffs != solved.coeffs:
        raise AssertionError("closed form disagrees with the functional equation")
    return closed


def hypergeometric_coefficient(n: int) -> Fraction:
    """n-th Taylor coefficient of F(2/3, 4/3; 3/2; 27z/2) in z."""
    a, b, c = Fraction(2, 3), Fraction(4, 3), Fraction(3, 2)
    term = Fraction(1)
    for k in range(n):
        term *= (a + k) * (b + k) / ((c + k) * (k + 1)) * Fraction(27, 2)
    return term


def s_prime_coefficient(n: int) -> int:
    """binom(3n+1, n) 2^n, the coefficient of z^n in s'(z)."""
    return comb(3 * n + 1, n) * 2**n


@dataclass
class HypergeometricValue:
    value: complex
    remainder_bound: float
    terms: int


def s_prime_hypergeometric(z, tol: float | None = None, dps: int = 30) -> HypergeometricValue:
    """s'(z) as the Gauss series, summed until a rigorous geometric bound is below ``tol``.

    The term ratio (n+2/3)(n+4/3) / ((n+3/2)(n+1)) is below 1 for every n,
    so the remainder after the n-th term is at most |t_{n+1}| / (1 - |x|).
    """
    with mpmath.workdps(dps):
        z = mpmath.mpmathify(z)
        x = mpmath.mpf(27) / 2 * z
        ax = abs(x)
        if ax >= 1:
            raise ValueError("argument outside the disc |27 z / 2| < 1")
        tol = mpmath.mpf(10) ** (-(dps - 5)) if tol is None else mpmath.mpf(tol)
        a, b, c = mpmath.mpf(2) / 3, mpmath.mpf(4) / 3, mpmath.mpf(3) / 2
        term = mpmath.mpc(1)
        total = mpmath.mpc(0)
        n = 0
        while True:
            total += term
            nxt = term * (a + n) * (b + n) / ((c + n) * (n + 1)) * x
            bound = abs(nxt) / (1 - ax)
            n += 1
            term = nxt
            if bound < tol:
                break
        return HypergeometricValue(complex(total), float(bound), n)


# multivariate system for s_1, s_2, ...


@dataclass
class MultiSeries:
    """Polynomial in z and phi_1..phi_K, stored as {(n, exponents): coeff}."""

    K: int
    n_max: int
    terms: dict = field(default_factory=dict)

    def copy(self) -> "MultiSeries":
        return MultiSeries(self.K, self.n_max, dict(self.terms))

    @classmethod
    def constant(cls, K: int, n_max: int, c) -> "MultiSeries":
        return cls(K, n_max, {(0, (0,) * K): Fraction(c)} if c else {})

    @classmethod
    def monomial(cls, K: int, n_max: int, n: int, phi_index: int | None, c=1) -> "MultiSeries":
        exps = [0] * K
        if phi_index is not None:
            exps[phi_index - 1] = 1
        if n > n_max:
            return cls(K, n_max)
        return cls(K, n_max, {(n, tuple(exps)): Fraction(c)})

    def __add__(self, other: "MultiSeries") -> "MultiSeries":
        out = dict(self.terms)
        for k, v in other.terms.items():
            s = out.get(k, 0) + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return MultiSeries(self.K, self.n_max, out)

    def scale(self, c) -> "MultiSeries":
        return MultiSeries(self.K, self.n_max, {k: v * c for k, v in self.terms.items() if v * c})

    def __sub__(self, other: "MultiSeries") -> "MultiSeries":
        return self + other.scale(-1)

    def __mul__(self, other: "MultiSeries") -> "MultiSeries":
        out: dict = {}
        for (n1, e1), v1 in self.terms.items():
            for (n2, e2), v2 in other.terms.items():
                n = n1 + n2
                if n > self.n_max:
                    continue
                key = (n, tuple(a + b for a, b in zip(e1, e2)))
                out[key] = out.get(key, 0) + v1 * v2
        return MultiSeries(self.K, self.n_max, {k: v for k, v in out.items() if v})

    def valuation(self) -> int | None:
        return min((n for n, _ in self.terms), default=None)

    def coefficient(self, n: int, exps) -> Fraction:
        exps = tuple(exps) + (0,) * (self.K - len(exps))
        return self.terms.get((n, exps), Fraction(0))

    def is_graded(self) -> bool:
        """phi_k carries z-weight k: every term has n = sum_k k e_k."""
        return all(n == sum((i + 1) * e for i, e in enumerate(exps)) for n, exps in self.terms)

    def evaluate_phi(self, phi) -> TruncatedSeries:
        out = [0] * (self.n_max + 1)
        for (n, exps), v in self.terms.items():
            out[n] += v * prod((phi[i] ** e for i, e in enumerate(exps) if e), start=1)
        return TruncatedSeries(out)

    def is_zero(self) -> bool:
        return not self.terms


def _neg_power_one_minus(x: MultiSeries, m: int) -> MultiSeries:
    """(1 - x)^(-m) for x of positive valuation, through the truncation order."""
    result = MultiSeries.constant(x.K, x.n_max, 1)
    power = MultiSeries.constant(x.K, x.n_max, 1)
    i = 0
    while True:
        i += 1
        power = power * x
        if power.is_zero():
            break
        result = result + power.scale(comb(m + i - 1, i))
    return result


def gamma_of(sols: list[MultiSeries]) -> MultiSeries:
    K, n_max = sols[0].K, sols[0].n_max
    g = MultiSeries(K, n_max)
    for k, s in enumerate(sols, start=1):
        g = g + s.scale(comb(2 * k, k))
    return g


def solve_sj_system(K: int, n_max: int) -> list[MultiSeries]:
    """s_j = phi_j z^j (1 - gamma(s))^(-2j), j = 1..K, symbolically in phi_1..phi_K.

    Fixed-point iteration from s_j = phi_j z^j; every sweep raises the
    valuation of the update by one, so n_max sweeps are enough. Monomials in
    phi_k with k > K are absent, which is lossless when K >= n_max.
    """
    if K < 1 or n_max < 1:
        raise ValueError("need K >= 1 and n_max >= 1")
    seeds = [MultiSeries.monomial(K, n_max, j, j) for j in range(1, K + 1)]
    sols = [s.copy() for s in seeds]
    for _ in range(n_max + 1):
        gamma = gamma_of(sols)
        new = [seeds[j - 1] * _neg_power_one_minus(gamma, 2 * j) for j in range(1, K + 1)]
        if all(a.terms == b.terms for a, b in zip(new, sols)):
            break
        sols = new
    return sols


def sj_residuals(sols: list[MultiSeries]) -> list[MultiSeries]:
    K, n_max = sols[0].K, sols[0].n_max
    gamma = gamma_of(sols)
    return [
        sols[j - 1] - MultiSeries.monomial(K, n_max, j, j) * _neg_power_one_minus(gamma, 2 * j) for j in range(1, K + 1)
    ]


def gamma_series(K: int) -> TruncatedSeries:
    """gamma(Phi) = sum_k binom(2k, k) phi_k, as coefficients of phi_0..phi_K."""
    return TruncatedSeries([0] + [comb(2 * k, k) for k in range(1, K + 1)], var="phi")


def eta_series(j: int, K: int) -> TruncatedSeries:
    """eta_j(Phi) = sum_k (2k+1) k^j binom(2k, k) phi_k."""
    if j < 0:
        raise ValueError("j must be nonnegative")
    return TruncatedSeries([0] + [(2 * k + 1) * k**j * comb(2 * k, k) for k in range(1, K + 1)], var="phi")


# genus expansion via Schur functions


def _poly_mul_trunc(a: list, b: list, E: int) -> list:
    out = [0] * (E + 1)
    for i, x in enumerate(a):
        if i > E or not x:
            continue
        for j, y in enumerate(b[: E + 1 - i]):
            if y:
                out[i + j] += x * y
    return out


def _log_in_w(Y: list, E: int) -> list:
    """log(1 + sum_{d>=1} w^d Y[d](u)) coefficientwise in w, Y[d] polynomials in u."""
    D = len(Y) - 1
    L = [None] + [[0] * (E + 1) for _ in range(D)]
    for d in range(1, D + 1):
        acc = [d * c for c in Y[d]] + [0] * (E + 1 - len(Y[d]))
        for k in range(1, d):
            prodk = _poly_mul_trunc(L[k], Y[d - k], E)
            for i in range(E + 1):
                acc[i] -= k * prodk[i]
        L[d] = [c / d if not isinstance(c, int) else Fraction(c, d) for c in acc]
    return L


def _content_series(lam, E: int) -> list:
    return complete_values(contents(lam), E)


def _schur_specialised(phi, d: int) -> dict:
    """u^d s_lam(p_k = -phi_k / u) for every lam |- d, as polynomials in u."""
    table = character_table(d)
    out = {}
    weights = {}
    for alpha in table.partitions:
        w = prod((-phi[a - 1] for a in alpha), start=1)
        weights[alpha] = w / z_centralizer(alpha) if not isinstance(w, int) else Fraction(w, z_centralizer(alpha))
    for lam in table.partitions:
        poly = [0] * d
        for alpha in table.partitions:
            chi = table(lam, alpha)
            if chi:
                poly[d - len(alpha)] += chi * weights[alpha]
        out[lam] = poly
    return out


def genus_expansion(phi, psi, d_max: int, g_max: int) -> dict:
    """{g: [C_{g,d} for d = 0..d_max]} for moment prefixes ``phi``, ``psi``.

    ``phi[k-1]`` is phi_k; prefixes must reach d_max. Exact for rational input.
    """
    if len(phi) < d_max or len(psi) < d_max:
        raise ValueError("moment prefixes must have at least d_max entries")
    E = 2 * g_max - 2 + 2 * d_max
    Y = [None]
    for d in range(1, d_max + 1):
        sp = _schur_specialised(phi, d)
        sq = sp if psi is phi else _schur_specialised(psi, d)
        total = [0] * (E + 1)
        for lam in sp:
            both = _poly_mul_trunc(sp[lam], sq[lam], E)
            if not any(both):
                continue
            term = _poly_mul_trunc(both, _content_series(lam, E), E)
            for i in range(E + 1):
                total[i] += term[i]
        Y.append(total)
    L = _log_in_w(Y, E)
    out = {}
    for g in range(g_max + 1):
        row = [0]
        for d in range(1, d_max + 1):
            e = 2 * g - 2 + 2 * d
            c = L[d][e] if 0 <= e <= E else 0
            row.append((-1) ** d * factorial(d) * c)
        out[g] = row
    return out


@dataclass
class GenusSeries:
    g: int
    series: TruncatedSeries  # coefficient of z^d is C_{g,d} / d!
    radius_of_validity: object  # z_c / M^2 when M is supplied

    def evaluate(self, z):
        return self.series.evaluate(z)


def c_g_series(g: int, phi, psi, d_max: int, M=None) -> GenusSeries:
    """C_g(z; Phi, Psi) = sum_d C_{g,d} z^d / d! through z^d_max."""
    if M is not None:
        for k in range(1, d_max + 1):
            if abs(phi[k - 1]) > M**k or abs(psi[k - 1]) > M**k:
                raise ValueError(f"moment {k} exceeds the bound M^k")
    rows = genus_expansion(phi, psi, d_max, g)
    coeffs = [c / factorial(d) if d else 0 for d, c in enumerate(rows[g])]
    radius = None if M is None else (Z_CRITICAL / Fraction(M) ** 2 if isinstance(M, (int, Fraction)) else 2 / 27 / M**2)
    return GenusSeries(g, TruncatedSeries(coeffs), radius)


def uniform_moments(K: int, M=1) -> list:
    """phi_k of the uniform law on [-M, M]: M^k/(k+1) for even k, 0 for odd k."""
    return [Fraction(M) ** k / (k + 1) if k % 2 == 0 else Fraction(0) for k in range(1, K + 1)]


def genus_series_all_ones(g: int, d_max: int) -> TruncatedSeries:
    """sum_d (sum_{alpha,beta |- d} H_g(alpha, beta)) z^d / d! through z^d_max."""
    E = 2 * g - 2 + 2 * d_max
    Y = [None]
    for d in range(1, d_max + 1):
        d_fact = factorial(d)
        total = [Fraction(0)] * (E + 1)
        for lam in enumerate_partitions(d):
            cs = contents(lam)
            up = [1]
            for c in cs:  # prod (1 + u c)
                up = [a + c * b for a, b in zip(up + [0], [0] + up)]
            num = _poly_mul_trunc(up, up, E)
            term = _poly_mul_trunc(num, complete_values(cs, E), E)
            w = Fraction(dimension(lam), d_fact) ** 2
            for i in range(E + 1):
                total[i] += w * term[i]
        Y.append(total)
    L = _log_in_w(Y, E)
    coeffs = [Fraction(0)]
    for d in range(1, d_max + 1):
        e = 2 * g - 2 + 2 * d
        coeffs.append(L[d][e] if 0 <= e <= E else Fraction(0))
    return TruncatedSeries(coeffs)


def upper_bound_chain(g: int, d: int) -> tuple[int, int, int]:
    """(H_{g,d}, sum_{alpha,beta} H_g, p(d)^2 d^2/4 H_{g,d}) for the bound chain check."""
    from .hurwitz import connected_double, simple_number

    parts = enumerate_partitions(d)
    total = sum(connected_double(a, b, g) for a in parts for b in parts)
    simple = simple_number(g, d)
    return simple, total, Fraction(partition_count(d) ** 2 * d * d, 4) * simple


# radius of convergence


@dataclass
class RadiusReport:
    method: str
    radius: float
    limit: float  # estimated limit of |a_n / a_{n-1}|, i.e. 1 / radius
    diagnostics: list  # (n, quantity) pairs used in the estimate


def radius_estimate(series, method: str = "domb_sykes", window: int | None = None) -> RadiusReport:
    """Radius of convergence from the coefficient sequence.

    ``ratio``: 1 / |a_n / a_{n-1}| at the last index. ``cauchy_hadamard``:
    |a_n|^(-1/n) at the last index. ``domb_sykes``: least-squares line
    through (1/n, a_n / a_{n-1}) over the last ``window`` points, whose
    intercept at 1/n = 0 is 1 / radius.
    """
    coeffs = list(series.coeffs if isinstance(series, TruncatedSeries) else series)
    idx = [n for n, c in enumerate(coeffs) if c != 0 and n > 0]
    if len(idx) < 10:
        raise SeriesError("need at least 10 nonzero coefficients")
    if method == "cauchy_hadamard":
        diag = [(n, float(abs(mpmath.mpf(Fraction(coeffs[n]).numerator) / Fraction(coeffs[n]).denominator)) ** (-1.0 / n)) for n in idx]
        r = diag[-1][1]
        return RadiusReport(method, r, 1 / r, diag)
    ratios = [(n, float(Fraction(coeffs[n]) / Fraction(coeffs[n - 1]))) for n in idx if n - 1 in idx]
    if len(ratios) < 3:
        raise SeriesError("not enough consecutive nonzero coefficients for ratios")
    if method == "ratio":
        lim = abs(ratios[-1][1])
        return RadiusReport(method, 1 / lim, lim, ratios)
    if method == "domb_sykes":
        window = window or max(3, len(ratios) // 2)
        pts = ratios[-window:]
        x = np.array([1.0 / n for n, _ in pts])
        y = np.array([v for _, v in pts])
        slope, intercept = np.polyfit(x, y, 1)
        lim = abs(intercept)
        return RadiusReport(method, 1 / lim, lim, pts)
    raise ValueError(f"unknown method {method!r}")
