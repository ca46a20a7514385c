"""Unitary Weingarten calculus, exactly and by sampling.

The Gram matrix ``[N^{c(rho^-1 sigma)}]`` is indexed by the Baik-Rains set
S_N(d) of permutations with no decreasing subsequence longer than N; on
that set it is invertible for every N >= 1, and the inverse is the
Weingarten matrix. For d <= N the set is all of S(d) and the inverse only
depends on the cycle type of ``rho^-1 sigma``.

Index functions act by ``(pi . I)(k) = I(pi(k))``.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, prod, sqrt

import numpy as np

from . import _linalg
from .characters import character_table, complete_values, contents, dimension
from .combinatorics import (
    CapacityError,
    Partition,
    compose,
    cycle_type,
    enumerate_restricted,
    identity,
    inverse,
    num_cycles,
)

MAX_GRAM_ROWS = 5040


class WeingartenPoleError(ArithmeticError):
    pass


@dataclass
class WeingartenTable:
    d: int
    N: int
    range: str  # "stable" or "unstable"
    method: str
    by_class: dict = field(default_factory=dict)  # Partition -> Fraction
    by_pair: dict = field(default_factory=dict)  # (perm, perm) -> Fraction
    perms: list = field(default_factory=list)

    def value(self, rho, sigma) -> Fraction:
        if self.range == "stable":
            return self.by_class[cycle_type(compose(inverse(rho), sigma))]
        return self.by_pair[(tuple(rho), tuple(sigma))]

    def matrix(self) -> list:
        return [[self.value(r, s) for s in self.perms] for r in self.perms]

    def to_json(self) -> str:
        entries = []
        if self.range == "stable":
            for mu, v in self.by_class.items():
                entries.append({"class": list(mu), "numerator": str(v.numerator), "denominator": str(v.denominator)})
        else:
            for (r, s), v in self.by_pair.items():
                entries.append(
                    {"pair": [list(r), list(s)], "numerator": str(v.numerator), "denominator": str(v.denominator)}
                )
        return json.dumps({"d": self.d, "N": self.N, "range": self.range, "entries": entries}, indent=1)


def gram_matrix(d: int, N: int):
    """Return ``(perms, G)`` with ``G[i][j] = N^{c(perms[i]^-1 perms[j])}`` over S_N(d)."""
    if d < 1 or N < 1:
        raise ValueError("need d >= 1 and N >= 1")
    perms = enumerate_restricted(d, N)
    if len(perms) > MAX_GRAM_ROWS:
        raise CapacityError(f"|S_N(d)| = {len(perms)} exceeds {MAX_GRAM_ROWS}")
    invs = [inverse(p) for p in perms]
    G = [[N ** num_cycles(compose(invs[i], perms[j])) for j in range(len(perms))] for i in range(len(perms))]
    return perms, G


def _pole_message(d: int, N: int) -> str:
    return (
        f"Gram matrix singular at d={d}, N={N}: integer N in 1..d-1 is a pole of the "
        "unrestricted Weingarten function; restrict to S_N(d)"
    )


def weingarten_exact(d: int, N: int, full_inverse: bool | None = None) -> WeingartenTable:
    """Exact inverse of the Gram matrix by fraction-free elimination.

    In the stable range the identity column is solved and collapsed to a
    per-class table; the collapse is checked entrywise. With ``full_inverse``
    (default for up to 24 rows) the whole inverse is formed and compared.
    """
    perms, G = gram_matrix(d, N)
    n = len(perms)
    stable = d <= N
    if full_inverse is None:
        full_inverse = n <= 24 or not stable
    try:
        if full_inverse:
            W = _linalg.exact_inverse(G)
        else:
            e = [[1 if p == identity(d) else 0] for p in perms]
            column = _linalg.bareiss_solve(G, e)
    except _linalg.SingularMatrixError as exc:
        raise WeingartenPoleError(_pole_message(d, N)) from exc
    table = WeingartenTable(d, N, "stable" if stable else "unstable", "exact", perms=perms)
    if not stable:
        table.by_pair = {(perms[i], perms[j]): W[i][j] for i in range(n) for j in range(n)}
        return table
    by_class: dict = {}
    if full_inverse:
        for i in range(n):
            for j in range(n):
                mu = cycle_type(compose(inverse(perms[i]), perms[j]))
                if by_class.setdefault(mu, W[i][j]) != W[i][j]:
                    raise AssertionError("Weingarten matrix is not a class function")
    else:
        # G is a group matrix, so W is too; column id gives W[i][id] = Wg(perms[i]^-1)
        for p, (v,) in zip(perms, column):
            mu = cycle_type(p)
            if by_class.setdefault(mu, v) != v:
                raise AssertionError("Weingarten column is not a class function")
    table.by_class = dict(sorted(by_class.items(), reverse=True))
    return table


def weingarten_by_characters(d: int, N: int) -> WeingartenTable:
    """Wg(mu) = N^-d sum_lam (dim/d!) chi^lam(mu) / prod_box (1 + c/N)."""
    if N < d:
        raise WeingartenPoleError(f"character formula has poles for N < d (d={d}, N={N})")
    table = character_table(d)
    d_fact = factorial(d)
    weights = {}
    for lam in table.partitions:
        weights[lam] = Fraction(dimension(lam), d_fact) / prod((Fraction(N + c, N) for c in contents(lam)), start=1)
    out = WeingartenTable(d, N, "stable", "characters", perms=enumerate_restricted(d, N) if d <= 8 else [])
    scale = Fraction(1, N**d)
    for mu in table.partitions:
        out.by_class[mu] = scale * sum(w * table(lam, mu) for lam, w in weights.items())
    return out


@dataclass
class WeingartenSeries:
    d: int
    N: int
    order: int
    coefficients: dict  # mu -> [(-1)^r [C_mu] h_r(Xi_d) for r = 0..order]
    partial_sums: dict  # mu -> N^-d sum_{r <= order} coeff_r N^-r
    tail_bounds: dict  # mu -> rigorous bound on |Wg(mu) - partial|, None if N <= d-1

    def partial(self, mu: Partition, R: int) -> Fraction:
        c = self.coefficients[tuple(mu)]
        return Fraction(1, self.N**self.d) * sum(Fraction(c[r], self.N**r) for r in range(R + 1))


def weingarten_series(d: int, N: int, order: int) -> WeingartenSeries:
    """Maclaurin expansion of Wg in q = 1/N through ``order``, with a majorant tail bound."""
    table = character_table(d)
    d_fact = factorial(d)
    hs = {lam: complete_values(contents(lam), order) for lam in table.partitions}
    coeffs = {}
    for mu in table.partitions:
        row = []
        for r in range(order + 1):
            x = sum(Fraction(dimension(lam), d_fact) * hs[lam][r] * table(lam, mu) for lam in table.partitions)
            row.append((-1) ** r * x)
        coeffs[mu] = row
    q = Fraction(1, N)
    scale = Fraction(1, N**d)
    partial = {mu: scale * sum(c * q**r for r, c in enumerate(row)) for mu, row in coeffs.items()}
    tails = {}
    for mu in table.partitions:
        if N <= d - 1:
            tails[mu] = None
            continue
        bound = Fraction(0)
        for lam in table.partitions:
            chi = table(lam, mu)
            if not chi:
                continue
            abs_c = [abs(c) for c in contents(lam)]
            full = prod((1 / (1 - c * q) for c in abs_c), start=Fraction(1))
            head = complete_values(abs_c, order)
            tail = full - sum(h * q**r for r, h in enumerate(head))
            bound += Fraction(dimension(lam), d_fact) * abs(chi) * tail
        tails[mu] = scale * bound
    return WeingartenSeries(d, N, order, coeffs, partial, tails)


@dataclass
class SeriesConvergence:
    d: int
    N: int
    order: int
    bound: Fraction  # (d - 1) / N
    root_rates: dict  # mu -> e_R^(1/R) at R = order (root test)
    step_ratios: dict  # mu -> sqrt(e_R / e_{R-2}) at the last two nonzero errors
    within_tail_bound: bool

    @property
    def passed(self) -> bool:
        x = float(self.bound)
        return self.within_tail_bound and all(r <= x for r in self.root_rates.values())


def series_convergence(d: int, N: int, order: int = 40) -> SeriesConvergence:
    """Measure how fast the 1/N expansion approaches the exact table.

    The root-test rate e_R^(1/R) is the reported convergence ratio; the
    two-step ratios are reported as well and approach (d-1)/N from above.
    """
    exact = weingarten_table(d, N).by_class
    series = weingarten_series(d, N, order)
    roots, steps = {}, {}
    inside = True
    for mu, v in exact.items():
        errs = [abs(series.partial(mu, r) - v) for r in range(order + 1)]
        if series.tail_bounds[mu] is not None and errs[order] > series.tail_bounds[mu]:
            inside = False
        last = next((r for r in range(order, 1, -1) if errs[r]), None)
        if last is None:
            roots[mu] = 0.0
            steps[mu] = 0.0
            continue
        roots[mu] = float(errs[last]) ** (1.0 / last)
        steps[mu] = float(errs[last] / errs[last - 2]) ** 0.5 if errs[last - 2] else 0.0
    return SeriesConvergence(d, N, order, Fraction(d - 1, N), roots, steps, inside)


def weingarten_table(d: int, N: int) -> WeingartenTable:
    """Character formula in the stable range, exact inversion otherwise."""
    return weingarten_by_characters(d, N) if d <= N else weingarten_exact(d, N)


def act(pi, index) -> tuple:
    """(pi . I)(k) = I(pi(k))."""
    return tuple(index[x - 1] for x in pi)


def correlation(I, Ip, J, Jp, N: int, table: WeingartenTable | None = None) -> Fraction:
    """E[ prod_k u_{I(k) J(k)} * conj(u_{I'(k) J'(k)}) ] over Haar unitaries of size N."""
    I, Ip, J, Jp = map(tuple, (I, Ip, J, Jp))
    if len(I) != len(J) or len(Ip) != len(Jp):
        raise ValueError("row and column index lists must have matching lengths")
    if any(not 1 <= x <= N for x in I + Ip + J + Jp):
        raise ValueError(f"indices must lie in 1..{N}")
    if len(I) != len(Ip):
        return Fraction(0)
    d = len(I)
    if d == 0:
        return Fraction(1)
    table = table or weingarten_table(d, N)
    perms = table.perms or enumerate_restricted(d, N)
    rhos = [p for p in perms if act(p, I) == Ip]
    sigmas = [p for p in perms if act(p, J) == Jp]
    return sum((table.value(r, s) for r in rhos for s in sigmas), Fraction(0))


# Haar sampling


@dataclass
class HaarSampler:
    """Haar unitaries from PCG64 uniforms, Box-Muller Gaussians and phase-fixed QR.

    The stream depends only on ``seed`` (and ``N``); Gaussians are produced by
    an explicit Box-Muller transform rather than numpy's ziggurat so the
    recipe is written down in full here.
    """

    N: int
    seed: int | np.random.SeedSequence
    counter: int = 0
    _rng: np.random.Generator = field(init=False, repr=False)

    def __post_init__(self):
        self._rng = np.random.Generator(np.random.PCG64(self.seed))

    def ginibre(self, count: int) -> np.ndarray:
        n = self.N
        u = self._rng.random((2, count, n, n))
        radius = np.sqrt(-2.0 * np.log1p(-u[0]))  # 1 - u in (0, 1]
        angle = 2.0 * np.pi * u[1]
        return radius * np.cos(angle) + 1j * radius * np.sin(angle)

    def draw(self, count: int) -> np.ndarray:
        """A stack of ``count`` Haar-distributed N x N unitaries."""
        z = self.ginibre(count)
        q, r = np.linalg.qr(z)
        diag = np.diagonal(r, axis1=-2, axis2=-1)
        phases = diag / np.abs(diag)
        self.counter += count
        return q * phases[:, None, :]


def sample_haar(sampler: HaarSampler) -> np.ndarray:
    return sampler.draw(1)[0]


@dataclass
class MonteCarloEstimate:
    mean: complex
    se_re: float
    se_im: float
    samples: int

    def agrees_with(self, exact, n_se: float = 4.0, floor: float = 1e-12) -> bool:
        exact = complex(exact)
        tol_re = max(n_se * self.se_re, floor)
        tol_im = max(n_se * self.se_im, floor)
        return abs(self.mean.real - exact.real) <= tol_re and abs(self.mean.imag - exact.imag) <= tol_im

    def as_dict(self) -> dict:
        return {
            "mean_re": self.mean.real,
            "mean_im": self.mean.imag,
            "se_re": self.se_re,
            "se_im": self.se_im,
            "samples": self.samples,
        }


CHUNK = 5000


def run_chunked(kernel, N: int, samples: int, seed: int, workers: int = 1) -> MonteCarloEstimate:
    """Average ``kernel(U_stack) -> complex array`` over Haar draws.

    Draws are split into fixed chunks, each with its own spawned seed, and
    partial sums are reduced in chunk order, so the result does not depend
    on ``workers``.
    """
    if samples < 1:
        raise ValueError("need at least one sample")
    sizes = [CHUNK] * (samples // CHUNK)
    if samples % CHUNK:
        sizes.append(samples % CHUNK)
    children = np.random.SeedSequence(seed).spawn(len(sizes))

    def one(args):
        size, ss = args
        sampler = HaarSampler(N, ss)
        vals = np.asarray(kernel(sampler.draw(size)), dtype=complex)
        return vals.real.sum(), vals.imag.sum(), (vals.real**2).sum(), (vals.imag**2).sum()

    jobs = list(zip(sizes, children))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(one, jobs))
    else:
        parts = [one(j) for j in jobs]
    sr = si = sr2 = si2 = 0.0
    for a, b, c, e in parts:
        sr += a
        si += b
        sr2 += c
        si2 += e
    n = samples
    mr, mi = sr / n, si / n
    var_r = max(sr2 / n - mr * mr, 0.0) * n / max(n - 1, 1)
    var_i = max(si2 / n - mi * mi, 0.0) * n / max(n - 1, 1)
    return MonteCarloEstimate(complex(mr, mi), sqrt(var_r / n), sqrt(var_i / n), n)


def monte_carlo_correlation(I, Ip, J, Jp, N: int, samples: int, seed: int = 0, workers: int = 1):
    I, Ip, J, Jp = (np.asarray(x, dtype=int) - 1 for x in (I, Ip, J, Jp))

    def kernel(U):
        val = np.ones(U.shape[0], dtype=complex)
        for i, j in zip(I, J):
            val = val * U[:, i, j]
        for i, j in zip(Ip, Jp):
            val = val * np.conj(U[:, i, j])
        return val

    return run_chunked(kernel, N, samples, seed, workers)


def gram_times(table: WeingartenTable) -> list:
    """Gram @ W over the table's index set (identity when the table is right)."""
    _, G = gram_matrix(table.d, table.N)
    return _linalg.matmul_exact(G, table.matrix())

