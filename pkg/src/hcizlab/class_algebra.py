"""The centre of the group algebra of S(d).

A :class:`CentralElement` stores, for each cycle type ``mu``, the common
coefficient of every permutation of that type. That is the same number as
the coefficient on the class sum ``C_mu`` (a class sum has coefficient 1 on
each of its members), so no ``z_mu`` factors appear in storage; they only
show up when converting to and from eigenvalues:

    omega_lam(X) = sum_mu x_mu |C_mu| chi^lam(mu) / dim(lam)
    x_mu         = sum_lam (dim(lam) / d!) omega_lam(X) chi^lam(mu)
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial, isqrt, prod

import numpy as np

from . import _linalg
from .characters import character_table, complete_values, contents, dimension, elementary_values
from .combinatorics import (
    CapacityError,
    Partition,
    all_permutations,
    class_size,
    compose,
    cycle_type,
    enumerate_partitions,
    identity,
    inverse,
    inversions,
    num_cycles,
    transposition,
)

MAX_MATRIX_DEGREE = 6
MAX_WALK_DEGREE = 7


@dataclass(frozen=True)
class CentralElement:
    d: int
    coeffs: dict  # Partition -> Fraction, missing keys are zero

    def __post_init__(self):
        for mu in self.coeffs:
            if sum(mu) != self.d:
                raise ValueError(f"class {mu} is not a partition of {self.d}")

    def __getitem__(self, mu: Partition) -> Fraction:
        return self.coeffs.get(tuple(mu), Fraction(0))

    def __eq__(self, other) -> bool:
        if not isinstance(other, CentralElement) or other.d != self.d:
            return NotImplemented
        keys = set(self.coeffs) | set(other.coeffs)
        return all(self[k] == other[k] for k in keys)

    def __hash__(self):
        return hash((self.d, tuple(sorted((k, v) for k, v in self.coeffs.items() if v))))

    def __add__(self, other: "CentralElement") -> "CentralElement":
        _check_degree(self, other)
        keys = set(self.coeffs) | set(other.coeffs)
        return CentralElement(self.d, {k: self[k] + other[k] for k in keys})

    def __sub__(self, other: "CentralElement") -> "CentralElement":
        return self + other.scale(-1)

    def __mul__(self, other: "CentralElement") -> "CentralElement":
        return multiply(self, other)

    def scale(self, c) -> "CentralElement":
        return CentralElement(self.d, {k: v * c for k, v in self.coeffs.items()})

    def is_zero(self) -> bool:
        return all(v == 0 for v in self.coeffs.values())

    def identity_coefficient(self) -> Fraction:
        return self[(1,) * self.d]

    def eigenvalue(self, lam: Partition) -> Fraction:
        """Scalar by which the element acts on the irreducible module ``lam``."""
        table = character_table(self.d)
        lam = tuple(lam)
        s = sum(Fraction(v) * class_size(mu) * table(lam, mu) for mu, v in self.coeffs.items())
        return s / dimension(lam)

    def eigenvalues(self) -> dict:
        return {lam: self.eigenvalue(lam) for lam in enumerate_partitions(self.d)}

    def nonzero(self) -> dict:
        return {k: v for k, v in self.coeffs.items() if v != 0}


def _check_degree(a: CentralElement, b: CentralElement) -> None:
    if a.d != b.d:
        raise ValueError(f"degree mismatch: {a.d} vs {b.d}")


def class_sum(mu: Partition) -> CentralElement:
    mu = tuple(mu)
    return CentralElement(sum(mu), {mu: Fraction(1)})


def identity_element(d: int) -> CentralElement:
    return class_sum((1,) * d)


def from_eigenvalues(d: int, omega: dict) -> CentralElement:
    """Reconstruct the element whose eigenvalue on ``lam`` is ``omega[lam]``."""
    table = character_table(d)
    d_fact = factorial(d)
    coeffs = {}
    for mu in table.partitions:
        s = Fraction(0)
        for lam in table.partitions:
            w = omega[lam]
            if w:
                s += Fraction(dimension(lam), d_fact) * w * table(lam, mu)
        coeffs[mu] = s
    return CentralElement(d, coeffs)


def multiply(z1: CentralElement, z2: CentralElement, method: str = "eigen") -> CentralElement:
    """Product in the group algebra.

    ``method="eigen"`` multiplies eigenvalues and reconstructs; ``"convolution"``
    sums over permutation pairs and is kept as an independent oracle (d <= 5).
    """
    _check_degree(z1, z2)
    d = z1.d
    if method == "eigen":
        e1, e2 = z1.eigenvalues(), z2.eigenvalues()
        return from_eigenvalues(d, {lam: e1[lam] * e2[lam] for lam in e1})
    if method == "convolution":
        if d > 5:
            raise CapacityError("convolution multiply is capped at d <= 5")
        perms = all_permutations(d)
        types = {p: cycle_type(p) for p in perms}
        acc: dict = {}
        for p in perms:
            a = z1[types[p]]
            if not a:
                continue
            for q in perms:
                b = z2[types[q]]
                if not b:
                    continue
                pq = compose(p, q)
                acc[pq] = acc.get(pq, 0) + a * b
        coeffs = {}
        for perm, v in acc.items():
            mu = types[perm]
            if mu in coeffs and coeffs[mu] != v:
                raise AssertionError("product is not central")
            coeffs[mu] = Fraction(v)
        return CentralElement(d, coeffs)
    raise ValueError(f"unknown method {method!r}")


# Jucys-Murphy specializations


def _monotone_walk_counts(d: int, r: int, strict: bool) -> dict:
    """Map permutation -> number of (s_i t_i) sequences of length r with product it.

    t's strictly increasing when ``strict`` (elementary) and weakly otherwise.
    """
    layer = {(identity(d), 0): 1}
    for t in range(2, d + 1):
        taus = [transposition(s, t, d) for s in range(1, t)]
        out = dict(layer)
        frontier = layer
        steps = 1 if strict else r
        for _ in range(steps):
            nxt: dict = {}
            for (perm, length), cnt in frontier.items():
                if length >= r:
                    continue
                for tau in taus:
                    key = (compose(perm, tau), length + 1)
                    nxt[key] = nxt.get(key, 0) + cnt
            for key, cnt in nxt.items():
                out[key] = out.get(key, 0) + cnt
            frontier = nxt
            if not frontier:
                break
        layer = out
    return {perm: cnt for (perm, length), cnt in layer.items() if length == r}


def jm_action_coefficients(r: int, d: int, kind: str = "complete", engine: str = "eigen") -> CentralElement:
    """Class expansion of e_r(Xi_d) (``kind="elementary"``) or h_r(Xi_d).

    ``engine="walk"`` enumerates monotone transposition words directly,
    ``engine="eigen"`` evaluates on contents and reconstructs.
    """
    if r < 0:
        raise ValueError("r must be nonnegative")
    if kind not in ("elementary", "complete"):
        raise ValueError(f"unknown kind {kind!r}")
    if engine == "walk":
        if d > MAX_WALK_DEGREE:
            raise CapacityError(f"walk engine capped at d <= {MAX_WALK_DEGREE}")
        counts = _monotone_walk_counts(d, r, strict=(kind == "elementary"))
        coeffs: dict = {}
        for perm, cnt in counts.items():
            mu = cycle_type(perm)
            if mu in coeffs and coeffs[mu] != cnt:
                raise AssertionError("walk counts are not constant on a class")
            coeffs[mu] = Fraction(cnt)
        for mu in coeffs:
            hits = sum(1 for perm in counts if cycle_type(perm) == mu)
            if hits != class_size(mu):
                raise AssertionError("walk counts miss part of a class")
        return CentralElement(d, coeffs)
    if engine == "eigen":
        fn = elementary_values if kind == "elementary" else complete_values
        omega = {lam: Fraction(fn(contents(lam), r)[r]) for lam in enumerate_partitions(d)}
        return from_eigenvalues(d, omega)
    raise ValueError(f"unknown engine {engine!r}")


def permutations_of_norm(d: int, r: int) -> CentralElement:
    """sum of all pi with d - c(pi) = r, as a central element."""
    coeffs = {mu: Fraction(1) for mu in enumerate_partitions(d) if d - len(mu) == r}
    return CentralElement(d, coeffs)


def eh_reciprocity_check(d: int, r_max: int, engine: str = "eigen") -> bool:
    """sum_{i+j=r} (-1)^j e_i h_j = [r = 0] id, for every r <= r_max."""
    e = [jm_action_coefficients(i, d, "elementary", engine) for i in range(r_max + 1)]
    h = [jm_action_coefficients(j, d, "complete", engine) for j in range(r_max + 1)]
    eid = identity_element(d)
    zero = CentralElement(d, {})
    for r in range(r_max + 1):
        acc = zero
        for i in range(r + 1):
            term = multiply(e[i], h[r - i])
            acc = acc + (term if (r - i) % 2 == 0 else term.scale(-1))
        if acc != (eid if r == 0 else zero):
            return False
    return True


# q-distance matrices


@dataclass
class QDistanceMatrix:
    d: int
    generating_set_tag: str
    perms: list
    exponents: list  # word norm |g^-1 h| for each pair

    def at(self, q) -> list:
        return [[q**e for e in row] for row in self.exponents]

    def gram(self, N: int) -> list:
        """N^d * Omega_{1/N} = [N^{c(g^-1 h)}] (all-transpositions only)."""
        if self.generating_set_tag != "all_transpositions":
            raise ValueError("the Gram form exists for the all-transpositions metric only")
        return [[N ** (self.d - e) for e in row] for row in self.exponents]

    def polynomial_entry(self, i: int, j: int) -> list[int]:
        """Dense coefficient vector of the (i, j) entry as a polynomial in q."""
        vec = [0] * (self.exponents[i][j] + 1)
        vec[-1] = 1
        return vec

    def is_symmetric(self) -> bool:
        n = len(self.exponents)
        return all(self.exponents[i][j] == self.exponents[j][i] for i in range(n) for j in range(n))


GEN_SETS = ("all_transpositions", "adjacent_transpositions")


def q_distance_matrix(d: int, gen_set: str = "all_transpositions") -> QDistanceMatrix:
    if gen_set not in GEN_SETS:
        raise ValueError(f"unknown generating set {gen_set!r}")
    if d > MAX_MATRIX_DEGREE:
        raise CapacityError(f"d! x d! matrices are capped at d <= {MAX_MATRIX_DEGREE}")
    perms = all_permutations(d)
    norm = (lambda p: d - num_cycles(p)) if gen_set == "all_transpositions" else inversions
    inv = [inverse(p) for p in perms]
    exps = [[norm(compose(inv[i], perms[j])) for j in range(len(perms))] for i in range(len(perms))]
    return QDistanceMatrix(d, gen_set, perms, exps)


def zagier_exponents(d: int) -> dict[int, int]:
    """Exponent of (1 - q^{i(i+1)}) in the product formula, keyed by i."""
    return {i: comb(d, i + 1) * factorial(i - 1) * factorial(d - i) for i in range(1, d)}


def zagier_product_value(d: int, q: int, p: int | None = None) -> int:
    vals = ((1 - q ** (i * (i + 1))) ** e for i, e in zagier_exponents(d).items())
    if p is None:
        return prod(vals, start=1)
    return prod((pow((1 - pow(q, i * (i + 1), p)) % p, e, p) for i, e in zagier_exponents(d).items()), start=1) % p


def _poly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def zagier_product_polynomial(d: int) -> list[int]:
    poly = [1]
    for i, e in zagier_exponents(d).items():
        k = i * (i + 1)
        factor = [1] + [0] * (k - 1) + [-1]
        for _ in range(e):
            poly = _poly_mul(poly, factor)
    return poly


def _poly_trim(a: list[int]) -> list[int]:
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return a


def _poly_divexact(a: list[int], b: list[int]) -> list[int]:
    a, b = _poly_trim(list(a)), _poly_trim(list(b))
    if a == [0]:
        return [0]
    out = [0] * (len(a) - len(b) + 1)
    lead = b[-1]
    for k in range(len(out) - 1, -1, -1):
        q, rem = divmod(a[k + len(b) - 1], lead)
        assert rem == 0
        out[k] = q
        if q:
            for j, y in enumerate(b):
                a[k + j] -= q * y
    assert all(x == 0 for x in a), "polynomial division not exact"
    return out


def _poly_sub(a, b):
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]


def symbolic_determinant(matrix_of_polys) -> list[int]:
    """Determinant over Z[q] by Bareiss elimination (small matrices only)."""
    a = [[list(p) for p in row] for row in matrix_of_polys]
    n = len(a)
    sign = 1
    prev = [1]
    for k in range(n - 1):
        if _poly_trim(a[k][k]) == [0]:
            swap = next((i for i in range(k + 1, n) if _poly_trim(a[i][k]) != [0]), None)
            if swap is None:
                return [0]
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = _poly_sub(_poly_mul(a[i][j], a[k][k]), _poly_mul(a[i][k], a[k][j]))
                a[i][j] = _poly_divexact(num, prev)
            a[i][k] = [0]
        prev = a[k][k]
    return [sign * c for c in _poly_trim(a[n - 1][n - 1])]


def _primes_below(limit: int):
    """Primes below ``limit`` in decreasing order (trial division, lazily)."""
    n = limit - 1 if limit % 2 == 0 else limit - 2
    while n > 2:
        if all(n % f for f in range(3, int(n**0.5) + 1, 2)):
            yield n
        n -= 2


def zagier_determinant_check(d: int, method: str = "auto") -> bool:
    """det Omega_q(adjacent transpositions) equals the product formula in Z[q].

    ``symbolic``: Bareiss over Z[q] (d <= 3). ``modular``: both sides are
    polynomials of degree <= D = d! * d(d-1)/2, so agreement at D + 1 points
    modulo primes whose product exceeds twice a coefficient bound proves the
    identity over Z.
    """
    if not 2 <= d <= 5:
        raise ValueError("zagier_determinant_check supports 2 <= d <= 5")
    if method == "auto":
        method = "symbolic" if d <= 3 else "modular"
    qm = q_distance_matrix(d, "adjacent_transpositions")
    if method == "symbolic":
        polys = [[qm.polynomial_entry(i, j) for j in range(len(qm.perms))] for i in range(len(qm.perms))]
        return _poly_trim(symbolic_determinant(polys)) == _poly_trim(zagier_product_polynomial(d))
    n = len(qm.perms)
    exps = np.array(qm.exponents, dtype=np.int64)
    degree = n * int(exps.max())
    formula_degree = sum(i * (i + 1) * e for i, e in zagier_exponents(d).items())
    degree = max(degree, formula_degree)
    points = np.arange(2, degree + 3, dtype=np.int64)
    # |coefficient| <= max over |q| = 1 (Cauchy); Hadamard bounds the
    # determinant there by prod of row 2-norms = n^(n/2), the product side by 2^(sum e)
    bound = 2 * max(isqrt(n**n) + 1, 2 ** sum(zagier_exponents(d).values())) + 1
    modulus = 1
    primes = []
    for p in _primes_below(2**31):
        primes.append(p)
        modulus *= p
        if modulus > bound:
            break
    for p in primes:
        # q^e mod p for every point at once
        powers = np.ones((len(points), int(exps.max()) + 1), dtype=np.int64)
        for e in range(1, powers.shape[1]):
            powers[:, e] = powers[:, e - 1] * (points % p) % p
        chunk = max(1, 4_000_000 // (n * n))
        for start in range(0, len(points), chunk):
            sl = slice(start, start + chunk)
            mats = powers[sl][:, exps]
            dets = _linalg.batched_det_mod(mats, p)
            for q, dv in zip(points[sl], dets):
                if int(dv) != zagier_product_value(d, int(q), p):
                    return False
    return True


def gram_product_formula(d: int, N: int) -> int:
    return prod(
        (prod((N + c for c in contents(lam)), start=1) ** (dimension(lam) ** 2) for lam in enumerate_partitions(d)),
        start=1,
    )


def gram_determinant(d: int, N: int) -> int:
    qm = q_distance_matrix(d, "all_transpositions")
    return _linalg.bareiss_det(qm.gram(N))


def gram_determinant_check(d: int, N: int) -> bool:
    """Exact Gram determinant equals prod_lam [prod_box (N + c)]^{dim^2}."""
    if d > 5:
        raise CapacityError("gram_determinant_check is capped at d <= 5")
    return gram_determinant(d, N) == gram_product_formula(d, N)


def gram_is_singular(d: int, N: int) -> bool:
    return gram_determinant(d, N) == 0


def random_central_element(d: int, rng: random.Random, span: int = 5) -> CentralElement:
    return CentralElement(d, {mu: Fraction(rng.randint(-span, span)) for mu in enumerate_partitions(d)})
