"""Irreducible characters of the symmetric group.

Dimensions come from the hook-length formula, character values from the
Murnaghan-Nakayama rule on beta-sets (first-column hook lengths), which turns
rim-hook removal into "move one bead ``k`` places down its runner".
Everything here is exact integer or ``Fraction`` arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial, prod

from .combinatorics import Partition, class_size, conjugate, enumerate_partitions, z_centralizer


@dataclass(frozen=True)
class YoungDiagram:
    shape: Partition
    contents: tuple[int, ...]
    dim: int

    @classmethod
    def of(cls, lam: Partition) -> "YoungDiagram":
        lam = tuple(lam)
        return cls(lam, contents(lam), dimension(lam))

    @property
    def d(self) -> int:
        return sum(self.shape)


def hooks(lam: Partition) -> list[int]:
    conj = conjugate(lam)
    return [lam[i] - j + conj[j] - i - 1 for i in range(len(lam)) for j in range(lam[i])]


@lru_cache(maxsize=None)
def dimension(lam: Partition) -> int:
    """Number of standard Young tableaux of shape ``lam``."""
    lam = tuple(lam)
    return factorial(sum(lam)) // prod(hooks(lam), start=1)


@lru_cache(maxsize=None)
def contents(lam: Partition) -> tuple[int, ...]:
    """Contents ``j - i`` of the boxes (0-indexed), row by row."""
    return tuple(j - i for i, row in enumerate(lam) for j in range(row))


def _beta_set(lam: Partition) -> tuple[int, ...]:
    n = len(lam)
    return tuple(lam[i] + (n - 1 - i) for i in range(n))


def _from_beta(beta: tuple[int, ...]) -> Partition:
    n = len(beta)
    b = sorted(beta, reverse=True)
    parts = tuple(b[i] - (n - 1 - i) for i in range(n))
    return tuple(p for p in parts if p > 0)


@lru_cache(maxsize=None)
def _mn(lam: Partition, mu: Partition) -> int:
    if not mu:
        return 1 if not lam else 0
    k = mu[0]
    rest = mu[1:]
    beta = _beta_set(lam)
    members = set(beta)
    total = 0
    for b in beta:
        nb = b - k
        if nb < 0 or nb in members:
            continue
        # beads jumped over give the leg length of the removed rim hook
        height = sum(1 for x in beta if nb < x < b)
        new_beta = tuple(nb if x == b else x for x in beta)
        total += (-1) ** height * _mn(_from_beta(new_beta), rest)
    return total


def character(lam: Partition, mu: Partition) -> int:
    """chi^lam evaluated on the class of cycle type ``mu``."""
    lam, mu = tuple(lam), tuple(sorted(mu, reverse=True))
    if sum(lam) != sum(mu):
        raise ValueError(f"degree mismatch: |{lam}| != |{mu}|")
    return _mn(lam, mu)


@dataclass
class CharacterTable:
    d: int
    partitions: list[Partition]
    values: dict[tuple[Partition, Partition], int] = field(repr=False)

    def __call__(self, lam: Partition, mu: Partition) -> int:
        return self.values[(tuple(lam), tuple(mu))]

    def column_orthogonality_defects(self) -> list[tuple[Partition, Partition]]:
        """Pairs ``(mu, nu)`` at which sum_lam chi(mu) chi(nu) != z_mu [mu = nu]."""
        bad = []
        parts = self.partitions
        for i, mu in enumerate(parts):
            for nu in parts[i:]:
                s = sum(self.values[(lam, mu)] * self.values[(lam, nu)] for lam in parts)
                want = z_centralizer(mu) if mu == nu else 0
                if s != want:
                    bad.append((mu, nu))
        return bad

    def row_orthogonality_defects(self) -> list[tuple[Partition, Partition]]:
        bad = []
        parts = self.partitions
        d_fact = factorial(self.d)
        for i, lam in enumerate(parts):
            for kappa in parts[i:]:
                s = sum(class_size(mu) * self.values[(lam, mu)] * self.values[(kappa, mu)] for mu in parts)
                if s != (d_fact if lam == kappa else 0):
                    bad.append((lam, kappa))
        return bad


@lru_cache(maxsize=None)
def character_table(d: int) -> CharacterTable:
    parts = enumerate_partitions(d)
    values = {(lam, mu): _mn(lam, mu) for lam in parts for mu in parts}
    return CharacterTable(d, parts, values)


def corrupted_table(d: int, lam: Partition | None = None, mu: Partition | None = None) -> CharacterTable:
    """A deliberately wrong copy of the table (negative control for the verifier)."""
    table = character_table(d)
    values = dict(table.values)
    lam = lam or table.partitions[0]
    mu = mu or table.partitions[-1]
    values[(lam, mu)] += 1
    return CharacterTable(d, list(table.partitions), values)


# Symmetric functions evaluated on content multisets


def elementary_values(xs, r_max: int) -> list:
    """[e_0, ..., e_{r_max}] of the multiset ``xs``."""
    e = [1] + [0] * r_max
    for x in xs:
        for r in range(r_max, 0, -1):
            e[r] = e[r] + x * e[r - 1]
    return e


def complete_values(xs, r_max: int) -> list:
    """[h_0, ..., h_{r_max}] of the multiset ``xs``."""
    h = [1] + [0] * r_max
    for x in xs:
        for r in range(1, r_max + 1):
            h[r] = h[r] + x * h[r - 1]
    return h


def elementary(r: int):
    return lambda xs: elementary_values(xs, r)[r]


def complete(r: int):
    return lambda xs: complete_values(xs, r)[r]


def power_sum_poly(coeffs: dict):
    """Evaluator for a polynomial sum_nu c_nu p_nu given as ``{nu: c_nu}``.

    ``p_()`` is the constant 1; zero padding leaves every ``p_k`` (k >= 1)
    unchanged, so the value is well defined on content multisets.
    """

    def f(xs):
        total = 0
        for nu, c in coeffs.items():
            total += c * prod((sum(x**k for x in xs) for k in nu), start=1)
        return total

    return f


def content_product(q):
    """Evaluator of prod (1 + q c) over the multiset."""
    return lambda xs: prod((1 + q * x for x in xs), start=1)


def central_eigenvalue(f, lam: Partition):
    """Scalar by which f(Xi_d) acts on the irreducible module of shape ``lam``.

    ``f`` is a callable on a content tuple, e.g. ``complete(2)`` or
    ``content_product(Fraction(1, 2))``; a dict ``{nu: c_nu}`` is read as a
    polynomial in power sums.
    """
    if isinstance(f, dict):
        f = power_sum_poly(f)
    value = f(contents(tuple(lam)))
    return Fraction(value) if isinstance(value, int) else value
