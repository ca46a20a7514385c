"""Partitions, permutations and the small group-theoretic predicates used everywhere.

Conventions
-----------
* A partition is a tuple of positive ints in weakly decreasing order.
* A permutation of degree ``d`` is a tuple in one-line form with images in
  ``1..d``; ``perm[k - 1]`` is the image of ``k``.
* Composition is right-to-left: ``compose(p, q)(k) == p(q(k))``.
"""

from __future__ import annotations

import bisect
import itertools
from collections import Counter
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial, prod

Partition = tuple[int, ...]
Permutation = tuple[int, ...]


class CapacityError(ValueError):
    """Raised when a request exceeds a materialization cap."""


def make_partition(parts) -> Partition:
    parts = tuple(sorted((int(p) for p in parts), reverse=True))
    if any(p < 1 for p in parts):
        raise ValueError(f"partition parts must be positive: {parts}")
    return parts


def parse_partition(text: str) -> Partition:
    """Parse ``"2,1,1"`` (or ``"2 1 1"``) into a partition."""
    text = text.strip().strip("()[]")
    if not text:
        return ()
    return make_partition(int(x) for x in text.replace(",", " ").split())


@lru_cache(maxsize=None)
def _partitions(d: int, largest: int) -> tuple[Partition, ...]:
    if d == 0:
        return ((),)
    out = []
    for first in range(min(d, largest), 0, -1):
        for rest in _partitions(d - first, first):
            out.append((first,) + rest)
    return tuple(out)


def enumerate_partitions(d: int) -> list[Partition]:
    """All partitions of ``d`` in reverse lexicographic order: ``(d), (d-1,1), ...``."""
    if d < 0:
        raise ValueError("cannot partition a negative integer")
    return list(_partitions(d, d))


@lru_cache(maxsize=None)
def partition_count(d: int) -> int:
    """p(d) by Euler's pentagonal recurrence (independent of the enumerator)."""
    if d < 0:
        return 0
    if d == 0:
        return 1
    total = 0
    k = 1
    while True:
        g1 = k * (3 * k - 1) // 2
        if g1 > d:
            break
        sign = 1 if k % 2 else -1
        total += sign * partition_count(d - g1)
        g2 = k * (3 * k + 1) // 2
        if g2 <= d:
            total += sign * partition_count(d - g2)
        k += 1
    return total


def multiplicities(alpha: Partition) -> Counter:
    return Counter(alpha)


def aut_order(alpha: Partition) -> int:
    """Order of the group permuting equal parts of ``alpha``."""
    return prod(factorial(m) for m in Counter(alpha).values())


@lru_cache(maxsize=None)
def z_centralizer(alpha: Partition) -> int:
    """Centralizer order z_alpha = prod v^m_v m_v!."""
    return prod(v**m * factorial(m) for v, m in Counter(alpha).items())


@lru_cache(maxsize=None)
def class_size(alpha: Partition) -> int:
    return factorial(sum(alpha)) // z_centralizer(alpha)


def conjugate(lam: Partition) -> Partition:
    if not lam:
        return ()
    return tuple(sum(1 for p in lam if p > i) for i in range(lam[0]))


def identity(d: int) -> Permutation:
    return tuple(range(1, d + 1))


def is_permutation(images) -> bool:
    return sorted(images) == list(range(1, len(images) + 1))


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Return ``p o q``, the map ``k -> p(q(k))``."""
    if len(p) != len(q):
        raise ValueError(f"degree mismatch: {len(p)} vs {len(q)}")
    return tuple(p[x - 1] for x in q)


def inverse(p: Permutation) -> Permutation:
    inv = [0] * len(p)
    for i, x in enumerate(p, start=1):
        inv[x - 1] = i
    return tuple(inv)


def transposition(s: int, t: int, d: int) -> Permutation:
    images = list(range(1, d + 1))
    images[s - 1], images[t - 1] = t, s
    return tuple(images)


def cycles(p: Permutation) -> list[tuple[int, ...]]:
    """Disjoint cycles (including fixed points), each starting at its least element."""
    seen = [False] * len(p)
    out = []
    for start in range(1, len(p) + 1):
        if seen[start - 1]:
            continue
        cyc = []
        k = start
        while not seen[k - 1]:
            seen[k - 1] = True
            cyc.append(k)
            k = p[k - 1]
        out.append(tuple(cyc))
    return out


def cycle_type(p: Permutation) -> Partition:
    return tuple(sorted((len(c) for c in cycles(p)), reverse=True))


def num_cycles(p: Permutation) -> int:
    return len(cycles(p))


def sign(p: Permutation) -> int:
    return -1 if (len(p) - num_cycles(p)) % 2 else 1


def inversions(p: Permutation) -> int:
    return sum(1 for i, j in itertools.combinations(range(len(p)), 2) if p[i] > p[j])


def cycle_notation(p: Permutation) -> str:
    parts = [c for c in cycles(p) if len(c) > 1]
    if not parts:
        return "()"
    return "".join("(" + " ".join(map(str, c)) + ")" for c in parts)


def is_transitive(gens, d: int) -> bool:
    """Whether the group generated by ``gens`` acts transitively on ``1..d``.

    Union-find over generator images; the group itself is never enumerated.
    """
    if d <= 1:
        return True
    parent = list(range(d + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    components = d
    for g in gens:
        if len(g) != d:
            raise ValueError("generator degree mismatch")
        for k, gk in enumerate(g, start=1):
            a, b = find(k), find(gk)
            if a != b:
                parent[a] = b
                components -= 1
    return components == 1


def longest_decreasing_subsequence(p: Permutation) -> int:
    """Length of the longest strictly decreasing subsequence (patience sorting)."""
    piles: list[int] = []
    for x in p:
        v = -x
        i = bisect.bisect_left(piles, v)
        if i == len(piles):
            piles.append(v)
        else:
            piles[i] = v
    return len(piles)


MAX_RESTRICTED_DEGREE = 8


def all_permutations(d: int) -> list[Permutation]:
    if d > MAX_RESTRICTED_DEGREE:
        raise CapacityError(f"refusing to list S({d}); cap is d <= {MAX_RESTRICTED_DEGREE}")
    return list(itertools.permutations(range(1, d + 1)))


def enumerate_restricted(d: int, N: int) -> list[Permutation]:
    """Permutations of ``d`` with no decreasing subsequence of length ``N + 1``.

    Lexicographic order of one-line forms. Equals all of S(d) when ``N >= d``.
    """
    if d < 0 or N < 1:
        raise ValueError("need d >= 0 and N >= 1")
    return [p for p in all_permutations(d) if longest_decreasing_subsequence(p) <= N]


def catalan(n: int) -> int:
    return comb(2 * n, n) // (n + 1)


def rising_factorial(x, k: int):
    """x (x+1) ... (x+k-1); for k < 0 the reciprocal convention 1 / (x+k)^(rising -k)."""
    if k >= 0:
        return prod((x + i for i in range(k)), start=1)
    return Fraction(1, 1) / rising_factorial(x + k, -k)
