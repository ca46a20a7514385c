"""Monotone double Hurwitz numbers.

Three independent routes:

* ``brute_force_count`` runs a dynamic program over monotone transposition
  words, tracking the running product and the orbit partition, so it visits
  states instead of individual tuples (the tuple count at d=5, r=12 is
  ~10^8). ``naive_count`` enumerates tuples literally and checks the DP on
  tiny cases.
* ``connected_double`` takes disconnected counts from characters and peels
  off the component of the point 1 (the exponential formula written as an
  integer recurrence).
* ``genus_zero_closed_form`` for single numbers in genus zero.

Counts are of tuples ``(rho, sigma, tau_1..tau_r)`` with rho of type alpha,
sigma of type beta, ``rho sigma tau_1 ... tau_r = id`` and weakly increasing
larger elements t_i, composition as in :mod:`combinatorics`.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial, prod

from .characters import character_table, complete_values, contents
from .combinatorics import (
    CapacityError,
    Partition,
    aut_order,
    all_permutations,
    class_size,
    compose,
    cycle_type,
    cycles,
    enumerate_partitions,
    identity,
    inverse,
    is_transitive,
    make_partition,
    rising_factorial,
    transposition,
)

DEFAULT_MAX_GENUS = 4
DEFAULT_MAX_DEGREE = 12
# state-space DP caps: r <= 12 at d <= 5 covers genus <= 2 for every pair
BRUTE_FORCE_CAPS = {1: 16, 2: 16, 3: 14, 4: 14, 5: 12, 6: 8}


def ray_count(alpha: Partition, beta: Partition, g: int) -> int:
    return 2 * g - 2 + len(alpha) + len(beta)


def genus_of(alpha: Partition, beta: Partition, r: int) -> int | None:
    twice = r + 2 - len(alpha) - len(beta)
    if twice < 0 or twice % 2:
        return None
    return twice // 2


@dataclass(frozen=True)
class HurwitzIndex:
    alpha: Partition
    beta: Partition
    g: int

    def __post_init__(self):
        if sum(self.alpha) != sum(self.beta):
            raise ValueError("alpha and beta must have the same degree")
        if self.r < 0:
            raise ValueError("negative ray count")

    @property
    def d(self) -> int:
        return sum(self.alpha)

    @property
    def r(self) -> int:
        return ray_count(self.alpha, self.beta, self.g)


@dataclass
class HurwitzTable:
    d: int
    g: int
    method: str
    values: dict = field(default_factory=dict)  # (alpha, beta) -> int

    def rows(self):
        for (alpha, beta), v in self.values.items():
            yield {"d": self.d, "g": self.g, "alpha": alpha, "beta": beta, "value": v, "method": self.method}

    def is_symmetric(self) -> bool:
        return all(self.values.get((b, a), v) == v for (a, b), v in self.values.items())


# brute force


def _canon(labels) -> tuple:
    remap: dict = {}
    return tuple(remap.setdefault(x, len(remap)) for x in labels)


def _cycle_labels(perm) -> tuple:
    labels = [0] * len(perm)
    for idx, cyc in enumerate(cycles(perm)):
        for x in cyc:
            labels[x - 1] = idx
    return _canon(labels)


def _merge(labels: tuple, s: int, t: int) -> tuple:
    a, b = labels[s - 1], labels[t - 1]
    if a == b:
        return labels
    return _canon(a if x == b else x for x in labels)


@lru_cache(maxsize=None)
def _word_dp(d: int, r_max: int, monotone: bool) -> dict:
    """Tally of (alpha, beta, r, connected) -> number of tuples, all r <= r_max."""
    state: dict = {}
    for rho in all_permutations(d):
        key = (cycle_type(rho), rho, _cycle_labels(rho), 0)
        state[key] = state.get(key, 0) + 1

    def step(frontier, taus):
        nxt: dict = {}
        for (alpha, perm, labels, length), cnt in frontier.items():
            if length >= r_max:
                continue
            for s, t, tau in taus:
                key = (alpha, compose(perm, tau), _merge(labels, s, t), length + 1)
                nxt[key] = nxt.get(key, 0) + cnt
        return nxt

    if monotone:
        for t in range(2, d + 1):
            taus = [(s, t, transposition(s, t, d)) for s in range(1, t)]
            out = dict(state)
            frontier = state
            while frontier:
                frontier = step(frontier, taus)
                for key, cnt in frontier.items():
                    out[key] = out.get(key, 0) + cnt
            state = out
    else:
        taus = [(s, t, transposition(s, t, d)) for t in range(2, d + 1) for s in range(1, t)]
        out = dict(state)
        frontier = state
        while frontier:
            frontier = step(frontier, taus)
            for key, cnt in frontier.items():
                out[key] = out.get(key, 0) + cnt
        state = out

    tally: dict = {}
    for (alpha, perm, labels, length), cnt in state.items():
        key = (alpha, cycle_type(perm), length, max(labels) == 0)
        tally[key] = tally.get(key, 0) + cnt
    return tally


def brute_force_count(alpha, beta, r: int, require_transitive: bool = True, monotone: bool = True) -> int:
    """Number of (rho, sigma, tau_1..tau_r) tuples; ``monotone=False`` drops the ordering."""
    alpha, beta = make_partition(alpha), make_partition(beta)
    d = sum(alpha)
    if d != sum(beta):
        raise ValueError("alpha and beta must have the same degree")
    if r < 0:
        raise ValueError("r must be nonnegative")
    cap = BRUTE_FORCE_CAPS.get(d, -1)
    if r > cap:
        raise CapacityError(f"brute force capped at d <= 6 with r <= {cap if cap >= 0 else 'n/a'} for d={d}")
    if d == 0:
        return 1 if r == 0 else 0
    # the DP is shared by all requests with the same (d, monotone); size it for the cap
    tally = _word_dp(d, cap, monotone)
    total = tally.get((alpha, beta, r, True), 0)
    if not require_transitive:
        total += tally.get((alpha, beta, r, False), 0)
    return total


def naive_count(alpha, beta, r: int, require_transitive: bool = True, monotone: bool = True) -> int:
    """Literal enumeration of tuples; an oracle for ``brute_force_count`` on tiny cases."""
    alpha, beta = make_partition(alpha), make_partition(beta)
    d = sum(alpha)
    taus = [(s, t) for t in range(2, d + 1) for s in range(1, t)]
    total = 0
    rhos = [p for p in all_permutations(d) if cycle_type(p) == alpha]
    for word in itertools.product(taus, repeat=r):
        if monotone and any(word[i][1] > word[i + 1][1] for i in range(r - 1)):
            continue
        T = identity(d)
        for s, t in word:
            T = compose(T, transposition(s, t, d))
        t_inv = inverse(T)
        for rho in rhos:
            sigma = compose(inverse(rho), t_inv)
            if cycle_type(sigma) != beta:
                continue
            if require_transitive:
                gens = [rho, sigma] + [transposition(s, t, d) for s, t in word]
                if not is_transitive(gens, d):
                    continue
            total += 1
    return total


# character route


@lru_cache(maxsize=None)
def _h_values(lam: Partition, r_max: int) -> tuple:
    return tuple(complete_values(contents(lam), r_max))


def _h(lam: Partition, r: int) -> int:
    # round the cache key up so neighbouring r share one table
    r_cap = max(16, 1 << (r.bit_length()))
    return _h_values(lam, r_cap)[r]


@lru_cache(maxsize=None)
def disconnected_count(alpha, beta, r: int) -> int:
    """[id] C_alpha C_beta h_r(Xi_d), via central characters (exact)."""
    alpha, beta = make_partition(alpha), make_partition(beta)
    d = sum(alpha)
    if d != sum(beta):
        raise ValueError("alpha and beta must have the same degree")
    if r < 0:
        raise ValueError("r must be nonnegative")
    if d == 0:
        return 1 if r == 0 else 0
    if (r - len(alpha) - len(beta)) % 2:
        return 0
    table = character_table(d)
    total = 0
    for lam in table.partitions:
        ca, cb = table(lam, alpha), table(lam, beta)
        if ca and cb:
            total += ca * cb * _h(lam, r)
    total *= class_size(alpha) * class_size(beta)
    q, rem = divmod(total, factorial(d))
    assert rem == 0, "disconnected count is not an integer"
    return q


def _sub_multisets(alpha: Partition) -> list[Partition]:
    counts = sorted(Counter(alpha).items(), reverse=True)
    out = []
    for picks in itertools.product(*(range(m + 1) for _, m in counts)):
        parts = []
        for (v, _), k in zip(counts, picks):
            parts.extend([v] * k)
        out.append(tuple(parts))
    return out


def _minus(alpha: Partition, sub: Partition) -> Partition:
    c = Counter(alpha)
    c.subtract(sub)
    return make_partition(c.elements())


@lru_cache(maxsize=None)
def _connected(alpha: Partition, beta: Partition, r: int) -> int:
    d = sum(alpha)
    total = disconnected_count(alpha, beta, r)
    if d <= 1:
        return total
    subs_a = [s for s in _sub_multisets(alpha) if 0 < sum(s) < d]
    subs_b = [s for s in _sub_multisets(beta) if 0 < sum(s) < d]
    by_size_b: dict = {}
    for s in subs_b:
        by_size_b.setdefault(sum(s), []).append(s)
    for a1 in subs_a:
        k = sum(a1)
        a2 = _minus(alpha, a1)
        weight = comb(d - 1, k - 1)
        for b1 in by_size_b.get(k, ()):
            b2 = _minus(beta, b1)
            lo = max(0, len(a1) + len(b1) - 2)
            for r1 in range(lo, r + 1, 2):
                z = disconnected_count(a2, b2, r - r1)
                if z:
                    c = _connected(a1, b1, r1)
                    if c:
                        total -= weight * c * z
    if total < 0:
        raise AssertionError(f"negative connected count at {alpha}, {beta}, r={r}")
    return total


def connected_double(alpha, beta, g: int) -> int:
    """H_g(alpha, beta) by characters and the exponential formula."""
    alpha, beta = make_partition(alpha), make_partition(beta)
    if sum(alpha) != sum(beta):
        raise ValueError("alpha and beta must have the same degree")
    if g < 0:
        raise ValueError("genus must be nonnegative")
    r = ray_count(alpha, beta, g)
    if r < 0:
        return 0
    return _connected(alpha, beta, r)


def connected_by_rays(alpha, beta, r: int) -> int:
    """Connected count at a given number of transpositions (0 off the parity lattice)."""
    alpha, beta = make_partition(alpha), make_partition(beta)
    if genus_of(alpha, beta, r) is None:
        return 0
    return _connected(alpha, beta, r)


def genus_zero_closed_form(alpha) -> int:
    """Single genus-zero number from the product formula with rising factorials."""
    alpha = make_partition(alpha)
    d = sum(alpha)
    if d < 1:
        raise ValueError("need d >= 1")
    value = Fraction(factorial(d), aut_order(alpha))
    value *= prod(comb(2 * a, a) for a in alpha)
    value *= rising_factorial(2 * d + 1, len(alpha) - 3)
    if value.denominator != 1 or value <= 0:
        raise AssertionError(f"closed form not a positive integer: {value}")
    return int(value)


def iz_number(alpha, beta) -> int:
    alpha, beta = make_partition(alpha), make_partition(beta)
    d = sum(alpha)
    sign = -1 if (d + len(alpha) + len(beta)) % 2 else 1
    return sign * connected_double(alpha, beta, 0)


def hurwitz_table(d: int, g: int, method: str = "character", alpha=None, beta=None) -> HurwitzTable:
    parts = enumerate_partitions(d)
    alphas = [make_partition(alpha)] if alpha else parts
    betas = [make_partition(beta)] if beta else parts
    table = HurwitzTable(d, g, method)
    for a in alphas:
        for b in betas:
            if method == "character":
                v = connected_double(a, b, g)
            elif method == "brute":
                r = ray_count(a, b, g)
                v = brute_force_count(a, b, r, True) if r >= 0 else 0
            elif method == "closed_form":
                if g != 0 or b != (1,) * d:
                    raise ValueError("closed_form covers g = 0 and beta = (1^d) only")
                v = genus_zero_closed_form(a)
            else:
                raise ValueError(f"unknown method {method!r}")
            table.values[(a, b)] = v
    return table


def simple_number(g: int, d: int) -> int:
    return connected_double((1,) * d, (1,) * d, g)


def structural_identity_suite(d_max: int, g_max: int) -> dict:
    """Symmetry, stripping, maximization and signed-sum checks over a range.

    Returns ``{name: (passed, failures)}``.
    """
    if d_max > 8:
        raise CapacityError("structural suite capped at d <= 8")
    report = {"symmetry": [], "stripping": [], "maximization": [], "scalar_sum": []}
    for d in range(1, d_max + 1):
        parts = enumerate_partitions(d)
        for g in range(g_max + 1):
            vals = {(a, b): connected_double(a, b, g) for a in parts for b in parts}
            for (a, b), v in vals.items():
                if vals[(b, a)] != v:
                    report["symmetry"].append((d, g, a, b))
            if d >= 2:
                tr = (2,) + (1,) * (d - 2)
                ones = (1,) * d
                for a in parts:
                    if 2 * vals[(a, tr)] != d * vals[(a, ones)]:
                        report["stripping"].append((d, g, a))
                top = vals[(tr, tr)]
                for (a, b), v in vals.items():
                    if v > top:
                        report["maximization"].append((d, g, a, b))
                signed = sum((-1) ** (len(a) + len(b)) * v for (a, b), v in vals.items())
                if signed != 0:
                    report["scalar_sum"].append((d, g))
    return {name: (not fails, fails) for name, fails in report.items()}
