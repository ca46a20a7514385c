from __future__ import annotations

import itertools
from math import factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hcizlab.combinatorics import (
    CapacityError,
    all_permutations,
    aut_order,
    catalan,
    class_size,
    compose,
    conjugate,
    cycle_type,
    enumerate_partitions,
    enumerate_restricted,
    identity,
    inverse,
    is_transitive,
    longest_decreasing_subsequence,
    num_cycles,
    parse_partition,
    partition_count,
    rising_factorial,
    sign,
    transposition,
    z_centralizer,
)


def perms(max_d=6):
    return st.integers(1, max_d).flatmap(lambda d: st.permutations(range(1, d + 1)).map(tuple))


def test_partition_enumeration_small_cases():
    assert enumerate_partitions(1) == [(1,)]
    assert len(enumerate_partitions(4)) == 5
    assert len(enumerate_partitions(8)) == 22
    assert enumerate_partitions(0) == [()]
    with pytest.raises(ValueError):
        enumerate_partitions(-1)


def test_partition_order_is_reverse_lex():
    parts = enumerate_partitions(5)
    assert parts == sorted(parts, reverse=True)
    assert parts[0] == (5,) and parts[-1] == (1,) * 5


def test_partition_count_matches_enumeration():
    for d in range(25):
        assert partition_count(d) == len(enumerate_partitions(d))


def test_aut_order_and_class_size():
    assert aut_order((1, 1, 1)) == 6
    assert aut_order((2, 1)) == 1
    assert aut_order((2, 2, 1, 1, 1)) == 12
    assert class_size((1, 1)) == 1
    assert class_size((2,)) == 1
    assert class_size((2, 1)) == 3


@pytest.mark.parametrize("d", range(1, 8))
def test_class_sizes_sum_to_factorial(d):
    assert sum(class_size(a) for a in enumerate_partitions(d)) == factorial(d)
    assert all(factorial(d) == class_size(a) * z_centralizer(a) for a in enumerate_partitions(d))


def test_cycle_type_examples():
    assert cycle_type(identity(4)) == (1, 1, 1, 1)
    assert cycle_type((2, 1, 4, 3)) == (2, 2)
    assert cycle_type((2, 3, 1, 5, 4)) == (3, 2)


def test_composition_convention():
    t = transposition(1, 2, 2)
    assert compose(t, t) == identity(2)
    # (p o q)(k) = p(q(k))
    assert compose((2, 1, 3), (1, 3, 2)) == (2, 3, 1)
    p = (3, 1, 2)
    assert compose(p, identity(3)) == p


def test_transitivity():
    assert is_transitive([transposition(1, 2, 2)], 2)
    assert not is_transitive([transposition(1, 2, 3)], 3)
    assert is_transitive([transposition(1, 2, 3), transposition(2, 3, 3)], 3)
    assert is_transitive([], 1)
    assert not is_transitive([], 2)


def test_longest_decreasing_subsequence():
    assert longest_decreasing_subsequence(identity(5)) == 1
    assert longest_decreasing_subsequence((5, 4, 3, 2, 1)) == 5
    assert longest_decreasing_subsequence((3, 1, 4, 2)) == 2


def test_restricted_sets():
    for d in range(1, 7):
        assert len(enumerate_restricted(d, 1)) == 1
    assert len(enumerate_restricted(4, 2)) == 14 == catalan(4)
    assert len(enumerate_restricted(3, 3)) == 6


def test_restricted_matches_filter():
    for d in range(1, 7):
        for N in range(1, d + 1):
            brute = [p for p in itertools.permutations(range(1, d + 1)) if longest_decreasing_subsequence(p) <= N]
            assert sorted(enumerate_restricted(d, N)) == sorted(brute)


def test_permutation_cap():
    with pytest.raises(CapacityError):
        enumerate_restricted(12, 12)


@pytest.mark.parametrize("d", range(1, 7))
def test_cycle_generating_function_is_rising_factorial(d):
    everything = all_permutations(d)
    for N in range(1, 6):
        assert sum(N ** num_cycles(p) for p in everything) == rising_factorial(N, d)


@settings(max_examples=60, deadline=None)
@given(perms(), st.data())
def test_conjugation_preserves_cycle_type(p, data):
    r = data.draw(st.permutations(range(1, len(p) + 1)).map(tuple))
    assert cycle_type(compose(compose(r, p), inverse(r))) == cycle_type(p)
    assert cycle_type(inverse(p)) == cycle_type(p)
    assert sign(compose(r, p)) == sign(r) * sign(p)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 12).flatmap(lambda d: st.sampled_from(enumerate_partitions(d))))
def test_conjugate_is_involution(lam):
    assert conjugate(conjugate(lam)) == lam
    assert sum(conjugate(lam)) == sum(lam)


def test_parse_partition():
    assert parse_partition("1,2,1") == (2, 1, 1)
    assert parse_partition("(3 1)") == (3, 1)
    with pytest.raises(ValueError):
        parse_partition("2,0")
