from __future__ import annotations

import pytest

from hcizlab.combinatorics import enumerate_partitions
from hcizlab.hurwitz import (
    brute_force_count,
    connected_double,
    connected_by_rays,
    disconnected_count,
    genus_zero_closed_form,
    hurwitz_table,
    iz_number,
    naive_count,
    ray_count,
    simple_number,
    structural_identity_suite,
)


def test_small_brute_force_values():
    assert brute_force_count((1,), (1,), 0) == 1
    assert brute_force_count((2,), (1, 1), 1) == 1
    assert brute_force_count((2, 1), (2, 1), 2) == connected_double((2, 1), (2, 1), 0)


def test_naive_oracle_matches_dp():
    for d in range(1, 4):
        parts = enumerate_partitions(d)
        for a in parts:
            for b in parts:
                for r in range(5):
                    for transitive in (True, False):
                        assert naive_count(a, b, r, transitive) == brute_force_count(a, b, r, transitive)
                    assert naive_count(a, b, r, True, False) == brute_force_count(a, b, r, True, False)


def test_disconnected_small_values():
    assert disconnected_count((1,), (1,), 0) == 1
    # the only word is ((12),(12)), so one tuple
    assert naive_count((1, 1), (1, 1), 2, require_transitive=False) == 1
    assert disconnected_count((1, 1), (1, 1), 2) == 1


def test_parity_obstruction():
    assert disconnected_count((2,), (2,), 1) == 0
    assert brute_force_count((2, 1), (1, 1, 1), 2, require_transitive=False) == 0


@pytest.mark.parametrize("d", range(1, 6))
def test_disconnected_matches_brute_force(d):
    parts = enumerate_partitions(d)
    for a in parts:
        for b in parts:
            for r in range(7):
                assert disconnected_count(a, b, r) == brute_force_count(a, b, r, require_transitive=False)


def test_connected_values():
    assert connected_double((1,), (1,), 0) == 1
    assert connected_double((1,), (1,), 1) == 0
    assert connected_double((2,), (1, 1), 0) == 1
    assert connected_double((1, 1, 1), (1, 1, 1), 0) == 8


def test_riemann_hurwitz_vanishing():
    for d in range(1, 5):
        parts = enumerate_partitions(d)
        for a in parts:
            for b in parts:
                for r in range(8):
                    if r < len(a) + len(b) - 2 or (r - len(a) - len(b)) % 2:
                        assert connected_by_rays(a, b, r) == 0


def test_closed_form_examples():
    assert genus_zero_closed_form((1,)) == 1
    assert genus_zero_closed_form((2,)) == 1
    assert genus_zero_closed_form((1, 1, 1)) == 8
    assert genus_zero_closed_form((3,)) == brute_force_count((3,), (1, 1, 1), ray_count((3,), (1, 1, 1), 0))


@pytest.mark.parametrize("d", range(1, 9))
def test_closed_form_matches_character_route(d):
    for a in enumerate_partitions(d):
        assert genus_zero_closed_form(a) == connected_double(a, (1,) * d, 0)


def test_iz_numbers():
    assert iz_number((1,), (1,)) == -1
    assert iz_number((2,), (1, 1)) == -1
    assert iz_number((1, 1), (1, 1)) == 1


def test_table_methods_agree():
    for d in range(1, 5):
        for g in range(2):
            char = hurwitz_table(d, g, "character")
            assert char.values == hurwitz_table(d, g, "brute").values
            assert char.is_symmetric()
    with pytest.raises(ValueError):
        hurwitz_table(3, 1, "closed_form")


def test_simple_numbers_match_product_formula():
    from math import factorial

    for d in range(2, 8):
        assert simple_number(0, d) == 2**d * factorial(3 * d - 3) // factorial(2 * d)


def test_structural_suite_in_checked_range():
    report = structural_identity_suite(6, 2)
    assert all(passed for passed, _ in report.values())


def test_maximization_bound_fails_at_degree_eight():
    """(2,2,1^4) beats (2,1^6); the other identities still hold there."""
    report = structural_identity_suite(8, 0)
    assert report["symmetry"][0] and report["stripping"][0] and report["scalar_sum"][0]
    assert not report["maximization"][0]
    tr, dbl = (2,) + (1,) * 6, (2, 2) + (1,) * 4
    assert connected_double(dbl, dbl, 0) > connected_double(tr, tr, 0)
