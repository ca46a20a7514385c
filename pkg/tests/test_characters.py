from __future__ import annotations

from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hcizlab.characters import (
    YoungDiagram,
    central_eigenvalue,
    character,
    character_table,
    complete,
    complete_values,
    content_product,
    contents,
    corrupted_table,
    dimension,
    elementary,
)
from hcizlab.combinatorics import conjugate, enumerate_partitions


def _s3_by_orthogonality():
    """Character table of S(3) solved from orthogonality, as an independent oracle."""
    # classes (3), (2,1), (1,1,1) with sizes 2, 3, 1; trivial and sign are forced
    triv = {(3,): 1, (2, 1): 1, (1, 1, 1): 1}
    sgn = {(3,): 1, (2, 1): -1, (1, 1, 1): 1}
    # third row: degree 2 from sum of squares, then column orthogonality fixes the rest
    std = {(1, 1, 1): 2}
    std[(2, 1)] = -(triv[(2, 1)] * triv[(1, 1, 1)] + sgn[(2, 1)] * sgn[(1, 1, 1)]) // 2
    std[(3,)] = -(triv[(3,)] * triv[(1, 1, 1)] + sgn[(3,)] * sgn[(1, 1, 1)]) // 2
    return {(3,): triv, (1, 1, 1): sgn, (2, 1): std}


def test_dimensions():
    assert dimension((4,)) == 1
    assert dimension((2, 1)) == 2
    assert dimension((2, 2)) == 2


def test_contents():
    assert sorted(contents((2,))) == [0, 1]
    assert sorted(contents((1, 1))) == [-1, 0]
    assert sorted(contents((3, 2))) == sorted([0, 1, 2, -1, 0])
    assert YoungDiagram.of((3, 2)).dim == 5


def test_s3_table_against_orthogonality_oracle():
    oracle = _s3_by_orthogonality()
    for lam, row in oracle.items():
        for mu, v in row.items():
            assert character(lam, mu) == v
    assert character((2, 1), (3,)) == -1


@pytest.mark.parametrize("d", range(1, 9))
def test_trivial_sign_and_degree(d):
    for mu in enumerate_partitions(d):
        assert character((d,), mu) == 1
        assert character((1,) * d, mu) == (-1) ** (d - len(mu))
    for lam in enumerate_partitions(d):
        assert character(lam, (1,) * d) == dimension(lam)


@pytest.mark.parametrize("d", range(1, 9))
def test_orthogonality_and_dimension_sum(d):
    table = character_table(d)
    assert table.column_orthogonality_defects() == []
    assert table.row_orthogonality_defects() == []
    assert sum(dimension(lam) ** 2 for lam in table.partitions) == factorial(d)


def test_corrupted_table_is_detected():
    assert corrupted_table(4).column_orthogonality_defects()


def test_degree_mismatch_rejected():
    with pytest.raises(ValueError):
        character((2, 1), (2,))


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 8).flatmap(lambda d: st.sampled_from(enumerate_partitions(d))))
def test_conjugate_contents_negate(lam):
    assert sorted(contents(conjugate(lam))) == sorted(-c for c in contents(lam))
    assert dimension(conjugate(lam)) == dimension(lam)


def test_central_eigenvalue_examples():
    assert central_eigenvalue(elementary(1), (2,)) == 1
    assert central_eigenvalue(complete(2), (1, 1)) == 1
    assert central_eigenvalue(content_product(Fraction(1, 2)), (2, 1)) == Fraction(3, 4)
    # power-sum polynomial form: p_1 on (2) is the content sum 0 + 1
    assert central_eigenvalue({(1,): 1}, (2,)) == 1


def test_complete_values_by_monomial_expansion():
    xs = [0, -1, 2]
    h2 = sum(xs[i] * xs[j] for i in range(3) for j in range(i, 3))
    assert complete_values(xs, 2)[2] == h2
