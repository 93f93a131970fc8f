import itertools
from fractions import Fraction

import pytest

from permpatterns import oracle
from permpatterns.perm import is_involution, is_simple

from conftest import naive_class, naive_count

BASES = [[(1, 2, 3)], [(1, 3, 2)], [(1, 3, 4, 2)], [(1, 2, 3), (2, 3, 1)], [(2, 4, 1, 3), (3, 1, 4, 2)]]


@pytest.mark.parametrize("basis", BASES)
def test_enumerate_matches_naive(basis):
    for n in range(1, 7):
        assert oracle.enumerate_class(basis, n) == len(naive_class(basis, n))
        assert sorted(map(tuple, oracle.iter_class(basis, n))) == sorted(naive_class(basis, n))


def test_worker_count_does_not_change_counts():
    assert oracle.enumerate_class([(1, 3, 2, 4)], 9, workers=1) == oracle.enumerate_class([(1, 3, 2, 4)], 9, workers=3)


def test_frozen_wilf_values():
    # frozen from the brute-force walk above
    assert [oracle.enumerate_class([(1, 3, 4, 2)], n) for n in range(1, 10)] == [1, 2, 6, 23, 103, 512, 2740, 15485, 91245]
    assert [oracle.enumerate_class([(1, 3, 2, 4)], n) for n in range(1, 9)] == [1, 2, 6, 23, 103, 513, 2762, 15793]


def test_query_validation_and_budget():
    with pytest.raises(ValueError):
        oracle.AvoidanceQuery((), 3)
    with pytest.raises(ValueError):
        oracle.AvoidanceQuery(((1, 2),), -1)
    with pytest.raises(oracle.BudgetExceeded):
        oracle.enumerate_class([(1, 2, 3, 4)], 14)
    q = oracle.AvoidanceQuery(((2, 3, 1),), 5, involutions_only=True)
    assert set(q.basis) == {(2, 3, 1), (3, 1, 2)}


def test_involutions_match_naive():
    for basis in BASES[:3]:
        for n in range(1, 7):
            want = sum(is_involution(p) for p in naive_class(basis, n))
            assert oracle.enumerate_involutions(basis, n) == want


def test_occurrence_totals():
    for n in range(1, 7):
        members = naive_class([(1, 3, 2)], n)
        assert oracle.occurrence_totals((2, 1), [(1, 3, 2)], n) == sum(naive_count(p, (2, 1)) for p in members)


def test_simple_census():
    for n in range(4, 7):
        want = sum(is_simple(p) for p in naive_class([(1, 2, 3)], n))
        assert oracle.simple_census([(1, 2, 3)], n) == want


def test_bond_distribution():
    d = oracle.bond_distribution(5)
    assert d.total == 120
    assert d.mean == Fraction(8, 5)
    manual = sum(sum(abs(p[i] - p[i + 1]) == 1 for i in range(4)) for p in itertools.permutations(range(1, 6)))
    assert d.mean * 120 == manual
