import itertools
from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from permpatterns import perm as P
from permpatterns.perm import Permutation

from conftest import naive_contains, naive_count

perms = st.integers(min_value=0, max_value=8).flatmap(
    lambda n: st.permutations(list(range(1, n + 1))))


def test_parse_forms():
    assert Permutation.parse("2 5 1 4 3") == Permutation.parse("25143") == Permutation.parse("2,5,1,4,3")
    assert tuple(P.perm("312")) == (3, 1, 2)
    with pytest.raises(ValueError):
        Permutation.parse("1 1 2")
    with pytest.raises(ValueError):
        Permutation.parse("2 3")


def test_standardize():
    assert tuple(P.standardize([10, 3, 7])) == (3, 1, 2)
    assert P._std([5, 9, 1]) == (2, 3, 1)


@given(perms)
def test_symmetries_are_involutions(p):
    for f in (P.reverse, P.complement, P.inverse):
        assert tuple(f(f(p))) == tuple(p)


@given(perms)
def test_inverse_composes_to_identity(p):
    q = P.inverse(p)
    assert [p[q[i] - 1] for i in range(len(p))] == list(range(1, len(p) + 1))


@given(perms, st.permutations([1, 2, 3]))
def test_containment_respects_symmetry(p, q):
    for which in P.SYMMETRIES:
        assert P.contains(p, q) == P.contains(P.symmetry(p, which), P.symmetry(q, which))


def test_count_matches_naive_exhaustively():
    for n in range(1, 7):
        for p in itertools.permutations(range(1, n + 1)):
            for k in (2, 3):
                for q in itertools.permutations(range(1, k + 1)):
                    assert P.count_occurrences(q, p) == naive_count(p, q)


@settings(max_examples=60)
@given(st.permutations(list(range(1, 9))), st.permutations([1, 2, 3, 4]))
def test_count_length_four(p, q):
    assert P.count_occurrences(q, p) == naive_count(p, q) == P.count_occurrences_brute(q, p)
    occ = P.find_occurrence(q, p)
    assert (occ is not None) == naive_contains(p, q)
    if occ is not None:
        assert tuple(P.standardize([p[i - 1] for i in occ])) == tuple(q)


def test_sums_and_decomposition():
    assert tuple(P.direct_sum((1, 2), (2, 1))) == (1, 2, 4, 3)
    assert tuple(P.skew_sum((1, 2), (2, 1))) == (3, 4, 2, 1)
    assert P.is_sum_decomposable((1, 2, 4, 3)) and not P.is_skew_decomposable((1, 2, 4, 3))
    assert [tuple(c) for c in P.sum_components((2, 1, 3, 5, 4))] == [(2, 1), (1,), (2, 1)]
    assert [tuple(c) for c in P.skew_components((3, 4, 2, 1))] == [(1, 2), (1,), (1,)]


def test_simple_counts_small():
    # simples of length 4..6 by brute force over intervals
    def simple(p):
        n = len(p)
        for i in range(n):
            for j in range(i + 1, n):
                if 1 < j - i + 1 < n and max(p[i:j + 1]) - min(p[i:j + 1]) == j - i:
                    return False
        return True
    for n in (4, 5, 6):
        want = sum(simple(p) for p in itertools.permutations(range(1, n + 1)))
        got = sum(P.is_simple(p) for p in itertools.permutations(range(1, n + 1)))
        assert got == want
    assert [sum(P.is_simple(p) for p in itertools.permutations(range(1, n + 1))) for n in (4, 5, 6)] == [2, 6, 46]


@given(perms)
def test_substitution_decomposition_round_trip(p):
    if len(p) == 0:
        return
    skel, blocks = P.substitution_decompose(p)
    assert tuple(P.inflate(skel, blocks)) == tuple(p)


def test_inflate():
    assert tuple(P.inflate((2, 1), [(1, 2), (1,)])) == (2, 3, 1)
    assert tuple(P.inflate((1, 3, 2), [(1,), (2, 1), (1,)])) == (1, 4, 3, 2)


def test_statistics():
    s = P.stats((2, 5, 1, 4, 3))
    assert (s.ascents, s.descents, s.inversions, s.fixed_points, s.bonds) == (2, 2, 5, 1, 1)
    assert P.ltr_minima_positions((3, 1, 2)) == (1, 2)
    assert P.rtl_maxima_positions((3, 1, 2)) == (1, 3)


def test_bonds_distribution_matches_count():
    # number of permutations of [n] without bonds: 1, 2, 2, 8, 32, 158 for n = 1..6 ... computed here
    for n in range(1, 7):
        c = Counter(P.bonds(p) for p in itertools.permutations(range(1, n + 1)))
        naive = Counter(sum(abs(p[i] - p[i + 1]) == 1 for i in range(n - 1))
                        for p in itertools.permutations(range(1, n + 1)))
        assert c == naive


def test_deletion_and_insertion():
    p = (2, 5, 1, 4, 3)
    assert tuple(P.delete(p, 2)) == (2, 1, 4, 3)
    assert len(P.del_set(p)) == 5 - P.bonds(p)
    assert P.del_k_count(p, 2) == len(P.del_k_set(p, 2))
    for n in range(1, 6):
        for s in itertools.permutations(range(1, n + 1)):
            assert P.ins_set_size(s) == len(P.ins_set(s)) == n * n + 1


def test_gaps_and_theta():
    for k in (4, 5, 6, 7):
        t = P.theta(k)
        assert P.min_gap(t) == k == P.gap_report(t).min_gap
        assert len(t) == (k - 1) ** 2 - 2
        assert P.is_involution(t)
        assert tuple(P.reverse(t)) == tuple(P.complement(t))
    assert tuple(P.theta(4)) == (3, 6, 1, 4, 7, 2, 5)
    assert tuple(P.theta(5)) == (4, 8, 12, 1, 5, 9, 13, 2, 6, 10, 14, 3, 7, 11)
    # the construction degenerates at k = 3
    assert tuple(P.theta(3)) == (2, 1) and P.min_gap(P.theta(3)) == 2
    with pytest.raises(ValueError):
        P.theta(2)


def test_involution():
    assert P.is_involution((2, 1, 3))
    assert not P.is_involution((2, 3, 1))
