import itertools
from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, strategies as st

from permpatterns import series as S
from permpatterns.perm import ascents, bonds, del_set, is_simple

from conftest import naive_class, naive_count

ORDER = 9
coeff_lists = st.lists(st.integers(-5, 5), min_size=1, max_size=8)


def test_catalan_and_motzkin():
    assert S.catalan(8).integers() == [comb(2 * n, n) // (n + 1) for n in range(9)]
    assert S.motzkin_fixedpoint(7).integers() == [0, 1, 1, 2, 4, 9, 21, 51]
    assert S.simples_compose_check(8) == S.catalan(8) - 1


@given(coeff_lists, coeff_lists)
def test_ring_laws(a, b):
    order = 7
    A, B = S.TruncatedSeries(a, order), S.TruncatedSeries(b, order)
    assert A * B == B * A
    assert (A + B) - B == A
    if a[0] != 0:
        assert (A * A.inverse()) == S.TruncatedSeries([1], order)
        assert (B / A) * A == B


@given(coeff_lists)
def test_sqrt_squares_back(a):
    order = 6
    A = S.TruncatedSeries([1] + a, order)
    r = A.sqrt()
    assert r * r == A
    assert S.sqrt_by_recurrence(A) == r


def test_occurrence_series_match_enumeration():
    cls = {n: naive_class([(1, 2, 3)], n) for n in range(1, 8)}
    for name, pattern in [("num132", (1, 3, 2)), ("num213", (2, 1, 3)), ("num231", (2, 3, 1)),
                          ("num312", (3, 1, 2)), ("num321", (3, 2, 1)), ("num12_av123", (1, 2))]:
        s = S.catalog(name, 7)
        got = [int(s[n]) for n in range(1, 8)]
        want = [sum(naive_count(p, pattern) for p in cls[n]) for n in range(1, 8)]
        assert got == want, name
    assert S.num231_closed(10) == S.num231(10)
    assert S.num321_closed(10) == S.num321(10)
    assert S.num213_alt(10) == S.num213(10)


def test_printed_variants_disagree():
    assert S.num231_printed(8) != S.num231(8)
    assert S.av123_simples_printed(8) != S.av123_simples(8)
    assert S.num321_printed(9).shift(-1) / 2 == S.num321(8).truncate(8)


def test_av123_simples():
    got = S.av123_simples(ORDER)
    assert got == S.av123_simples_by_iteration(ORDER)
    for n in range(4, 9):
        want = sum(is_simple(p) for p in naive_class([(1, 2, 3)], n))
        assert got[n] == want


def test_ascents_av132():
    f = S.ascents_av132(7)
    for n in range(1, 7):
        hist = {}
        for p in naive_class([(1, 3, 2)], n):
            hist[ascents(p)] = hist.get(ascents(p), 0) + 1
        poly = f[n]
        assert {k: int(poly.coeff(k)) for k in range(n)} == {k: hist.get(k, 0) for k in range(n)}
        assert S.ascent_totals_av132(7)[n] == sum(k * c for k, c in hist.items())


def test_bond_series():
    f = S.bonds_f(7)
    for n in range(1, 8):
        hist = {}
        for p in itertools.permutations(range(1, n + 1)):
            hist[bonds(p)] = hist.get(bonds(p), 0) + 1
        assert {k: int(f[n].coeff(k)) for k in hist} == hist
    assert S.no_bonds(9).integers() == [1, 1, 0, 0, 2, 14, 90, 646, 5242, 47622]
    h = S.distinct_patterns_h(6)
    for n in range(1, 7):
        hist = {}
        for p in itertools.permutations(range(1, n + 1)):
            k = len(del_set(p))
            hist[k] = hist.get(k, 0) + 1
        assert {k: int(h[n].coeff(k)) for k in hist} == hist


def test_exact_bond_moments():
    for n in range(2, 8):
        perms = list(itertools.permutations(range(1, n + 1)))
        mean = Fraction(sum(bonds(p) for p in perms), len(perms))
        var = Fraction(sum(bonds(p) ** 2 for p in perms), len(perms)) - mean ** 2
        assert S.exact_formula("bond_mean", n) == mean
        assert S.exact_formula("bond_variance", n) == var


def test_catalog_errors():
    with pytest.raises(KeyError):
        S.catalog("nope")
    with pytest.raises(ValueError):
        S.exact_formula("bond_mean", 0)
    assert "catalan" in S.univariate_names() and "s0" not in S.univariate_names()


def test_schroder():
    assert S.schroder_large(7).integers() == [0, 1, 2, 6, 22, 90, 394, 1806]
    assert S.schroder_small(7).integers() == [0, 1, 1, 3, 11, 45, 197, 903]
