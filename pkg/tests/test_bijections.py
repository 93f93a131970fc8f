from math import comb

import pytest
from hypothesis import given, strategies as st

from permpatterns import bijections as B
from permpatterns.perm import is_skew_decomposable

from conftest import naive_class, naive_count


def test_dyck_validation():
    assert B.DyckPath("uudd").semilength == 2
    assert B.DyckPath("udud").heights() == [0, 1, 0, 1, 0]
    for bad in ("du", "uud", "uxd"):
        with pytest.raises(ValueError):
            B.DyckPath(bad)


def test_all_dyck_counts():
    assert [sum(1 for _ in B.all_dyck(n)) for n in range(8)] == [comb(2 * n, n) // (n + 1) for n in range(8)]


@pytest.mark.parametrize("name,pattern", [("phi", (1, 3, 2)), ("phi_geometric", (1, 3, 2)),
                                          ("phi_prime", (1, 2, 3))])
def test_bijective_with_inverse(name, pattern):
    fwd, inv = B.BIJECTIONS[name]
    for n in range(0, 8):
        members = naive_class([pattern], n) if n else [()]
        images = set()
        for p in members:
            path = fwd(p)
            assert path.semilength == n
            images.add(path.steps)
            assert tuple(inv(path)) == tuple(p)
        assert images == {d.steps for d in B.all_dyck(n)}


def test_phi_equals_geometric():
    for n in range(1, 9):
        for p in naive_class([(1, 3, 2)], n):
            assert B.phi(p) == B.phi_geometric(p)


def test_known_images():
    assert B.phi((7, 4, 3, 5, 2, 6, 8, 1)).steps == "uuduuududdudddud"
    assert B.phi_star((4, 8, 3, 7, 1, 6, 5, 2)).steps == "uduuduududddud"


def test_rejects_non_members():
    with pytest.raises(ValueError, match="132"):
        B.phi((1, 3, 2))
    with pytest.raises(ValueError, match="123"):
        B.phi_prime((1, 2, 3))
    with pytest.raises(ValueError):
        B.phi_star((2, 1))
    with pytest.raises(ValueError):
        B.phi_star((1,))


def test_phi_star_is_bijective_with_213_weight():
    for n in range(2, 9):
        members = [p for p in naive_class([(1, 2, 3)], n) if not is_skew_decomposable(p)]
        paths = set()
        for p in members:
            path = B.phi_star(p)
            assert path.semilength == n - 1
            assert tuple(B.phi_star_inverse(path)) == tuple(p)
            assert B.peak_heights(path) == B.rtl_max_spans(p)
            assert B.peak_213_weight(path) == naive_count(p, (2, 1, 3))
            paths.add(path.steps)
        assert len(paths) == len(members) == comb(2 * n - 2, n - 1) // n


@given(st.integers(1, 9).flatmap(lambda n: st.sampled_from([d.steps for d in B.all_dyck(n)])))
def test_inverse_round_trips(steps):
    for name, (fwd, inv) in B.BIJECTIONS.items():
        if name == "phi_star":
            continue
        assert fwd(inv(steps)).steps == steps
    assert B.phi_star(B.phi_star_inverse(steps)).steps == steps


def test_peak_height_counts():
    # total peaks over all paths of semilength n equals the Narayana row sum of k * N(n, k)
    for n in range(1, 8):
        hist = B.peak_height_counts(n)
        total = sum(hist.values())
        assert total == sum(k * comb(n, k) * comb(n, k - 1) // n for k in range(1, n + 1))
    assert B.peak_height_counts(3) == {1: 5, 2: 4, 3: 1}
