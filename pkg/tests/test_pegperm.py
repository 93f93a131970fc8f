import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from permpatterns import pegperm as G
from permpatterns.pegperm import PegPermutation, VectorDownset, peg
from permpatterns.perm import avoids

from conftest import naive_class


def naive_inflations(S, n):
    # every length-n inflation of every member, built directly from blocks
    out = set()
    for rho in S:
        m = len(rho)
        for v in itertools.product(range(n + 1), repeat=m):
            if sum(v) != n or any(d == "." and x > 1 for d, x in zip(rho.decorations, v)):
                continue
            order = sorted(range(m), key=lambda i: rho.underlying[i])
            start, acc = {}, 0
            for i in order:
                start[i] = acc
                acc += v[i]
            p = []
            for i in range(m):
                run = list(range(start[i] + 1, start[i] + v[i] + 1))
                p.extend(run[::-1] if rho.decorations[i] == "-" else run)
            out.add(tuple(p))
    return out


def random_peg(rng, m):
    vals = list(range(1, m + 1))
    rng.shuffle(vals)
    return PegPermutation(tuple(vals), tuple(rng.choice("+-.") for _ in range(m)))


def test_parse_and_format():
    p = peg("+3 -1 .2")
    assert p.underlying == (3, 1, 2) and p.decorations == ("+", "-", ".")
    assert str(p) == "+3 -1 .2"
    assert peg(p.compact_str()) == p == peg("+3 −1 •2")
    assert (p.signs, p.dots) == (2, 1)
    with pytest.raises(ValueError):
        peg("+1 +1")
    with pytest.raises(ValueError):
        peg("1 2")


def test_inflation():
    assert tuple(G.inflate_peg(peg("+2 -1"), (2, 3))) == (4, 5, 3, 2, 1)
    assert tuple(G.inflate_peg(peg("-3 -1 -2"), (1, 2, 2))) == (5, 2, 1, 4, 3)
    with pytest.raises(ValueError):
        G.inflate_peg(peg(".1 +2"), (2, 1))
    with pytest.raises(ValueError):
        G.inflate_peg(peg("+1"), (1, 1))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000), st.integers(1, 4))
def test_inflation_is_monotone(seed, m):
    # raising a coordinate gives a permutation containing the old one
    rng = random.Random(seed)
    rho = random_peg(rng, m)
    v = [rng.randint(0, 1 if d == "." else 3) for d in rho.decorations]
    small = G.inflate_peg(rho, v)
    signed = [i for i, d in enumerate(rho.decorations) if d != "."]
    if not signed:
        return
    w = list(v)
    w[rng.choice(signed)] += 1
    big = G.inflate_peg(rho, w)
    assert not avoids(big, [small]) or len(small) == 0


def test_fill_vectors_and_compactness():
    rho = peg("+1 -2")
    assert G.fill_vectors((1, 2, 4, 3), rho) == [(2, 2)]
    assert G.fill_vector((1, 2, 4, 3), rho) == (2, 2)
    assert not G.is_compact(peg("+1 .2"))
    with pytest.raises(ValueError):
        G.fill_vector((1, 2, 3), peg("+1 .2"))
    with pytest.raises(ValueError):
        G.fill_vector((2, 1), rho)


def test_compactness_characterisation():
    # compact iff every filled permutation has one vector and fills no proper peg pattern
    for m in range(1, 4):
        for vals in itertools.permutations(range(1, m + 1)):
            for decs in itertools.product("+-.", repeat=m):
                rho = PegPermutation(vals, decs)
                pats = [t for t in G._patterns(rho) if t != rho]
                ok = True
                for n in range(m, m + 4):
                    for v in G._fill_vectors(rho, n):
                        p = G.inflate_peg(rho, v)
                        if len(G.fill_vectors(p, rho)) != 1 or any(G.fills(p, t) for t in pats):
                            ok = False
                assert G.is_compact(rho) == ok, rho


def test_peg_containment_and_reduction():
    assert G.peg_contains(peg(".1"), peg("+2 -1"))
    assert G.peg_contains(peg("+1"), peg("+2 -1"))
    assert not G.peg_contains(peg("+1 +2"), peg("+2 -1"))
    S = [peg("+1"), peg("+1 -2"), peg(".1 -2")]
    assert G.reduce_pegset(S) == frozenset({peg("+1 -2")})


def test_completion_methods_agree():
    rng = random.Random(7)
    for _ in range(40):
        S = [random_peg(rng, rng.randint(1, 4)) for _ in range(rng.randint(1, 3))]
        assert G.compact_completion(S) == G.compact_filter(G.complete(S))


def test_cleaning():
    tau, V = G.clean_peg(peg(".1 .2 .3 +4"))
    assert tau == peg("+1 +2")
    assert V.forbidden_basis == frozenset({(4, 0)})
    assert G.clean_peg(peg("+1 .2"))[1] is None
    tau, V = G.clean_peg(peg(".2 .1 +3 .4 .5"))
    assert tau == peg("-1 +2 +3")
    assert V.forbidden_basis == frozenset({(3, 0, 0), (0, 0, 3)})


vectors = lambda d: st.lists(st.integers(0, 5), min_size=d, max_size=d).map(tuple)
bases = lambda d: st.frozensets(vectors(d), max_size=4)


@given(st.integers(1, 5).flatmap(lambda d: st.tuples(st.just(d), bases(d), bases(d))))
def test_downset_union_and_intersection(args):
    d, a, b = args
    V, W = VectorDownset(d, a), VectorDownset(d, b)
    U, I = V.union(W), V.intersect(W)
    for v in itertools.product(range(6), repeat=min(d, 3)):
        v = v + (0,) * (d - len(v))
        assert (v in U) == (v in V or v in W)
        assert (v in I) == (v in V and v in W)


def test_downset_dimension_check():
    with pytest.raises(ValueError):
        VectorDownset(2, frozenset({(1, 2, 3)}))
    with pytest.raises(ValueError):
        VectorDownset(2).union(VectorDownset(3))


def test_restricted_gf():
    gf = G.restricted_gf(peg("+1"))
    # a signed entry is filled by at least two points
    assert gf.coefficients(5) == [0, 0, 1, 1, 1]
    capped = G.restricted_gf(peg("+1"), VectorDownset(1, frozenset({(5,)})))
    assert capped.coefficients(7) == [0, 0, 1, 1, 1, 0, 0]


def test_binomial_basis():
    poly = G.to_binomial_basis(G.RationalGF((0, 1, -1, 1), 3))
    assert G.to_binomial_basis(([0, 1, -1, 1], [1, -3, 3, -1])) == poly
    assert list(poly.binomial_coeffs) == [1, 0, 1]
    assert poly.counts(6) == [1, 2, 4, 7, 11, 16]
    assert str(poly) == "C(n,0) + C(n,2)"
    with pytest.raises(G.NotPolynomialClass):
        G.to_binomial_basis(((1,), (1, -2)))


def test_av123_231_peg():
    res = G.polyclass_enumerate([peg("-3 -1 -2")])
    want = [len(naive_class([(1, 2, 3), (2, 3, 1)], n)) for n in range(1, 9)]
    assert res.counts(8) == want
    assert list(res.polynomial.binomial_coeffs) == [1, 0, 1]


def test_polyclass_against_inflation_oracle():
    rng = random.Random(2024)
    for _ in range(25):
        S = [random_peg(rng, rng.randint(1, 4)) for _ in range(rng.randint(1, 3))]
        res = G.polyclass_enumerate(S)
        want = [len(naive_inflations(S, n)) for n in range(1, 8)]
        assert res.counts(7) == want, S
        assert [G.brute_class_members(S, n) for n in range(1, 8)] == want
        assert res.polynomial.counts(7) == want


def test_pegset_file(tmp_path):
    f = tmp_path / "s.pegs"
    f.write_text("# comment\n+1 -2  # trailing\n\n.1\n")
    assert G.read_pegset(f) == [peg("+1 -2"), peg(".1")]


def test_canonical_counting_matches_partition():
    rng = random.Random(11)
    for _ in range(60):
        S = [random_peg(rng, rng.randint(1, 5)) for _ in range(rng.randint(1, 4))]
        assert G.class_gf(S).coefficients(12) == G.polyclass_enumerate(S).gf.coefficients(12), S
        assert G.class_polynomial(S) == G.polyclass_enumerate(S).polynomial


def test_reduce_matches_pairwise_containment():
    rng = random.Random(3)
    for _ in range(300):
        S = [random_peg(rng, rng.randint(1, 5)) for _ in range(rng.randint(1, 6))]
        S += [t for t in G._patterns(rng.choice(S)) if rng.random() < 0.2]
        items = sorted(set(S), key=lambda p: (-len(p), p.underlying, p.decorations))
        kept = []
        for p in items:
            if not any(G.peg_contains(p, q) for q in kept):
                kept.append(p)
        assert G.reduce_pegset(S) == frozenset(kept)
