"""Brute-force ground truth for every count the library produces.

Classes are grown one entry at a time: a length-m member arises from a
length-(m-1) member by inserting a new maximum, and since classes are
closed downward only children of members need checking. A child is checked
only for basis occurrences that use the new maximum.

Involutions are grown the same way by adding either a fixed point n or a
two-cycle (a, n); deleting that fixed point or cycle leaves a smaller
involution of the class, so this also prunes.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .perm import (
    Permutation,
    bonds,
    count_occurrences,
    del_k_count,
    inverse,
    is_simple,
    is_skew_decomposable,
    ltr_minima_positions,
)

DEFAULT_MAX_N = 13
DEFAULT_MAX_N_INVOLUTIONS = 16


class BudgetExceeded(RuntimeError):
    """Raised instead of returning a partial count."""


@dataclass(frozen=True)
class AvoidanceQuery:
    basis: tuple
    n: int
    involutions_only: bool = False
    max_n: int | None = None

    def __post_init__(self):
        if not self.basis:
            raise ValueError("basis must be nonempty")
        if self.n < 0:
            raise ValueError("n must be nonnegative")
        basis = {tuple(b) for b in self.basis}
        if self.involutions_only:
            basis |= {tuple(inverse(b)) for b in basis}
        object.__setattr__(self, "basis", tuple(sorted(basis, key=lambda b: (len(b), b))))


def _check_budget(n: int, max_n: int | None, default: int) -> None:
    limit = default if max_n is None else max_n
    if n > limit:
        raise BudgetExceeded(f"n={n} exceeds the configured budget max_n={limit}")


class _Basis:
    """Basis patterns split around their maximum for the insertion check."""

    def __init__(self, basis: Iterable[Sequence[int]]):
        self.items = []
        for b in basis:
            b = tuple(b)
            k = len(b)
            t = b.index(k)
            rest = b[:t] + b[t + 1:]
            below = [[rest[s] < rest[u] for s in range(u)] for u in range(k - 1)]
            self.items.append((k, t, below))
        self.min_len = min(len(b) for b in basis) if self.items else 0

    def kills_insertion(self, p: Sequence[int], pos: int) -> bool:
        """Does inserting a new maximum at index pos of p create a basis pattern?"""
        n = len(p)
        for k, t, below in self.items:
            if k - 1 > n:
                continue
            if k == 1:
                return True
            if t > pos or k - 1 - t > n - pos:
                continue
            if _split_match(p, pos, k - 1, t, below):
                return True
        return False


def _split_match(p, split, m, t, below) -> bool:
    # find a pattern occurrence using t entries left of split and the rest right
    n = len(p)
    vals = [0] * m

    def go(u, start):
        if u == m:
            return True
        if u < t:
            lo, hi = start, split - (t - u) + 1
        else:
            lo, hi = max(start, split), n - (m - u) + 1
        bu = below[u]
        for pos in range(lo, hi):
            x = p[pos]
            ok = True
            for s in range(u):
                if (vals[s] < x) != bu[s]:
                    ok = False
                    break
            if ok:
                vals[u] = x
                if go(u + 1, pos + 1):
                    return True
        return False

    return go(0, 0)


def _children(p: tuple, basis: _Basis) -> Iterator[tuple]:
    n = len(p)
    for pos in range(n + 1):
        if not basis.kills_insertion(p, pos):
            yield p[:pos] + (n + 1,) + p[pos:]


def _walk(p: tuple, n: int, basis: _Basis) -> Iterator[tuple]:
    if len(p) == n:
        yield p
        return
    for c in _children(p, basis):
        yield from _walk(c, n, basis)


def _level(n: int, basis: _Basis) -> list[tuple]:
    return list(_walk((), n, basis))


def iter_class(basis: Iterable[Sequence[int]], n: int, max_n: int | None = None) -> Iterator[Permutation]:
    """Members of Av_n(basis) in a deterministic order."""
    _check_budget(n, max_n, DEFAULT_MAX_N)
    b = _Basis(basis)
    for p in _walk((), n, b):
        yield tuple.__new__(Permutation, p)


def _count_subtree(args) -> int:
    root, n, basis = args
    return sum(1 for _ in _walk(root, n, _Basis(basis)))


def default_workers() -> int:
    env = os.environ.get("PERMPATTERNS_WORKERS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def enumerate_class(q: AvoidanceQuery | Sequence, n: int | None = None,
                    workers: int = 1, max_n: int | None = None) -> int:
    """Count Av_n(basis), or the involutions in it when the query asks."""
    if not isinstance(q, AvoidanceQuery):
        q = AvoidanceQuery(tuple(tuple(b) for b in q), n, max_n=max_n)
    if q.involutions_only:
        return enumerate_involutions(q)
    _check_budget(q.n, q.max_n, DEFAULT_MAX_N)
    if workers <= 1 or q.n < 8:
        return _count_subtree(((), q.n, q.basis))
    roots = _level(min(6, q.n), _Basis(q.basis))
    with ProcessPoolExecutor(max_workers=workers) as ex:
        return sum(ex.map(_count_subtree, [(r, q.n, q.basis) for r in roots]))


def iter_involutions(basis: Iterable[Sequence[int]], n: int,
                     max_n: int | None = None) -> Iterator[Permutation]:
    """Involutions of length n avoiding basis and the inverses of basis."""
    _check_budget(n, max_n, DEFAULT_MAX_N_INVOLUTIONS)
    full = {tuple(b) for b in basis} | {tuple(inverse(b)) for b in basis}
    check = [tuple(b) for b in full]
    memo: dict[int, list[tuple]] = {0: [()]}

    def level(m: int) -> list[tuple]:
        if m in memo:
            return memo[m]
        out = []
        if m >= 1:
            for p in level(m - 1):
                c = p + (m,)
                if _ok(c, check):
                    out.append(c)
        if m >= 2:
            for p in level(m - 2):
                # two-cycle (a, m): position a gets m, position m gets a
                for a in range(1, m):
                    body = [x + (x >= a) for x in p]
                    body.insert(a - 1, m)
                    body.append(a)
                    c = tuple(body)
                    if _ok(c, check):
                        out.append(c)
        memo[m] = out
        return out

    for p in level(n):
        yield tuple.__new__(Permutation, p)


def _ok(p: tuple, basis: list[tuple]) -> bool:
    from .perm import find_occurrence
    return all(find_occurrence(b, p) is None for b in basis)


def enumerate_involutions(q: AvoidanceQuery | Sequence, n: int | None = None,
                          max_n: int | None = None) -> int:
    if not isinstance(q, AvoidanceQuery):
        q = AvoidanceQuery(tuple(tuple(b) for b in q), n, involutions_only=True, max_n=max_n)
    return sum(1 for _ in iter_involutions(q.basis, q.n, q.max_n))


def all_involutions(n: int) -> Iterator[Permutation]:
    """Every involution of length n, built from matchings."""

    def go(rest: list[int], assign: dict):
        if not rest:
            yield tuple.__new__(Permutation, tuple(assign[i] for i in range(1, n + 1)))
            return
        a = rest[0]
        tail = rest[1:]
        assign[a] = a
        yield from go(tail, assign)
        for idx, b in enumerate(tail):
            assign[a], assign[b] = b, a
            yield from go(tail[:idx] + tail[idx + 1:], assign)
            del assign[b]
        del assign[a]

    yield from go(list(range(1, n + 1)), {})


def occurrence_totals(pattern: Sequence[int], basis: Iterable[Sequence[int]], n: int,
                      max_n: int | None = None, skew_indecomposable: bool = False) -> int:
    total = 0
    for p in iter_class(basis, n, max_n):
        if skew_indecomposable and is_skew_decomposable(p):
            continue
        total += count_occurrences(pattern, p)
    return total


def simple_census(basis: Iterable[Sequence[int]], n: int, involutions_only: bool = False,
                  fixed_points: int | None = None, max_n: int | None = None) -> int:
    return len(simple_members(basis, n, involutions_only, fixed_points, max_n))


def simple_members(basis, n, involutions_only=False, fixed_points=None, max_n=None) -> list:
    source = iter_involutions(basis, n, max_n) if involutions_only else iter_class(basis, n, max_n)
    out = []
    for p in source:
        if not is_simple(p):
            continue
        if fixed_points is not None:
            if sum(1 for i, x in enumerate(p, 1) if i == x) != fixed_points:
                continue
        out.append(p)
    return out


@dataclass
class Distribution:
    """Exhaustive histogram with exact mean and variance."""
    n: int
    counts: dict = field(default_factory=dict)

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    @property
    def mean(self) -> Fraction:
        return Fraction(sum(k * c for k, c in self.counts.items()), self.total)

    @property
    def variance(self) -> Fraction:
        m = self.mean
        return Fraction(sum(k * k * c for k, c in self.counts.items()), self.total) - m * m


def _all_perms(n):
    import itertools
    return itertools.permutations(range(1, n + 1))


def bond_distribution(n: int, max_n: int = 10) -> Distribution:
    if n > max_n:
        raise BudgetExceeded(f"exhaustive bond census refused for n={n} > {max_n}")
    d = Distribution(n)
    for p in _all_perms(n):
        b = bonds(p)
        d.counts[b] = d.counts.get(b, 0) + 1
    d.counts = dict(sorted(d.counts.items()))
    return d


def distinct_pattern_distribution(n: int, k: int, max_n: int = 9) -> Distribution:
    if n > max_n:
        raise BudgetExceeded(f"exhaustive census refused for n={n} > {max_n}")
    d = Distribution(n)
    for p in _all_perms(n):
        c = del_k_count(p, k)
        d.counts[c] = d.counts.get(c, 0) + 1
    d.counts = dict(sorted(d.counts.items()))
    return d


def sampled_bond_mean(n: int, samples: int, seed: int = 0) -> float:
    """Sampled estimate; informational only, never used for acceptance."""
    import random
    rng = random.Random(seed)
    base = list(range(1, n + 1))
    acc = 0
    for _ in range(samples):
        rng.shuffle(base)
        acc += bonds(base)
    return acc / samples


# identity suite

AV123 = ((1, 2, 3),)
AV132 = ((1, 3, 2),)


def _star(perms):
    return [p for p in perms if not is_skew_decomposable(p)]


def num(pattern, perms) -> int:
    return sum(count_occurrences(pattern, p) for p in perms)


def identity_suite(n_max: int = 9) -> dict:
    """Check the equivalence identities and the ltr-minima distribution.

    Returns a mapping from identity name to a list of (n, lhs, rhs).
    """
    if n_max > 10:
        raise BudgetExceeded("identity suite limited to n <= 10")
    av = {n: list(iter_class(AV123, n)) for n in range(0, n_max + 2)}
    av132 = {n: list(iter_class(AV132, n)) for n in range(0, n_max + 1)}
    star = {n: _star(av[n]) for n in av}
    star132 = {n: _star(av132[n]) for n in av132}
    cat = [len(av[n]) for n in range(n_max + 1)]
    a = [num((2, 1, 3), av[n]) for n in range(n_max + 1)]
    j = [num((1, 2), av[n]) for n in range(n_max + 1)]

    out: dict[str, list] = {k: [] for k in (
        "inversions_vs_213_star", "213_plus_231_vs_231_star",
        "catalan_times_213_vs_derivative", "213_star132_vs_132_plus_231_star",
        "ltr_minima_distribution")}
    for n in range(1, n_max + 1):
        out["inversions_vs_213_star"].append(
            (n, num((2, 1), star[n]), 2 * num((2, 1, 3), star[n])))
        out["213_plus_231_vs_231_star"].append(
            (n, num((2, 1, 3), av[n]) + num((2, 3, 1), av[n]), num((2, 3, 1), star[n + 1])))
        # [z^n] C(z) A(z) against [z^n] z C'(z) J(z)
        lhs = sum(cat[i] * a[n - i] for i in range(n + 1))
        rhs = sum(i * cat[i] * j[n - i] for i in range(n + 1))
        out["catalan_times_213_vs_derivative"].append((n, lhs, rhs))
        out["213_star132_vs_132_plus_231_star"].append(
            (n, num((2, 1, 3), star132[n]), num((1, 3, 2), star[n]) + num((2, 3, 1), star[n])))
        h1 = _ltr_hist(av[n])
        h2 = _ltr_hist(av132[n])
        out["ltr_minima_distribution"].append((n, h1, h2))
    return out


def _ltr_hist(perms) -> dict:
    h: dict = {}
    for p in perms:
        key = ltr_minima_positions(p)
        h[key] = h.get(key, 0) + 1
    return dict(sorted(h.items()))


def plentiful_trend(n_max: int = 8) -> list[tuple[int, Fraction]]:
    """Exact fraction of bond-free permutations; drifts toward exp(-2)."""
    out = []
    for n in range(1, n_max + 1):
        d = bond_distribution(n)
        out.append((n, Fraction(d.counts.get(0, 0), d.total)))
    return out
