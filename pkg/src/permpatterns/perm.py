"""Core permutation arithmetic.

Permutations are stored as tuples of the integers 1..n in one-line notation.
Positions are 1-indexed in every public function that takes an index.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import comb
from typing import Iterable, Sequence


class Permutation(tuple):
    """An immutable permutation of 1..n in one-line notation.

    >>> Permutation([2, 4, 1, 3])
    Permutation(2413)
    >>> Permutation([])
    Permutation()
    """

    def __new__(cls, entries: Iterable[int] = ()):
        entries = tuple(int(x) for x in entries)
        n = len(entries)
        seen = [False] * (n + 1)
        for pos, x in enumerate(entries, start=1):
            if not 1 <= x <= n:
                raise ValueError(f"entry {x} at position {pos} is outside 1..{n}")
            if seen[x]:
                raise ValueError(f"value {x} repeated (position {pos})")
            seen[x] = True
        return super().__new__(cls, entries)

    def __repr__(self) -> str:
        return f"Permutation({self})"

    def __str__(self) -> str:
        if len(self) < 10:
            return "".join(map(str, self))
        return " ".join(map(str, self))

    @classmethod
    def parse(cls, text: str) -> "Permutation":
        """Parse ``2 5 1 4 3``, ``2,5,1,4,3`` or the compact ``25143``."""
        text = text.strip()
        if not text:
            return cls(())
        if "," in text or " " in text:
            tokens = [t for t in text.replace(",", " ").split() if t]
        else:
            tokens = list(text)
        try:
            values = [int(t) for t in tokens]
        except ValueError as exc:
            raise ValueError(f"cannot parse permutation {text!r}") from exc
        return cls(values)


def perm(text: str | Sequence[int]) -> Permutation:
    """Convenience constructor accepting text or a sequence."""
    if isinstance(text, str):
        return Permutation.parse(text)
    return Permutation(text)


def standardize(values: Sequence) -> Permutation:
    """Relabel distinct values by rank.

    >>> standardize((9, 2, 4))
    Permutation(312)
    """
    order = sorted(range(len(values)), key=lambda i: values[i])
    for a, b in zip(order, order[1:]):
        if values[a] == values[b]:
            i, j = sorted((a, b))
            raise ValueError(f"duplicate value at positions {i + 1} and {j + 1}")
    out = [0] * len(values)
    for rank, i in enumerate(order, start=1):
        out[i] = rank
    return tuple.__new__(Permutation, out)


def _std(values: Sequence[int]) -> tuple:
    # fast path for distinct integers, no validation
    s = sorted(values)
    rank = {v: r for r, v in enumerate(s, start=1)}
    return tuple(rank[v] for v in values)


# symmetries

def reverse(p: Sequence[int]) -> Permutation:
    return tuple.__new__(Permutation, tuple(reversed(p)))


def complement(p: Sequence[int]) -> Permutation:
    n = len(p)
    return tuple.__new__(Permutation, tuple(n + 1 - x for x in p))


def inverse(p: Sequence[int]) -> Permutation:
    out = [0] * len(p)
    for i, x in enumerate(p, start=1):
        out[x - 1] = i
    return tuple.__new__(Permutation, out)


SYMMETRIES = ("reverse", "complement", "inverse")


def symmetry(p: Sequence[int], which: str) -> Permutation:
    if which == "reverse":
        return reverse(p)
    if which == "complement":
        return complement(p)
    if which == "inverse":
        return inverse(p)
    raise ValueError(f"unknown symmetry {which!r}")


def all_symmetries(p: Sequence[int]) -> list[Permutation]:
    """The eight images of p under the dihedral group generated by r, c, i."""
    out = []
    for inv in (False, True):
        q = inverse(p) if inv else Permutation(p)
        for rev in (False, True):
            r = reverse(q) if rev else q
            for comp in (False, True):
                out.append(complement(r) if comp else r)
    return out


# occurrences

def count_occurrences(pattern: Sequence[int], p: Sequence[int]) -> int:
    """Number of index subsequences of p order-isomorphic to pattern.

    Backtracks over positions; a partial match is dropped as soon as the new
    value breaks the relative order of the prefix.
    """
    k, n = len(pattern), len(p)
    if k == 0:
        return 1
    if k > n:
        return 0
    if k == 1:
        return n
    if k == 2:
        inv = 0
        for i in range(n):
            pi = p[i]
            for j in range(i + 1, n):
                if p[j] < pi:
                    inv += 1
        total = comb(n, 2)
        return inv if pattern[0] > pattern[1] else total - inv
    # for each pattern index t, precompute which earlier indices must be below
    below = [[pattern[s] < pattern[t] for s in range(t)] for t in range(k)]
    vals = [0] * k

    def extend(t: int, start: int) -> int:
        total = 0
        bt = below[t]
        for pos in range(start, n - (k - t) + 1):
            x = p[pos]
            ok = True
            for s in range(t):
                if (vals[s] < x) != bt[s]:
                    ok = False
                    break
            if not ok:
                continue
            if t == k - 1:
                total += 1
            else:
                vals[t] = x
                total += extend(t + 1, pos + 1)
        return total

    return extend(0, 0)


def count_occurrences_brute(pattern: Sequence[int], p: Sequence[int]) -> int:
    """Oracle: scan all C(n,k) subsequences."""
    target = tuple(pattern)
    return sum(1 for sub in itertools.combinations(p, len(target)) if _std(sub) == target)


def contains(p: Sequence[int], pattern: Sequence[int]) -> bool:
    return find_occurrence(pattern, p) is not None


def avoids(p: Sequence[int], patterns: Iterable[Sequence[int]]) -> bool:
    return all(find_occurrence(b, p) is None for b in patterns)


def find_occurrence(pattern: Sequence[int], p: Sequence[int]) -> tuple | None:
    """First occurrence of pattern in p as 1-indexed positions, or None."""
    k, n = len(pattern), len(p)
    if k > n:
        return None
    if k == 0:
        return ()
    below = [[pattern[s] < pattern[t] for s in range(t)] for t in range(k)]
    vals = [0] * k
    idx = [0] * k

    def extend(t: int, start: int) -> bool:
        bt = below[t]
        for pos in range(start, n - (k - t) + 1):
            x = p[pos]
            if all((vals[s] < x) == bt[s] for s in range(t)):
                vals[t] = x
                idx[t] = pos + 1
                if t == k - 1 or extend(t + 1, pos + 1):
                    return True
        return False

    return tuple(idx) if extend(0, 0) else None


def total_occurrences(pattern: Sequence[int], perms: Iterable[Sequence[int]]) -> int:
    return sum(count_occurrences(pattern, p) for p in perms)


# sums and structure

def direct_sum(a: Sequence[int], b: Sequence[int]) -> Permutation:
    m = len(a)
    return tuple.__new__(Permutation, tuple(a) + tuple(x + m for x in b))


def skew_sum(a: Sequence[int], b: Sequence[int]) -> Permutation:
    m = len(b)
    return tuple.__new__(Permutation, tuple(x + m for x in a) + tuple(b))


def intervals(p: Sequence[int]) -> list[tuple[int, int]]:
    """All 1-indexed inclusive ranges (i, j) whose values are contiguous."""
    n = len(p)
    out = []
    for i in range(n):
        lo = hi = p[i]
        for j in range(i, n):
            x = p[j]
            if x < lo:
                lo = x
            elif x > hi:
                hi = x
            if hi - lo == j - i:
                out.append((i + 1, j + 1))
    return out


def is_simple(p: Sequence[int]) -> bool:
    n = len(p)
    if n == 0:
        return False
    if n <= 2:
        return True
    for i, j in intervals(p):
        if j > i and (i, j) != (1, n):
            return False
    return True


def inflate(pattern: Sequence[int], blocks: Sequence[Sequence[int]]) -> Permutation:
    """Replace entry i of pattern by an interval order-isomorphic to blocks[i]."""
    if len(pattern) != len(blocks):
        raise ValueError(f"need {len(pattern)} blocks, got {len(blocks)}")
    sizes = [len(b) for b in blocks]
    if any(s == 0 for s in sizes):
        raise ValueError("blocks must be nonempty")
    offset = [0] * (len(pattern) + 1)
    by_value = sorted(range(len(pattern)), key=lambda i: pattern[i])
    acc = 0
    for i in by_value:
        offset[i] = acc
        acc += sizes[i]
    out = []
    for i, b in enumerate(blocks):
        out.extend(x + offset[i] for x in b)
    return tuple.__new__(Permutation, out)


def is_sum_decomposable(p: Sequence[int]) -> bool:
    return _first_sum_split(p) is not None


def is_skew_decomposable(p: Sequence[int]) -> bool:
    return _first_skew_split(p) is not None


def _first_sum_split(p: Sequence[int]) -> int | None:
    hi = 0
    for i in range(len(p) - 1):
        hi = max(hi, p[i])
        if hi == i + 1:
            return i + 1
    return None


def _first_skew_split(p: Sequence[int]) -> int | None:
    n = len(p)
    lo = n + 1
    for i in range(n - 1):
        lo = min(lo, p[i])
        if lo == n - i:
            return i + 1
    return None


def sum_components(p: Sequence[int]) -> list[Permutation]:
    out = []
    rest = tuple(p)
    while rest:
        cut = _first_sum_split(rest) or len(rest)
        out.append(standardize(rest[:cut]))
        rest = tuple(x - cut for x in rest[cut:])
    return out


def skew_components(p: Sequence[int]) -> list[Permutation]:
    out = []
    rest = tuple(p)
    while rest:
        cut = _first_skew_split(rest) or len(rest)
        out.append(standardize(rest[:cut]))
        rest = rest[cut:]
    return out


def substitution_decompose(p: Sequence[int]) -> tuple[Permutation, list[Permutation]]:
    """Write p as an inflation of a simple permutation.

    For a sum (skew) decomposable p the quotient is 12 (21) and the first block
    is the leading sum (skew) component, so the decomposition is unique.
    """
    n = len(p)
    if n == 0:
        raise ValueError("cannot decompose the empty permutation")
    if n == 1:
        return Permutation((1,)), [Permutation((1,))]
    cut = _first_sum_split(p)
    if cut is not None:
        return Permutation((1, 2)), [standardize(p[:cut]), standardize(p[cut:])]
    cut = _first_skew_split(p)
    if cut is not None:
        return Permutation((2, 1)), [standardize(p[:cut]), standardize(p[cut:])]
    # maximal proper intervals are disjoint here and cover every position
    proper = [(i, j) for i, j in intervals(p) if (i, j) != (1, n)]
    maximal = [
        (i, j) for i, j in proper
        if not any(a <= i and j <= b and (a, b) != (i, j) for a, b in proper)
    ]
    maximal.sort()
    blocks = [standardize(p[i - 1:j]) for i, j in maximal]
    quotient = standardize([p[i - 1] for i, _ in maximal])
    return quotient, blocks


def is_involution(p: Sequence[int]) -> bool:
    return all(p[x - 1] == i for i, x in enumerate(p, start=1))


# statistics

@dataclass(frozen=True)
class StatRecord:
    ascents: int
    descents: int
    inversions: int
    ltr_minima_count: int
    rtl_maxima_count: int
    fixed_points: int
    bonds: int
    ltr_minima_positions: tuple[int, ...] = field(default=())


def ltr_minima_positions(p: Sequence[int]) -> tuple[int, ...]:
    out = []
    lo = len(p) + 1
    for i, x in enumerate(p, start=1):
        if x < lo:
            out.append(i)
            lo = x
    return tuple(out)


def rtl_maxima_positions(p: Sequence[int]) -> tuple[int, ...]:
    out = []
    hi = 0
    for i in range(len(p), 0, -1):
        if p[i - 1] > hi:
            out.append(i)
            hi = p[i - 1]
    return tuple(reversed(out))


def bonds(p: Sequence[int]) -> int:
    return sum(1 for a, b in zip(p, p[1:]) if abs(a - b) == 1)


def ascents(p: Sequence[int]) -> int:
    return sum(1 for a, b in zip(p, p[1:]) if a < b)


def inversions(p: Sequence[int]) -> int:
    return count_occurrences((2, 1), p)


def fixed_points(p: Sequence[int]) -> int:
    return sum(1 for i, x in enumerate(p, start=1) if i == x)


def stats(p: Sequence[int]) -> StatRecord:
    n = len(p)
    asc = ascents(p)
    lm = ltr_minima_positions(p)
    return StatRecord(
        ascents=asc,
        descents=max(n - 1, 0) - asc,
        inversions=inversions(p),
        ltr_minima_count=len(lm),
        rtl_maxima_count=len(rtl_maxima_positions(p)),
        fixed_points=fixed_points(p),
        bonds=bonds(p),
        ltr_minima_positions=lm,
    )


# deletion and insertion

def delete(p: Sequence[int], i: int) -> Permutation:
    """Remove the entry at 1-indexed position i and standardize."""
    if not 1 <= i <= len(p):
        raise IndexError(f"position {i} outside 1..{len(p)}")
    x = p[i - 1]
    return tuple.__new__(
        Permutation, tuple(y - (y > x) for j, y in enumerate(p, start=1) if j != i))


def del_set(p: Sequence[int]) -> set[Permutation]:
    return {delete(p, i) for i in range(1, len(p) + 1)}


def del_positions(p: Sequence[int], positions: Iterable[int]) -> Permutation:
    drop = set(positions)
    return standardize([x for i, x in enumerate(p, start=1) if i not in drop])


def del_k_set(p: Sequence[int], k: int) -> set[tuple]:
    n = len(p)
    if not 0 <= k <= n:
        raise ValueError(f"k={k} outside 0..{n}")
    return {_std(sub) for sub in itertools.combinations(p, n - k)}


def del_k_count(p: Sequence[int], k: int) -> int:
    return len(del_k_set(p, k))


def ins(s: Sequence[int], i: int, j: int) -> Permutation:
    """Insert value j - 1/2 immediately left of position i, then standardize."""
    m = len(s)
    if not (1 <= i <= m + 1 and 1 <= j <= m + 1):
        raise IndexError(f"(i, j) = ({i}, {j}) outside 1..{m + 1}")
    body = [x + (x >= j) for x in s]
    body.insert(i - 1, j)
    return tuple.__new__(Permutation, body)


def ins_set(s: Sequence[int]) -> set[Permutation]:
    m = len(s)
    return {ins(s, i, j) for i in range(1, m + 2) for j in range(1, m + 2)}


def ins_set_size(s: Sequence[int]) -> int:
    return len(ins_set(s))


# gaps

def distance(p: Sequence[int], i: int, j: int) -> int:
    return abs(i - j) + abs(p[i - 1] - p[j - 1])


@dataclass(frozen=True)
class GapReport:
    min_gap: int
    witness_pairs: tuple[tuple[int, int], ...]
    pairs_at_distance: dict


def gap_report(p: Sequence[int]) -> GapReport:
    n = len(p)
    if n < 2:
        raise ValueError("minimum gap needs at least two entries")
    hist: dict[int, int] = {}
    best = None
    witnesses: list[tuple[int, int]] = []
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            d = distance(p, i, j)
            hist[d] = hist.get(d, 0) + 1
            if best is None or d < best:
                best, witnesses = d, [(i, j)]
            elif d == best:
                witnesses.append((i, j))
    return GapReport(best, tuple(witnesses), dict(sorted(hist.items())))


def min_gap(p: Sequence[int]) -> int:
    n = len(p)
    best = 2 * n
    for i in range(n):
        for j in range(i + 1, min(n, i + best)):
            d = j - i + abs(p[i] - p[j])
            if d < best:
                best = d
    return best


def pairs_at_distance(p: Sequence[int], d: int) -> int:
    n = len(p)
    return sum(1 for i in range(1, n + 1) for j in range(i + 1, n + 1)
               if distance(p, i, j) == d)


def span(p: Sequence[int], i: int, j: int) -> set[int]:
    """Indices strictly between positions i and j horizontally or vertically."""
    if i == j:
        raise ValueError("span needs two distinct indices")
    if i > j:
        i, j = j, i
    lo, hi = sorted((p[i - 1], p[j - 1]))
    out = {k for k in range(i + 1, j)}
    out |= {k for k, x in enumerate(p, start=1) if lo < x < hi}
    return out


def is_plentiful(p: Sequence[int]) -> bool:
    return len(del_set(p)) == len(p)


def is_k_plentiful(p: Sequence[int], k: int) -> bool:
    """True when p has C(n, k) distinct patterns of length n - k."""
    return del_k_count(p, k) == comb(len(p), k)


def theta(k: int) -> Permutation:
    """Shortest permutation of minimum gap k (up to reversal).

    >>> theta(4)
    Permutation(3614725)
    """
    if k < 3:
        raise ValueError("theta needs k >= 3")
    m = k - 1
    base = [0] * (m * m)
    for i in range(m):
        for j in range(m):
            base[i * m + j] = i + j * m + 1
    return standardize(base[1:-1])


def all_perms(n: int) -> Iterable[Permutation]:
    for q in itertools.permutations(range(1, n + 1)):
        yield tuple.__new__(Permutation, q)
