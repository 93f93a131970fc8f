"""Dyck paths and the bijections from Av(132) and Av(123).

Paths are strings over {u, d}. The geometric maps read a staircase lattice
path off the plot of a permutation: start at the top-left corner, step down
to the level of each left-to-right minimum as it is reached, and step right
across each column. Down steps become ``u`` and right steps become ``d``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Iterator, Sequence

from .perm import (
    Permutation,
    complement,
    find_occurrence,
    is_skew_decomposable,
    reverse,
    standardize,
)


@dataclass(frozen=True)
class DyckPath:
    steps: str

    def __post_init__(self):
        h = 0
        for i, s in enumerate(self.steps):
            if s == "u":
                h += 1
            elif s == "d":
                h -= 1
            else:
                raise ValueError(f"bad step {s!r} at index {i}")
            if h < 0:
                raise ValueError(f"path goes below zero at step {i + 1}")
        if h != 0:
            raise ValueError(f"path ends at height {h}")

    @property
    def semilength(self) -> int:
        return len(self.steps) // 2

    def __str__(self) -> str:
        return self.steps

    def heights(self) -> list[int]:
        out = [0]
        for s in self.steps:
            out.append(out[-1] + (1 if s == "u" else -1))
        return out


def _check_avoids(p: Sequence[int], pattern: tuple, name: str) -> None:
    occ = find_occurrence(pattern, p)
    if occ is not None:
        vals = " ".join(str(p[i - 1]) for i in occ)
        raise ValueError(f"{name} needs a {''.join(map(str, pattern))}-avoider; "
                         f"positions {occ} give {vals}")


def phi(p: Sequence[int]) -> DyckPath:
    """Recursive map on Av(132): write p = (p1 + 1) - p2 about its maximum, emit u phi(p1) d phi(p2)."""
    _check_avoids(p, (1, 3, 2), "phi")
    return DyckPath(_phi(tuple(p)))


def _phi(p: tuple) -> str:
    if not p:
        return ""
    k = p.index(len(p))
    left, right = p[:k], p[k + 1:]
    return "u" + _phi(_std(left)) + "d" + _phi(_std(right))


def _std(p):
    return tuple(standardize(p)) if p else ()


def phi_inverse(path: DyckPath | str) -> Permutation:
    if isinstance(path, str):
        path = DyckPath(path)
    return Permutation(_phi_inv(path.steps))


def _phi_inv(s: str) -> tuple:
    if not s:
        return ()
    h = 0
    for i, c in enumerate(s):
        h += 1 if c == "u" else -1
        if h == 0:
            break
    a, b = _phi_inv(s[1:i]), _phi_inv(s[i + 1:])
    # (a + 1) skew-summed over b
    m = len(b)
    top = tuple(x + m for x in a) + (len(a) + m + 1,)
    return top + b


def lattice_path(p: Sequence[int]) -> str:
    """Staircase path hugging the left-to-right minima from below and left."""
    n = len(p)
    out = []
    level = n + 1
    for x in p:
        if x < level:
            out.append("u" * (level - x))
            level = x
        out.append("d")
    return "".join(out)


def phi_geometric(p: Sequence[int]) -> DyckPath:
    """The area-maximising path; agrees with phi on Av(132)."""
    _check_avoids(p, (1, 3, 2), "phi_geometric")
    return DyckPath(lattice_path(p))


def phi_prime(p: Sequence[int]) -> DyckPath:
    """The same geometric rule applied to Av(123)."""
    _check_avoids(p, (1, 2, 3), "phi_prime")
    return DyckPath(lattice_path(p))


def _minima_from_path(s: str) -> dict[int, int]:
    # position -> value of each left-to-right minimum encoded by the path
    n = len(s) // 2
    level = n + 1
    pos = 0
    out = {}
    pending = False
    for c in s:
        if c == "u":
            level -= 1
            pending = True
        else:
            pos += 1
            if pending:
                out[pos] = level
                pending = False
    return out


def phi_prime_inverse(path: DyckPath | str) -> Permutation:
    """Place the minima, then fill the other positions with the unused values in decreasing order."""
    s = path.steps if isinstance(path, DyckPath) else DyckPath(path).steps
    n = len(s) // 2
    mins = _minima_from_path(s)
    rest = sorted(set(range(1, n + 1)) - set(mins.values()), reverse=True)
    it = iter(rest)
    return Permutation([mins[i] if i in mins else next(it) for i in range(1, n + 1)])


def phi_geometric_inverse(path: DyckPath | str) -> Permutation:
    """Place the minima, then fill each other position with the least unused value above the current minimum."""
    s = path.steps if isinstance(path, DyckPath) else DyckPath(path).steps
    n = len(s) // 2
    mins = _minima_from_path(s)
    free = sorted(set(range(1, n + 1)) - set(mins.values()))
    out = []
    cur = n + 1
    for i in range(1, n + 1):
        if i in mins:
            cur = mins[i]
            out.append(cur)
        else:
            j = next(k for k, v in enumerate(free) if v > cur)
            out.append(free.pop(j))
    return Permutation(out)


def phi_star(p: Sequence[int]) -> DyckPath:
    """Elevated-path map on skew-indecomposable 123-avoiders of length n >= 2.

    The staircase now hugs the right-to-left maxima from above; computing it
    on the reverse-complement, dropping the forced first and last steps, and
    reading the result backwards with u and d exchanged gives the same path.
    """
    if len(p) < 2:
        raise ValueError("phi_star needs length at least 2")
    _check_avoids(p, (1, 2, 3), "phi_star")
    if is_skew_decomposable(p):
        raise ValueError("phi_star needs a skew-indecomposable permutation")
    inner = lattice_path(reverse(complement(p)))[1:-1]
    return DyckPath("".join("u" if c == "d" else "d" for c in reversed(inner)))


def phi_star_inverse(path: DyckPath | str) -> Permutation:
    s = path.steps if isinstance(path, DyckPath) else DyckPath(path).steps
    inner = "".join("u" if c == "d" else "d" for c in reversed(s))
    q = phi_prime_inverse("u" + inner + "d")
    return reverse(complement(q))


def peak_heights(path: DyckPath | str) -> list[int]:
    """Heights of the peaks, left to right."""
    s = path.steps if isinstance(path, DyckPath) else path
    out = []
    h = 0
    for a, b in zip(s, s[1:]):
        h += 1 if a == "u" else -1
        if a == "u" and b == "d":
            out.append(h)
    return out


def rtl_max_spans(p: Sequence[int]) -> list[int]:
    """For each right-to-left maximum, left to right: entries to its left and below it."""
    out = []
    hi = 0
    maxima = []
    for i in range(len(p) - 1, -1, -1):
        if p[i] > hi:
            hi = p[i]
            maxima.append(i)
    for i in reversed(maxima):
        out.append(sum(1 for x in p[:i] if x < p[i]))
    return out


def peak_213_weight(path: DyckPath | str) -> int:
    return sum(comb(h, 2) for h in peak_heights(path))


def all_dyck(n: int) -> Iterator[DyckPath]:
    """Every Dyck path of semilength n, in lexicographic order with u < d."""

    def go(prefix: list[str], ups: int, downs: int):
        if ups == n and downs == n:
            yield "".join(prefix)
            return
        if ups < n:
            prefix.append("u")
            yield from go(prefix, ups + 1, downs)
            prefix.pop()
        if downs < ups:
            prefix.append("d")
            yield from go(prefix, ups, downs + 1)
            prefix.pop()

    for s in go([], 0, 0):
        yield DyckPath(s)


def peak_height_counts(n: int) -> dict[int, int]:
    """h_{n,k}: total number of peaks of height k over all paths of semilength n."""
    out: dict[int, int] = {}
    for path in all_dyck(n):
        for h in peak_heights(path):
            out[h] = out.get(h, 0) + 1
    return dict(sorted(out.items()))


BIJECTIONS = {
    "phi": (phi, phi_inverse),
    "phi_geometric": (phi_geometric, phi_geometric_inverse),
    "phi_prime": (phi_prime, phi_prime_inverse),
    "phi_star": (phi_star, phi_star_inverse),
}
