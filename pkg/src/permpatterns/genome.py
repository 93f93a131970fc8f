"""Block transformations on peg-permutation sets and radius-k balls around the identity."""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .pegperm import (
    DOT,
    MINUS,
    PLUS,
    ClassPolynomial,
    PegPermutation,
    class_polynomial,
    reduce_pegset,
)
from .perm import Permutation, _std

KINDS = (
    "block_reversal",
    "block_transposition",
    "block_interchange",
    "prefix_transposition",
    "prefix_reversal",
    "cut_paste",
)

# number of cut points each move places in the sequence
_CUTS = {
    "block_reversal": 2,
    "block_transposition": 3,
    "block_interchange": 4,
    "prefix_transposition": 2,
    "prefix_reversal": 1,
    "cut_paste": 3,
}


class BlowupError(RuntimeError):
    pass


@dataclass(frozen=True)
class BlockOp:
    kind: str

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown operation {self.kind!r}; choose from {', '.join(KINDS)}")

    @property
    def cuts(self) -> int:
        return _CUTS[self.kind]

    def rearrangements(self, segs: list) -> Iterator[list]:
        """All results of one move on a list of segments cut at self.cuts points."""
        flip = _flip
        k = self.kind
        if k == "block_reversal":
            a, b, c = segs
            yield a + flip(b) + c
        elif k == "block_transposition":
            a, b, c, d = segs
            yield a + c + b + d
        elif k == "block_interchange":
            a, b, c, d, e = segs
            yield a + d + c + b + e
        elif k == "prefix_transposition":
            a, b, c = segs
            yield b + a + c
        elif k == "prefix_reversal":
            a, b = segs
            yield flip(a) + b
        elif k == "cut_paste":
            a, b, c, d = segs
            yield a + c + b + d
            yield a + c + flip(b) + d
            yield a + flip(c) + b + d


def _flip(seg: list) -> list:
    # reverse a list of permutation values or of (key, sign) parts
    if seg and isinstance(seg[0], tuple):
        return [(key, _FLIP[s]) for key, s in reversed(seg)]
    return list(reversed(seg))


_FLIP = {PLUS: MINUS, MINUS: PLUS, DOT: DOT}


def _op(op) -> BlockOp:
    return op if isinstance(op, BlockOp) else BlockOp(op)


# ---------------------------------------------------------------- peg level

def _merge_parts(parts: list) -> PegPermutation:
    """Standardize (key, sign) parts and fuse neighbours forming one monotone run."""
    keys = [k for k, _ in parts]
    rank = {k: r for r, k in enumerate(sorted(keys))}
    vals = [rank[k] for k in keys]
    signs = [s for _, s in parts]
    fused_v, fused_s = [vals[0]], [signs[0]]
    for v, s in zip(vals[1:], signs[1:]):
        pv, ps = fused_v[-1], fused_s[-1]
        if s == ps == PLUS and v == pv + 1:
            fused_v[-1] = v
            continue
        if s == ps == MINUS and v == pv - 1:
            fused_v[-1] = v
            continue
        fused_v.append(v)
        fused_s.append(s)
    return PegPermutation(_std(fused_v), tuple(fused_s))


def _split_parts(rho: PegPermutation, pieces: Sequence[int]) -> list:
    # entry i becomes pieces[i] parts; keys are (value, index) in value order
    parts = []
    for v, d, k in zip(rho.underlying, rho.decorations, pieces):
        subs = range(k) if d != MINUS else range(k - 1, -1, -1)
        parts.extend(((v, j), d) for j in subs)
    return parts


def apply_once(op, rho: PegPermutation) -> set:
    """Pegs reachable from rho by one move of op (the unchanged peg included)."""
    op = _op(op)
    n = len(rho)
    # cut sites: gap g_i before entry i (i = 0..n) or inside a signed entry
    sites = []
    for i in range(n):
        sites.append(("gap", i))
        if rho.decorations[i] != DOT:
            sites.append(("in", i))
    sites.append(("gap", n))
    out = set()
    for combo in itertools.combinations_with_replacement(range(len(sites)), op.cuts):
        chosen = [sites[c] for c in combo]
        pieces = [1] * n
        for kind, i in chosen:
            if kind == "in":
                pieces[i] += 1
        parts = _split_parts(rho, pieces)
        # translate each site into a boundary index in the parts list
        offset = [0] * (n + 1)
        for i in range(n):
            offset[i + 1] = offset[i] + pieces[i]
        used = [0] * n
        bounds = []
        for kind, i in chosen:
            if kind == "gap":
                bounds.append(offset[i])
            else:
                used[i] += 1
                bounds.append(offset[i] + used[i])
        full = [0] + bounds + [len(parts)]
        segs = [parts[full[j]:full[j + 1]] for j in range(len(full) - 1)]
        for res in op.rearrangements(segs):
            if res:
                out.add(_merge_parts(res))
    return out


def apply_to_pegset(op, S: Iterable[PegPermutation], cap: int | None = None) -> frozenset:
    """One move applied to every member, together with the members themselves, reduced by containment."""
    op = _op(op)
    out: set = set()
    for rho in S:
        out |= apply_once(op, rho)
        if cap is not None and len(out) > cap:
            raise BlowupError(f"peg set exceeded {cap} members")
    return reduce_pegset(out)


IDENTITY = PegPermutation((1,), (PLUS,))


def ball_pegs(op, k: int, cap: int | None = 200000) -> frozenset:
    S: frozenset = frozenset({IDENTITY})
    for _ in range(k):
        S = apply_to_pegset(op, S, cap)
    return S


def ball_polynomial(op, k: int, cap: int | None = 200000) -> ClassPolynomial:
    return class_polynomial(ball_pegs(op, k, cap))


# ---------------------------------------------------------------- permutation level

def neighbours(op, p: Sequence[int]) -> set:
    op = _op(op)
    p = tuple(p)
    n = len(p)
    out = set()
    for cut in itertools.combinations_with_replacement(range(n + 1), op.cuts):
        b = (0,) + cut + (n,)
        segs = [list(p[b[j]:b[j + 1]]) for j in range(len(b) - 1)]
        for r in op.rearrangements(segs):
            out.add(tuple(r))
    out.discard(p)
    return out


def bfs_levels(op, n: int, k: int) -> list[set]:
    start = tuple(range(1, n + 1))
    levels = [{start}]
    seen = {start}
    for _ in range(k):
        nxt = set()
        for p in levels[-1]:
            for q in neighbours(op, p):
                if q not in seen:
                    seen.add(q)
                    nxt.add(q)
        levels.append(nxt)
        if not nxt:
            break
    return levels


def bfs_ball(op, k: int, n: int) -> int:
    if n == 0:
        return 1
    return sum(len(level) for level in bfs_levels(op, n, k))


def distance(p: Sequence[int], op) -> int:
    """Fewest moves of op taking the identity to p (equivalently, sorting p)."""
    p = Permutation(p)
    n = len(p)
    start = tuple(range(1, n + 1))
    target = tuple(p)
    if target == start:
        return 0
    dist = {start: 0}
    queue = deque([start])
    while queue:
        q = queue.popleft()
        for r in neighbours(op, q):
            if r not in dist:
                dist[r] = dist[q] + 1
                if r == target:
                    return dist[r]
                queue.append(r)
    raise AssertionError("target unreachable")
