"""Peg permutations, integer-vector downsets and polynomial-class enumeration.

A peg permutation decorates each entry with ``+`` (ascending run), ``-``
(descending run) or ``.`` (at most one entry). Enumeration of the class
generated by a finite peg set goes complete -> compact -> clean; the cleaned
pegs, each paired with a downset of allowed inflation vectors, partition the
class and are counted by inclusion-exclusion.

For large peg sets ``class_gf`` reaches the same generating function without
building the compact completion, by counting canonical pegs directly.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Iterable, Iterator, Sequence

from .perm import Permutation, _std

PLUS, MINUS, DOT = "+", "-", "."
_TOKEN = re.compile(r"([+\-.−•])\s*(\d+)")
_SIGN_ALIASES = {"−": MINUS, "•": DOT}


class NotPolynomialClass(ValueError):
    pass


@dataclass(frozen=True)
class PegPermutation:
    underlying: tuple
    decorations: tuple

    def __post_init__(self):
        u = tuple(self.underlying)
        d = tuple(self.decorations)
        if len(u) != len(d):
            raise ValueError(f"{len(u)} entries but {len(d)} decorations")
        if sorted(u) != list(range(1, len(u) + 1)):
            raise ValueError(f"{u} is not a permutation")
        bad = [x for x in d if x not in (PLUS, MINUS, DOT)]
        if bad:
            raise ValueError(f"unknown decoration {bad[0]!r}")
        object.__setattr__(self, "underlying", u)
        object.__setattr__(self, "decorations", d)

    @classmethod
    def parse(cls, text: str) -> "PegPermutation":
        s = text.strip()
        toks = _TOKEN.findall(s)
        if not toks or _TOKEN.sub("", s).strip():
            raise ValueError(f"cannot parse peg permutation {text!r}")
        decs = tuple(_SIGN_ALIASES.get(a, a) for a, _ in toks)
        return cls(tuple(int(b) for _, b in toks), decs)

    def __len__(self) -> int:
        return len(self.underlying)

    def __str__(self) -> str:
        return " ".join(f"{d}{v}" for v, d in zip(self.underlying, self.decorations))

    def compact_str(self) -> str:
        return "".join(f"{d}{v}" for v, d in zip(self.underlying, self.decorations))

    def __repr__(self) -> str:
        return f"PegPermutation({self.compact_str()!r})"

    @property
    def signs(self) -> int:
        return sum(1 for d in self.decorations if d != DOT)

    @property
    def dots(self) -> int:
        return sum(1 for d in self.decorations if d == DOT)

    @classmethod
    def _unchecked(cls, underlying: tuple, decorations: tuple) -> "PegPermutation":
        obj = object.__new__(cls)
        object.__setattr__(obj, "underlying", underlying)
        object.__setattr__(obj, "decorations", decorations)
        return obj

    def sort_key(self):
        return (len(self), self.underlying, self.decorations)


def peg(text: str) -> PegPermutation:
    return PegPermutation.parse(text)


def _mk(vals: Sequence, decs: Sequence[str]) -> PegPermutation:
    return PegPermutation(_std(vals) if vals else (), tuple(decs))


# ---------------------------------------------------------------- inflation

def inflate_peg(rho: PegPermutation, v: Sequence[int]) -> Permutation:
    if len(v) != len(rho):
        raise ValueError(f"vector has length {len(v)}, peg has length {len(rho)}")
    for i, (x, d) in enumerate(zip(v, rho.decorations)):
        if x < 0:
            raise ValueError(f"negative component at coordinate {i + 1}")
        if d == DOT and x > 1:
            raise ValueError(f"dotted coordinate {i + 1} inflated by {x}")
    base = [0] * (len(rho) + 1)
    size_by_value = {val: x for val, x in zip(rho.underlying, v)}
    acc = 0
    for val in range(1, len(rho) + 1):
        base[val] = acc
        acc += size_by_value[val]
    out: list[int] = []
    for val, d, x in zip(rho.underlying, rho.decorations, v):
        run = range(base[val] + 1, base[val] + x + 1)
        out.extend(reversed(run) if d == MINUS else run)
    return Permutation(out)


def min_fill(rho: PegPermutation) -> tuple:
    return tuple(1 if d == DOT else 2 for d in rho.decorations)


def _fill_vectors(rho: PegPermutation, n: int) -> Iterator[tuple]:
    # dotted coordinates are 1, signed ones at least 2, total weight n
    signed = [i for i, d in enumerate(rho.decorations) if d != DOT]
    extra = n - sum(min_fill(rho))
    if extra < 0:
        return
    for comp in _weak_compositions(extra, len(signed)):
        v = list(min_fill(rho))
        for i, c in zip(signed, comp):
            v[i] += c
        yield tuple(v)


def _weak_compositions(n: int, k: int) -> Iterator[tuple]:
    if k == 0:
        if n == 0:
            yield ()
        return
    for bars in itertools.combinations(range(n + k - 1), k - 1):
        prev = -1
        parts = []
        for b in bars:
            parts.append(b - prev - 1)
            prev = b
        parts.append(n + k - 1 - prev - 1)
        yield tuple(parts)


def fill_vectors(pi: Sequence[int], rho: PegPermutation) -> list[tuple]:
    target = tuple(pi)
    return [v for v in _fill_vectors(rho, len(target)) if inflate_peg(rho, v) == target]


def fills(pi: Sequence[int], rho: PegPermutation) -> bool:
    return bool(fill_vectors(pi, rho))


def fill_vector(pi: Sequence[int], rho: PegPermutation) -> tuple:
    if not is_compact(rho):
        raise ValueError(f"{rho.compact_str()} is not compact; fill vectors need not be unique")
    vs = fill_vectors(pi, rho)
    if not vs:
        raise ValueError(f"{''.join(map(str, pi))} does not fill {rho.compact_str()}")
    return vs[0]


# ---------------------------------------------------------------- containment

def peg_contains(tau: PegPermutation, rho: PegPermutation) -> bool:
    """True iff tau is a peg pattern of rho: same relative order, and each decoration equal or a dot in tau."""
    k, n = len(tau), len(rho)
    if k > n:
        return False
    if k == 0:
        return True
    tv, td = tau.underlying, tau.decorations
    rv, rd = rho.underlying, rho.decorations

    def go(i: int, start: int, chosen: list[int]) -> bool:
        if i == k:
            return True
        for j in range(start, n - (k - i) + 1):
            if td[i] != DOT and td[i] != rd[j]:
                continue
            ok = True
            for a, pj in enumerate(chosen):
                if (tv[a] < tv[i]) != (rv[pj] < rv[j]):
                    ok = False
                    break
            if ok:
                chosen.append(j)
                if go(i + 1, j + 1, chosen):
                    return True
                chosen.pop()
        return False

    return go(0, 0, [])


def reduce_pegset(S: Iterable[PegPermutation]) -> frozenset:
    """Drop members contained in another member; the generated class is unchanged."""
    S = set(S)
    # anything reachable by deleting at least one entry of a member is contained in it
    children = set()
    for rho in S:
        if len(rho) > 1:
            for i in range(len(rho)):
                vals = rho.underlying[:i] + rho.underlying[i + 1:]
                children.add(PegPermutation._unchecked(_std(vals), rho.decorations[:i] + rho.decorations[i + 1:]))
    below = deletion_closure(children) if children else frozenset()
    rest = [p for p in S if p not in below]
    if not any(p.dots for p in rest):
        return frozenset(rest)
    # a dotted member may also be a weakening of a longer member's deletion, or of another member
    by_u: dict[tuple, list[tuple]] = {}
    for q in itertools.chain(below, S):
        by_u.setdefault(q.underlying, []).append(q.decorations)
    kept = []
    for p in rest:
        d = p.decorations
        if p.dots and any(e != d and all(a == b or a == DOT for a, b in zip(d, e)) for e in by_u[p.underlying]):
            continue
        kept.append(p)
    return frozenset(kept)


# ---------------------------------------------------------------- completion

def _patterns(rho: PegPermutation) -> Iterator[PegPermutation]:
    n = len(rho)
    for r in range(1, n + 1):
        for keep in itertools.combinations(range(n), r):
            vals = [rho.underlying[i] for i in keep]
            std = _std(vals)
            options = [(rho.decorations[i], DOT) if rho.decorations[i] != DOT else (DOT,) for i in keep]
            for decs in itertools.product(*options):
                yield PegPermutation(std, decs)


def complete(S: Iterable[PegPermutation]) -> frozenset:
    """Close under entry deletion and sign-to-dot weakening (empty peg excluded)."""
    out: set[PegPermutation] = set()
    for rho in reduce_pegset(S):
        out.update(_patterns(rho))
    return frozenset(out)


def deletion_closure(S: Iterable[PegPermutation]) -> frozenset:
    """All nonempty pegs obtained by deleting entries, decorations kept."""
    seen: set[PegPermutation] = set(S)
    frontier = list(seen)
    while frontier:
        nxt = []
        for rho in frontier:
            if len(rho) == 1:
                continue
            for i in range(len(rho)):
                vals = rho.underlying[:i] + rho.underlying[i + 1:]
                child = PegPermutation._unchecked(_std(vals), rho.decorations[:i] + rho.decorations[i + 1:])
                if child not in seen:
                    seen.add(child)
                    nxt.append(child)
        frontier = nxt
    return frozenset(seen)


def _compact_weakenings(rho: PegPermutation) -> Iterator[PegPermutation]:
    u, d = rho.underlying, rho.decorations
    n = len(u)
    link = [0] * n  # +1 / -1 when entry i and i+1 form a monotone interval
    for i in range(n - 1):
        if u[i + 1] - u[i] in (1, -1):
            link[i] = u[i + 1] - u[i]
    cur: list[str] = []

    def go(i: int):
        if i == n:
            yield PegPermutation._unchecked(u, tuple(cur))
            return
        for c in ((d[i], DOT) if d[i] != DOT else (DOT,)):
            if i > 0 and link[i - 1]:
                bad = _BAD_UP if link[i - 1] > 0 else _BAD_DOWN
                if (cur[-1], c) in bad:
                    continue
            cur.append(c)
            yield from go(i + 1)
            cur.pop()

    yield from go(0)


def compact_completion(S: Iterable[PegPermutation]) -> frozenset:
    """The compact members of complete(S), generated without the rest."""
    out: set[PegPermutation] = set()
    for rho in deletion_closure(S):
        out.update(_compact_weakenings(rho))
    return frozenset(out)


# ---------------------------------------------------------------- compactness

_BAD_UP = {(PLUS, PLUS), (PLUS, DOT), (DOT, PLUS)}
_BAD_DOWN = {(MINUS, MINUS), (MINUS, DOT), (DOT, MINUS)}


def is_compact(rho: PegPermutation) -> bool:
    u, d = rho.underlying, rho.decorations
    for i in range(len(u) - 1):
        pair = (d[i], d[i + 1])
        if u[i + 1] == u[i] + 1 and pair in _BAD_UP:
            return False
        if u[i + 1] == u[i] - 1 and pair in _BAD_DOWN:
            return False
    return True


def compact_filter(S: Iterable[PegPermutation]) -> frozenset:
    return frozenset(p for p in S if is_compact(p))


# ---------------------------------------------------------------- vectors

def vec_join(v: Sequence[int], w: Sequence[int]) -> tuple:
    if len(v) != len(w):
        raise ValueError(f"dimension mismatch: {len(v)} vs {len(w)}")
    return tuple(max(a, b) for a, b in zip(v, w))


def _leq(v: Sequence[int], w: Sequence[int]) -> bool:
    return all(a <= b for a, b in zip(v, w))


def antichain_min(vectors: Iterable[Sequence[int]]) -> frozenset:
    vs = sorted(set(tuple(v) for v in vectors), key=sum)
    out: list[tuple] = []
    for v in vs:
        if not any(_leq(b, v) for b in out):
            out.append(v)
    return frozenset(out)


@dataclass(frozen=True)
class VectorDownset:
    """Vectors in Z_{>=0}^dimension dominating no member of the forbidden basis.

    An empty basis means every vector is allowed.
    """

    dimension: int
    forbidden_basis: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        for b in self.forbidden_basis:
            if len(b) != self.dimension:
                raise ValueError(f"basis vector {b} has wrong dimension")
        object.__setattr__(self, "forbidden_basis", antichain_min(self.forbidden_basis))

    def __contains__(self, v) -> bool:
        return not any(_leq(b, v) for b in self.forbidden_basis)

    @classmethod
    def full(cls, dimension: int) -> "VectorDownset":
        if dimension not in _FULL:
            _FULL[dimension] = cls(dimension, frozenset())
        return _FULL[dimension]

    def union(self, other: "VectorDownset") -> "VectorDownset":
        return downset_union(self, other)

    def intersect(self, other: "VectorDownset") -> "VectorDownset":
        return downset_intersect(self, other)


_FULL: dict[int, "VectorDownset"] = {}


def _same_dim(V: VectorDownset, W: VectorDownset) -> None:
    if V.dimension != W.dimension:
        raise ValueError(f"dimension mismatch: {V.dimension} vs {W.dimension}")


def downset_union(V: VectorDownset, W: VectorDownset) -> VectorDownset:
    _same_dim(V, W)
    if not V.forbidden_basis or not W.forbidden_basis:
        return VectorDownset.full(V.dimension)
    joins = [vec_join(a, b) for a in V.forbidden_basis for b in W.forbidden_basis]
    return VectorDownset(V.dimension, antichain_min(joins))


def downset_intersect(V: VectorDownset, W: VectorDownset) -> VectorDownset:
    _same_dim(V, W)
    return VectorDownset(V.dimension, antichain_min(V.forbidden_basis | W.forbidden_basis))


# ---------------------------------------------------------------- cleaning

def _dotted_runs(rho: PegPermutation) -> list[tuple[int, int, int]]:
    # maximal runs (start, end, step) of dotted entries forming a monotone interval
    u, d = rho.underlying, rho.decorations
    runs = []
    i = 0
    n = len(u)
    while i < n:
        if d[i] == DOT and i + 1 < n and d[i + 1] == DOT and abs(u[i + 1] - u[i]) == 1:
            step = u[i + 1] - u[i]
            j = i + 1
            while j + 1 < n and d[j + 1] == DOT and u[j + 1] - u[j] == step:
                j += 1
            runs.append((i, j, step))
            i = j + 1
        else:
            i += 1
    return runs


def is_clean(rho: PegPermutation) -> bool:
    return not _dotted_runs(rho)


def clean_peg(rho: PegPermutation) -> tuple[PegPermutation, VectorDownset | None]:
    """Contract each maximal dotted monotone interval of length k to one signed entry capped at k."""
    runs = _dotted_runs(rho)
    if not runs:
        return rho, None
    vals, decs, caps = [], [], []
    i = 0
    r = 0
    n = len(rho)
    while i < n:
        if r < len(runs) and runs[r][0] == i:
            a, b, step = runs[r]
            vals.append(rho.underlying[a])
            decs.append(PLUS if step > 0 else MINUS)
            caps.append(b - a + 2)
            i = b + 1
            r += 1
        else:
            vals.append(rho.underlying[i])
            decs.append(rho.decorations[i])
            caps.append(None)
            i += 1
    tau = _mk(vals, decs)
    m = len(tau)
    basis = []
    for pos, c in enumerate(caps):
        if c is not None:
            v = [0] * m
            v[pos] = c
            basis.append(tuple(v))
    return tau, VectorDownset(m, frozenset(basis))


# ---------------------------------------------------------------- generating functions

@dataclass(frozen=True)
class RationalGF:
    """numerator(z) / (1 - z)^power with integer numerator coefficients, constant term first."""

    numerator: tuple
    power: int

    def coefficients(self, count: int) -> list[int]:
        out = []
        for n in range(count):
            s = 0
            for j, a in enumerate(self.numerator):
                if a and j <= n:
                    s += a * comb(n - j + self.power - 1, self.power - 1) if self.power else (a if n == j else 0)
            out.append(s)
        return out

    def coefficient(self, n: int) -> int:
        return self.coefficients(n + 1)[n]

    def reduced(self) -> "RationalGF":
        num, p = list(self.numerator), self.power
        while p > 0 and num and sum(num) == 0:
            # divide by (1 - z)
            q, acc = [], 0
            for a in num[:-1]:
                acc += a
                q.append(acc)
            num, p = q, p - 1
        while num and num[-1] == 0:
            num.pop()
        return RationalGF(tuple(num), p)

    def __add__(self, other: "RationalGF") -> "RationalGF":
        p = max(self.power, other.power)
        a = _poly_mul(self.numerator, _one_minus_z_pow(p - self.power))
        b = _poly_mul(other.numerator, _one_minus_z_pow(p - other.power))
        n = max(len(a), len(b))
        s = [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]
        return RationalGF(tuple(s), p).reduced()

    def __str__(self) -> str:
        terms = []
        for j in range(len(self.numerator) - 1, -1, -1):
            a = self.numerator[j]
            if not a:
                continue
            mono = "" if j == 0 else ("z" if j == 1 else f"z^{j}")
            mag = abs(a)
            body = f"{mag}" if not mono else (mono if mag == 1 else f"{mag}{mono}")
            terms.append(("-" if a < 0 else "+", body))
        if not terms:
            num = "0"
        else:
            num = ("-" if terms[0][0] == "-" else "") + terms[0][1]
            num += "".join(f" {s} {b}" for s, b in terms[1:])
        if self.power == 0:
            return num
        den = "(1 - z)" if self.power == 1 else f"(1 - z)^{self.power}"
        return f"({num}) / {den}"


ZERO_GF = RationalGF((), 0)


def _poly_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _one_minus_z_pow(k: int) -> list[int]:
    return [(-1) ** j * comb(k, j) for j in range(k + 1)]


def _restricted_terms(rho: PegPermutation, V: VectorDownset | None) -> dict[int, int]:
    # weight -> signed count of joins, for the numerator over (1 - z)^signs
    m = min_fill(rho)
    if V is None or not V.forbidden_basis:
        return {sum(m): 1}
    if V.dimension != len(rho):
        raise ValueError(f"downset dimension {V.dimension} does not match peg length {len(rho)}")
    dots = [i for i, d in enumerate(rho.decorations) if d == DOT]
    terms: dict[tuple, int] = {m: 1}
    for b in sorted(V.forbidden_basis):
        new = dict(terms)
        for j, c in terms.items():
            jj = tuple(x if x >= y else y for x, y in zip(j, b))
            if any(jj[i] > 1 for i in dots):
                continue
            new[jj] = new.get(jj, 0) - c
        terms = {k: c for k, c in new.items() if c}
    out: dict[int, int] = {}
    for k, c in terms.items():
        w = sum(k)
        out[w] = out.get(w, 0) + c
    return out


def _terms_to_gf(by_power: dict[int, dict[int, int]]) -> RationalGF:
    if not by_power:
        return ZERO_GF
    top = max(by_power)
    num: list[int] = []
    for p, terms in by_power.items():
        factor = _one_minus_z_pow(top - p)
        for w, c in terms.items():
            if not c:
                continue
            need = w + len(factor)
            if len(num) < need:
                num.extend([0] * (need - len(num)))
            for j, f in enumerate(factor):
                num[w + j] += c * f
    return RationalGF(tuple(num), top).reduced()


def restricted_gf(rho: PegPermutation, V: VectorDownset | None = None) -> RationalGF:
    """Weight generating function of fill vectors of rho lying in V.

    Inclusion-exclusion over subsets of the forbidden basis, grouped by join.
    A join above 1 at a dotted coordinate admits no fill vector and is dropped,
    together with everything joined onto it later.
    """
    return _terms_to_gf({rho.signs: _restricted_terms(rho, V)})


# ---------------------------------------------------------------- polynomials

@dataclass(frozen=True)
class ClassPolynomial:
    """Eventual counting polynomial in the basis C(n, k).

    ``evaluate(n)`` uses the polynomial for n >= threshold and the recorded
    exceptional value below it.
    """

    binomial_coeffs: tuple
    threshold: int
    exceptional_values: dict = field(default_factory=dict, hash=False, compare=True)
    gf: RationalGF | None = field(default=None, compare=False)

    def polynomial(self, n: int) -> int:
        return sum(c * comb(n, k) for k, c in enumerate(self.binomial_coeffs))

    def evaluate(self, n: int) -> int:
        if n < self.threshold:
            return self.exceptional_values.get(n, 0)
        return self.polynomial(n)

    def counts(self, upto: int, start: int = 1) -> list[int]:
        return [self.evaluate(n) for n in range(start, upto + 1)]

    def __str__(self) -> str:
        parts = []
        for k, c in enumerate(self.binomial_coeffs):
            if not c:
                continue
            mag = abs(c)
            term = f"C(n,{k})" if mag == 1 else f"{mag}*C(n,{k})"
            parts.append(("-" if c < 0 else "+", term))
        if not parts:
            return "0"
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        return s + "".join(f" {a} {b}" for a, b in parts[1:])


def _as_gf(gf) -> RationalGF:
    if isinstance(gf, RationalGF):
        return gf
    num, den = gf
    num, den = [int(x) for x in num], [int(x) for x in den]
    while den and den[-1] == 0:
        den.pop()
    d = len(den) - 1
    if d < 0:
        raise ZeroDivisionError("zero denominator")
    ref = _one_minus_z_pow(d)
    scale = Fraction(den[0], ref[0])
    if any(Fraction(a) != scale * b for a, b in zip(den, ref)):
        raise NotPolynomialClass(f"denominator {den} is not a power of (1 - z)")
    if scale.denominator != 1 or any((Fraction(a) / scale).denominator != 1 for a in num):
        raise NotPolynomialClass("numerator not divisible by the denominator's content")
    return RationalGF(tuple(int(Fraction(a) / scale) for a in num), d).reduced()


def to_binomial_basis(gf) -> ClassPolynomial:
    """Express the eventual coefficients of a (1 - z)-power rational function in the basis C(n, k)."""
    g = _as_gf(gf).reduced()
    d = g.power
    deg = len(g.numerator) - 1
    start = max(0, deg - d + 1)
    coeffs = g.coefficients(start + d + 1)
    if d == 0:
        poly: tuple = ()
        p = lambda n: 0
    else:
        xs = list(range(start, start + d))
        ys = [coeffs[x] for x in xs]

        def lag(n: int) -> Fraction:
            tot = Fraction(0)
            for i, xi in enumerate(xs):
                term = Fraction(ys[i])
                for j, xj in enumerate(xs):
                    if j != i:
                        term *= Fraction(n - xj, xi - xj)
                tot += term
            return tot

        vals = [lag(j) for j in range(d)]
        b = []
        for k in range(d):
            s = sum((-1) ** (k - j) * comb(k, j) * vals[j] for j in range(k + 1))
            if s.denominator != 1:
                raise NotPolynomialClass(f"non-integer binomial coefficient {s}")
            b.append(int(s))
        while b and b[-1] == 0:
            b.pop()
        poly = tuple(b)
        p = lambda n: sum(c * comb(n, k) for k, c in enumerate(poly))
    n0 = start
    while n0 > 0 and p(n0 - 1) == coeffs[n0 - 1]:
        n0 -= 1
    n0 = max(1, n0)
    exceptional = {n: coeffs[n] for n in range(1, n0)}
    return ClassPolynomial(poly, n0, exceptional, g)


# ---------------------------------------------------------------- the algorithm

@dataclass(frozen=True)
class RestrictedPegClass:
    peg: PegPermutation
    allowed: VectorDownset

    def gf(self) -> RationalGF:
        return restricted_gf(self.peg, self.allowed)

    def members(self, n: int) -> Iterator[Permutation]:
        for v in _fill_vectors(self.peg, n):
            if v in self.allowed:
                yield inflate_peg(self.peg, v)

    def __str__(self) -> str:
        if not self.allowed.forbidden_basis:
            return str(self.peg)
        basis = ", ".join("(" + ",".join(map(str, b)) + ")" for b in sorted(self.allowed.forbidden_basis))
        return f"{self.peg} avoiding {{{basis}}}"


@dataclass
class PolyclassResult:
    partition: list
    gf: RationalGF
    polynomial: ClassPolynomial

    def counts(self, upto: int) -> list[int]:
        return self.gf.coefficients(upto + 1)[1:]


def clean_partition(S: Iterable[PegPermutation]) -> list[RestrictedPegClass]:
    """Cleaned pegs of the compact completion, each with the union of its allowed downsets."""
    groups: dict[PegPermutation, set] = {}
    for rho in compact_completion(S):
        tau, V = clean_peg(rho)
        groups.setdefault(tau, set()).add(None if V is None else V.forbidden_basis)
    out = []
    for tau in sorted(groups, key=PegPermutation.sort_key):
        bases = groups[tau]
        if None in bases:
            V = VectorDownset.full(len(tau))
        else:
            # unions are order independent; skip downsets inside another first
            ds = [VectorDownset(len(tau), b) for b in bases]
            ds = [a for a in ds if not any(a is not b and _downset_leq(a, b) for b in ds)]
            V = ds[0]
            for W in ds[1:]:
                V = downset_union(V, W)
        out.append(RestrictedPegClass(tau, V))
    return out


def _downset_leq(V: VectorDownset, W: VectorDownset) -> bool:
    # V is inside W iff every basis vector of W is forbidden in V
    if V.forbidden_basis == W.forbidden_basis:
        return False
    return all(w not in V for w in W.forbidden_basis)


def polyclass_enumerate(S: Iterable[PegPermutation]) -> PolyclassResult:
    S = list(S)
    if not S:
        raise ValueError("empty peg set")
    part = clean_partition(S)
    by_power: dict[int, dict[int, int]] = {}
    for rc in part:
        acc = by_power.setdefault(rc.peg.signs, {})
        for w, c in _restricted_terms(rc.peg, rc.allowed).items():
            acc[w] = acc.get(w, 0) + c
    total = _terms_to_gf(by_power)
    return PolyclassResult(part, total, to_binomial_basis(total))


# ---------------------------------------------------------------- counting by canonical pegs
#
# Every permutation has one canonical peg: maximal runs of adjacent entries
# with consecutive values become signed entries, the rest dots. Canonical
# pegs are exactly the compact clean ones. pi lies in the class of S when its
# canonical peg and block sizes are accepted, coordinate by coordinate, by
# some member of the deletion closure of S, or by a member in which a run of
# entries of the opposite sign has been contracted to one capped entry. A DP
# over positions that tracks the set of still-accepting members counts each
# permutation once, so the compact completion is never materialised.

def _opposite_chains(u: tuple, d: tuple) -> list[tuple[int, int, str]]:
    # maximal (start, end, sign) runs of adjacent value-consecutive entries, none carrying that sign
    out = []
    n = len(u)
    i = 0
    while i < n - 1:
        step = u[i + 1] - u[i]
        if step in (1, -1):
            sign = PLUS if step == 1 else MINUS
            j = i
            while j + 1 < n and u[j + 1] - u[j] == step and d[j] != sign and d[j + 1] != sign:
                j += 1
            if j > i:
                out.append((i, j, sign))
                i = j
                continue
        i += 1
    return out


def _subrun_choices(a: int, b: int) -> list[list[tuple[int, int]]]:
    # sets of disjoint sub-intervals of [a, b], each of length at least two
    out: list[list[tuple[int, int]]] = [[]]

    def go(start: int, chosen: list):
        for s in range(start, b):
            for e in range(s + 1, b + 1):
                chosen.append((s, e))
                out.append(list(chosen))
                go(e + 1, chosen)
                chosen.pop()

    go(a, [])
    return out


def _members(rho: PegPermutation) -> Iterator[tuple[tuple, tuple]]:
    """rho itself and every contraction of opposite-sign runs, as (underlying, specs)."""
    u, d = rho.underlying, rho.decorations
    chains = _opposite_chains(u, d)
    if not chains:
        yield u, d
        return
    per_chain = [(_subrun_choices(a, b), sign) for a, b, sign in chains]
    for combo in itertools.product(*(c for c, _ in per_chain)):
        start_of: dict[int, tuple[int, str]] = {}
        for runs, (_, sign) in zip(combo, per_chain):
            for s, e in runs:
                start_of[s] = (e, sign)
        vals, specs = [], []
        i = 0
        while i < len(u):
            if i in start_of:
                e, sign = start_of[i]
                vals.append(u[i])
                specs.append((sign, e - i + 1))
                i = e + 1
            else:
                vals.append(u[i])
                specs.append(d[i])
                i += 1
        yield _std(vals), tuple(specs)


_CANON_UP = {(PLUS, PLUS), (PLUS, DOT), (DOT, PLUS), (DOT, DOT)}
_CANON_DOWN = {(MINUS, MINUS), (MINUS, DOT), (DOT, MINUS), (DOT, DOT)}


def _count_group(u: tuple, members: list[tuple], by_power: dict[int, dict[int, int]]) -> None:
    m = len(u)
    full = (1 << len(members)) - 1
    # per coordinate and sign: uncapped mask, and (cap, mask) pairs
    unc = {PLUS: [0] * m, MINUS: [0] * m}
    capped: dict[str, list[dict[int, int]]] = {PLUS: [{} for _ in range(m)], MINUS: [{} for _ in range(m)]}
    for j, specs in enumerate(members):
        bit = 1 << j
        for i, s in enumerate(specs):
            if s == PLUS or s == MINUS:
                unc[s][i] |= bit
            elif s != DOT:
                sign, k = s
                capped[sign][i][k] = capped[sign][i].get(k, 0) | bit
    link = [u[i + 1] - u[i] for i in range(m - 1)]
    # state (alive, previous symbol) -> {signs: {weight: count}}
    states: dict[tuple, dict[int, dict[int, int]]] = {(full, None): {0: {0: 1}}}
    for i in range(m):
        nxt: dict[tuple, dict[int, dict[int, int]]] = {}
        bad = None
        if i > 0 and link[i - 1] in (1, -1):
            bad = _CANON_UP if link[i - 1] == 1 else _CANON_DOWN

        def add(key, val, dsigns, sizes):
            tgt = nxt.setdefault(key, {})
            for s, poly in val.items():
                acc = tgt.setdefault(s + dsigns, {})
                for w, c in poly.items():
                    for z in sizes:
                        acc[w + z] = acc.get(w + z, 0) + c

        for (alive, prev), val in states.items():
            if bad is None or (prev, DOT) not in bad:
                add((alive, DOT), val, 0, (1,))
            for sign in (PLUS, MINUS):
                if bad is not None and (prev, sign) in bad:
                    continue
                base = alive & unc[sign][i]
                caps = sorted((k, alive & mk) for k, mk in capped[sign][i].items() if alive & mk)
                lo = 2
                for idx, (k, _) in enumerate(caps):
                    if k < lo:
                        continue
                    live = base
                    for kk, mk in caps[idx:]:
                        live |= mk
                    add((live, sign), val, 0, range(lo, k + 1))
                    lo = k + 1
                if base:
                    # sizes lo, lo+1, ...: z^lo / (1 - z)
                    add((base, sign), val, 1, (lo,))
        states = nxt
    for val in states.values():
        for s, poly in val.items():
            acc = by_power.setdefault(s, {})
            for w, c in poly.items():
                acc[w] = acc.get(w, 0) + c


def class_gf(S: Iterable[PegPermutation]) -> RationalGF:
    """Generating function of the class of S, by canonical pegs rather than the compact completion."""
    groups: dict[tuple, set] = {}
    for rho in deletion_closure(S):
        for u, specs in _members(rho):
            groups.setdefault(u, set()).add(specs)
    by_power: dict[int, dict[int, int]] = {}
    for u in sorted(groups, key=lambda t: (len(t), t)):
        _count_group(u, sorted(groups[u], key=repr), by_power)
    return _terms_to_gf(by_power)


def class_polynomial(S: Iterable[PegPermutation]) -> ClassPolynomial:
    S = list(S)
    if not S:
        raise ValueError("empty peg set")
    return to_binomial_basis(class_gf(S))


def brute_class_members(S: Iterable[PegPermutation], n: int, collect: bool = False):
    """Distinct length-n inflations of members of S; the oracle for polyclass_enumerate."""
    seen: set = set()
    for rho in reduce_pegset(S):
        m = len(rho)
        dotted = [i for i, d in enumerate(rho.decorations) if d == DOT]
        for v in _weak_compositions(n, m):
            if any(v[i] > 1 for i in dotted):
                continue
            seen.add(inflate_peg(rho, v))
    return seen if collect else len(seen)


# ---------------------------------------------------------------- peg-set files

def parse_pegset(text: str) -> list[PegPermutation]:
    out = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            out.append(PegPermutation.parse(line))
    return out


def read_pegset(path) -> list[PegPermutation]:
    with open(path, encoding="utf-8") as fh:
        return parse_pegset(fh.read())
