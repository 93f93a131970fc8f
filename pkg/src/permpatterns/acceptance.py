"""The twelve acceptance checks, shared by the test suite and ``permpatterns verify``.

Every comparison is an exact integer (or Fraction) equality. Each check
returns a CriterionResult listing the sub-checks that failed.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Callable

from . import bijections as bj
from . import genome, oracle, pegperm, series
from .perm import (
    bonds,
    del_set,
    ins_set_size,
    is_k_plentiful,
    is_skew_decomposable,
    min_gap,
    theta,
)


@dataclass
class CriterionResult:
    number: int
    title: str
    failures: list = field(default_factory=list)
    checks: int = 0
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures

    def expect(self, label: str, got, want) -> None:
        self.checks += 1
        if got != want:
            self.failures.append(f"{label}: got {got!r}, expected {want!r}")

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.number:2d}. {self.title} ({self.checks} checks, {self.seconds:.1f}s)"


# ------------------------------------------------------------------ reference data

WILF_TABLE = {
    (1, 3, 4, 2): [1, 2, 6, 23, 103, 512, 2740, 15485],
    (1, 2, 3, 4): [1, 2, 6, 23, 103, 513, 2761, 15767],
    (1, 3, 2, 4): [1, 2, 6, 23, 103, 513, 2762, 15793],
}

PATTERNS3 = [(1, 2, 3), (1, 3, 2), (2, 1, 3), (2, 3, 1), (3, 1, 2), (3, 2, 1)]

# rows n = 3..7, columns in PATTERNS3 order
OCCURRENCE_TABLE = {
    (1, 2, 3): [
        [0, 1, 1, 1, 1, 1],
        [0, 9, 9, 11, 11, 16],
        [0, 57, 57, 81, 81, 144],
        [0, 312, 312, 500, 500, 1016],
        [0, 1578, 1578, 2794, 2794, 6271],
    ],
    (1, 3, 2): [
        [1, 0, 1, 1, 1, 1],
        [10, 0, 11, 11, 11, 13],
        [68, 0, 81, 81, 81, 109],
        [392, 0, 500, 500, 500, 748],
        [2063, 0, 2794, 2794, 2794, 4570],
    ],
}

# (catalog name, first index, step, printed coefficients)
SERIES_PREFIXES = [
    ("catalan", 0, 1, [1, 1, 2, 5, 14, 42, 132]),
    ("num213_star", 3, 1, [1, 7, 38, 187, 874]),
    ("av123_simples", 2, 1, [1, 0, 2, 2, 7, 14, 37]),
    ("htso", 5, 2, [2, 2, 10, 22, 68]),
    ("htszero", 8, 2, [1, 2, 8, 22, 68]),
    ("htstwo", 6, 2, [3, 4, 15, 36]),
    ("no_bonds", 4, 1, [2, 14, 90, 646, 5242]),
    ("ascent_totals_av132", 2, 1, [1, 5, 21, 84, 330]),
]

JAGGARD = {
    "assemble_av1342": [24, 62, 156, 406, 1040, 2714, 7012],
    "assemble_av2341": [25, 66, 170, 441, 1124, 2870, 7273],
}
JAGGARD_BASIS = {"assemble_av1342": (1, 3, 4, 2), "assemble_av2341": (2, 3, 4, 1)}

# (op, k) -> (counts n = 1..10, binomial-basis coefficients from C(n,0))
GENOME_TABLES = {
    ("block_transposition", 1): ([1, 2, 5, 11, 21, 36, 57, 85, 121, 166], [1, 0, 1, 1]),
    ("block_transposition", 2): ([1, 2, 6, 23, 89, 295, 827, 2017, 4405, 8812],
                                 [1, 0, 1, 2, 8, 18, 11]),
    ("block_transposition", 3): ([1, 2, 6, 24, 120, 675, 3527, 15484, 56917, 179719],
                                 [1, 0, 1, 2, 9, 44, 220, 656, 841, 369]),
    ("prefix_transposition", 1): ([1, 2, 4, 7, 11, 16, 22, 29, 37, 46], [1, 0, 1]),
    ("prefix_transposition", 2): ([1, 2, 6, 21, 61, 146, 302, 561, 961, 1546], [1, 0, 1, 2, 6]),
    ("prefix_transposition", 3): ([1, 2, 6, 24, 116, 521, 1877, 5531, 13939, 31156],
                                  [1, 0, 1, 2, 9, 40, 90]),
    ("block_reversal", 1): ([1, 2, 4, 7, 11, 16, 22, 29, 37, 46], [1, 0, 1]),
    ("block_reversal", 2): ([1, 2, 6, 22, 63, 145, 288, 516, 857, 1343], [8, -3, 1, 4]),
    ("block_reversal", 3): ([1, 2, 6, 24, 118, 534, 1851, 5158, 12264, 25943],
                            [318, -214, 131, -61, 20, 70, 35]),
    ("prefix_reversal", 1): ([1, 2, 3, 4, 5, 6, 7, 8, 9, 10], [0, 1]),
    ("prefix_reversal", 2): ([1, 2, 5, 10, 17, 26, 37, 50, 65, 82], [2, -1, 2]),
    ("prefix_reversal", 3): ([1, 2, 6, 21, 52, 105, 186, 301, 456, 657], [-3, 3, -2, 6]),
    ("cut_paste", 1): ([1, 2, 6, 16, 35, 66, 112, 176, 261, 370], [0, 1, 0, 3]),
    ("cut_paste", 2): ([1, 2, 6, 24, 120, 577, 2208, 6768, 17469, 39603],
                       [-18, 45, -61, 70, -53, 88, 107]),
    ("cut_paste", 3): ([1, 2, 6, 24, 120, 720, 5040, 36757, 223898, 1055479],
                       [508264, -280036, 140012, -57622, 13839, 4136, -5368, 531, 21125, 12615]),
    ("block_interchange", 1): ([1, 2, 6, 16, 36, 71, 127, 211, 331, 496], [1, 0, 1, 2, 1]),
    ("block_interchange", 2): ([1, 2, 6, 24, 120, 540, 1996, 6196, 16732, 40459],
                               [1, 0, 1, 2, 9, 44, 85, 70, 21]),
}

PHI_EXAMPLE = ("74352681", "uuduuududduddud")
PHI_STAR_EXAMPLE = ("48371652", "uduuduududddud")


def _p(text: str) -> tuple:
    return tuple(int(c) for c in text)


# ------------------------------------------------------------------ criteria

def criterion_1(workers: int = 1) -> CriterionResult:
    r = CriterionResult(1, "Wilf-class table for 1342, 1234, 1324, n = 1..8")
    for beta, row in WILF_TABLE.items():
        got = [oracle.enumerate_class([beta], n, workers=workers) for n in range(1, 9)]
        r.expect(f"Av({''.join(map(str, beta))})", got, row)
    return r


def criterion_2() -> CriterionResult:
    r = CriterionResult(2, "occurrence totals for length-3 patterns in Av(123) and Av(132), n = 3..7")
    for basis, rows in OCCURRENCE_TABLE.items():
        for n, row in zip(range(3, 8), rows):
            members = list(oracle.iter_class([basis], n))
            got = [oracle.num(pat, members) for pat in PATTERNS3]
            r.expect(f"Av_{n}({''.join(map(str, basis))})", got, row)
    return r


def criterion_3() -> CriterionResult:
    r = CriterionResult(3, "generating-function prefixes")
    for name, start, step, want in SERIES_PREFIXES:
        order = start + step * (len(want) - 1) + 1
        coeffs = series.catalog(name, order).integers()
        got = [coeffs[start + step * i] for i in range(len(want))]
        r.expect(name, got, want)
    return r


def criterion_4(n_max: int = 10) -> CriterionResult:
    r = CriterionResult(4, "series coefficients and exact formulas against Av_n(123) totals, n <= 10")
    av = {n: list(oracle.iter_class([(1, 2, 3)], n)) for n in range(1, n_max + 1)}
    totals = {pat: [oracle.num(pat, av[n]) for n in range(1, n_max + 1)]
              for pat in [(1, 2), (2, 1, 3), (2, 3, 1), (3, 2, 1), (1, 3, 2)]}
    for name, pat in [("num12_av123", (1, 2)), ("num213", (2, 1, 3)),
                      ("num231", (2, 3, 1)), ("num321", (3, 2, 1))]:
        got = series.catalog(name, n_max + 1).integers()[1:n_max + 1]
        r.expect(f"series {name}", got, totals[pat])
    # b involves C(2n-3, n-2), undefined at n = 1
    for key, pat, lo in [("a", (1, 3, 2), 1), ("b", (2, 3, 1), 2), ("d", (3, 2, 1), 1)]:
        got = [series.exact_formula(key, n) for n in range(lo, n_max + 1)]
        r.expect(f"formula {key}_n", got, totals[pat][lo - 1:])
    return r


def criterion_5(n_oracle: int = 12, n_binom: int = 14) -> CriterionResult:
    r = CriterionResult(5, "involution assemblies against the printed columns and the oracle")
    for name, col in JAGGARD.items():
        coeffs = series.catalog(name, n_oracle + 1).integers()
        r.expect(f"{name} n=5..11", coeffs[5:12], col)
        basis = JAGGARD_BASIS[name]
        got = [oracle.enumerate_involutions([basis], n) for n in range(1, n_oracle + 1)]
        r.expect(f"{name} vs oracle n=1..{n_oracle}", coeffs[1:n_oracle + 1], got)
    got = [oracle.enumerate_involutions([(1, 2, 3)], n) for n in range(1, n_binom + 1)]
    r.expect("Av^I(123) central binomials", got, [comb(n, n // 2) for n in range(1, n_binom + 1)])
    return r


def criterion_6(n_max: int = 9) -> CriterionResult:
    r = CriterionResult(6, "simple involutions avoiding 2341 and 4123, n <= 9")
    extra = _p("5274163")
    for n in range(1, n_max + 1):
        a = set(oracle.simple_members([(2, 3, 4, 1), (4, 1, 2, 3)], n, involutions_only=True))
        b = set(oracle.simple_members([(1, 2, 3)], n, involutions_only=True))
        if len(extra) == n:
            b.add(extra)
        r.expect(f"n={n}", sorted(a), sorted(b))
    return r


def random_pegsets(count: int = 12, seed: int = 2024) -> list[list]:
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        S = []
        for _ in range(rng.randint(1, 3)):
            m = rng.randint(1, 4)
            u = list(range(1, m + 1))
            rng.shuffle(u)
            S.append(pegperm.PegPermutation(tuple(u), tuple(rng.choice("+-.") for _ in u)))
        out.append(S)
    return out


def criterion_7(n_max: int = 9) -> CriterionResult:
    r = CriterionResult(7, "polynomial-class algorithm")
    res = pegperm.polyclass_enumerate([pegperm.peg("+3+1+2")])
    r.expect("gf of {+3+1+2}", (res.gf.numerator, res.gf.power), ((0, 1, -1, 1), 3))
    r.expect("counts of {+3+1+2}", res.counts(10), [(n * n - n + 2) // 2 for n in range(1, 11)])
    for i, S in enumerate(random_pegsets()):
        got = pegperm.polyclass_enumerate(S).counts(n_max)
        want = [pegperm.brute_class_members(S, n) for n in range(1, n_max + 1)]
        r.expect(f"random set {i} {[str(x) for x in S]}", got, want)
    return r


def criterion_8(ops: list | None = None) -> CriterionResult:
    r = CriterionResult(8, "genome tables: counts and binomial-basis coefficients")
    for (op, k), (counts, basis) in GENOME_TABLES.items():
        if ops is not None and op not in ops:
            continue
        poly = genome.ball_polynomial(op, k)
        r.expect(f"{op} k={k} counts", poly.counts(10), counts)
        r.expect(f"{op} k={k} basis", list(poly.binomial_coeffs), basis)
    return r


def criterion_9(n_max: int = 8) -> CriterionResult:
    r = CriterionResult(9, "BFS balls equal polynomial values, k <= 2, n <= 8")
    for op in genome.KINDS:
        for k in (1, 2):
            poly = genome.ball_polynomial(op, k)
            got = [genome.bfs_ball(op, k, n) for n in range(1, n_max + 1)]
            r.expect(f"{op} k={k}", got, poly.counts(n_max))
    return r


def criterion_10(n_del: int = 8, n_moment: int = 9) -> CriterionResult:
    r = CriterionResult(10, "deletion and insertion laws, plentiful gaps, bond moments, theta")
    bad_del, bad_ins, bad_gap = [], [], []
    for n in range(1, n_del + 1):
        for p in itertools.permutations(range(1, n + 1)):
            if len(del_set(p)) != n - bonds(p):
                bad_del.append(p)
            if n < n_del and ins_set_size(p) != n * n + 1:
                bad_ins.append(p)
            g = min_gap(p)
            # k < n: patterns of length n - k must be nonempty
            for k in range(1, min(3, n - 1) + 1):
                if is_k_plentiful(p, k) != (g >= k + 2):
                    bad_gap.append((p, k))
    r.expect("|del_set| = n - bonds", bad_del[:5], [])
    r.expect("ins_set_size = (n-1)^2 + 1", bad_ins[:5], [])
    r.expect("k-plentiful iff gap >= k+2", bad_gap[:5], [])
    for n in range(1, n_moment + 1):
        d = oracle.bond_distribution(n)
        r.expect(f"E[bonds] n={n}", d.mean, Fraction(2 * (n - 1), n))
        r.expect(f"Var[bonds] n={n}", d.variance, series.bond_variance(n))
    t = theta(4)
    r.expect("theta(4)", "".join(map(str, t)), "3614725")
    r.expect("gap of theta(4)", min_gap(t), 4)
    return r


def criterion_11(n_max: int = 9) -> CriterionResult:
    r = CriterionResult(11, "bijections phi, phi', phi*")
    for n in range(0, n_max + 1):
        a132 = list(oracle.iter_class([(1, 3, 2)], n))
        a123 = list(oracle.iter_class([(1, 2, 3)], n))
        dyck = {d.steps for d in bj.all_dyck(n)}
        for name, f, dom in [("phi", bj.phi, a132), ("phi'", bj.phi_prime, a123)]:
            img = [f(p).steps for p in dom]
            r.expect(f"{name} injective n={n}", len(set(img)), len(img))
            r.expect(f"{name} onto n={n}", set(img), dyck)
        if n >= 2:
            star = [p for p in a123 if not is_skew_decomposable(p)]
            img = [bj.phi_star(p) for p in star]
            r.expect(f"phi* injective n={n}", len({d.steps for d in img}), len(img))
            r.expect(f"phi* semilength n={n}", {d.semilength for d in img}, {n - 1})
            bad = [p for p, d in zip(star, img)
                   if bj.peak_213_weight(d) != oracle.num((2, 1, 3), [p])
                   or bj.peak_heights(d) != bj.rtl_max_spans(p)]
            r.expect(f"peak heights vs 213 n={n}", bad[:3], [])
    r.expect("phi(74352681)", bj.phi(_p(PHI_EXAMPLE[0])).steps, PHI_EXAMPLE[1])
    r.expect("phi*(48371652)", bj.phi_star(_p(PHI_STAR_EXAMPLE[0])).steps, PHI_STAR_EXAMPLE[1])
    return r


def criterion_12(n_max: int = 9) -> CriterionResult:
    r = CriterionResult(12, "equivalence identities and ltr-minima distribution, n <= 9")
    for name, rows in oracle.identity_suite(n_max).items():
        for n, lhs, rhs in rows:
            r.expect(f"{name} n={n}", lhs, rhs)
    return r


CRITERIA: dict[int, Callable[..., CriterionResult]] = {
    1: criterion_1, 2: criterion_2, 3: criterion_3, 4: criterion_4,
    5: criterion_5, 6: criterion_6, 7: criterion_7, 8: criterion_8,
    9: criterion_9, 10: criterion_10, 11: criterion_11, 12: criterion_12,
}


def run(numbers=None, workers: int = 1) -> list[CriterionResult]:
    out = []
    for k in sorted(numbers or CRITERIA):
        t = time.perf_counter()
        res = CRITERIA[k](workers) if k == 1 else CRITERIA[k]()
        res.seconds = time.perf_counter() - t
        out.append(res)
    return out
