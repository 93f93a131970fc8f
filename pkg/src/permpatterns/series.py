"""Exact truncated power series and the catalog of generating functions.

Coefficients are ``Fraction`` values or ``Poly`` values (polynomials in
auxiliary variables such as u and v). Bivariate series in u and v truncated
by total degree are modelled as a series in a grading variable t whose t^d
coefficient is a homogeneous polynomial of degree d.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, factorial
from typing import Callable, Iterable, Sequence

# ---------------------------------------------------------------- polynomials


class Poly:
    """Sparse polynomial with rational coefficients in a fixed number of variables."""

    __slots__ = ("terms", "nvars")

    def __init__(self, terms: dict | None = None, nvars: int = 1):
        self.nvars = nvars
        self.terms = {e: Fraction(c) for e, c in (terms or {}).items() if c != 0}

    @classmethod
    def const(cls, c, nvars: int = 1) -> "Poly":
        return cls({(0,) * nvars: c}, nvars)

    @classmethod
    def var(cls, i: int, nvars: int) -> "Poly":
        e = [0] * nvars
        e[i] = 1
        return cls({tuple(e): 1}, nvars)

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            return other
        return Poly.const(other, self.nvars)

    def __add__(self, other):
        if isinstance(other, TruncatedSeries):
            return NotImplemented
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return Poly(out, self.nvars)

    __radd__ = __add__

    def __neg__(self):
        return Poly({e: -c for e, c in self.terms.items()}, self.nvars)

    def __sub__(self, other):
        if isinstance(other, TruncatedSeries):
            return NotImplemented
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            return NotImplemented
        if not isinstance(other, Poly):
            other = Fraction(other)
            return Poly({e: c * other for e, c in self.terms.items()}, self.nvars)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Poly(out, self.nvars)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Poly):
            if len(other.terms) != 1:
                raise ZeroDivisionError("only division by a monomial is exact")
            (e2, c2), = other.terms.items()
            out = {}
            for e, c in self.terms.items():
                q = tuple(a - b for a, b in zip(e, e2))
                if min(q) < 0:
                    raise ZeroDivisionError("monomial does not divide polynomial")
                out[q] = c / c2
            return Poly(out, self.nvars)
        other = Fraction(other)
        return Poly({e: c / other for e, c in self.terms.items()}, self.nvars)

    def __eq__(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(other, self.nvars)
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self.terms)

    def derivative(self, i: int = 0) -> "Poly":
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                f = list(e)
                f[i] -= 1
                out[tuple(f)] = c * e[i]
        return Poly(out, self.nvars)

    def evaluate(self, point: Sequence) -> Fraction:
        total = Fraction(0)
        for e, c in self.terms.items():
            t = c
            for x, k in zip(point, e):
                t *= Fraction(x) ** k
            total += t
        return total

    def coeff(self, *exps: int) -> Fraction:
        return self.terms.get(tuple(exps), Fraction(0))

    def coeffs_univariate(self) -> list[Fraction]:
        if self.nvars != 1:
            raise ValueError("not univariate")
        if not self.terms:
            return []
        top = max(e[0] for e in self.terms)
        return [self.terms.get((k,), Fraction(0)) for k in range(top + 1)]

    def swap(self, i: int = 0, j: int = 1) -> "Poly":
        out = {}
        for e, c in self.terms.items():
            f = list(e)
            f[i], f[j] = f[j], f[i]
            out[tuple(f)] = c
        return Poly(out, self.nvars)

    def __repr__(self):
        if not self.terms:
            return "0"
        names = "uvwxyz"
        parts = []
        for e, c in sorted(self.terms.items()):
            mono = "*".join(f"{names[i]}^{k}" if k > 1 else names[i]
                            for i, k in enumerate(e) if k)
            parts.append(f"{c}*{mono}" if mono else f"{c}")
        return " + ".join(parts)


def _zero_like(c):
    return Poly({}, c.nvars) if isinstance(c, Poly) else Fraction(0)


def _one_like(c):
    return Poly.const(1, c.nvars) if isinstance(c, Poly) else Fraction(1)


def _is_zero(c) -> bool:
    return c.is_zero() if isinstance(c, Poly) else c == 0


def _invert_coeff(c):
    if isinstance(c, Poly):
        if not c.is_constant() or c.is_zero():
            raise ZeroDivisionError("constant term is not an invertible scalar")
        return Fraction(1) / c.constant_term()
    if c == 0:
        raise ZeroDivisionError("constant term is zero")
    return Fraction(1) / c


# -------------------------------------------------------------------- series


class TruncatedSeries:
    """Power series known exactly through x^order."""

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs: Iterable, order: int):
        coeffs = list(coeffs)[: order + 1]
        if coeffs and isinstance(coeffs[0], Poly):
            zero = _zero_like(coeffs[0])
        else:
            coeffs = [c if isinstance(c, Poly) else Fraction(c) for c in coeffs]
            zero = next((_zero_like(c) for c in coeffs if isinstance(c, Poly)), Fraction(0))
        coeffs += [zero] * (order + 1 - len(coeffs))
        self.coeffs = coeffs
        self.order = order

    # construction helpers
    @classmethod
    def x(cls, order: int) -> "TruncatedSeries":
        return cls([0, 1], order)

    @classmethod
    def const(cls, c, order: int) -> "TruncatedSeries":
        return cls([c], order)

    def __getitem__(self, n: int):
        if n > self.order:
            raise IndexError(f"coefficient {n} beyond truncation order {self.order}")
        return self.coeffs[n] if n >= 0 else _zero_like(self.coeffs[0])

    def __len__(self):
        return self.order + 1

    def __iter__(self):
        return iter(self.coeffs)

    @property
    def valuation(self) -> int | None:
        for i, c in enumerate(self.coeffs):
            if not _is_zero(c):
                return i
        return None

    def _coerce(self, other) -> "TruncatedSeries":
        if isinstance(other, TruncatedSeries):
            return other
        return TruncatedSeries([other], self.order)

    def __add__(self, other):
        other = self._coerce(other)
        n = min(self.order, other.order)
        return TruncatedSeries([self.coeffs[i] + other.coeffs[i] for i in range(n + 1)], n)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries([-c for c in self.coeffs], self.order)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            return TruncatedSeries([c * other for c in self.coeffs], self.order)
        n = min(self.order, other.order)
        a, b = self.coeffs, other.coeffs
        va = self.valuation
        vb = other.valuation
        if va is None or vb is None:
            return TruncatedSeries([], n)
        out = [_zero_like(a[0]) if isinstance(a[0], Poly) else _zero_like(b[0])] * (n + 1)
        for i in range(va, n + 1 - vb):
            ai = a[i]
            if _is_zero(ai):
                continue
            for j in range(vb, n + 1 - i):
                out[i + j] = out[i + j] + ai * b[j]
        return TruncatedSeries(out, n)

    __rmul__ = __mul__

    def inverse(self) -> "TruncatedSeries":
        a = self.coeffs
        inv0 = _invert_coeff(a[0])
        out = [_one_like(a[0]) * inv0]
        for n in range(1, self.order + 1):
            acc = _zero_like(a[0])
            for k in range(1, n + 1):
                if not _is_zero(a[k]):
                    acc = acc + a[k] * out[n - k]
            out.append(-acc * inv0)
        return TruncatedSeries(out, self.order)

    def __truediv__(self, other):
        if not isinstance(other, TruncatedSeries):
            return TruncatedSeries([c / other for c in self.coeffs], self.order)
        v = other.valuation
        if v is None:
            raise ZeroDivisionError("division by the zero series")
        if v == 0:
            return self * other.inverse()
        # cancel a common power of x; the result loses v orders of precision
        sv = self.valuation
        if sv is not None and sv < v:
            raise ZeroDivisionError(
                f"numerator valuation {sv} below denominator valuation {v}")
        num = self.shift(-v) if sv is not None else TruncatedSeries([], self.order - v)
        den = other.shift(-v)
        return num * den.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = TruncatedSeries([_one_like(self.coeffs[0])], self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift(self, k: int) -> "TruncatedSeries":
        """Multiply by x^k (k may be negative if the low terms vanish)."""
        if k >= 0:
            zero = _zero_like(self.coeffs[0])
            return TruncatedSeries([zero] * k + self.coeffs, self.order)
        v = self.valuation
        if v is not None and v < -k:
            raise ZeroDivisionError(f"cannot divide by x^{-k}: valuation {v}")
        return TruncatedSeries(self.coeffs[-k:], self.order + k)

    def truncate(self, order: int) -> "TruncatedSeries":
        return TruncatedSeries(self.coeffs, min(order, self.order))

    def sqrt(self) -> "TruncatedSeries":
        """Square root by Newton iteration, doubling precision each pass."""
        v = self.valuation
        if v is None:
            return TruncatedSeries([], self.order)
        if v % 2:
            raise ValueError("odd valuation has no power-series square root")
        s = self.shift(-v) if v else self
        lead = s.coeffs[0]
        if lead != 1:
            raise ValueError(f"square root needs leading coefficient 1, got {lead}")
        r = TruncatedSeries([s.coeffs[0]], 0)
        prec = 0
        while prec < s.order:
            prec = min(2 * prec + 1, s.order)
            target = s.truncate(prec)
            r = TruncatedSeries(r.coeffs, prec)
            r = (r + target / r) * Fraction(1, 2)
        out = r.truncate(s.order)
        return out.shift(v // 2) if v else out

    def compose(self, inner: "TruncatedSeries") -> "TruncatedSeries":
        """self(inner(x)); inner must have zero constant term."""
        v = inner.valuation
        if v is not None and v < 1:
            raise ValueError("inner series must have valuation >= 1")
        n = min(self.order, inner.order)
        result = TruncatedSeries([self.coeffs[n]], n)
        for k in range(n - 1, -1, -1):
            result = result * inner + self.coeffs[k]
        return result

    def derivative(self) -> "TruncatedSeries":
        return TruncatedSeries([self.coeffs[i] * i for i in range(1, self.order + 1)],
                               self.order - 1)

    def map(self, f: Callable) -> "TruncatedSeries":
        return TruncatedSeries([f(c) for c in self.coeffs], self.order)

    def substitute_power(self, k: int) -> "TruncatedSeries":
        """self(x^k), keeping the same truncation order."""
        zero = _zero_like(self.coeffs[0])
        out = [zero] * (self.order + 1)
        for i, c in enumerate(self.coeffs):
            if i * k > self.order:
                break
            out[i * k] = c
        return TruncatedSeries(out, self.order)

    def integers(self) -> list[int]:
        out = []
        for c in self.coeffs:
            if isinstance(c, Poly) or c.denominator != 1:
                raise ValueError(f"coefficient {c} is not an integer")
            out.append(int(c))
        return out

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        n = min(self.order, other.order)
        return all(self.coeffs[i] == other.coeffs[i] for i in range(n + 1))

    def __repr__(self):
        return f"TruncatedSeries({self.coeffs!r}, order={self.order})"


# functional aliases
def ps_add(a, b):
    return a + b


def ps_mul(a, b):
    return a * b


def ps_div(a, b):
    return a / b


def ps_sqrt(a):
    return a.sqrt()


def ps_compose(a, b):
    return a.compose(b)


def ps_derivative(a):
    return a.derivative()


def sqrt_by_recurrence(s: TruncatedSeries) -> TruncatedSeries:
    """Coefficient recurrence for the square root; an independent check of Newton."""
    a = s.coeffs
    if a[0] != 1:
        raise ValueError("needs constant term 1")
    r = [Fraction(1)]
    for n in range(1, s.order + 1):
        acc = sum((r[i] * r[n - i] for i in range(1, n)), Fraction(0))
        r.append((a[n] - acc) / 2)
    return TruncatedSeries(r, s.order)


# ------------------------------------------------------------------ bivariate


class MultiTrunc:
    """Series in u and v truncated at total degree ``degree``.

    Stored as a series in a grading variable t whose t^d coefficient is a
    homogeneous polynomial of degree d in (u, v).
    """

    def __init__(self, graded: TruncatedSeries):
        self.graded = graded

    @property
    def degree(self) -> int:
        return self.graded.order

    def coeff(self, i: int, j: int) -> Fraction:
        if i + j > self.degree:
            raise IndexError("beyond truncation degree")
        c = self.graded[i + j]
        return c.coeff(i, j) if isinstance(c, Poly) else (c if i == j == 0 else Fraction(0))

    def terms(self) -> dict:
        out = {}
        for c in self.graded.coeffs:
            if isinstance(c, Poly):
                out.update(c.terms)
        return dict(sorted(out.items()))

    def swap(self) -> "MultiTrunc":
        return MultiTrunc(self.graded.map(lambda c: c.swap() if isinstance(c, Poly) else c))

    def diagonal(self) -> TruncatedSeries:
        """Set u = v = x."""
        return self.graded.map(lambda c: c.evaluate((1, 1)) if isinstance(c, Poly) else c)


def _graded_vars(degree: int):
    u = Poly.var(0, 2)
    v = Poly.var(1, 2)
    tu = TruncatedSeries([Poly({}, 2), u], degree)
    tv = TruncatedSeries([Poly({}, 2), v], degree)
    return tu, tv


def poly_series_var(order: int, nvars: int = 1) -> tuple[TruncatedSeries, Poly]:
    """The series x with Poly coefficients, plus the auxiliary variable u."""
    zero = Poly({}, nvars)
    one = Poly.const(1, nvars)
    return TruncatedSeries([zero, one], order), Poly.var(0, nvars)


# --------------------------------------------------------------- closed forms


def _x(order):
    return TruncatedSeries.x(order)


def catalan(order: int) -> TruncatedSeries:
    """C(x) = (1 - sqrt(1-4x)) / (2x)."""
    x = _x(order + 1)
    return ((1 - (1 - 4 * x).sqrt()) / (2 * x)).truncate(order)


def motzkin_fixedpoint(order: int) -> TruncatedSeries:
    x = _x(order + 1)
    q = (1 - 2 * x - 3 * x * x).sqrt()
    return ((1 - x - q) / (2 * x)).truncate(order)


def av123_simples(order: int) -> TruncatedSeries:
    """Simple 123-avoiders of length two and at least four, x^2 standing for both of length two."""
    x = _x(order)
    q = (1 - 2 * x - 3 * x * x).sqrt()
    return 2 * x * x / (1 - x * x + (1 + x) * q)


def av123_simples_printed(order: int) -> TruncatedSeries:
    """The variant with +x^2 in the denominator; disagrees from x^4 on."""
    x = _x(order)
    q = (1 - 2 * x - 3 * x * x).sqrt()
    return 2 * x * x / (1 + x * x + (1 + x) * q)


def av123_simples_by_iteration(order: int) -> TruncatedSeries:
    """x^2 / (1 - x y - x^2 (y + 1)) at the Motzkin fixed point y."""
    x = _x(order)
    y = motzkin_fixedpoint(order)
    return x * x / (1 - x * y - x * x * (y + 1))


def simples_compose_check(order: int) -> TruncatedSeries:
    """f(z/(1-z)) for f the Motzkin fixed point; equals C(z) - 1."""
    z = _x(order)
    inner = z / (1 - z)
    return motzkin_fixedpoint(order).compose(inner)


def num12_av123(order: int) -> TruncatedSeries:
    x = _x(order)
    c = catalan(order)
    return x * x * c * c / (1 - 4 * x)


def _one_minus_4x_pow_half(order: int, k: int) -> TruncatedSeries:
    # (1 - 4x)^(k/2) for odd or even k, possibly negative
    x = _x(order)
    base = 1 - 4 * x
    r = base.sqrt()
    if k >= 0:
        return r ** k
    return r.inverse() ** (-k)


def num213_star(order: int) -> TruncatedSeries:
    x = _x(order)
    return x ** 3 * catalan(order) * _one_minus_4x_pow_half(order, -3)


def num213(order: int) -> TruncatedSeries:
    x = _x(order)
    return x ** 3 * catalan(order) ** 3 * _one_minus_4x_pow_half(order, -3)


def num213_alt(order: int) -> TruncatedSeries:
    """(x-1)/(2(1-4x)) - (3x-1)/(2(1-4x)^(3/2))."""
    x = _x(order)
    return (x - 1) / (2 * (1 - 4 * x)) - (3 * x - 1) * _one_minus_4x_pow_half(order, -3) / 2


def num231(order: int) -> TruncatedSeries:
    """231 occurrences in Av(123), solved from the two linear relations.

    With a = num_132 = num_213 and b = num_231 = num_312, the non-inversion
    count gives 4a + 2b = (n-2) num_12.
    """
    return (n_minus_2_num12(order) - 4 * num213(order)) / 2


def num321(order: int) -> TruncatedSeries:
    """321 occurrences in Av(123): c_n C(n,3) - 2a - 2b."""
    return binom3_catalan(order) - 2 * num213(order) - 2 * num231(order)


def num231_closed(order: int) -> TruncatedSeries:
    """(1-3z)/(2(1-4z)^2) - (4z^2-5z+1)/(2(1-4z)^(5/2))."""
    z = _x(order)
    return ((1 - 3 * z) / (1 - 4 * z) ** 2
            - (4 * z * z - 5 * z + 1) * _one_minus_4x_pow_half(order, -5)) / 2


def num321_closed(order: int) -> TruncatedSeries:
    """[(8z^3-20z^2+8z-1)/(1-4z)^2 - (36z^3-34z^2+10z-1)/(1-4z)^(5/2)] / (2z)."""
    return (num321_printed(order + 1) / (2 * _x(order + 1))).truncate(order)


def num231_printed(order: int) -> TruncatedSeries:
    """(3z-1)/(1-4z)^2 - (4z^2-5z+1)/(1-4z)^(5/2); does not count anything."""
    z = _x(order)
    return (3 * z - 1) / (1 - 4 * z) ** 2 - (4 * z * z - 5 * z + 1) * _one_minus_4x_pow_half(order, -5)


def num321_printed(order: int) -> TruncatedSeries:
    """(8z^3-20z^2+8z-1)/(1-4z)^2 - (36z^3-34z^2+10z-1)/(1-4z)^(5/2); equals 2z num321."""
    z = _x(order)
    a = (8 * z ** 3 - 20 * z ** 2 + 8 * z - 1) / (1 - 4 * z) ** 2
    b = (36 * z ** 3 - 34 * z ** 2 + 10 * z - 1) * _one_minus_4x_pow_half(order, -5)
    return a - b


def num132(order: int) -> TruncatedSeries:
    # reverse-complement-inverse fixes 123 and swaps 132 with 213
    return num213(order)


def num312(order: int) -> TruncatedSeries:
    return num231(order)


def binom3_catalan(order: int) -> TruncatedSeries:
    """x^3 C'''(x) / 6, the series of c_n C(n,3)."""
    c = catalan(order + 3)
    d3 = c.derivative().derivative().derivative()
    return (_x(order) ** 3 * d3.truncate(order)) / 6


def n_minus_2_num12(order: int) -> TruncatedSeries:
    """x^3 (J(x)/x^2)', the series of (n-2) num_12."""
    j = num12_av123(order + 3)
    return (_x(order) ** 3 * j.shift(-2).derivative()).truncate(order)


def peaks_H(order: int) -> TruncatedSeries:
    """H(x,u) = u x C / (1 - u x C - x C) with coefficients in u."""
    x, u = poly_series_var(order)
    c = catalan(order).map(lambda a: Poly.const(a, 1))
    return u * x * c / (1 - u * x * c - x * c)


def ascents_av132(order: int) -> TruncatedSeries:
    """Ascent-refined series of Av(132), coefficients polynomials in u."""
    z, u = poly_series_var(order + 1)
    disc = (u - 1) * (u - 1) * z * z - 2 * (u + 1) * z + 1
    num = 1 + (u - 1) * z - disc.sqrt()
    out = (num / (2 * z)).map(lambda c: c / u)
    return out.truncate(order)


def ascent_totals_av132(order: int) -> TruncatedSeries:
    f = ascents_av132(order)
    return f.map(lambda c: c.derivative(0).evaluate((1,)))


def schroder_large(order: int) -> TruncatedSeries:
    x = _x(order)
    return (1 - x - (1 - 6 * x + x * x).sqrt()) / 2


def schroder_small(order: int) -> TruncatedSeries:
    x = _x(order)
    return (1 + x - (1 - 6 * x + x * x).sqrt()) / 4


def central_binomial_inv(order: int) -> TruncatedSeries:
    x = _x(order + 1)
    q = 1 - 4 * x * x
    return ((q - q.sqrt()) / (4 * x * x - 2 * x)).truncate(order)


def _q_sqrt(order):
    x = _x(order)
    return x, (1 - 2 * x * x - 3 * x ** 4).sqrt()


def htso(order: int) -> TruncatedSeries:
    x, q = _q_sqrt(order)
    num = 2 * x ** 5 * (1 + x * x + q)
    den = (1 + x * x) ** 2 * (1 - 3 * x * x + (1 - 2 * x * x) * q)
    return num / den


def htszero(order: int) -> TruncatedSeries:
    x, q = _q_sqrt(order)
    num = 2 * x ** 6 * (1 + x * x - q)
    den = 2 - 2 * x ** 2 - 10 * x ** 4 - 6 * x ** 6 + (2 - 6 * x ** 4 - 4 * x ** 6) * q
    return num / den


def htstwo(order: int) -> TruncatedSeries:
    x, q = _q_sqrt(order)
    num = x ** 4 * (2 + 5 * x ** 2 + 3 * x ** 4 - (2 + x ** 2) * q)
    den = 1 - x ** 2 - 5 * x ** 4 - 3 * x ** 6 + (1 + 2 * x ** 2 + x ** 4) * q
    return num / den


# The three bivariate forms are written in U = u^2 and V = v^2 with the odd
# factors split off; these accept any series ring.

def _r_and_d0(U, V):
    d0 = 1 - 6 * U * V - 4 * U * V * V - 4 * U * U * V - 3 * U * U * V * V
    return d0.sqrt(), d0


def s0_even(U, V):
    r, d0 = _r_and_d0(U, V)
    num = 2 * U * V * V * (1 + U) * (1 + 2 * U + U * V - r)
    den = (1 - U * V + r) * (d0 + (1 + 2 * V + U * V) * r)
    return num / den


def s1_over_v(U, V):
    r, d0 = _r_and_d0(U, V)
    num = U * V * (1 + U) * (1 + 2 * V + U * V + r)
    den = (1 + V) * (d0 + (1 - 3 * U * V - 2 * U * U * V) * r)
    return num / den


def s2_over_uv(U, V):
    r, d0 = _r_and_d0(U, V)
    num = V * (2 + 7 * U + 4 * U * V + 4 * U * U + 3 * U * U * V - (2 + U) * r)
    den = d0 + (1 + 2 * V + U * V) * r
    return num / den


def _bivariate(degree: int, build) -> MultiTrunc:
    tu, tv = _graded_vars(degree)
    return MultiTrunc(build(tu, tv, tu * tu, tv * tv))


def s0(degree: int) -> MultiTrunc:
    return _bivariate(degree, lambda u, v, U, V: s0_even(U, V))


def s1(degree: int) -> MultiTrunc:
    return _bivariate(degree, lambda u, v, U, V: v * s1_over_v(U, V))


def s2(degree: int) -> MultiTrunc:
    return _bivariate(degree, lambda u, v, U, V: u * v * s2_over_uv(U, V))


def g_1342(order: int) -> TruncatedSeries:
    x = _x(order)
    q = (1 - 6 * x * x + x ** 4).sqrt()
    return x * (1 - 2 * x + x * x + q) / (2 * (1 - 3 * x + x * x))


def bonds_f(order: int) -> TruncatedSeries:
    """sum_m m! (z + 2 z^2 (u-1) / (1 - z (u-1)))^m, coefficients in u."""
    z, u = poly_series_var(order)
    w = z + 2 * z * z * (u - 1) / (1 - z * (u - 1))
    total = TruncatedSeries([Poly.const(1, 1)], order)
    power = TruncatedSeries([Poly.const(1, 1)], order)
    for m in range(1, order + 1):
        power = power * w
        total = total + power * factorial(m)
    return total


def no_bonds(order: int) -> TruncatedSeries:
    return bonds_f(order).map(lambda c: c.evaluate((0,)))


def distinct_patterns_h(order: int) -> TruncatedSeries:
    """h(z,u) = f(zu, 1/u): u marks the number of distinct (n-1)-patterns."""
    f = bonds_f(order)

    def flip(n, c):
        # u^n c(1/u), a polynomial since deg c < n for n >= 1
        return Poly({(n - e[0],): a for e, a in c.terms.items()}, 1)

    return TruncatedSeries([flip(n, c) for n, c in enumerate(f.coeffs)], order)


def bond_factorial_moment(order: int, k: int) -> TruncatedSeries:
    """[z^n] of the k-th u-derivative of f at u = 1."""
    def d(c):
        for _ in range(k):
            c = c.derivative(0)
        return c.evaluate((1,))
    return bonds_f(order).map(d)


# ------------------------------------------------------------------ assembly


def _solve(rhs: Callable[[TruncatedSeries], TruncatedSeries], order: int) -> TruncatedSeries:
    """Iterate g <- rhs(g) from 0; each pass must fix at least one more coefficient."""
    g = TruncatedSeries([], order)
    agreed = -1
    for _ in range(order + 2):
        nxt = rhs(g)
        k = 0
        while k <= order and nxt[k] == g[k]:
            k += 1
        if k > order:
            return nxt
        if k <= agreed:
            raise ArithmeticError("iteration stalled before reaching the requested order")
        agreed = k
        g = nxt
    raise ArithmeticError("iteration did not converge within order + 2 passes")


def assemble_av1342(order: int) -> TruncatedSeries:
    """Involutions avoiding 1342 from the decomposition into sums, skew sums and simple inflations."""
    x = _x(order)
    f2 = schroder_large(order).substitute_power(2)
    small2 = schroder_small(order).substitute_power(2)
    U = f2
    V = x * x / (1 - x * x)
    dec = x / (1 - x)
    t0 = s0_even(U, V)
    t1 = s1_over_v(U, V) * dec
    t1_swapped = s1_over_v(V, U)
    t2 = s2_over_uv(U, V) * dec

    def rhs(g):
        g_sum = g * dec
        g_skew = small2 * (1 + g)
        return x + g_sum + g_skew + t0 + t1 + t1_swapped * g + t2 * g

    return _solve(rhs, order)


def assemble_av2341(order: int) -> TruncatedSeries:
    """Involutions avoiding 2341, with the extra simple 5274163."""
    x = _x(order)
    c2 = (catalan(order) - 1).substitute_power(2)
    W = x * x / (1 - x * x)
    dec = x / (1 - x)
    g_skew = x * x * (c2 + 1) * (central_binomial_inv(order) + 1)
    fixed = (s0_even(W, W) + 2 * s1_over_v(W, W) * dec
             + s2_over_uv(W, W) * dec * dec + W * W * dec ** 3)

    def rhs(g):
        return x + g * g / (1 + g) + g_skew + fixed

    return _solve(rhs, order)


def av2341_inflation_part(order: int) -> TruncatedSeries:
    """I(x): the simple-inflation contributions of the 2341 assembly."""
    x = _x(order)
    W = x * x / (1 - x * x)
    dec = x / (1 - x)
    return (s0_even(W, W) + 2 * s1_over_v(W, W) * dec
            + s2_over_uv(W, W) * dec * dec + W * W * dec ** 3)


def av2341_functional_residue(order: int) -> TruncatedSeries:
    """b - x - b^2/(1+b) - x^2 (c(x^2)+1)(1+x+x c(x^2))/sqrt(1-4x^2) - I(x)."""
    x = _x(order)
    b = assemble_av2341(order)
    c2 = (catalan(order) - 1).substitute_power(2)
    skew = x * x * (c2 + 1) * (1 + x + x * c2) / (1 - 4 * x * x).sqrt()
    return b - x - b * b / (1 + b) - skew - av2341_inflation_part(order)


_MINPOLY_P = [-1, 8, -17, -24, 151, -162, -221, 624, -231, -684, 801, 60, -627, 334, 101, -158, 48]
_MINPOLY_Q = [1, -5, 3, 28, -60, -11, 159, -131, -130, 256, -48, -169, 125, 16, -51, 18]
_MINPOLY_T = [-1, 6, -4, -50, 141, -55, -326, 514, 26, -725, 561, 223, -540, 206, 113, -120, 32]


def av2341_minpoly_residue(order: int) -> TruncatedSeries:
    """t^2 g^2 + P t g + Q t x with the printed coefficient lists.

    The printed relation is garbled, so this is evidence only; the oracle
    decides correctness.
    """
    x = _x(order)
    g = assemble_av2341(order)
    P = TruncatedSeries(_MINPOLY_P, order)
    Q = TruncatedSeries(_MINPOLY_Q, order)
    t = TruncatedSeries(_MINPOLY_T, order)
    return t * t * g * g + P * t * g + Q * t * x


# ------------------------------------------------------------ exact formulas


def _formula_a(n):
    return Fraction(n + 2, 4) * comb(2 * n, n) - 3 * Fraction(2) ** (2 * n - 3)


def _formula_b(n):
    return ((2 * n - 1) * _c(2 * n - 3, n - 2) - (2 * n + 1) * _c(2 * n - 1, n - 1)
            + (n + 4) * Fraction(2) ** (2 * n - 3))


def _formula_d(n):
    return (Fraction(1, 6) * _c(2 * n + 5, n + 1) * _c(n + 4, 2)
            - Fraction(5, 3) * _c(2 * n + 3, n) * _c(n + 3, 2)
            + Fraction(17, 3) * _c(2 * n + 1, n - 1) * _c(n + 2, 2)
            - 6 * _c(2 * n - 1, n - 2) * _c(n + 1, 2)
            - (n + 1) * Fraction(4) ** (n - 1))


def _c(n, k):
    return comb(n, k) if 0 <= k <= n else 0


def bond_mean(n: int) -> Fraction:
    return Fraction(2 * (n - 1), n)


def bond_variance(n: int) -> Fraction:
    if n < 2:
        return Fraction(0)
    return (Fraction(4 * (n - 2) ** 2, n * (n - 1)) + Fraction(2 * (n - 1), n)
            - Fraction(4 * (n - 1) ** 2, n * n))


EXACT_FORMULAS: dict[str, Callable[[int], Fraction]] = {
    # a_n counts 132 (equivalently 213) occurrences in Av_n(123)
    "a": _formula_a,
    # b_n counts 231 (equivalently 312) occurrences in Av_n(123)
    "b": _formula_b,
    # d_n counts 321 occurrences in Av_n(123)
    "d": _formula_d,
    "av123_231": lambda n: Fraction(n * n - n + 2, 2),
    "layered": lambda n: Fraction(2) ** (n - 1),
    "involutions_av123": lambda n: Fraction(comb(n, n // 2)),
    "num12_av123": lambda n: Fraction(4) ** (n - 1) - comb(2 * n - 1, n),
    "bond_mean": bond_mean,
    "bond_variance": bond_variance,
}


def exact_formula(name: str, n: int) -> Fraction | int:
    if name not in EXACT_FORMULAS:
        raise KeyError(f"unknown formula {name!r}; known: {', '.join(sorted(EXACT_FORMULAS))}")
    if n < 1:
        raise ValueError("n must be at least 1")
    val = Fraction(EXACT_FORMULAS[name](n))
    return int(val) if val.denominator == 1 else val


# ------------------------------------------------------------------- catalog

CATALOG: dict[str, Callable[[int], object]] = {
    "catalan": catalan,
    "av123_simples": av123_simples,
    "motzkin_fixedpoint": motzkin_fixedpoint,
    "simples_compose_check": simples_compose_check,
    "num12_av123": num12_av123,
    "num132": num132,
    "num213_star": num213_star,
    "num213": num213,
    "num231": num231,
    "num312": num312,
    "num321": num321,
    "num231_closed": num231_closed,
    "num321_closed": num321_closed,
    "peaks_H": peaks_H,
    "ascents_av132": ascents_av132,
    "ascent_totals_av132": ascent_totals_av132,
    "schroder_large": schroder_large,
    "schroder_small": schroder_small,
    "central_binomial_inv": central_binomial_inv,
    "htso": htso,
    "htszero": htszero,
    "htstwo": htstwo,
    "s0": s0,
    "s1": s1,
    "s2": s2,
    "g_1342": g_1342,
    "assemble_av1342": assemble_av1342,
    "assemble_av2341": assemble_av2341,
    "bonds_f": bonds_f,
    "no_bonds": no_bonds,
    "distinct_patterns_h": distinct_patterns_h,
}


def catalog(name: str, order: int = 12):
    if name not in CATALOG:
        raise KeyError(f"unknown series {name!r}; known: {', '.join(sorted(CATALOG))}")
    return CATALOG[name](order)


def univariate_names() -> list[str]:
    out = []
    for name in CATALOG:
        s = catalog(name, 2)
        if isinstance(s, TruncatedSeries) and not isinstance(s.coeffs[0], Poly):
            out.append(name)
    return out
