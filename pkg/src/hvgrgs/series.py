"""Truncated power series in x whose coefficients are polynomials in q.

This is the engine behind the distribution and moment generating
functions of the edge count: the x^n coefficient of the master series
(sum_p) is the polynomial that counts length-n growth sequences by their
strong edge count, and differentiating in q at q = 1 turns counts into
edge sums.  All arithmetic is exact; division exists only when the
divisor has a nonzero constant term, which every divisor used here has.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Callable, Iterable

__all__ = [
    "QPoly",
    "TruncatedSeries",
    "mtilde",
    "p_k",
    "sum_p",
    "q_k",
    "q_k_closed_form",
    "t_k",
    "q_moment_egf",
    "recp_residual",
    "stirling_ogf",
]


def _to_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"expected int or Fraction, got {type(value).__name__}")


class QPoly:
    """Polynomial in q over exact rationals; trailing zeros are trimmed."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Fraction | int] = ()):
        cs = [_to_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def constant(cls, value) -> "QPoly":
        return cls((value,))

    @classmethod
    def q_power(cls, d: int, value=1) -> "QPoly":
        return cls((0,) * d + (value,))

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        return isinstance(other, QPoly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    @property
    def degree(self) -> int:
        """Degree in q; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant in q")
        return self.coeffs[0] if self.coeffs else Fraction(0)

    def lowest_power(self) -> int:
        for d, c in enumerate(self.coeffs):
            if c:
                return d
        raise ValueError("zero polynomial has no lowest power")

    def __add__(self, other: "QPoly") -> "QPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return QPoly([x + y for x, y in zip(a, b)] + list(a[len(b):]))

    def __sub__(self, other: "QPoly") -> "QPoly":
        return self + (-other)

    def __neg__(self) -> "QPoly":
        return QPoly(tuple(-c for c in self.coeffs))

    def __mul__(self, other: "QPoly") -> "QPoly":
        if not self.coeffs or not other.coeffs:
            return QPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    out[i + j] += a * b
        return QPoly(out)

    def scale(self, value) -> "QPoly":
        v = _to_fraction(value)
        return QPoly(tuple(c * v for c in self.coeffs))

    def derivative(self) -> "QPoly":
        return QPoly(tuple(d * c for d, c in enumerate(self.coeffs))[1:])

    def value_at_one(self) -> Fraction:
        return sum(self.coeffs, Fraction(0))

    def to_json_dict(self) -> dict[str, str]:
        return {
            f"q^{d}": format_fraction(c)
            for d, c in enumerate(self.coeffs)
            if c
        } or {"q^0": "0"}

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for d, c in enumerate(self.coeffs):
            if not c:
                continue
            if d == 0:
                parts.append(format_fraction(c))
            elif d == 1:
                parts.append(f"{format_fraction(c)}*q")
            else:
                parts.append(f"{format_fraction(c)}*q^{d}")
        return " + ".join(parts)


def format_fraction(value: Fraction) -> str:
    """Lowest-terms p/q string; bare integer when the denominator is 1."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


_Q = QPoly.q_power(1)
_ZERO = QPoly()
_ONE = QPoly.constant(1)


class TruncatedSeries:
    """Series in x modulo x^(order+1) with QPoly coefficients."""

    __slots__ = ("order", "coeffs")

    def __init__(self, coeffs: Iterable[QPoly], order: int):
        cs = list(coeffs)
        if len(cs) < order + 1:
            cs.extend([_ZERO] * (order + 1 - len(cs)))
        self.order = order
        self.coeffs: tuple[QPoly, ...] = tuple(cs[: order + 1])

    # -- constructors ------------------------------------------------------
    @classmethod
    def zero(cls, order: int) -> "TruncatedSeries":
        return cls((), order)

    @classmethod
    def one(cls, order: int) -> "TruncatedSeries":
        return cls((_ONE,), order)

    @classmethod
    def constant(cls, coeff, order: int) -> "TruncatedSeries":
        if not isinstance(coeff, QPoly):
            coeff = QPoly.constant(coeff)
        return cls((coeff,), order)

    @classmethod
    def monomial(cls, power: int, coeff, order: int) -> "TruncatedSeries":
        if not isinstance(coeff, QPoly):
            coeff = QPoly.constant(coeff)
        return cls((_ZERO,) * power + (coeff,), order)

    @classmethod
    def one_minus_cx(cls, c, order: int) -> "TruncatedSeries":
        return cls((_ONE, QPoly.constant(-_to_fraction(c))), order)

    # -- ring operations ---------------------------------------------------
    def _check(self, other: "TruncatedSeries") -> None:
        if self.order != other.order:
            raise ValueError("mixed truncation orders")

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check(other)
        return TruncatedSeries(
            (a + b for a, b in zip(self.coeffs, other.coeffs)), self.order
        )

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check(other)
        return TruncatedSeries(
            (a - b for a, b in zip(self.coeffs, other.coeffs)), self.order
        )

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries((-a for a in self.coeffs), self.order)

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check(other)
        out = [_ZERO] * (self.order + 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j in range(self.order + 1 - i):
                b = other.coeffs[j]
                if b:
                    out[i + j] = out[i + j] + a * b
        return TruncatedSeries(out, self.order)

    def scale(self, coeff) -> "TruncatedSeries":
        if not isinstance(coeff, QPoly):
            coeff = QPoly.constant(coeff)
        return TruncatedSeries((c * coeff for c in self.coeffs), self.order)

    def shift(self, powers: int = 1) -> "TruncatedSeries":
        """Multiply by x^powers."""
        return TruncatedSeries((_ZERO,) * powers + self.coeffs, self.order)

    def inverse(self) -> "TruncatedSeries":
        """Multiplicative inverse; the constant term must be a nonzero rational."""
        head = self.coeffs[0]
        if not head.is_constant() or not head:
            raise ZeroDivisionError(
                "series inverse requires a nonzero constant leading coefficient"
            )
        inv_head = QPoly.constant(1 / head.constant_value())
        out = [inv_head]
        for n in range(1, self.order + 1):
            acc = _ZERO
            for m in range(1, n + 1):
                a = self.coeffs[m]
                if a:
                    acc = acc + a * out[n - m]
            out.append(-(acc * inv_head))
        return TruncatedSeries(out, self.order)

    def __truediv__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return self * other.inverse()

    # -- queries -----------------------------------------------------------
    def coefficient(self, n: int) -> QPoly:
        if not 0 <= n <= self.order:
            raise IndexError(f"coefficient {n} outside truncation order {self.order}")
        return self.coeffs[n]

    def is_zero(self) -> bool:
        return all(not c for c in self.coeffs)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TruncatedSeries)
            and self.order == other.order
            and self.coeffs == other.coeffs
        )

    def __hash__(self) -> int:
        return hash((self.order, self.coeffs))

    def map_coeffs(self, fn: Callable[[QPoly], QPoly]) -> "TruncatedSeries":
        return TruncatedSeries((fn(c) for c in self.coeffs), self.order)

    def derivative_q_at_one(self) -> "TruncatedSeries":
        return self.map_coeffs(
            lambda c: QPoly.constant(c.derivative().value_at_one())
        )

    def at_q1(self) -> list[Fraction]:
        return [c.value_at_one() for c in self.coeffs]

    def rational_coeffs(self) -> list[Fraction]:
        return [c.constant_value() for c in self.coeffs]

    def to_json_dict(self) -> dict:
        return {
            "order": self.order,
            "coeffs": [
                {"x": n, "poly": c.to_json_dict()}
                for n, c in enumerate(self.coeffs)
                if c
            ],
        }

    def __repr__(self) -> str:
        parts = [f"({c!r})*x^{n}" for n, c in enumerate(self.coeffs) if c]
        return " + ".join(parts) if parts else "0"


# ---------------------------------------------------------------------------
# Generating functions of growth sequences weighted by strong edge count.
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def mtilde(k: int, order: int = 12) -> TruncatedSeries:
    """Weight series of bounded-alphabet words bracketed by their top letter.

    Defined by the recursion m_k = m_{k-1} + x*q*m_{k-1}^2 / (1 - x*m_{k-1})
    from the constant q; at q = 1 it collapses to 1/(1-(k-1)x).
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if k == 1:
        return TruncatedSeries.constant(_Q, order)
    prev = mtilde(k - 1, order)
    one = TruncatedSeries.one(order)
    correction = (prev * prev).scale(_Q).shift() / (one - prev.shift())
    return prev + correction


@lru_cache(maxsize=None)
def p_k(k: int, order: int = 12) -> TruncatedSeries:
    """Generating series of k-letter growth sequences by length and edges.

    The x^n coefficient is the polynomial summing q^(strong edge count)
    over all length-n sequences with exactly k distinct letters; its
    lowest x term is x^k.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    one = TruncatedSeries.one(order)
    mk = mtilde(k, order)
    result = TruncatedSeries.monomial(k, 1, order) / (one - mk.shift())
    for j in range(1, k):
        mj = mtilde(j, order)
        denom = one - mj.shift()
        result = result * (mj / (denom * denom))
    return result


def sum_p(order: int = 12) -> TruncatedSeries:
    """Edge-count distribution series over all growth sequences.

    1 plus the sum of p_k over k; the x^n coefficient sums q^(edge count)
    over every length-n sequence.
    """
    if order < 0:
        raise ValueError("order must be >= 0")
    total = TruncatedSeries.one(order)
    for k in range(1, order + 1):
        total = total + p_k(k, order)
    return total


@lru_cache(maxsize=None)
def q_k(k: int, order: int = 12) -> TruncatedSeries:
    """Edge-sum series: x^n coefficient is the total strong edge count
    over all length-n sequences with exactly k letters (constant in q)."""
    return p_k(k, order).derivative_q_at_one()


def _linear_ratio_sum(count: int, order: int) -> TruncatedSeries:
    """1 + x * sum_{j=1}^{count} (1-jx)/(1-(j-1)x)."""
    total = TruncatedSeries.one(order)
    for j in range(1, count + 1):
        ratio = TruncatedSeries.one_minus_cx(j, order) / TruncatedSeries.one_minus_cx(
            j - 1, order
        )
        total = total + ratio.shift()
    return total


@lru_cache(maxsize=None)
def stirling_ogf(k: int, order: int = 12) -> TruncatedSeries:
    """x^k / prod_{j=1}^k (1-jx): counts k-letter sequences by length."""
    if k < 0:
        raise ValueError("k must be >= 0")
    result = TruncatedSeries.monomial(k, 1, order)
    for j in range(1, min(k, order) + 1):
        result = result / TruncatedSeries.one_minus_cx(j, order)
    return result


def q_k_closed_form(k: int, order: int = 12) -> TruncatedSeries:
    """Closed form for q_k as an explicit rational function; must match."""
    if k < 1:
        raise ValueError("k must be >= 1")

    def f(i: int) -> TruncatedSeries:
        numer = _linear_ratio_sum(i - 1, order)
        denom = TruncatedSeries.one_minus_cx(i - 1, order) * TruncatedSeries.one_minus_cx(
            i, order
        )
        return numer / denom

    fs = [f(i) for i in range(1, k + 1)]
    h = TruncatedSeries.zero(order)
    for i in range(1, k):
        h = h + fs[i - 1] * TruncatedSeries.one_minus_cx(i, order)
        h = h + fs[i - 1].shift().scale(2)
    h = h + fs[k - 1].shift()
    return stirling_ogf(k, order) * h


@lru_cache(maxsize=None)
def t_k(k: int, order: int = 12) -> TruncatedSeries:
    """The auxiliary rational series driving the edge-sum recurrence."""
    if k < 2:
        raise ValueError("t_k requires k >= 2")
    numer = _linear_ratio_sum(k - 2, order)
    return stirling_ogf(k, order) * numer / TruncatedSeries.one_minus_cx(k - 1, order)


def q_moment_egf(order: int = 12) -> list[Fraction]:
    """Coefficients c_2..c_order with c_n = (total edge sum at length n)/n!.

    Equivalently c_n * n! / bell(n) is the expected strong edge count of
    a uniform length-n sequence.
    """
    if order < 2:
        raise ValueError("order must be >= 2")
    total = TruncatedSeries.zero(order)
    for k in range(1, order + 1):
        total = total + q_k(k, order)
    return [
        total.coefficient(n).constant_value() / factorial(n)
        for n in range(2, order + 1)
    ]


def recp_residual(k: int, order: int = 12) -> TruncatedSeries:
    """Residual of the recurrence tying q_k, q_{k-1}, t_k and t_{k+1}.

    The recurrence certified here is
        (1-kx) q_k - x q_{k-1}
            = (1-kx) [ t_k + t_{k+1} (1-(k+1)x) / (1-(k-1)x) ],
    which follows from the closed form of q_k; the residual of the two
    sides must vanish identically.
    """
    if k < 2:
        raise ValueError("recp_residual requires k >= 2")
    lin_k = TruncatedSeries.one_minus_cx(k, order)
    tail = (
        t_k(k + 1, order)
        * TruncatedSeries.one_minus_cx(k + 1, order)
        / TruncatedSeries.one_minus_cx(k - 1, order)
    )
    rhs = lin_k * (t_k(k, order) + tail)
    lhs = lin_k * q_k(k, order) - q_k(k - 1, order).shift()
    return lhs - rhs
