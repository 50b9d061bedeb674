"""Exact combinatorial number tables and evaluators.

Everything here is integer or rational arithmetic on Python ints and
``fractions.Fraction``; no floating point enters any result.  The only
float in the module is the optional Dobinski-style series estimate,
which exists purely as a numeric cross-check of the finite formulas.
"""

from __future__ import annotations

import math
from fractions import Fraction

__all__ = [
    "NumberTables",
    "binomial",
    "stirling2",
    "bell",
    "bernoulli_plus",
    "faulhaber_psi",
    "faulhaber_psi_bernoulli",
    "theta",
    "theta_dobinski_estimate",
    "tables",
]

DEFAULT_N_MAX = 64


def binomial(n: int, k: int) -> int:
    """Binomial coefficient C(n, k); zero when k > n."""
    if n < 0 or k < 0:
        raise ValueError("binomial expects non-negative arguments")
    return math.comb(n, k)


class NumberTables:
    """Memoized Stirling-partition / Bell / Bernoulli tables.

    Rows are appended lazily up to the largest index requested; entries
    already computed are never touched again, so a table instance may be
    shared freely between threads once built.
    """

    def __init__(self, n_max: int = DEFAULT_N_MAX):
        self._stirling: list[list[int]] = [[1]]
        self._bell: list[int] = [1]
        # Convention with the +1/2 value at index 1 (see bernoulli_plus).
        self._bernoulli: list[Fraction] = [Fraction(1)]
        self.grow(n_max)

    @property
    def n_max(self) -> int:
        return len(self._bell) - 1

    def grow(self, n_max: int) -> None:
        """Extend all tables so indices up to n_max are available."""
        while len(self._stirling) <= n_max:
            n = len(self._stirling)
            prev = self._stirling[-1]
            row = [0] * (n + 1)
            for k in range(1, n):
                row[k] = k * prev[k] + prev[k - 1]
            row[n] = 1
            self._stirling.append(row)
            self._bell.append(sum(row))
        while len(self._bernoulli) <= n_max:
            n = len(self._bernoulli)
            acc = sum(
                binomial(n + 1, j) * self._bernoulli[j] for j in range(n)
            )
            self._bernoulli.append(Fraction(n + 1 - acc, n + 1))

    def stirling2(self, n: int, k: int) -> int:
        """Number of partitions of an n-set into k blocks."""
        if n < 0 or k < 0:
            raise ValueError("stirling2 expects non-negative arguments")
        if k > n:
            return 0
        self.grow(n)
        return self._stirling[n][k]

    def bell(self, n: int) -> int:
        """Number of partitions of an n-set."""
        if n < 0:
            raise ValueError("bell expects a non-negative argument")
        self.grow(n)
        return self._bell[n]

    def bernoulli_plus(self, ell: int) -> Fraction:
        """Bernoulli number in the convention with value +1/2 at index 1.

        This is the convention under which the power sum 0 + 1 + ... + t
        of (n-1)-th powers matches the closed form in faulhaber_psi_bernoulli
        for every n >= 2.
        """
        if ell < 0:
            raise ValueError("bernoulli_plus expects a non-negative argument")
        self.grow(ell)
        return self._bernoulli[ell]

    def stirling_row(self, n: int) -> tuple[int, ...]:
        self.grow(n)
        return tuple(self._stirling[n])


#: Shared default tables; grown on demand by the module-level functions.
tables = NumberTables()


def stirling2(n: int, k: int) -> int:
    return tables.stirling2(n, k)


def bell(n: int) -> int:
    return tables.bell(n)


def bernoulli_plus(ell: int) -> Fraction:
    return tables.bernoulli_plus(ell)


def faulhaber_psi(n: int, t: int) -> int:
    """Power sum 0^(n-1) + 1^(n-1) + ... + t^(n-1), with 0^0 = 1.

    This direct sum is the primary definition; faulhaber_psi_bernoulli
    provides the closed-form cross-check.
    """
    if n < 1:
        raise ValueError("faulhaber_psi requires n >= 1")
    if t < 0:
        raise ValueError("faulhaber_psi requires t >= 0")
    return sum(k ** (n - 1) for k in range(t + 1))


def faulhaber_psi_bernoulli(n: int, t: int) -> int:
    """Bernoulli closed form for faulhaber_psi; must agree exactly.

    The classical formula covers the sum starting at k = 1; the k = 0
    term of the power sum contributes 1 exactly when n == 1 (0^0 = 1),
    so it is added separately.
    """
    if n < 1:
        raise ValueError("faulhaber_psi_bernoulli requires n >= 1")
    if t < 0:
        raise ValueError("faulhaber_psi_bernoulli requires t >= 0")
    acc = sum(
        binomial(n, ell) * Fraction(t) ** (n - ell) * bernoulli_plus(ell)
        for ell in range(n)
    )
    value = acc / n + (1 if n == 1 else 0)
    if value.denominator != 1:
        raise ArithmeticError(f"closed form not an integer at n={n}, t={t}")
    return value.numerator


def theta(n: int, t: int) -> int:
    """Shifted Bell-number sum: sum of C(n,l) * t^(n-l) * bell(l) over l.

    Equals the convergent series (1/e) * sum_{m >= t} m^n / (m-t)!, the
    shift-by-t generalization of the Bell-number series; the finite form
    here is exact and is the one used everywhere in this package.
    """
    if n < 0 or t < 0:
        raise ValueError("theta expects non-negative arguments")
    return sum(binomial(n, ell) * t ** (n - ell) * bell(ell) for ell in range(n + 1))


def theta_dobinski_estimate(n: int, t: int, terms: int = 200) -> float:
    """Float estimate of theta(n, t) from its series; cross-check only.

    The partial sum is accumulated exactly before the single division by
    e, so the only error sources are the series truncation and the final
    float conversion.
    """
    if n < 0 or t < 0:
        raise ValueError("theta_dobinski_estimate expects non-negative arguments")
    partial = Fraction(0)
    for m in range(t, t + terms + 1):
        partial += Fraction(m**n, math.factorial(m - t))
    return float(partial) / math.e
