"""Closed-form edge probabilities for uniform random growth sequences.

For a uniform random length-n growth sequence, the probability that a
given node pair is an edge of its visibility graph is an explicit
rational built from partition-count tables, power sums and shifted
Bell sums; everything here evaluates those forms exactly and pairs them
with a brute-force enumeration oracle that certifies them at desk scale.

Pairs split into three classes: the first node with anything two or more
steps away is never a strong edge (the value 1 at position 1 can always
be matched below), adjacent pairs always are, and only the interior
class needs the full formula.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from . import hvg
from .errors import InvalidPairError, NodeOutOfRangeError, TooLargeError
from .exactnum import bell, faulhaber_psi, stirling2, theta
from .rgs import iter_words

__all__ = [
    "PairClass",
    "EdgeProbability",
    "MODES",
    "classify_pair",
    "strong_edge_prob",
    "weak_minus_strong_prob",
    "weak_edge_prob",
    "edge_prob",
    "expected_degree",
    "expected_edges",
    "oracle_edge_prob",
    "oracle_pair_counts",
    "ENUMERATION_GUARD",
]

MODES = ("strong", "weak", "weak-minus-strong")

#: Exhaustive computations refuse to run past this many sequences.
ENUMERATION_GUARD = 10**7


class PairClass(Enum):
    FIRST = "first"  # (1, j) with j >= 3
    ADJACENT = "adjacent"  # (i, i+1)
    INTERIOR = "interior"  # 2 <= i, j > i+1


@dataclass(frozen=True, slots=True)
class EdgeProbability:
    value: Fraction
    n: int
    i: int
    j: int
    mode: str

    def __str__(self) -> str:
        if self.value.denominator == 1:
            return str(self.value.numerator)
        return f"{self.value.numerator}/{self.value.denominator}"


def _check_pair(n: int, i: int, j: int) -> None:
    if not 1 <= i < j <= n:
        raise InvalidPairError(f"pair ({i},{j}) does not satisfy 1 <= i < j <= {n}")


def classify_pair(n: int, i: int, j: int) -> PairClass:
    _check_pair(n, i, j)
    if j == i + 1:
        return PairClass.ADJACENT
    if i == 1:
        return PairClass.FIRST
    return PairClass.INTERIOR


def _strong_interior_weight(n: int, i: int, j: int) -> int:
    """bell(n) times the strong edge probability of an interior pair.

    One term per count t of distinct letters before position i; the
    shifted Bell sums carry the sequence tail, the power sums the values
    strictly between the endpoints.
    """
    d = j - i - 1
    gap_psi = lambda t: faulhaber_psi(d + 1, t)  # 0^d + 1^d + ... + t^d
    total = 0
    for t in range(1, i):
        s = stirling2(i - 1, t)
        inner = sum(-a * (a - 1) ** d + gap_psi(a - 1) for a in range(1, t + 1))
        total += s * (
            theta(n - j + 1, t) * gap_psi(t - 1)
            + theta(n - j, t) * inner
            + theta(n - j + 1, t + 1) * t**d
            + theta(n - j, t + 1) * (-(t + 1) * t**d + gap_psi(t))
        )
    return total


def _weak_extra_interior_weight(n: int, i: int, j: int) -> int:
    """bell(n) times the probability of weak-but-not-strong, interior pair."""
    d = j - i - 1
    gap_psi = lambda t: faulhaber_psi(d + 1, t)
    total = 0
    for t in range(1, i):
        s = stirling2(i - 1, t)
        total += s * (
            theta(n - j + 1, t) * t**d
            + theta(n - j, t) * (-(t ** (d + 1)) + t**d + 2 * gap_psi(t - 1))
            + theta(n - j + 1, t + 1) * ((t + 1) ** d - t**d)
            + theta(n - j, t + 1) * ((t + 1) * t**d - t * (t + 1) ** d)
        )
    return total


def strong_edge_prob(n: int, i: int, j: int) -> EdgeProbability:
    """Probability that (i, j) is a strong edge; exact rational."""
    if n < 2:
        raise InvalidPairError("strong_edge_prob requires n >= 2")
    kind = classify_pair(n, i, j)
    if kind is PairClass.ADJACENT:
        value = Fraction(1)
    elif kind is PairClass.FIRST:
        value = Fraction(0)
    else:
        value = Fraction(_strong_interior_weight(n, i, j), bell(n))
    return EdgeProbability(value, n, i, j, "strong")


def weak_minus_strong_prob(n: int, i: int, j: int) -> EdgeProbability:
    """Probability that (i, j) is a weak edge but not a strong one."""
    if n < 3:
        raise InvalidPairError("weak_minus_strong_prob requires n >= 3")
    kind = classify_pair(n, i, j)
    if kind is PairClass.ADJACENT:
        value = Fraction(0)
    elif kind is PairClass.FIRST:
        value = Fraction(bell(n - j + i + 1), bell(n))
    else:
        value = Fraction(_weak_extra_interior_weight(n, i, j), bell(n))
    return EdgeProbability(value, n, i, j, "weak-minus-strong")


def weak_edge_prob(n: int, i: int, j: int) -> EdgeProbability:
    """Probability that (i, j) is a weak edge: strong plus the difference."""
    strong = strong_edge_prob(n, i, j)
    if n < 3:
        # With n = 2 the only pair is adjacent and certain in both modes.
        return EdgeProbability(strong.value, n, i, j, "weak")
    extra = weak_minus_strong_prob(n, i, j)
    return EdgeProbability(strong.value + extra.value, n, i, j, "weak")


def edge_prob(n: int, i: int, j: int, mode: str) -> EdgeProbability:
    if mode == "strong":
        return strong_edge_prob(n, i, j)
    if mode == "weak":
        return weak_edge_prob(n, i, j)
    if mode == "weak-minus-strong":
        return weak_minus_strong_prob(n, i, j)
    raise ValueError(f"unknown mode {mode!r}")


def expected_degree(n: int, i: int, mode: str) -> Fraction:
    """Expected degree of node i, by linearity over all pairs through i."""
    if mode not in ("strong", "weak"):
        raise ValueError(f"unknown mode {mode!r}")
    if not 1 <= i <= n:
        raise NodeOutOfRangeError(f"node {i} outside 1..{n}")
    total = Fraction(0)
    for other in range(1, n + 1):
        if other == i:
            continue
        a, b = min(i, other), max(i, other)
        total += edge_prob(n, a, b, mode).value
    return total


def expected_edges(n: int, mode: str) -> Fraction:
    """Expected edge count of the mode's graph for a uniform sequence."""
    if mode not in ("strong", "weak"):
        raise ValueError(f"unknown mode {mode!r}")
    if n < 1:
        raise ValueError("n must be >= 1")
    total = Fraction(n - 1)  # adjacent pairs are always edges
    for i in range(2, n + 1):
        for j in range(i + 2, n + 1):
            total += strong_edge_prob(n, i, j).value
    if mode == "weak" and n >= 3:
        for j in range(3, n + 1):
            total += weak_minus_strong_prob(n, 1, j).value
        for i in range(2, n + 1):
            for j in range(i + 2, n + 1):
                total += weak_minus_strong_prob(n, i, j).value
    return total


def _guard(n: int) -> None:
    if bell(n) > ENUMERATION_GUARD:
        raise TooLargeError(
            f"bell({n}) = {bell(n)} exceeds the enumeration guard {ENUMERATION_GUARD}"
        )


def oracle_pair_counts(
    n: int,
) -> tuple[dict[tuple[int, int], int], dict[tuple[int, int], int]]:
    """Exact pair counts over every length-n sequence in one sweep.

    Returns (strong counts, weak-minus-strong counts): how many sequences
    contain each pair as a strong edge, and as a weak-but-not-strong one.
    """
    _guard(n)
    strong_counts: dict[tuple[int, int], int] = {}
    extra_counts: dict[tuple[int, int], int] = {}
    for word in iter_words(n):
        strong = hvg.strong_edge_set(word)
        for e in strong:
            strong_counts[e] = strong_counts.get(e, 0) + 1
        for e in hvg.weak_edge_set(word) - strong:
            extra_counts[e] = extra_counts.get(e, 0) + 1
    return strong_counts, extra_counts


def oracle_edge_prob(n: int, i: int, j: int, mode: str) -> EdgeProbability:
    """Brute-force edge probability by enumerating every sequence."""
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    _check_pair(n, i, j)
    _guard(n)
    pair = (i, j)
    count = 0
    for word in iter_words(n):
        strong = hvg.strong_edge_set(word)
        if mode == "strong":
            count += pair in strong
        elif mode == "weak":
            count += pair in strong or pair in hvg.weak_edge_set(word)
        else:
            count += pair not in strong and pair in hvg.weak_edge_set(word)
    return EdgeProbability(Fraction(count, bell(n)), n, i, j, mode)
