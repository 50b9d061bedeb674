"""Restricted growth sequences, set partitions, enumeration, and sampling.

A word p1..pn of positive integers is a restricted growth sequence (RGS)
when p1 = 1 and every later letter exceeds the running maximum by at most
one.  These words are exactly the canonical sequential forms of set
partitions of {1..n} written with blocks ordered by their minima, so the
module carries both views plus the bijection between them.

Enumeration is lexicographic and prefix-splittable; random generation is
the occupancy scheme that drops n balls into a Poisson-like random number
of boxes and reads the word off the first-occupancy labels, which makes
the output exactly uniform over all such words of length n.
"""

from __future__ import annotations

import decimal
from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from random import Random
from typing import Iterator, Sequence

from .errors import EmptyWordError, GrowthViolationError, NotStandardFormError
from .exactnum import bell

__all__ = [
    "RestrictedGrowthSequence",
    "SetPartition",
    "StamState",
    "parse",
    "word_from_string",
    "serialize_word",
    "enumerate_rgs",
    "iter_words",
    "count_words",
    "sample_box_count",
    "stam_trajectory",
    "stam_sample",
]


def _check_word(word: tuple[int, ...]) -> None:
    if not word:
        raise EmptyWordError("a growth sequence must have length >= 1")
    running_max = 0
    for pos, letter in enumerate(word, start=1):
        if letter < 1 or letter > running_max + 1:
            raise GrowthViolationError(pos)
        if letter > running_max:
            running_max = letter


def serialize_word(word: Sequence[int]) -> str:
    """Digit string when all letters fit one digit, else comma-separated."""
    if max(word) <= 9:
        return "".join(str(c) for c in word)
    return ",".join(str(c) for c in word)


def word_from_string(text: str) -> tuple[int, ...]:
    """Inverse of serialize_word; accepts either textual form."""
    text = text.strip()
    if not text:
        raise EmptyWordError("empty word string")
    if "," in text:
        return tuple(int(part) for part in text.split(","))
    if not text.isdigit():
        raise GrowthViolationError(1, f"cannot read word from {text!r}")
    return tuple(int(ch) for ch in text)


@dataclass(frozen=True, slots=True)
class RestrictedGrowthSequence:
    """A validated growth sequence over 1-based positions."""

    word: tuple[int, ...]

    def __post_init__(self):
        _check_word(self.word)

    @property
    def n(self) -> int:
        return len(self.word)

    @property
    def block_count(self) -> int:
        # Letters of a valid word are exactly 1..max, so the maximum
        # letter equals the number of distinct letters.
        return max(self.word)

    def __len__(self) -> int:
        return len(self.word)

    def __iter__(self):
        return iter(self.word)

    def __getitem__(self, i):
        return self.word[i]

    def __str__(self) -> str:
        return serialize_word(self.word)

    def to_partition(self) -> "SetPartition":
        blocks: list[list[int]] = [[] for _ in range(self.block_count)]
        for position, letter in enumerate(self.word, start=1):
            blocks[letter - 1].append(position)
        return SetPartition(tuple(tuple(b) for b in blocks))


@dataclass(frozen=True, slots=True)
class SetPartition:
    """A partition of {1..n} in standard form (ascending block minima)."""

    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if not self.blocks:
            raise NotStandardFormError("a partition needs at least one block")
        seen: set[int] = set()
        previous_min = 0
        for block in self.blocks:
            if not block:
                raise NotStandardFormError("empty block")
            if list(block) != sorted(block):
                raise NotStandardFormError(f"block {block} not sorted")
            if block[0] <= previous_min:
                raise NotStandardFormError("block minima not strictly increasing")
            previous_min = block[0]
            for x in block:
                if x < 1:
                    raise NotStandardFormError(f"element {x} out of range")
                if x in seen:
                    raise NotStandardFormError(f"element {x} repeated")
                seen.add(x)
        if seen != set(range(1, len(seen) + 1)):
            raise NotStandardFormError("blocks do not cover 1..n")

    @property
    def n(self) -> int:
        return sum(len(b) for b in self.blocks)

    def __str__(self) -> str:
        return "|".join("{" + ",".join(str(x) for x in b) + "}" for b in self.blocks)

    def to_sequence(self) -> RestrictedGrowthSequence:
        word = [0] * self.n
        for label, block in enumerate(self.blocks, start=1):
            for position in block:
                word[position - 1] = label
        return RestrictedGrowthSequence(tuple(word))


def parse(word: Sequence[int]) -> RestrictedGrowthSequence:
    """Validate a word, reporting the first violating position on failure."""
    return RestrictedGrowthSequence(tuple(word))


def iter_words(
    n: int, k: int | None = None, prefix: Sequence[int] = ()
) -> Iterator[tuple[int, ...]]:
    """Yield raw word tuples in lexicographic order.

    With k given, only words using exactly k distinct letters are
    produced (pruned during generation, not filtered afterwards).  A
    prefix restricts the stream to its extensions, which is the hook for
    splitting an enumeration across workers.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if k is not None and not 1 <= k <= n:
        raise ValueError("k must satisfy 1 <= k <= n")
    pre = tuple(prefix)
    if len(pre) > n:
        raise ValueError("prefix longer than n")
    running_max = 0
    for pos, letter in enumerate(pre, start=1):
        if letter < 1 or letter > running_max + 1:
            raise GrowthViolationError(pos)
        running_max = max(running_max, letter)
    if k is not None and (running_max > k or running_max + (n - len(pre)) < k):
        return
    cap = n if k is None else k

    start = len(pre)
    word = list(pre) + [0] * (n - start)
    maxes = [0] * n
    m = 0
    for q in range(start):
        m = max(m, word[q])
        maxes[q] = m

    def fill(q0: int) -> None:
        m = maxes[q0 - 1] if q0 > 0 else 0
        for q in range(q0, n):
            if k is not None and m + (n - 1 - q) < k:
                c = m + 1
            else:
                c = 1
            word[q] = c
            if c > m:
                m = c
            maxes[q] = m

    if start == n:
        if k is None or running_max == k:
            yield tuple(word)
        return

    fill(start)
    yield tuple(word)
    q = n - 1
    while q >= start:
        m = maxes[q - 1] if q > 0 else 0
        c = word[q] + 1
        if k is not None and max(m, c) + (n - 1 - q) < k:
            c = k - (n - 1 - q)
        if c <= m + 1 and c <= cap:
            word[q] = c
            maxes[q] = max(m, c)
            fill(q + 1)
            yield tuple(word)
            q = n - 1
        else:
            q -= 1


def enumerate_rgs(
    n: int, k: int | None = None, prefix: Sequence[int] = ()
) -> Iterator[RestrictedGrowthSequence]:
    """Yield every length-n sequence (with exactly k letters if k is given).

    Lexicographic order; see iter_words for the raw-tuple fast path.
    """
    for word in iter_words(n, k, prefix):
        yield RestrictedGrowthSequence(word)


def count_words(n: int, k: int | None = None) -> int:
    """Count the stream of iter_words by actually walking it."""
    return sum(1 for _ in iter_words(n, k))


# ---------------------------------------------------------------------------
# Uniform random generation via the box-occupancy scheme.
# ---------------------------------------------------------------------------

_DECIMAL_DIGITS = 80
_CTX = decimal.Context(prec=_DECIMAL_DIGITS)
_E = _CTX.exp(decimal.Decimal(1))
_RANDOM_BITS = 220  # > 60 decimal digits of uniform resolution


class _BoxCountDistribution:
    """Cumulative weights m^n/m! for m = 1, 2, ... as high-precision decimals.

    The target of a draw is u * e * bell(n); comparing against cumulative
    sums carried to 80 significant digits keeps the total-variation error
    of the sampled law far below 1e-12.  The weight ratio drops under 1/2
    once m >= 2n, so the table stays short.
    """

    def __init__(self, n: int):
        self.n = n
        self.total = _CTX.multiply(_E, decimal.Decimal(bell(n)))
        self._cums: list[decimal.Decimal] = []
        self._acc = Fraction(0)
        self._m = 0
        self._grow()
        # Cover all but ~1e-45 of the mass up front so draws only read the
        # table; lazy extension in draw() remains as a safety net.
        threshold = _CTX.multiply(
            self.total, decimal.Decimal(1) - decimal.Decimal(10) ** -45
        )
        while self._cums[-1] < threshold and self._m < 2 * n + 400:
            self._grow()

    def _grow(self) -> None:
        self._m += 1
        self._acc += Fraction(self._m**self.n, factorial(self._m))
        cum = _CTX.divide(
            decimal.Decimal(self._acc.numerator), decimal.Decimal(self._acc.denominator)
        )
        self._cums.append(cum)

    def draw(self, rng: Random) -> int:
        u = _CTX.divide(
            decimal.Decimal(rng.getrandbits(_RANDOM_BITS)),
            decimal.Decimal(1 << _RANDOM_BITS),
        )
        target = _CTX.multiply(u, self.total)
        # Hard stop far beyond any reachable target: the tail mass past
        # 2n + 400 is smaller than the decimal resolution by hundreds of
        # orders of magnitude.
        stop = 2 * self.n + 400
        while self._cums[-1] < target and self._m < stop:
            self._grow()
        idx = bisect_left(self._cums, target)
        return min(idx + 1, self._m)


_box_tables: dict[int, _BoxCountDistribution] = {}


def sample_box_count(n: int, rng: Random) -> int:
    """Draw the box count M with P(M=m) proportional to m^n / m!."""
    if n < 1:
        raise ValueError("n must be >= 1")
    table = _box_tables.get(n)
    if table is None:
        table = _box_tables[n] = _BoxCountDistribution(n)
    return table.draw(rng)


@dataclass(frozen=True, slots=True)
class StamState:
    """Trajectory of one occupancy run: box count, occupancy counts, word."""

    box_count: int
    occupancy: tuple[int, ...]  # nonempty boxes right after each ball
    word: tuple[int, ...]  # first-occupancy label of each ball's box


def stam_trajectory(n: int, box_count: int, rng: Random) -> StamState:
    """Drop n balls uniformly into box_count boxes; label by first occupancy."""
    if n < 1 or box_count < 1:
        raise ValueError("n and box_count must be >= 1")
    labels: dict[int, int] = {}
    occupancy = []
    word = []
    for _ in range(n):
        box = rng.randrange(box_count)
        label = labels.get(box)
        if label is None:
            label = len(labels) + 1
            labels[box] = label
        word.append(label)
        occupancy.append(len(labels))
    return StamState(box_count, tuple(occupancy), tuple(word))


def stam_sample(n: int, rng: Random) -> RestrictedGrowthSequence:
    """Return one uniformly distributed length-n growth sequence."""
    m = sample_box_count(n, rng)
    state = stam_trajectory(n, m, rng)
    return RestrictedGrowthSequence(state.word)
