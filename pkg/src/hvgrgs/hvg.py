"""Horizontal visibility graphs of integer sequences.

Two nodes i < j (1-based positions) see each other when every value
strictly between them stays below (strong) or at most at (weak) the
smaller of the two endpoint values; the empty interior of adjacent
positions never blocks.  Inputs may be arbitrary positive-integer words;
nothing here assumes the growth property.

Each mode ships two independent constructions: a quadratic
reference scan straight off the definition, and a single-pass monotone
stack.  They are required to agree and the test suite enforces this
exhaustively at small sizes and on large random words.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import NodeOutOfRangeError

__all__ = [
    "VisibilityGraph",
    "strong_graph",
    "weak_graph",
    "strong_edge_set",
    "weak_edge_set",
    "strong_edge_set_scan",
    "weak_edge_set_scan",
]


@dataclass(frozen=True, slots=True)
class VisibilityGraph:
    """Immutable graph on nodes 1..n with 1-based (i, j) edges, i < j."""

    n: int
    mode: str  # "strong" | "weak"
    edges: frozenset[tuple[int, int]]

    def degree(self, i: int) -> int:
        if not 1 <= i <= self.n:
            raise NodeOutOfRangeError(f"node {i} outside 1..{self.n}")
        return sum(1 for a, b in self.edges if a == i or b == i)

    def degrees(self) -> list[int]:
        counts = [0] * (self.n + 1)
        for a, b in self.edges:
            counts[a] += 1
            counts[b] += 1
        return counts[1:]

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "mode": self.mode,
            "edges": [list(e) for e in sorted(self.edges)],
        }


def _values(seq: Iterable[int]) -> tuple[int, ...]:
    values = tuple(seq)
    if not values:
        raise ValueError("sequence must have length >= 1")
    if any(v < 1 for v in values):
        raise ValueError("letters must be positive integers")
    return values


def strong_edge_set(values: Sequence[int]) -> set[tuple[int, int]]:
    """Strong visible pairs via one monotone-stack pass.

    Pops emit an edge to the new node; an equal-valued top also emits but
    is then dropped, because a node cannot see past an equal twin when
    the comparison is strict.
    """
    edges: set[tuple[int, int]] = set()
    stack: list[int] = []
    for j in range(1, len(values) + 1):
        vj = values[j - 1]
        while stack and values[stack[-1] - 1] < vj:
            edges.add((stack.pop(), j))
        if stack:
            top = stack[-1]
            edges.add((top, j))
            if values[top - 1] == vj:
                stack.pop()
        stack.append(j)
    return edges


def weak_edge_set(values: Sequence[int]) -> set[tuple[int, int]]:
    """Weak visible pairs via a monotone-stack pass.

    Equal-valued nodes stay on the stack: with a non-strict comparison a
    whole run of equal values over lower terrain is mutually visible, so
    the new node connects to the full equal run plus the first strictly
    larger survivor.
    """
    edges: set[tuple[int, int]] = set()
    stack: list[int] = []
    for j in range(1, len(values) + 1):
        vj = values[j - 1]
        while stack and values[stack[-1] - 1] < vj:
            edges.add((stack.pop(), j))
        pos = len(stack) - 1
        while pos >= 0 and values[stack[pos] - 1] == vj:
            edges.add((stack[pos], j))
            pos -= 1
        if pos >= 0:
            edges.add((stack[pos], j))
        stack.append(j)
    return edges


def strong_edge_set_scan(values: Sequence[int]) -> set[tuple[int, int]]:
    """Reference: for each left endpoint walk right with a running maximum.

    Once the running interior maximum reaches the left value nothing
    further can be seen, so the walk stops early; worst case stays
    quadratic (strictly increasing input).
    """
    n = len(values)
    edges: set[tuple[int, int]] = set()
    for i in range(1, n + 1):
        vi = values[i - 1]
        interior = -1  # below every letter; adjacent pairs always connect
        for j in range(i + 1, n + 1):
            vj = values[j - 1]
            if interior < vi and interior < vj:
                edges.add((i, j))
            if vj > interior:
                interior = vj
            if interior >= vi:
                break
    return edges


def weak_edge_set_scan(values: Sequence[int]) -> set[tuple[int, int]]:
    """Reference scan for the non-strict comparison."""
    n = len(values)
    edges: set[tuple[int, int]] = set()
    for i in range(1, n + 1):
        vi = values[i - 1]
        interior = -1
        for j in range(i + 1, n + 1):
            vj = values[j - 1]
            if interior <= vi and interior <= vj:
                edges.add((i, j))
            if vj > interior:
                interior = vj
            if interior > vi:
                break
    return edges


_BUILDERS = {
    ("strong", "stack"): strong_edge_set,
    ("strong", "scan"): strong_edge_set_scan,
    ("weak", "stack"): weak_edge_set,
    ("weak", "scan"): weak_edge_set_scan,
}


def strong_graph(seq: Iterable[int], *, algorithm: str = "stack") -> VisibilityGraph:
    """Strong-mode graph of an arbitrary positive-integer sequence."""
    values = _values(seq)
    return VisibilityGraph(len(values), "strong", frozenset(_BUILDERS[("strong", algorithm)](values)))


def weak_graph(seq: Iterable[int], *, algorithm: str = "stack") -> VisibilityGraph:
    """Weak-mode graph; its edges always contain the strong ones."""
    values = _values(seq)
    return VisibilityGraph(len(values), "weak", frozenset(_BUILDERS[("weak", algorithm)](values)))
