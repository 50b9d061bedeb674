"""Deterministic verification battery: every closed form against its oracle.

Each check compares an analytic formula with an independent route
(exhaustive enumeration, a direct power sum, an alternate recursion) and
reports the first mismatch; all comparisons are exact except the one
explicitly floating-point series estimate.  The battery is what the CLI
``verify`` subcommand runs.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from . import exactnum as en
from . import hvg, moments, series
from .rgs import RestrictedGrowthSequence, iter_words

__all__ = ["CheckResult", "run_checks", "MOMENT_COEFFS", "DISTRIBUTION_POLYS"]


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: str = ""


#: Frozen coefficients c_2..c_9 of the strong edge-sum moment series.
MOMENT_COEFFS: tuple[Fraction, ...] = (
    Fraction(1),
    Fraction(5, 3),
    Fraction(47, 24),
    Fraction(113, 60),
    Fraction(19, 12),
    Fraction(1013, 840),
    Fraction(11429, 13440),
    Fraction(204361, 362880),
)

#: Frozen x^n coefficients of the distribution series, as {q-power: count}.
DISTRIBUTION_POLYS: dict[int, dict[int, int]] = {
    0: {0: 1},
    1: {0: 1},
    2: {1: 2},
    3: {2: 5},
    4: {4: 2, 3: 13},
    5: {5: 18, 4: 34},
    6: {7: 11, 6: 103, 5: 89},
    7: {9: 6, 8: 160, 7: 478, 6: 233},
    8: {11: 2, 10: 206, 9: 1359, 8: 1963, 7: 610},
    9: {12: 230, 11: 3066, 10: 8813, 9: 7441, 8: 1597},
}


@dataclass
class _Sweep:
    """Everything one exhaustive pass over length-n sequences can teach."""

    n: int
    total: int = 0
    strong_counts: dict = field(default_factory=dict)
    extra_counts: dict = field(default_factory=dict)
    edge_sum_by_k: Counter = field(default_factory=Counter)
    v_histogram: Counter = field(default_factory=Counter)
    fast_scan_mismatch: tuple | None = None
    structural_violation: tuple | None = None


def _sweep(n: int) -> _Sweep:
    data = _Sweep(n)
    interior_pairs = {
        (i, j) for i in range(2, n + 1) for j in range(i + 2, n + 1)
    }
    for word in iter_words(n):
        data.total += 1
        strong = hvg.strong_edge_set(word)
        weak = hvg.weak_edge_set(word)
        if data.fast_scan_mismatch is None:
            if strong != hvg.strong_edge_set_scan(word):
                data.fast_scan_mismatch = (word, "strong")
            elif weak != hvg.weak_edge_set_scan(word):
                data.fast_scan_mismatch = (word, "weak")
        if data.structural_violation is None:
            if not strong <= weak:
                data.structural_violation = (word, "strong edge set exceeds weak")
            elif len(strong) != n - 1 + len(strong & interior_pairs):
                data.structural_violation = (word, "interior decomposition")
            elif len(weak) > n * (n - 1) // 2:
                data.structural_violation = (word, "weak count bound")
        for e in strong:
            data.strong_counts[e] = data.strong_counts.get(e, 0) + 1
        for e in weak - strong:
            data.extra_counts[e] = data.extra_counts.get(e, 0) + 1
        v = len(strong)
        data.edge_sum_by_k[max(word)] += v
        data.v_histogram[v] += 1
    return data


def _check_stirling_bell(_):
    for n in range(21):
        if sum(en.stirling2(n, k) for k in range(n + 1)) != en.bell(n):
            return CheckResult("stirling-rows-sum-to-bell", False, f"n={n}")
    return CheckResult("stirling-rows-sum-to-bell", True, "n <= 20")


def _check_bell_recursion(_):
    for n in range(20):
        rhs = sum(en.binomial(n, k) * en.bell(k) for k in range(n + 1))
        if en.bell(n + 1) != rhs:
            return CheckResult("bell-binomial-recursion", False, f"n={n}")
    return CheckResult("bell-binomial-recursion", True, "n <= 19")


def _check_stirling_series(_):
    for k in range(13):
        ogf = series.stirling_ogf(k, 12)
        for n in range(13):
            if ogf.coefficient(n).constant_value() != en.stirling2(n, k):
                return CheckResult(
                    "stirling-generating-series", False, f"n={n}, k={k}"
                )
    return CheckResult("stirling-generating-series", True, "n <= 12")


def _check_power_sum(_):
    for n in range(1, 11):
        for t in range(51):
            if en.faulhaber_psi(n, t) != en.faulhaber_psi_bernoulli(n, t):
                return CheckResult("power-sum-closed-form", False, f"n={n}, t={t}")
    return CheckResult("power-sum-closed-form", True, "n <= 10, t <= 50")


def _check_theta_series(_):
    for n in range(11):
        for t in range(11):
            exact = en.theta(n, t)
            estimate = en.theta_dobinski_estimate(n, t)
            if abs(estimate - exact) > 1e-9 * max(1, exact):
                return CheckResult(
                    "shifted-bell-series-estimate", False, f"n={n}, t={t}"
                )
    return CheckResult("shifted-bell-series-estimate", True, "rel err < 1e-9")


def _check_theta_zero(_):
    for n in range(21):
        if en.theta(n, 0) != en.bell(n):
            return CheckResult("shifted-bell-at-zero", False, f"n={n}")
    return CheckResult("shifted-bell-at-zero", True, "n <= 20")


def _check_counts(sweeps):
    for n, data in sweeps.items():
        if data.total != en.bell(n):
            return CheckResult(
                "enumeration-counts", False, f"n={n}: {data.total} != bell"
            )
        by_k = Counter()
        for k in range(1, n + 1):
            by_k[k] = sum(1 for _ in iter_words(n, k))
        if any(by_k[k] != en.stirling2(n, k) for k in range(1, n + 1)):
            return CheckResult("enumeration-counts", False, f"n={n}: class sizes")
    top = max(sweeps)
    return CheckResult("enumeration-counts", True, f"n <= {top}")


def _check_round_trip(sweeps):
    top = min(8, max(sweeps))
    for n in range(1, top + 1):
        for word in iter_words(n):
            seq = RestrictedGrowthSequence(word)
            if seq.to_partition().to_sequence() != seq:
                return CheckResult("partition-round-trip", False, str(seq))
    return CheckResult("partition-round-trip", True, f"n <= {top}")


def _check_fast_vs_scan(sweeps):
    for n, data in sweeps.items():
        if data.fast_scan_mismatch is not None:
            word, mode = data.fast_scan_mismatch
            return CheckResult(
                "visibility-fast-vs-reference", False, f"{mode} at {word}"
            )
    return CheckResult("visibility-fast-vs-reference", True, f"n <= {max(sweeps)}")


def _check_structural(sweeps):
    for n, data in sweeps.items():
        if data.structural_violation is not None:
            word, what = data.structural_violation
            return CheckResult("visibility-structural-invariants", False, f"{what} at {word}")
    return CheckResult("visibility-structural-invariants", True, f"n <= {max(sweeps)}")


def _check_strong_probabilities(sweeps):
    for n, data in sweeps.items():
        if n < 2:
            continue
        B = en.bell(n)
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                closed = moments.strong_edge_prob(n, i, j).value
                counted = Fraction(data.strong_counts.get((i, j), 0), B)
                if closed != counted:
                    return CheckResult(
                        "strong-probability-vs-enumeration",
                        False,
                        f"(n,i,j)=({n},{i},{j}): {closed} != {counted}",
                    )
    return CheckResult(
        "strong-probability-vs-enumeration", True, f"all pairs, n <= {max(sweeps)}"
    )


def _check_weak_extra_probabilities(sweeps):
    for n, data in sweeps.items():
        if n < 3:
            continue
        B = en.bell(n)
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                closed = moments.weak_minus_strong_prob(n, i, j).value
                counted = Fraction(data.extra_counts.get((i, j), 0), B)
                if closed != counted:
                    return CheckResult(
                        "weak-extra-probability-vs-enumeration",
                        False,
                        f"(n,i,j)=({n},{i},{j}): {closed} != {counted}",
                    )
    return CheckResult(
        "weak-extra-probability-vs-enumeration", True, f"all pairs, n <= {max(sweeps)}"
    )


def _check_first_node_formula(sweeps):
    for n, data in sweeps.items():
        if n < 3:
            continue
        B = en.bell(n)
        for j in range(3, n + 1):
            expected = Fraction(en.bell(n - j + 2), B)
            closed = moments.weak_minus_strong_prob(n, 1, j).value
            counted = Fraction(data.extra_counts.get((1, j), 0), B)
            if not closed == counted == expected:
                return CheckResult(
                    "first-node-weak-probability", False, f"(n,j)=({n},{j})"
                )
    return CheckResult("first-node-weak-probability", True, f"n <= {max(sweeps)}")


def _check_degree_consistency(sweeps):
    for n in sweeps:
        for mode in ("strong", "weak"):
            degree_sum = sum(
                moments.expected_degree(n, i, mode) for i in range(1, n + 1)
            )
            if degree_sum != 2 * moments.expected_edges(n, mode):
                return CheckResult(
                    "degree-edge-consistency", False, f"n={n}, mode={mode}"
                )
    return CheckResult("degree-edge-consistency", True, f"n <= {max(sweeps)}, both modes")


def _check_distribution_fixture(_):
    sp = series.sum_p(9)
    for n, poly in DISTRIBUTION_POLYS.items():
        want = [0] * (max(poly) + 1)
        for d, c in poly.items():
            want[d] = c
        if sp.coefficient(n) != series.QPoly(want):
            return CheckResult("distribution-series-fixture", False, f"x^{n}")
    return CheckResult("distribution-series-fixture", True, "orders 0..9")


def _check_moment_fixture(_):
    got = series.q_moment_egf(9)
    for n, (a, b) in enumerate(zip(got, MOMENT_COEFFS), start=2):
        if a != b:
            return CheckResult("moment-series-fixture", False, f"coefficient x^{n}")
    return CheckResult("moment-series-fixture", True, "orders 2..9")


def _check_closed_form_series(_):
    for k in range(1, 7):
        if series.q_k(k, 12) != series.q_k_closed_form(k, 12):
            return CheckResult("edge-sum-closed-form", False, f"k={k}")
    return CheckResult("edge-sum-closed-form", True, "k <= 6, order 12")


def _check_recurrence_residual(_):
    for k in range(2, 7):
        residual = series.recp_residual(k, 12)
        if not residual.is_zero():
            bad = next(n for n in range(13) if residual.coefficient(n))
            return CheckResult(
                "series-recurrence-residual", False, f"k={k}, first nonzero x^{bad}"
            )
    return CheckResult("series-recurrence-residual", True, "k in 2..6, order 12")


def _check_cross_route(_):
    coeffs = series.q_moment_egf(12)
    for n in range(2, 13):
        via_series = coeffs[n - 2] * factorial(n) / en.bell(n)
        if moments.expected_edges(n, "strong") != via_series:
            return CheckResult("moment-probability-cross-route", False, f"n={n}")
    return CheckResult("moment-probability-cross-route", True, "n in 2..12")


def _check_edge_sums(sweeps):
    top = min(9, max(sweeps))
    for n in range(1, top + 1):
        data = sweeps[n]
        for k in range(1, n + 1):
            coeff = series.q_k(k, top).coefficient(n).constant_value()
            if coeff != data.edge_sum_by_k.get(k, 0):
                return CheckResult("edge-sum-vs-enumeration", False, f"n={n}, k={k}")
    return CheckResult("edge-sum-vs-enumeration", True, f"n <= {top}")


def _check_distribution_extremes(sweeps):
    top = min(9, max(sweeps))
    sp = series.sum_p(top)
    for n in range(2, top + 1):
        poly = sp.coefficient(n)
        hist = sweeps[n].v_histogram
        if poly.degree != max(hist) or poly.lowest_power() != n - 1:
            return CheckResult("distribution-extremes", False, f"n={n}")
        if poly.lowest_power() != min(hist):
            return CheckResult("distribution-extremes", False, f"n={n} min power")
    return CheckResult("distribution-extremes", True, f"n <= {top}")


_CHECKS = (
    _check_stirling_bell,
    _check_bell_recursion,
    _check_stirling_series,
    _check_power_sum,
    _check_theta_series,
    _check_theta_zero,
    _check_counts,
    _check_round_trip,
    _check_fast_vs_scan,
    _check_structural,
    _check_strong_probabilities,
    _check_weak_extra_probabilities,
    _check_first_node_formula,
    _check_degree_consistency,
    _check_distribution_fixture,
    _check_moment_fixture,
    _check_closed_form_series,
    _check_recurrence_residual,
    _check_cross_route,
    _check_edge_sums,
    _check_distribution_extremes,
)


def run_checks(max_n: int = 9) -> list[CheckResult]:
    """Run the battery with enumeration-based checks capped at max_n."""
    if max_n < 3:
        raise ValueError("max_n must be >= 3")
    sweeps = {n: _sweep(n) for n in range(1, max_n + 1)}
    return [check(sweeps) for check in _CHECKS]
