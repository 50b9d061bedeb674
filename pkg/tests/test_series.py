from fractions import Fraction

import pytest

from hvgrgs import exactnum as en
from hvgrgs import hvg
from hvgrgs import series as sr
from hvgrgs.rgs import iter_words
from hvgrgs.verify import DISTRIBUTION_POLYS, MOMENT_COEFFS


def poly(d: dict[int, int]) -> sr.QPoly:
    coeffs = [0] * (max(d) + 1)
    for power, value in d.items():
        coeffs[power] = value
    return sr.QPoly(coeffs)


class TestQPoly:
    def test_arithmetic(self):
        a = poly({0: 1, 2: 3})
        b = poly({1: 2})
        assert a + b == poly({0: 1, 1: 2, 2: 3})
        assert a * b == poly({1: 2, 3: 6})
        assert (a - a) == sr.QPoly()
        assert not sr.QPoly()

    def test_derivative_and_eval(self):
        a = poly({1: 2, 3: 4})
        assert a.derivative() == poly({0: 2, 2: 12})
        assert a.value_at_one() == 6
        assert a.lowest_power() == 1
        assert a.degree == 3

    def test_trailing_zeros_trimmed(self):
        assert sr.QPoly((1, 0, 0)) == sr.QPoly((1,))
        assert sr.QPoly((0, 0)).degree == -1


class TestTruncatedSeries:
    def test_inverse_of_one_minus_x(self):
        one_minus_x = sr.TruncatedSeries.one_minus_cx(1, 8)
        inv = one_minus_x.inverse()
        assert inv.rational_coeffs() == [Fraction(1)] * 9
        assert (one_minus_x * inv) == sr.TruncatedSeries.one(8)

    def test_division_requires_unit_constant(self):
        x = sr.TruncatedSeries.monomial(1, 1, 6)
        with pytest.raises(ZeroDivisionError):
            x.inverse()
        q_head = sr.TruncatedSeries.constant(sr.QPoly.q_power(1), 6)
        with pytest.raises(ZeroDivisionError):
            q_head.inverse()

    def test_mixed_orders_rejected(self):
        with pytest.raises(ValueError):
            sr.TruncatedSeries.one(4) + sr.TruncatedSeries.one(5)


def test_mtilde_base_case():
    m1 = sr.mtilde(1, 8)
    assert m1.coefficient(0) == sr.QPoly.q_power(1)
    assert all(not m1.coefficient(i) for i in range(1, 9))


def test_mtilde_constant_term_and_q1_collapse():
    for k in range(1, 8):
        mk = sr.mtilde(k, 10)
        assert mk.coefficient(0) == sr.QPoly.q_power(1)
        assert mk.at_q1() == [Fraction((k - 1) ** n) for n in range(11)]


def test_mtilde_first_order_coefficient():
    assert sr.mtilde(2, 6).coefficient(1) == sr.QPoly.q_power(3)


def test_p_k_at_q1_counts_classes():
    for k in range(1, 13):
        at1 = sr.p_k(k, 12).at_q1()
        for n in range(13):
            assert at1[n] == en.stirling2(n, k), (n, k)


def test_p_1_explicit():
    # single-letter words: one sequence per length, n-1 edges
    p1 = sr.p_k(1, 8)
    assert p1.coefficient(0) == sr.QPoly()
    assert p1.coefficient(1) == sr.QPoly.constant(1)
    for n in range(2, 9):
        assert p1.coefficient(n) == sr.QPoly.q_power(n - 1)


def test_stirling_ogf_matches_tables():
    for k in range(13):
        ogf = sr.stirling_ogf(k, 12)
        for n in range(13):
            assert ogf.coefficient(n).constant_value() == en.stirling2(n, k)


def test_sum_p_reproduces_printed_polynomials():
    sp = sr.sum_p(9)
    for n, spec in DISTRIBUTION_POLYS.items():
        assert sp.coefficient(n) == poly(spec), n


def test_sum_p_matches_enumeration():
    sp = sr.sum_p(8)
    for n in range(1, 9):
        counted: dict[int, int] = {}
        for word in iter_words(n):
            v = len(hvg.strong_edge_set(word))
            counted[v] = counted.get(v, 0) + 1
        assert sp.coefficient(n) == poly(counted), n


def test_sum_p_extreme_powers():
    sp = sr.sum_p(9)
    for n in range(2, 10):
        assert sp.coefficient(n).lowest_power() == n - 1


def test_q_k_base_is_geometric_square():
    q1 = sr.q_k(1, 10)
    assert q1.rational_coeffs() == [Fraction(max(n - 1, 0)) for n in range(11)]


def test_q_k_diagonal_value():
    for k in range(1, 9):
        assert sr.q_k(k, 8).coefficient(k).constant_value() == k - 1


def test_q_k_coefficients_are_counts():
    for k in range(1, 8):
        for c in sr.q_k(k, 10).rational_coeffs():
            assert c.denominator == 1 and c >= 0


def test_q_k_matches_enumerated_edge_sums():
    for n in range(1, 9):
        sums: dict[int, int] = {}
        for word in iter_words(n):
            k = max(word)
            sums[k] = sums.get(k, 0) + len(hvg.strong_edge_set(word))
        for k in range(1, n + 1):
            assert sr.q_k(k, 8).coefficient(n).constant_value() == sums.get(k, 0)


@pytest.mark.parametrize("k", range(1, 7))
def test_closed_form_equals_derivative_route(k):
    assert sr.q_k(k, 12) == sr.q_k_closed_form(k, 12)


def test_t_k_examples():
    t2 = sr.t_k(2, 10)
    # x^2/((1-x)(1-2x)) * 1/(1-x), checked against a direct expansion
    direct = (
        sr.TruncatedSeries.monomial(2, 1, 10)
        / sr.TruncatedSeries.one_minus_cx(1, 10)
        / sr.TruncatedSeries.one_minus_cx(2, 10)
        / sr.TruncatedSeries.one_minus_cx(1, 10)
    )
    assert t2 == direct
    for k in range(2, 7):
        coeffs = sr.t_k(k, 12).rational_coeffs()
        assert all(c == 0 for c in coeffs[:k]) and coeffs[k] == 1
        assert all(c >= 0 for c in coeffs)  # regression observation
    with pytest.raises(ValueError):
        sr.t_k(1, 8)


def test_moment_coefficients_fixture():
    assert tuple(sr.q_moment_egf(9)) == MOMENT_COEFFS


def test_moment_coefficient_larger_order():
    coeffs = sr.q_moment_egf(12)
    assert coeffs[:8] == list(MOMENT_COEFFS)
    # c_4 * 4! / bell(4) is the expected strong edge count at n=4
    assert coeffs[2] * 24 / en.bell(4) == Fraction(47, 15)


@pytest.mark.parametrize("k", range(2, 7))
def test_recurrence_residual_vanishes(k):
    assert sr.recp_residual(k, 12).is_zero()


def test_series_json_shape():
    payload = sr.sum_p(3).to_json_dict()
    assert payload["order"] == 3
    assert payload["coeffs"][2] == {"x": 2, "poly": {"q^1": "2"}}
