from fractions import Fraction

import pytest

from conftest import ideal_corpus
from golod_lab.exact_linalg import GF2, QQ
from golod_lab.massey_golod import golod_decide
from golod_lab.monomial_core import MonomialIdeal
from golod_lab.series_engine import (
    SeriesTrunc,
    _bar_columns,
    bar_homology_dim,
    expand_rational,
    p_series,
    q_series,
    series_compare,
)

M2 = MonomialIdeal.from_strings(("x", "y"), ["x^2", "x*y", "y^2"])


def test_expand_rational_trivial():
    assert expand_rational([1], [1], 4).coeffs == (1, 0, 0, 0, 0)
    with pytest.raises(ValueError):
        expand_rational([1], [0, 1], 2)


def test_expand_rational_geometric():
    assert expand_rational([1], [1, -2], 6).coeffs == (1, 2, 4, 8, 16, 32, 64)


def test_expand_rational_fractional_result():
    out = expand_rational([1], [2, 1], 2)
    assert out.coeffs == (Fraction(1, 2), Fraction(-1, 4), Fraction(1, 8))


def test_printed_formula_expansion():
    # numerator (1+t)^5, denominator 1 - 8t^2 - 14t^3 - 8t^4 + t^6
    out = expand_rational([1, 5, 10, 10, 5, 1], [1, 0, -8, -14, -8, 0, 1], 5)
    assert out.coeffs == (1, 5, 18, 64, 227, 805)


def test_series_compare():
    p = SeriesTrunc((1, 2, 3), 2)
    q = SeriesTrunc((1, 2, 4), 2)
    assert series_compare(p, q) == (2, -1)
    assert series_compare(q, p) == (2, 1)
    assert series_compare(p, p) is None


def test_q_series_counterexample(example_ideal):
    assert q_series(example_ideal, QQ, 5).coeffs == (1, 5, 18, 64, 227, 806)


def test_q_series_principal():
    ideal = MonomialIdeal.from_strings(("x", "y"), ["x*y"])
    # (1+t)^2 / (1 - t^2) expanded by hand
    assert q_series(ideal, QQ, 3).coeffs == (1, 2, 2, 2)


def test_q_series_zero_ideal():
    ideal = MonomialIdeal(("x", "y", "z"), ())
    assert q_series(ideal, QQ, 4).coeffs == (1, 3, 3, 1, 0)


def test_p_series_zero_ideal_is_koszul():
    ideal = MonomialIdeal(("x", "y", "z"), ())
    p, report = p_series(ideal, QQ, 3)
    assert p.coeffs == (1, 3, 3, 1)
    assert report.passed


def test_p_series_m2_equals_q_series():
    q = q_series(M2, QQ, 6)
    p, report = p_series(M2, QQ, 6)
    assert p.coeffs == q.coeffs == (1, 2, 4, 8, 16, 32, 64)
    assert expand_rational([1, 2, 1], [1, 0, -3, -2], 6).coeffs == p.coeffs
    assert golod_decide(M2, QQ).status == "Golod"


def test_p_series_windowed_policy_m2():
    p, report = p_series(M2, QQ, 5, degree_cap_policy="windowed")
    assert p.coeffs == (1, 2, 4, 8, 16, 32)
    assert report.policy == "windowed"
    assert report.passed


def test_p_series_counterexample(example_ideal):
    p, report = p_series(example_ideal, QQ, 5)
    assert p.coeffs == (1, 5, 18, 64, 227, 805)
    assert report.passed
    q = q_series(example_ideal, QQ, 5)
    assert series_compare(p, q) == (5, -1)


def test_p_series_unknown_policy():
    with pytest.raises(ValueError):
        p_series(M2, QQ, 2, degree_cap_policy="bogus")


def test_p_series_field_choice():
    p2, _ = p_series(M2, GF2, 4)
    assert p2.coeffs == (1, 2, 4, 8, 16)


def test_cap_report_contents(example_ideal):
    _, report = p_series(example_ideal, QQ, 2)
    assert report.policy == "serre"
    assert [s.step for s in report.steps] == [1, 2]
    assert "cap" in report.describe()


def test_bar_differential_squares_to_zero():
    # compose the sparse differentials explicitly on a small ring
    for (j, d) in ((3, 3), (3, 4), (4, 4)):
        cols_j = _bar_columns(M2, QQ, j, d)
        lower_cols = _bar_columns(M2, QQ, j - 1, d)
        for col in cols_j:
            acc = {}
            for r, c in col.items():
                for r2, c2 in lower_cols[r].items():
                    acc[r2] = acc.get(r2, 0) + c * c2
            assert all(v == 0 for v in acc.values())


def test_bar_dimensions_small():
    assert bar_homology_dim(M2, QQ, 0, 0) == 1
    assert bar_homology_dim(M2, QQ, 0, 1) == 0
    assert bar_homology_dim(M2, QQ, 1, 1) == 2
    # the square of the maximal ideal is zero, so Tor_2 sits in degree 2 only
    assert bar_homology_dim(M2, QQ, 2, 3) == 0
    assert sum(bar_homology_dim(M2, QQ, 2, d) for d in range(2, 5)) == 4


def test_bar_agrees_with_resolution_small_ideals():
    ideals = [
        MonomialIdeal.from_strings(("x", "y"), ["x*y"]),
        M2,
        MonomialIdeal.from_strings(("x", "y", "z"), ["x*y", "y*z"]),
        MonomialIdeal.from_strings(("x", "y"), ["x^2", "y^3"]),
        MonomialIdeal.from_strings(("x", "y", "z"), ["x*y*z"]),
    ]
    for ideal in ideals:
        p, _ = p_series(ideal, QQ, 3)
        for j in range(4):
            total = sum(bar_homology_dim(ideal, QQ, j, d) for d in range(j, 3 * j + 2))
            assert total == p.coeffs[j], ideal


def test_bar_counterexample_tor_two(example_ideal):
    total = sum(bar_homology_dim(example_ideal, QQ, 2, d) for d in range(2, 7))
    assert total == 18


def test_serre_inequality_on_corpus():
    # resolution side never exceeds the bound side, coefficient by coefficient
    corpus = ideal_corpus(100, seed=20260811)
    for ideal in corpus[::7]:
        q = q_series(ideal, QQ, 4)
        p, _ = p_series(ideal, QQ, 4)
        assert all(a <= b for a, b in zip(p.coeffs, q.coeffs))


def test_golod_verdict_implies_series_equality():
    ideals = [
        MonomialIdeal.from_strings(("x", "y"), ["x*y"]),
        M2,
        MonomialIdeal.from_strings(("x", "y", "z"), ["x*y", "y*z"]),
    ]
    for ideal in ideals:
        if golod_decide(ideal, QQ).status != "Golod":
            continue
        q = q_series(ideal, QQ, 5)
        p, _ = p_series(ideal, QQ, 5)
        assert p.coeffs == q.coeffs
