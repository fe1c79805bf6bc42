import csv
import io
from decimal import Decimal, localcontext
from fractions import Fraction

import pytest

from chordlab.asymptotics import (
    alien_rational_series,
    alien_rational_series_alt,
    asymptotic_sum,
    connected_params,
    connectedness_report,
    exact_Cn,
    render_report,
)
from chordlab.enumeration import count_class
from chordlab.errors import OrderError, UsageError
from oracles import alien_coefficients, odd_double_factorial

F = Fraction
PRINTED = [F(1), F(-5, 2), F(-43, 8), F(-579, 16), F(-44477, 128), F(-5326191, 1280)]

# regression values, cross-checked against the list-based oracle below
THROUGH_12 = PRINTED + [
    F(-180306541, 3072),
    F(-203331297947, 215040),
    F(-58726239094693, 3440640),
    F(-781618285277957, 2293760),
    F(-1025587838964854273, 137625600),
    F(-35763822710356866613, 201850880),
    F(-330773478104531041960421, 72666316800),
]


def _inv_e():
    return 1 / Decimal(1).exp()


def _rel_err(n, m):
    exact = exact_Cn(n)
    est = _inv_e() * Decimal(asymptotic_sum(n, m).numerator) / Decimal(asymptotic_sum(n, m).denominator)
    return abs(est - exact) / exact


def test_printed_coefficients():
    assert list(alien_rational_series(5).coeffs) == PRINTED
    assert alien_rational_series(0).coeffs == (1,)


def test_regression_through_order_12():
    r = list(alien_rational_series(12).coeffs)
    assert r == THROUGH_12
    assert r == alien_coefficients(12)


def test_two_closed_forms_agree():
    assert alien_rational_series(20) == alien_rational_series_alt(20)


def test_sign_pattern():
    r = alien_rational_series(14).coeffs
    assert r[0] > 0
    assert all(c < 0 for c in r[1:])


def test_params():
    p = connected_params(4)
    assert (p.alpha, p.beta) == (2, F(1, 2))
    assert p.coeffs == tuple(PRINTED[:4])


def test_exact_counts():
    assert exact_Cn(1) == 1
    assert exact_Cn(5) == 248
    assert exact_Cn(6) == 2830 == count_class("connected", 6)
    with pytest.raises(OrderError):
        exact_Cn(0)


def test_asymptotic_sum_examples():
    assert asymptotic_sum(5, 2) == F(1365, 2)
    for n in range(1, 8):
        assert asymptotic_sum(n, 1) == odd_double_factorial(n)
    with pytest.raises(OrderError):
        asymptotic_sum(3, 4)
    with pytest.raises(OrderError):
        asymptotic_sum(3, 0)


def test_two_term_estimate_at_twenty():
    assert _rel_err(20, 2) < Decimal("0.01")


@pytest.mark.parametrize("n", [15, 20, 25])
def test_error_decreases_with_terms(n):
    with localcontext() as ctx:
        ctx.prec = 60
        errs = [_rel_err(n, m) for m in range(1, 6)]
    assert all(a > b for a, b in zip(errs, errs[1:]))


def _probability_gap(n):
    with localcontext() as ctx:
        ctx.prec = 60
        exact = Decimal(exact_Cn(n)) / Decimal(odd_double_factorial(n))
        return abs(exact - _inv_e() * (1 - Decimal(5) / (4 * n)))


def test_probability_gap_shrinks():
    gaps = [_probability_gap(n) for n in (10, 15, 20, 25)]
    assert all(a > b for a, b in zip(gaps, gaps[1:]))
    assert _probability_gap(20) < 3 * _inv_e() / 400


def test_report_rows():
    rows = connectedness_report(20, 3)
    assert [r.n for r in rows] == list(range(2, 21))
    assert rows[0].exact == F(1, 3)
    last = rows[-1]
    assert last.exact == F(exact_Cn(20), odd_double_factorial(20))
    assert last.estimate_errors[1] > last.estimate_errors[2] > last.estimate_errors[3]
    # m is capped by n
    assert sorted(rows[0].estimates) == [1, 2]


def test_report_rendering():
    rows = connectedness_report(3, 2, digits=8)
    text = render_report(rows, 2, 8, "csv")
    table = list(csv.reader(io.StringIO(text)))
    assert table[0] == ["n", "exact", "leading", "leading_err", "est_m1", "err_m1", "est_m2", "err_m2"]
    assert table[1][:2] == ["2", "0.33333333"]
    assert table[1][4] == "0.36787944"
    plain = render_report(rows, 2, 8, "text").splitlines()
    assert len(plain) == 3 and plain[0].split()[0] == "n"
    with pytest.raises(UsageError):
        render_report(rows, 2, 8, "xml")


def test_report_precision():
    row = connectedness_report(2, 1, digits=40)[0]
    assert str(row.estimates[1]).startswith("0.36787944117144232159552377016146086744")


def test_report_rejects_small_inputs():
    with pytest.raises(UsageError):
        connectedness_report(1, 1)
    with pytest.raises(UsageError):
        connectedness_report(5, 0)
