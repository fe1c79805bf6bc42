"""Asymptotic expansion of the connected chord diagram counts.

The coefficient series of the expansion is ``R(x) / (e sqrt(2 pi))`` with

    R(x) = x / C(x) * exp(1 - ((1 + C)^2 - 1) / (2x)),

which has rational coefficients once the factor ``e`` is pulled out of the
exponential.  Translated back to counts this gives

    C_n ~ e^{-1} * sum_k r_k (2(n-k) - 1)!!.

Transcendental constants are only evaluated when rendering a report.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from decimal import Decimal, localcontext
from fractions import Fraction

from .errors import OrderError, UsageError
from .series import PowerSeries, catalog_series, connected_counts, double_factorial


@dataclass(frozen=True)
class AsymptoticParams:
    """``a_n ~ alpha^(n+beta) Gamma(n+beta) (c_0 + c_1/(alpha(n+beta-1)) + ...)``.

    ``coeffs`` holds ``r_k = e sqrt(2 pi) c_k``.
    """

    alpha: Fraction
    beta: Fraction
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if self.alpha <= 0:
            raise UsageError("alpha must be positive")


def _exponent(order: int) -> PowerSeries:
    """``1 - (A - 1)/(2x)`` to ``order``; its constant term vanishes."""
    c = catalog_series("C", order + 1)
    a = (1 + c) * (1 + c)
    return (1 - (a - 1).shift(-1) / 2).truncate(order)


def alien_rational_series(order: int) -> PowerSeries:
    if order < 0:
        raise OrderError(f"negative order {order}")
    c = catalog_series("C", order + 1)
    return c.shift(-1).reciprocal() * _exponent(order).exp()


def alien_rational_series_alt(order: int) -> PowerSeries:
    """Same series from the ``1 + C - 2xC'`` prefactor."""
    if order < 0:
        raise OrderError(f"negative order {order}")
    c = catalog_series("C", order + 1)
    pre = (1 + c - 2 * c.derive().shift(1)).truncate(order)
    return pre * _exponent(order).exp()


def connected_params(terms: int) -> AsymptoticParams:
    r = alien_rational_series(terms - 1)
    return AsymptoticParams(Fraction(2), Fraction(1, 2), r.coeffs)


def exact_Cn(n: int) -> int:
    if n < 1:
        raise OrderError("n must be positive")
    return connected_counts(n)[n]


def asymptotic_sum(n: int, m: int, coeffs: tuple[Fraction, ...] | None = None) -> Fraction:
    """``sum_{k<m} r_k (2(n-k)-1)!!``; ``e^{-1}`` times this estimates ``C_n``."""
    if m < 1:
        raise OrderError("need at least one term")
    if m > n:
        raise OrderError(f"m={m} terms exceeds n={n}")
    if coeffs is None:
        coeffs = alien_rational_series(m - 1).coeffs
    return sum((coeffs[k] * double_factorial(2 * (n - k) - 1) for k in range(m)), Fraction(0))


@dataclass
class ReportRow:
    n: int
    exact: Fraction
    leading: Decimal
    error: Decimal
    estimates: dict[int, Decimal] = field(default_factory=dict)
    estimate_errors: dict[int, Decimal] = field(default_factory=dict)


def _to_decimal(q: Fraction) -> Decimal:
    return Decimal(q.numerator) / Decimal(q.denominator)


def connectedness_report(n_max: int, m_max: int, digits: int = 30) -> list[ReportRow]:
    """Exact connectedness probability against the asymptotic estimates, n = 2..n_max."""
    if n_max < 2:
        raise UsageError("n_max must be at least 2")
    if m_max < 1:
        raise UsageError("m_max must be at least 1")
    coeffs = alien_rational_series(m_max - 1).coeffs
    counts = connected_counts(n_max)
    rows = []
    with localcontext() as ctx:
        ctx.prec = max(50, digits + 20)
        inv_e = 1 / Decimal(1).exp()
        for n in range(2, n_max + 1):
            total = double_factorial(2 * n - 1)
            exact = Fraction(counts[n], total)
            exact_d = _to_decimal(exact)
            leading = inv_e * (1 - Decimal(5) / (4 * n))
            row = ReportRow(n, exact, leading, abs(exact_d - leading))
            for m in range(1, min(m_max, n) + 1):
                est = inv_e * _to_decimal(asymptotic_sum(n, m, coeffs) / total)
                row.estimates[m] = est
                row.estimate_errors[m] = abs(est - exact_d)
            rows.append(row)
    return rows


def _fmt(x: Decimal, digits: int) -> str:
    return f"{x:.{digits}f}"


def render_report(rows: list[ReportRow], m_max: int, digits: int = 30, fmt: str = "text") -> str:
    header = ["n", "exact", "leading", "leading_err"]
    for m in range(1, m_max + 1):
        header += [f"est_m{m}", f"err_m{m}"]
    table = []
    for r in rows:
        line = [str(r.n), _fmt(_to_decimal(r.exact), digits), _fmt(r.leading, digits), _fmt(r.error, digits)]
        for m in range(1, m_max + 1):
            if m in r.estimates:
                line += [_fmt(r.estimates[m], digits), _fmt(r.estimate_errors[m], digits)]
            else:
                line += ["", ""]
        table.append(line)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        w.writerows(table)
        return buf.getvalue()
    if fmt != "text":
        raise UsageError(f"unknown format {fmt!r}")
    widths = [max(len(h), *(len(t[i]) for t in table)) for i, h in enumerate(header)]
    lines = ["  ".join(h.rjust(w) for h, w in zip(header, widths))]
    lines += ["  ".join(c.rjust(w) for c, w in zip(t, widths)) for t in table]
    return "\n".join(lines) + "\n"
