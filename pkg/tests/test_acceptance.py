"""End-to-end acceptance run: seven criteria, each timed and reported on one line.

Run directly with ``python3 tests/test_acceptance.py`` or through pytest.
"""

import sys
import time
from fractions import Fraction
from pathlib import Path

import pytest

from chordlab import verify
from chordlab.asymptotics import alien_rational_series, alien_rational_series_alt
from chordlab.enumeration import count_class
from chordlab.oeis import oeis_check
from chordlab.series import PowerSeries, catalog_series

DATA = Path(__file__).parent / "data"
F = Fraction


def criterion_1():
    checks = [
        catalog_series("C", 5) == PowerSeries.from_coeffs([0, 1, 1, 4, 27, 248]),
        catalog_series("I", 5) == PowerSeries.from_coeffs([1, 1, 2, 10, 74, 706]),
        catalog_series("A", 7) == PowerSeries.from_coeffs([1, 2, 3, 10, 63, 558, 6226, 82836]),
    ]
    return all(checks), "C, I, A088221 printed coefficients"


def criterion_2():
    printed = [F(1), F(-5, 2), F(-43, 8), F(-579, 16), F(-44477, 128), F(-5326191, 1280)]
    exact = list(alien_rational_series(5).coeffs) == printed
    forms = alien_rational_series(20) == alien_rational_series_alt(20)
    return exact and forms, f"printed through x^5: {exact}; closed forms agree to 20: {forms}"


IDENTITY_SUITES = ["cd-i", "cd-ii", "cd-iii", "inde", "eqpart", "z-theorem", "coro", "lagrange", "pairs-prop"]


def criterion_3():
    params = verify.Params(order=25, n=4)
    failed = [r.line() for r in (verify.run_suite(s, params) for s in IDENTITY_SUITES) if not r.ok]
    return not failed, failed[0] if failed else f"{len(IDENTITY_SUITES)} identity suites exact to order 25"


def criterion_4():
    result = verify.suite_counts(verify.Params(order=6, n=6))
    headline = count_class("all", 6) == 10395 and count_class("connected", 6) == 2830
    return result.ok and headline, result.details


def criterion_5():
    phi = [verify.check_phi(n) for n in range(2, 7)]
    theta = [verify.check_theta(n) for n in range(1, 5)]
    ok = all(r.ok for r in phi + theta) and theta[-1].details.startswith("864 objects, 864 trees")
    return ok, f"phi n=2..6 {[r.ok for r in phi]}; theta n=1..4: {theta[-1].details}"


def criterion_6():
    checks = verify.asymptotic_checks()
    bad = [name for name, ok, _ in checks if not ok]
    return not bad, "failed: " + ", ".join(bad) if bad else f"{len(checks)} asymptotic checks"


def criterion_7():
    results = [
        oeis_check("A000699", DATA / "b000699.txt", 25),
        oeis_check("A000698", DATA / "b000698.txt", 25),
        oeis_check("A088221", DATA / "b088221.txt", 20),
    ]
    return all(r.ok for r in results), ", ".join(f"{r.sequence}:{r.compared}" for r in results)


CRITERIA = [
    (1, criterion_1, 1.0),
    (2, criterion_2, 1.0),
    (3, criterion_3, 10.0),
    (4, criterion_4, 60.0),
    (5, criterion_5, 120.0),
    (6, criterion_6, 5.0),
    (7, criterion_7, None),
]


def run_criterion(number, check, limit):
    start = time.perf_counter()
    ok, detail = check()
    elapsed = time.perf_counter() - start
    in_time = limit is None or elapsed < limit
    budget = f" (limit {limit:g}s)" if limit else ""
    status = "PASS" if ok and in_time else "FAIL"
    line = f"CRITERION {number} {status} {elapsed:.2f}s{budget} {detail}"
    return ok, in_time, line


@pytest.mark.parametrize("number, check, limit", CRITERIA, ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_criterion(number, check, limit, capsys):
    ok, in_time, line = run_criterion(number, check, limit)
    with capsys.disabled():
        print(f"\n{line}")
    assert ok, line
    assert in_time, line


if __name__ == "__main__":
    results = [run_criterion(*c) for c in CRITERIA]
    for _, _, line in results:
        print(line)
    sys.exit(0 if all(ok and t for ok, t, _ in results) else 1)
