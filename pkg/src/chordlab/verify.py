"""Named verification suites run by ``chordlab verify``.

Each suite returns a :class:`SuiteResult`; a failing suite carries the first
counterexample (a coefficient index or a canonical diagram) in its details.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from decimal import Decimal, localcontext
from typing import Callable

from .asymptotics import (
    alien_rational_series,
    alien_rational_series_alt,
    asymptotic_sum,
    connected_counts,
)
from .bijection import phi, phi_inv, recombine, root_share, theta, theta_inv, validate_ztree
from .diagram import format_diagram, root_insertion, root_removal_decomposition
from .enumeration import DiagramClass, all_pending, count_class, filter_class
from .errors import ChordlabError, UsageError
from .series import (
    PowerSeries,
    catalog_series,
    connected_by_reversion,
    double_factorial,
    first_mismatch,
    lagrange_power_coeff,
    x_series,
)

LEVELS = {
    "fast": {"n": 5, "order": 12, "theta": 4},
    "full": {"n": 7, "order": 25, "theta": 5},
}

ALIEN_PRINTED = ("1", "-5/2", "-43/8", "-579/16", "-44477/128", "-5326191/1280")


@dataclass(frozen=True)
class SuiteResult:
    suite: str
    ok: bool
    details: str

    def line(self) -> str:
        return f"SUITE {self.suite} {'PASS' if self.ok else 'FAIL'} {self.details}"


@dataclass(frozen=True)
class Params:
    order: int
    n: int
    sizes: tuple[int, ...] | None = None  # exact sizes for the bijection suites
    theta_max: int = 4


def default_level() -> str:
    level = os.environ.get("CHORDLAB_LEVEL", "fast")
    if level not in LEVELS:
        raise UsageError(f"CHORDLAB_LEVEL must be one of {', '.join(LEVELS)}")
    return level


def _compare(suite: str, lhs: PowerSeries, rhs: PowerSeries, what: str) -> SuiteResult:
    k = first_mismatch(lhs, rhs)
    n = min(lhs.order, rhs.order)
    if k is None:
        return SuiteResult(suite, True, f"{what} exact to order {n}")
    return SuiteResult(suite, False, f"{what} differs at x^{k}: {lhs[k]} != {rhs[k]}")


def _all(suite: str, results: list[SuiteResult]) -> SuiteResult:
    for r in results:
        if not r.ok:
            return SuiteResult(suite, False, r.details)
    return SuiteResult(suite, True, "; ".join(r.details for r in results))


def suite_cd_i(p: Params) -> SuiteResult:
    N = p.order
    d = catalog_series("D", N)
    c = catalog_series("C", N)
    return _compare("cd-i", d, 1 + c.compose((d * d).shift(1).truncate(N)), "D = 1 + C(xD^2)")


def suite_cd_ii(p: Params) -> SuiteResult:
    N = p.order
    d = catalog_series("D", N)
    rhs = (1 + d.shift(1) + 2 * d.derive().shift(2)).truncate(N)
    return _compare("cd-ii", d, rhs, "D = 1 + xD + 2x^2D'")


def suite_cd_iii(p: Params) -> SuiteResult:
    N = p.order
    c = catalog_series("C", N)
    lhs = (2 * c * c.derive()).shift(1).truncate(N)
    rhs = c * (1 + c) - x_series(N)
    return _all("cd-iii", [
        _compare("cd-iii", lhs, rhs, "2xCC' = C(1+C) - x"),
        _compare("cd-iii", c, connected_by_reversion(N), "recurrence C = reverted C"),
    ])


def suite_inde(p: Params) -> SuiteResult:
    N = p.order
    i0 = catalog_series("I0", N + 1)
    rhs = (x_series(N) + (2 * i0.derive() / (1 - i0.truncate(N))).shift(2).truncate(N))
    results = [_compare("inde", i0.truncate(N), rhs, "I0 = x + 2x^2 I0'/(1-I0)")]
    top = min(p.n, 6)
    for n in range(2, top + 1):
        for d in filter_class(DiagramClass.INDECOMPOSABLE, n):
            factors, marked = root_removal_decomposition(d)
            if root_insertion(factors, marked) != d:
                return SuiteResult("inde", False, f"root removal round trip fails at {format_diagram(d)}")
    results.append(SuiteResult("inde", True, f"root removal round trip n<={top}"))
    return _all("inde", results)


def suite_eqpart(p: Params) -> SuiteResult:
    N = p.order
    c = catalog_series("C", N + 1)
    inner = 4 * c.derive().shift(1).truncate(N + 1) - c
    lhs = 1 + (c * inner).shift(-1) / 2
    a = (1 + c) * (1 + c)
    rhs = (a - 1).shift(-1) / 2
    return _compare("eqpart", lhs, rhs, "1 + C(4xC' - C)/(2x) = (A-1)/(2x)")


def suite_z_theorem(p: Params) -> SuiteResult:
    N = p.order
    i0 = catalog_series("I0", N)
    lhs = ((1 / (1 - i0)) ** 2).shift(1).truncate(N)
    # trees grown from the class recursion Z = x D<=2(Z) + x Z
    dle2 = catalog_series("Dle2", N)
    trees = PowerSeries.constant(0, N)
    for _ in range(N):
        trees = (dle2.compose(trees) + trees).shift(1).truncate(N)
    return _all("z-theorem", [
        _compare("z-theorem", trees, lhs, "tree recursion = x/(1-I0)^2"),
        _compare("z-theorem", lhs, catalog_series("Z", N), "x/(1-I0)^2 = xD^2"),
    ])


def suite_coro(p: Params) -> SuiteResult:
    N = p.order
    b = catalog_series("Dle2", N) + x_series(N)
    z = catalog_series("Z", N)
    fixed = b.compose(z).shift(1).truncate(N)
    bprime_z = b.derive().compose(z)
    rhs = x_series(N) / (1 - bprime_z.shift(1).truncate(N))
    return _all("coro", [
        _compare("coro", z, fixed, "Z = xB(Z)"),
        _compare("coro", catalog_series("I0", N), rhs, "I0 = x/(1 - xB'(Z))"),
    ])


def suite_lagrange(p: Params) -> SuiteResult:
    N = p.order
    a = catalog_series("A", N)
    i0 = catalog_series("I0", N + 1)
    for n in range(1, N + 1):
        lhs = lagrange_power_coeff(a, n)
        if lhs != i0[n + 1]:
            return SuiteResult("lagrange", False, f"[x^{n}]A^{n} = {lhs} != [x^{n + 1}]I0 = {i0[n + 1]}")
    return SuiteResult("lagrange", True, f"[x^n]A^n = [x^(n+1)]I0 for 1<=n<={N}")


def suite_pairs_prop(p: Params) -> SuiteResult:
    N = p.order
    c = catalog_series("C", N)
    a = catalog_series("A", N)
    # D_{<=2} assembled from its four disjoint cases, independent of (1+C)^2
    i2 = catalog_series("I2", N)
    dle2 = 1 + c + c * c + i2
    results = [_compare("pairs-prop", dle2 + x_series(N), (1 + c) * (1 + c), "D<=2 + x = (1+C)^2")]
    connected = [1] + [count_class(DiagramClass.CONNECTED, k) for k in range(1, p.n + 1)]
    for n in range(p.n + 1):
        pairs = sum(connected[i] * connected[n - i] for i in range(n + 1))
        two = count_class(DiagramClass.AT_MOST_TWO_COMPONENTS, n) + (n == 1)
        if not pairs == two == a[n]:
            return SuiteResult("pairs-prop", False, f"n={n}: pairs {pairs}, D<=2+[n=1] {two}, A {a[n]}")
    results.append(SuiteResult("pairs-prop", True, f"pair counts = A_n exhaustively for n<={p.n}"))
    return _all("pairs-prop", results)


def check_phi(n: int) -> SuiteResult:
    sources = list(filter_class(DiagramClass.CONNECTED_NO_SINGLE, n))
    targets = set(filter_class(DiagramClass.INDECOMPOSABLE_TWO_COMPONENTS, n))
    images = set()
    for c in sources:
        if recombine(*root_share(c)) != c:
            return SuiteResult("phi", False, f"root share round trip fails at {format_diagram(c)}")
        e = phi(c)
        if e not in targets:
            return SuiteResult("phi", False, f"phi({format_diagram(c)}) = {format_diagram(e)} is not in I2")
        if phi_inv(e) != c:
            return SuiteResult("phi", False, f"phi_inv(phi({format_diagram(c)})) != input")
        images.add(e)
    if len(images) != len(sources):
        return SuiteResult("phi", False, f"n={n}: {len(sources)} diagrams but {len(images)} images")
    for e in targets:
        if phi(phi_inv(e)) != e:
            return SuiteResult("phi", False, f"phi(phi_inv({format_diagram(e)})) != input")
    if images != targets:
        missing = min(targets - images, key=lambda d: d.chords)
        return SuiteResult("phi", False, f"{format_diagram(missing)} has no preimage")
    return SuiteResult("phi", True, f"{len(sources)} diagrams, {len(images)} images, round-trip OK")


def check_theta(n: int) -> SuiteResult:
    expected = math.factorial(n) * catalog_series("Z", n)[n]
    count = 0
    images = set()
    for obj in all_pending(n):
        z = theta(obj)
        try:
            validate_ztree(z, n)
        except ChordlabError as exc:
            return SuiteResult("theta", False, f"invalid tree for {obj}: {exc}")
        if theta_inv(z) != obj:
            return SuiteResult("theta", False, f"theta_inv(theta(p)) != p for {obj}")
        if theta(theta_inv(z)) != z:
            return SuiteResult("theta", False, f"theta(theta_inv(z)) != z for {z.to_json()}")
        images.add(z)
        count += 1
    ok = count == len(images) == expected
    return SuiteResult("theta", ok, f"{count} objects, {len(images)} trees, "
                       + ("round-trip OK" if ok else f"expected {expected}"))


def _sized(suite: str, check: Callable[[int], SuiteResult], sizes) -> SuiteResult:
    results = [check(n) for n in sizes]
    if len(results) == 1:
        return results[0]
    for n, r in zip(sizes, results):
        if not r.ok:
            return SuiteResult(suite, False, f"n={n}: {r.details}")
    return SuiteResult(suite, True, "; ".join(f"n={n}: {r.details}" for n, r in zip(sizes, results)))


def suite_phi(p: Params) -> SuiteResult:
    return _sized("phi", check_phi, p.sizes or tuple(range(2, p.n + 1)))


def suite_theta(p: Params) -> SuiteResult:
    return _sized("theta", check_theta, p.sizes or tuple(range(1, p.theta_max + 1)))


CLASS_SERIES = {
    DiagramClass.ALL: "D",
    DiagramClass.CONNECTED: "C",
    DiagramClass.INDECOMPOSABLE: "I",
    DiagramClass.INDECOMPOSABLE_TWO_COMPONENTS: "I2",
    DiagramClass.AT_MOST_TWO_COMPONENTS: "Dle2",
}


def suite_counts(p: Params) -> SuiteResult:
    top = p.n
    for cls, name in CLASS_SERIES.items():
        s = catalog_series(name, top)
        for n in range(top + 1):
            got = count_class(cls, n)
            if got != s[n]:
                return SuiteResult("counts", False, f"{cls.value} n={n}: enumerated {got}, series {s[n]}")
    return SuiteResult("counts", True, f"D, C, I, I2, D<=2 counts match series for n<={top}")


def suite_alien(p: Params) -> SuiteResult:
    N = max(p.order, 5)
    r = alien_rational_series(N)
    printed = [str(x) for x in r.coeffs[:6]]
    if printed != list(ALIEN_PRINTED):
        return SuiteResult("alien", False, f"coefficients {printed} != {list(ALIEN_PRINTED)}")
    res = _compare("alien", r, alien_rational_series_alt(N), "two closed forms agree")
    if not res.ok:
        return res
    return SuiteResult("alien", True, f"printed coefficients through x^5 reproduced; {res.details}")


def asymptotic_checks() -> list[tuple[str, bool, str]]:
    """The numerical asymptotic claims as ``(name, ok, detail)`` triples."""
    counts = connected_counts(25)
    coeffs = alien_rational_series(4).coeffs
    out = []
    with localcontext() as ctx:
        ctx.prec = 50
        inv_e = 1 / Decimal(1).exp()

        def rel_err(n, m):
            s = asymptotic_sum(n, m, coeffs)
            est = inv_e * Decimal(s.numerator) / Decimal(s.denominator)
            return abs(est - counts[n]) / counts[n]

        for n in (15, 20, 25):
            errs = [rel_err(n, m) for m in range(1, 6)]
            ok = all(a > b for a, b in zip(errs, errs[1:]))
            out.append((f"monotone n={n}", ok, ", ".join(f"{e:.3e}" for e in errs)))
        e2 = rel_err(20, 2)
        out.append(("two-term n=20 < 1%", e2 < Decimal("0.01"), f"{e2:.4e}"))
        gaps = []
        for n in (10, 15, 20, 25):
            ratio = Decimal(counts[n]) / Decimal(double_factorial(2 * n - 1))
            gaps.append(abs(ratio - inv_e * (1 - Decimal(5) / (4 * n))))
        ok = all(a > b for a, b in zip(gaps, gaps[1:]))
        out.append(("probability gap shrinks", ok, ", ".join(f"{g:.3e}" for g in gaps)))
        bound = 3 * inv_e / 400
        out.append(("gap n=20 < 3/(e n^2)", gaps[2] < bound, f"{gaps[2]:.4e} < {bound:.4e}"))
    return out


def suite_asymptotic(p: Params) -> SuiteResult:
    checks = asymptotic_checks()
    bad = [c for c in checks if not c[1]]
    if bad:
        name, _, detail = bad[0]
        return SuiteResult("asymptotic", False, f"{name}: {detail}")
    return SuiteResult("asymptotic", True, f"{len(checks)} checks: " + "; ".join(c[0] for c in checks))


SUITES: dict[str, Callable[[Params], SuiteResult]] = {
    "cd-i": suite_cd_i,
    "cd-ii": suite_cd_ii,
    "cd-iii": suite_cd_iii,
    "inde": suite_inde,
    "eqpart": suite_eqpart,
    "z-theorem": suite_z_theorem,
    "coro": suite_coro,
    "lagrange": suite_lagrange,
    "pairs-prop": suite_pairs_prop,
    "phi": suite_phi,
    "theta": suite_theta,
    "counts": suite_counts,
    "alien": suite_alien,
    "asymptotic": suite_asymptotic,
}


def run_suite(name: str, params: Params) -> SuiteResult:
    if name not in SUITES:
        raise UsageError(f"unknown suite {name!r}")
    return SUITES[name](params)
