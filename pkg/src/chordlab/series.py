"""Truncated formal power series with exact rational coefficients.

A :class:`PowerSeries` knows its coefficients ``c_0 .. c_N`` exactly and
nothing beyond ``x^N``.  Every operation returns a series whose order is the
largest one still determined by its inputs, so precision is never invented.

The second half of the module is a catalog of the chord diagram generating
functions (all diagrams, connected, indecomposable, ...).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .errors import (
    CompositionError,
    DivisionError,
    DomainError,
    OrderError,
    UsageError,
)

Scalar = int | Fraction


@dataclass(frozen=True)
class PowerSeries:
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if not self.coeffs:
            raise OrderError("a power series needs at least the constant term")
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[Scalar], order: int | None = None) -> PowerSeries:
        """Build a series from leading coefficients, zero padded up to ``order``."""
        cs = [Fraction(c) for c in coeffs]
        if order is None:
            order = len(cs) - 1
        if order < 0:
            raise OrderError(f"negative order {order}")
        cs = cs[: order + 1] + [Fraction(0)] * (order + 1 - len(cs))
        return cls(tuple(cs))

    @classmethod
    def constant(cls, value: Scalar, order: int) -> PowerSeries:
        return cls.from_coeffs([value], order)

    @classmethod
    def monomial(cls, k: int, order: int, value: Scalar = 1) -> PowerSeries:
        cs = [Fraction(0)] * (order + 1)
        if k <= order:
            cs[k] = Fraction(value)
        return cls(tuple(cs))

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, n: int) -> Fraction:
        if not 0 <= n <= self.order:
            raise OrderError(f"coefficient x^{n} is beyond truncation order {self.order}")
        return self.coeffs[n]

    def __iter__(self):
        return iter(self.coeffs)

    def truncate(self, order: int) -> PowerSeries:
        if order > self.order:
            raise OrderError(f"cannot raise order {self.order} to {order}")
        return PowerSeries(self.coeffs[: order + 1])

    def shift(self, k: int) -> PowerSeries:
        """Multiply by ``x^k``; negative ``k`` divides and needs vanishing low terms."""
        if k >= 0:
            return PowerSeries((Fraction(0),) * k + self.coeffs)
        if any(self.coeffs[: -k]):
            raise DivisionError(f"series is not divisible by x^{-k}")
        if self.order + k < 0:
            raise OrderError("no coefficients left after division by x")
        return PowerSeries(self.coeffs[-k:])

    def _lift(self, other) -> PowerSeries:
        if isinstance(other, PowerSeries):
            return other
        if isinstance(other, (int, Fraction)):
            return PowerSeries.constant(other, self.order)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        n = min(self.order, other.order)
        return PowerSeries(tuple(self.coeffs[i] + other.coeffs[i] for i in range(n + 1)))

    __radd__ = __add__

    def __neg__(self) -> PowerSeries:
        return PowerSeries(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return PowerSeries(tuple(c * other for c in self.coeffs))
        if not isinstance(other, PowerSeries):
            return NotImplemented
        n = min(self.order, other.order)
        a, b = self.coeffs, other.coeffs
        out = []
        for k in range(n + 1):
            out.append(sum((a[i] * b[k - i] for i in range(k + 1) if a[i] and b[k - i]), Fraction(0)))
        return PowerSeries(tuple(out))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise DivisionError("division by zero scalar")
            return PowerSeries(tuple(c / other for c in self.coeffs))
        if not isinstance(other, PowerSeries):
            return NotImplemented
        return self * other.reciprocal()

    def __rtruediv__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other * self.reciprocal()

    def __pow__(self, k: int) -> PowerSeries:
        if k < 0:
            return self.reciprocal() ** (-k)
        result = PowerSeries.constant(1, self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def reciprocal(self) -> PowerSeries:
        a = self.coeffs
        if a[0] == 0:
            raise DivisionError("series with zero constant term is not invertible")
        inv0 = 1 / a[0]
        out = [inv0]
        for k in range(1, len(a)):
            s = sum((a[i] * out[k - i] for i in range(1, k + 1) if a[i]), Fraction(0))
            out.append(-s * inv0)
        return PowerSeries(tuple(out))

    def derive(self) -> PowerSeries:
        if self.order < 1:
            raise OrderError("derivative of an order-0 series carries no information")
        return PowerSeries(tuple(k * self.coeffs[k] for k in range(1, len(self.coeffs))))

    def compose(self, inner: PowerSeries) -> PowerSeries:
        """Return ``self(inner(x))``; ``inner`` must have zero constant term."""
        if inner.coeffs[0] != 0:
            raise CompositionError("inner series must have zero constant term")
        n = min(self.order, inner.order)
        inner = inner.truncate(n)
        result = PowerSeries.constant(self.coeffs[n], n)
        for k in range(n - 1, -1, -1):
            result = result * inner + self.coeffs[k]
        return result

    def exp(self) -> PowerSeries:
        a = self.coeffs
        if a[0] != 0:
            raise DomainError("exp needs a series with zero constant term")
        out = [Fraction(1)]
        for n in range(1, len(a)):
            s = sum((k * a[k] * out[n - k] for k in range(1, n + 1) if a[k]), Fraction(0))
            out.append(s / n)
        return PowerSeries(tuple(out))

    def log(self) -> PowerSeries:
        a = self.coeffs
        if a[0] != 1:
            raise DomainError("log needs a series with constant term 1")
        out = [Fraction(0)]
        for n in range(1, len(a)):
            s = n * a[n] - sum((k * out[k] * a[n - k] for k in range(1, n) if a[n - k]), Fraction(0))
            out.append(s / n)
        return PowerSeries(tuple(out))

    def reverse(self) -> PowerSeries:
        """Compositional inverse of a series ``a_1 x + a_2 x^2 + ...`` with ``a_1 != 0``.

        Uses Lagrange inversion: ``[y^n] x(y) = [t^(n-1)] (t/f(t))^n / n``.
        """
        if self.coeffs[0] != 0 or self.order < 1 or self.coeffs[1] == 0:
            raise CompositionError("reversion needs a_0 = 0 and a_1 != 0")
        phi = self.shift(-1).reciprocal()
        out = [Fraction(0)]
        power = PowerSeries.constant(1, phi.order)
        for n in range(1, self.order + 1):
            power = power * phi
            out.append(power.coeffs[n - 1] / n)
        return PowerSeries(tuple(out))

    def to_json(self) -> str:
        return json.dumps({"order": self.order, "coeffs": [str(c) for c in self.coeffs]}, separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> PowerSeries:
        obj = json.loads(text)
        coeffs = [Fraction(c) for c in obj["coeffs"]]
        if len(coeffs) != obj["order"] + 1:
            raise OrderError("coefficient count does not match order")
        return cls(tuple(coeffs))

    def format(self) -> str:
        """Render as e.g. ``x + x^2 + 4x^3`` or ``1 - (5/2)x``."""
        parts: list[tuple[str, str]] = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            if k == 0:
                body = str(mag)
            elif mag == 1:
                body = mono
            elif mag.denominator == 1:
                body = f"{mag}{mono}"
            else:
                body = f"({mag}){mono}"
            parts.append((sign, body))
        if not parts:
            return "0"
        first_sign, first = parts[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __str__(self) -> str:
        return self.format()


def ps_arith(a: PowerSeries, b: PowerSeries, op: str) -> PowerSeries:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise UsageError(f"unknown operation {op!r}")


def ps_derive(a: PowerSeries) -> PowerSeries:
    return a.derive()


def ps_compose(outer: PowerSeries, inner: PowerSeries) -> PowerSeries:
    return outer.compose(inner)


def ps_exp_log(a: PowerSeries, op: str) -> PowerSeries:
    if op == "exp":
        return a.exp()
    if op == "log":
        return a.log()
    raise UsageError(f"unknown operation {op!r}")


def lagrange_power_coeff(b: PowerSeries, n: int) -> Fraction:
    """``[x^n] b(x)^n`` by repeated truncated multiplication."""
    if n < 1:
        raise OrderError("n must be positive")
    if n > b.order:
        raise OrderError(f"n={n} exceeds series order {b.order}")
    b = b.truncate(n)
    return (b ** n).coeffs[n]


# --- catalog -----------------------------------------------------------------

CATALOG_NAMES = ("D", "C", "I0", "I", "I2", "Dle2", "A", "Z")


def double_factorial(k: int) -> int:
    """``k!!`` with ``(-1)!! = 0!! = 1``."""
    out = 1
    while k > 1:
        out *= k
        k -= 2
    return out


def connected_counts(order: int) -> list[int]:
    """Connected chord diagram counts ``C_0 .. C_order`` (``C_0 = 0``).

    ``C_n = sum_{i=1}^{n-1} (2i-1) C_i C_{n-i}``, read off from
    ``2x C C' = C (1 + C) - x``.
    """
    c = [0] * (order + 1)
    if order >= 1:
        c[1] = 1
    for n in range(2, order + 1):
        c[n] = sum((2 * i - 1) * c[i] * c[n - i] for i in range(1, n))
    return c


def connected_by_reversion(order: int) -> PowerSeries:
    """C obtained from ``D(x) = 1 + C(x D(x)^2)`` by reverting ``y = x D^2``."""
    d = catalog_series("D", order)
    y = d * d
    y = y.shift(1).truncate(order)
    return (d - 1).compose(y.reverse())


def catalog_series(name: str, order: int) -> PowerSeries:
    if order < 0:
        raise OrderError(f"negative order {order}")
    if name == "D":
        return PowerSeries.from_coeffs([double_factorial(2 * n - 1) for n in range(order + 1)])
    if name == "C":
        return PowerSeries.from_coeffs(connected_counts(order))
    if name == "I0":
        return 1 - catalog_series("D", order).reciprocal()
    if name == "I":
        return 1 + catalog_series("I0", order)
    if name == "I2":
        return catalog_series("C", order) - PowerSeries.monomial(1, order)
    if name == "A":
        c = catalog_series("C", order)
        return (1 + c) * (1 + c)
    if name == "Dle2":
        return catalog_series("A", order) - PowerSeries.monomial(1, order)
    if name == "Z":
        d = catalog_series("D", order)
        return (d * d).shift(1).truncate(order)
    raise UsageError(f"unknown series {name!r}; expected one of {', '.join(CATALOG_NAMES)}")


def x_series(order: int) -> PowerSeries:
    return PowerSeries.monomial(1, order)


def coefficients_as_ints(a: PowerSeries) -> list[int]:
    out = []
    for c in a.coeffs:
        if c.denominator != 1:
            raise DomainError(f"coefficient {c} is not an integer")
        out.append(c.numerator)
    return out


def first_mismatch(a: PowerSeries, b: PowerSeries) -> int | None:
    n = min(a.order, b.order)
    for k in range(n + 1):
        if a.coeffs[k] != b.coeffs[k]:
            return k
    return None

