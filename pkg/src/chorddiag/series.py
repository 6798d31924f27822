"""Truncated formal power series with exact rational coefficients.

A series is an immutable value: a tuple of coefficients c0..cN together with
the inclusive truncation order N. Every binary operation truncates its result
to the smaller order of the two operands, so no coefficient is ever produced
beyond what both inputs actually determine. Coefficients are
``fractions.Fraction`` values, which the standard library keeps in canonical
form (gcd 1, positive denominator); the alias ``Rational`` is exported for
callers that want to be explicit about the coefficient field.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence, Union

Rational = Fraction

Coefficient = Union[int, Fraction]


def _coerce(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"cannot use {type(value).__name__} as a series coefficient")


class PowerSeries:
    """A formal power series truncated at a fixed order (inclusive)."""

    __slots__ = ("_coeffs",)

    def __init__(self, coefficients: Iterable[Coefficient], order: int | None = None):
        coeffs = [_coerce(c) for c in coefficients]
        if order is not None:
            if order < 0:
                raise ValueError("order must be nonnegative")
            if len(coeffs) > order + 1:
                coeffs = coeffs[: order + 1]
            else:
                coeffs.extend([Fraction(0)] * (order + 1 - len(coeffs)))
        if not coeffs:
            raise ValueError("a series needs at least the constant coefficient")
        self._coeffs = tuple(coeffs)

    # -- construction helpers -------------------------------------------------

    @classmethod
    def zero(cls, order: int) -> "PowerSeries":
        return cls([0], order=order)

    @classmethod
    def one(cls, order: int) -> "PowerSeries":
        return cls([1], order=order)

    @classmethod
    def x(cls, order: int) -> "PowerSeries":
        if order < 1:
            raise ValueError("the series x needs order >= 1")
        return cls([0, 1], order=order)

    @classmethod
    def constant(cls, value: Coefficient, order: int) -> "PowerSeries":
        return cls([value], order=order)

    # -- basic protocol --------------------------------------------------------

    @property
    def order(self) -> int:
        return len(self._coeffs) - 1

    @property
    def coefficients(self) -> tuple[Fraction, ...]:
        return self._coeffs

    def __getitem__(self, n: int) -> Fraction:
        if not 0 <= n <= self.order:
            raise IndexError(f"coefficient {n} beyond truncation order {self.order}")
        return self._coeffs[n]

    def __len__(self) -> int:
        return len(self._coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PowerSeries):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash(self._coeffs)

    def __repr__(self) -> str:
        body = ", ".join(str(c) for c in self._coeffs[:8])
        if self.order >= 8:
            body += ", ..."
        return f"PowerSeries([{body}]; order={self.order})"

    def __str__(self) -> str:
        terms = []
        for n, c in enumerate(self._coeffs):
            if c == 0:
                continue
            if n == 0:
                terms.append(str(c))
            elif n == 1:
                terms.append(f"{c}*x")
            else:
                terms.append(f"{c}*x^{n}")
        poly = " + ".join(terms) if terms else "0"
        return f"{poly} + O(x^{self.order + 1})"

    def is_zero(self) -> bool:
        return all(c == 0 for c in self._coeffs)

    def truncate(self, order: int) -> "PowerSeries":
        """Drop coefficients beyond ``order`` (which must not exceed self.order)."""
        if order > self.order:
            raise ValueError(
                f"cannot extend a series from order {self.order} to {order}"
            )
        return PowerSeries(self._coeffs[: order + 1])

    # -- ring operations --------------------------------------------------------

    def __add__(self, other) -> "PowerSeries":
        if isinstance(other, PowerSeries):
            n = min(self.order, other.order)
            return PowerSeries(
                [self._coeffs[i] + other._coeffs[i] for i in range(n + 1)]
            )
        if isinstance(other, (int, Fraction)):
            c = list(self._coeffs)
            c[0] += other
            return PowerSeries(c)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self) -> "PowerSeries":
        return PowerSeries([-c for c in self._coeffs])

    def __sub__(self, other) -> "PowerSeries":
        if isinstance(other, PowerSeries):
            n = min(self.order, other.order)
            return PowerSeries(
                [self._coeffs[i] - other._coeffs[i] for i in range(n + 1)]
            )
        if isinstance(other, (int, Fraction)):
            c = list(self._coeffs)
            c[0] -= other
            return PowerSeries(c)
        return NotImplemented

    def __rsub__(self, other) -> "PowerSeries":
        return (-self) + other

    def __mul__(self, other) -> "PowerSeries":
        if isinstance(other, PowerSeries):
            n = min(self.order, other.order)
            a, b = self._coeffs, other._coeffs
            out = [Fraction(0)] * (n + 1)
            for i in range(n + 1):
                ai = a[i]
                if ai == 0:
                    continue
                for j in range(n + 1 - i):
                    bj = b[j]
                    if bj:
                        out[i + j] += ai * bj
            return PowerSeries(out)
        if isinstance(other, (int, Fraction)):
            return PowerSeries([c * other for c in self._coeffs])
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other) -> "PowerSeries":
        if isinstance(other, PowerSeries):
            return self * other.reciprocal()
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division of a series by zero")
            return PowerSeries([c / other for c in self._coeffs])
        return NotImplemented

    def __pow__(self, exponent: int) -> "PowerSeries":
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("use pow_rational for non-natural exponents")
        result = PowerSeries.one(self.order)
        for _ in range(exponent):
            result = result * self
        return result

    # -- calculus and shifts ------------------------------------------------------

    def derivative(self) -> "PowerSeries":
        """Termwise derivative; the truncation order drops by one."""
        if self.order < 1:
            raise ValueError("cannot differentiate a series truncated at order 0")
        return PowerSeries([n * self._coeffs[n] for n in range(1, self.order + 1)])

    def mul_x_pow(self, k: int) -> "PowerSeries":
        """Multiply by x^k; the k new leading zeros raise the order by k."""
        if k < 0:
            raise ValueError("k must be nonnegative; use div_x_pow to shift down")
        return PowerSeries([Fraction(0)] * k + list(self._coeffs))

    def div_x_pow(self, k: int) -> "PowerSeries":
        """Divide by x^k; requires the first k coefficients to vanish exactly."""
        if k < 0:
            raise ValueError("k must be nonnegative; use mul_x_pow to shift up")
        if k > self.order:
            raise ValueError(f"not divisible by x^{k}: series order is {self.order}")
        if any(c != 0 for c in self._coeffs[:k]):
            raise ValueError(f"not divisible by x^{k}: low-order coefficient nonzero")
        return PowerSeries(self._coeffs[k:])

    # -- composition and inverses ----------------------------------------------

    def compose(self, inner: "PowerSeries") -> "PowerSeries":
        """Horner evaluation of self at ``inner``; inner must have c0 = 0."""
        if inner[0] != 0:
            raise ValueError("composition needs an inner series with zero constant term")
        n = min(self.order, inner.order)
        g = inner.truncate(n)
        result = PowerSeries.constant(self._coeffs[n], n)
        for k in range(n - 1, -1, -1):
            result = result * g + self._coeffs[k]
        return result

    def reciprocal(self) -> "PowerSeries":
        """Multiplicative inverse; requires c0 != 0."""
        if self._coeffs[0] == 0:
            raise ValueError("no reciprocal: constant term is zero")
        n = self.order
        inv0 = 1 / self._coeffs[0]
        out = [inv0] + [Fraction(0)] * n
        for m in range(1, n + 1):
            acc = Fraction(0)
            for k in range(1, m + 1):
                ck = self._coeffs[k]
                if ck:
                    acc += ck * out[m - k]
            out[m] = -acc * inv0
        return PowerSeries(out)

    def reverse(self) -> "PowerSeries":
        """Compositional inverse g with self(g(x)) = x, via Newton lifting.

        Requires c0 = 0 and c1 != 0. The update
        g <- g - (f(g) - x) / f'(g) doubles the number of correct
        coefficients, so the working order is lifted level by level; a final
        exact composition check validates the result to full order.
        """
        if self._coeffs[0] != 0 or self.order < 1 or self._coeffs[1] == 0:
            raise ValueError(
                "not reversible: need zero constant term and nonzero linear term"
            )
        n = self.order
        g = PowerSeries([0, 1 / self._coeffs[1]], order=min(1, n))
        correct = 1
        while correct < n:
            target = min(2 * correct + 1, n)
            f_t = self.truncate(target)
            g = PowerSeries(g.coefficients, order=target)
            err = f_t.compose(g) - PowerSeries.x(target)
            if not err.is_zero():
                deriv = PowerSeries(f_t.derivative().coefficients, order=target)
                g = g - err / deriv.compose(g)
            correct = target
        ident = PowerSeries.x(n)
        deriv = PowerSeries(self.derivative().coefficients, order=n)
        for _ in range(n.bit_length() + 2):
            err = self.compose(g) - ident
            if err.is_zero():
                return g
            g = g - err / deriv.compose(g)
        raise AssertionError("reversion did not converge; preconditions violated?")

    # -- analytic combinators ---------------------------------------------------

    def exp(self) -> "PowerSeries":
        """exp of a series with zero constant term."""
        if self._coeffs[0] != 0:
            raise ValueError("exp needs zero constant term")
        n = self.order
        out = [Fraction(1)] + [Fraction(0)] * n
        for m in range(1, n + 1):
            acc = Fraction(0)
            for k in range(1, m + 1):
                ck = self._coeffs[k]
                if ck:
                    acc += k * ck * out[m - k]
            out[m] = acc / m
        return PowerSeries(out)

    def log(self) -> "PowerSeries":
        """log of a series with constant term 1."""
        if self._coeffs[0] != 1:
            raise ValueError("log needs constant term 1")
        n = self.order
        out = [Fraction(0)] * (n + 1)
        for m in range(1, n + 1):
            acc = m * self._coeffs[m]
            for k in range(1, m):
                if out[k] and self._coeffs[m - k]:
                    acc -= k * out[k] * self._coeffs[m - k]
            out[m] = acc / m
        return PowerSeries(out)

    def pow_rational(self, exponent: Coefficient) -> "PowerSeries":
        """f^q for rational q, restricted to series with constant term 1.

        Callers factor out a leading monomial with div_x_pow first; keeping
        c0 = 1 avoids any branch choice for the rational power.
        """
        q = _coerce(exponent)
        if self._coeffs[0] != 1:
            raise ValueError("pow_rational needs constant term 1")
        return (self.log() * q).exp()


# -- serialization ----------------------------------------------------------------


def series_to_json_dict(f: PowerSeries) -> dict:
    """Schema: {"order": N, "coefficients": [{"num": "...", "den": "..."}, ...]}.

    Numerator and denominator are decimal strings, safe for arbitrary
    precision across JSON implementations.
    """
    return {
        "order": f.order,
        "coefficients": [
            {"num": str(c.numerator), "den": str(c.denominator)}
            for c in f.coefficients
        ],
    }


def series_from_json_dict(data: dict) -> PowerSeries:
    order = int(data["order"])
    coeffs = [
        Fraction(int(item["num"]), int(item["den"])) for item in data["coefficients"]
    ]
    if len(coeffs) != order + 1:
        raise ValueError("coefficient list length does not match order+1")
    return PowerSeries(coeffs)


def series_to_csv_rows(f: PowerSeries) -> list[tuple[int, str, str]]:
    """One row per power: (index, numerator, denominator) as decimal strings."""
    return [
        (n, str(c.numerator), str(c.denominator)) for n, c in enumerate(f.coefficients)
    ]


def series_from_csv_rows(rows: Sequence[Sequence]) -> PowerSeries:
    coeffs: dict[int, Fraction] = {}
    for idx, num, den in rows:
        coeffs[int(idx)] = Fraction(int(num), int(den))
    if sorted(coeffs) != list(range(len(coeffs))):
        raise ValueError("csv rows must cover indices 0..N exactly once")
    return PowerSeries([coeffs[i] for i in range(len(coeffs))])
