"""Alien-derivative (asymptotic-expansion) calculus for the diagram series.

The counting sequences here diverge factorially: f_n expands in the scale
Gamma_b^a(n) = a^(n+b) * Gamma(n+b) with a = 2, b = 1/2, and the alien
derivative maps f to the generating series of its expansion coefficients.
Images are carried as an exact rational series times a transcendental
prefactor e^p * (2*pi)^(m/2); the prefactors stay symbolic so every
computation below is exact. Adding images requires identical prefactors
(a zero image combines with anything) -- mixed transcendental sums never
occur in the identities verified here, so a mismatch is an error rather
than a coercion.

The alien derivative obeys a product rule, and for inner series tangent to
the identity a chain rule and an inversion rule; those three rules, plus the
closed forms for the connected and 2-connected images, are enough to verify
the whole derivation connecting them, step by step, as exact identities.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from . import gf
from .series import PowerSeries

ALPHA = Fraction(2)
BETA_HALF = Fraction(1, 2)
BETA_THREE_HALVES = Fraction(3, 2)


@dataclass(frozen=True)
class AsymptoticImage:
    """e^(e_exp) * (2*pi)^(sqrt_two_pi_exp/2) * series(x), all exact."""

    e_exp: Fraction
    sqrt_two_pi_exp: int
    series: PowerSeries

    def is_zero(self) -> bool:
        return self.series.is_zero()

    def same_prefactor(self, other: "AsymptoticImage") -> bool:
        return (
            self.e_exp == other.e_exp
            and self.sqrt_two_pi_exp == other.sqrt_two_pi_exp
        )


def image_add(a: AsymptoticImage, b: AsymptoticImage) -> AsymptoticImage:
    """Sum of images; requires equal prefactors unless one side is zero."""
    if a.is_zero():
        return AsymptoticImage(b.e_exp, b.sqrt_two_pi_exp, a.series + b.series)
    if b.is_zero():
        return AsymptoticImage(a.e_exp, a.sqrt_two_pi_exp, a.series + b.series)
    if not a.same_prefactor(b):
        raise ValueError(
            "cannot add asymptotic images with different transcendental prefactors: "
            f"e^{a.e_exp}*(2pi)^({a.sqrt_two_pi_exp}/2) vs "
            f"e^{b.e_exp}*(2pi)^({b.sqrt_two_pi_exp}/2)"
        )
    return AsymptoticImage(a.e_exp, a.sqrt_two_pi_exp, a.series + b.series)


def zero_image(order: int) -> AsymptoticImage:
    return AsymptoticImage(Fraction(0), 0, PowerSeries.zero(order))


def exp_with_constant(f: PowerSeries) -> tuple[Fraction, PowerSeries]:
    """Split exp(f) into (c0, exp(f - c0)); e^(c0) stays symbolic."""
    c0 = f[0]
    return c0, (f - c0).exp()


@lru_cache(maxsize=None)
def alien_connected(order: int) -> AsymptoticImage:
    """Image of the connected series: e^-1/sqrt(2pi) * (x/C) * exp-remainder.

    The closed form is (x/C) * e^(-(C^2+2C)/(2x)); the exponent has rational
    constant term 1, which factors out as the e^-1.
    """
    if order < 1:
        raise ValueError("order must be at least 1")
    c = gf.series_connected(order + 1)
    exponent = (c * c + 2 * c).div_x_pow(1) / 2
    const, remainder = exp_with_constant(-exponent)
    if const != -1:
        raise AssertionError("exponent constant must be -1 for the connected family")
    x_over_c = c.div_x_pow(1).reciprocal()
    return AsymptoticImage(const, -1, (x_over_c * remainder).truncate(order))


@lru_cache(maxsize=None)
def alien_two_connected(order: int) -> AsymptoticImage:
    """Image of the 2-connected series.

    Closed form: e^-2/sqrt(2pi) * x^2/(C2*S) * exp(-[(S+x)^2 - 1]/(2x)),
    where S = 1/(1 - C2/x); the series starts
    1 - 6x - 4x^2 - 218/3 x^3 - 890 x^4 - 196838/15 x^5 - ...
    """
    if order < 0:
        raise ValueError("order must be nonnegative")
    work = max(order, 1)
    c2 = gf.series_two_connected(work + 3)
    seq = gf.series_two_connected_sequences(work + 2)
    x = PowerSeries.x(work + 2)
    exponent = ((seq + x) ** 2 - 1).div_x_pow(1) / 2
    const, remainder = exp_with_constant(-exponent)
    if const != -2:
        raise AssertionError("exponent constant must be -2 for the 2-connected family")
    ratio = (c2 * seq).div_x_pow(2).reciprocal()
    return AsymptoticImage(const, -1, (ratio * remainder).truncate(order))


def alien_product(
    f: PowerSeries,
    f_image: AsymptoticImage,
    g: PowerSeries,
    g_image: AsymptoticImage,
) -> AsymptoticImage:
    """Product rule: the image of f*g is f * image(g) + g * image(f)."""
    term_f = AsymptoticImage(
        g_image.e_exp, g_image.sqrt_two_pi_exp, f * g_image.series
    )
    term_g = AsymptoticImage(
        f_image.e_exp, f_image.sqrt_two_pi_exp, g * f_image.series
    )
    return image_add(term_f, term_g)


def _require_tangent_to_identity(g: PowerSeries) -> None:
    if g[0] != 0 or g.order < 1 or g[1] != 1:
        raise ValueError(
            "chain and inversion rules need an inner series tangent to the "
            "identity (c0 = 0, c1 = 1)"
        )


def _exp_transport_factor(
    g: PowerSeries, alpha: Fraction, beta: Fraction
) -> tuple[Fraction, PowerSeries]:
    """(x/g)^beta * exp((g - x)/(alpha*x*g)) with its rational e-exponent.

    (g - x)/(alpha*x*g) has rational constant term g_2/alpha, which is
    returned separately so the series part stays exact.
    """
    g_over_x = g.div_x_pow(1)
    x_over_g = g_over_x.reciprocal()
    power = x_over_g.pow_rational(beta)
    w = (g - PowerSeries.x(g.order)).div_x_pow(2) / (alpha * g_over_x)
    const, remainder = exp_with_constant(w)
    return const, power.truncate(remainder.order) * remainder


def alien_compose(
    f: PowerSeries,
    f_image: AsymptoticImage,
    g: PowerSeries,
    g_image: AsymptoticImage,
    alpha: Fraction = ALPHA,
    beta: Fraction = BETA_HALF,
) -> AsymptoticImage:
    """Chain rule for the image of f(g(x)), g tangent to the identity.

    image(f o g) = f'(g) * image(g)
                 + (x/g)^beta * exp((g-x)/(alpha*x*g)) * image(f)(g).

    The derivative and the x^2-division each cost one order of truncation;
    callers wanting order N should provision inputs at N+3.
    """
    _require_tangent_to_identity(g)
    term1 = AsymptoticImage(
        g_image.e_exp,
        g_image.sqrt_two_pi_exp,
        f.derivative().compose(g.truncate(min(g.order, f.order - 1)))
        * g_image.series,
    )
    const, transport = _exp_transport_factor(g, alpha, beta)
    composed = f_image.series.compose(g.truncate(min(g.order, f_image.series.order)))
    term2 = AsymptoticImage(
        f_image.e_exp + const,
        f_image.sqrt_two_pi_exp,
        transport * composed,
    )
    return image_add(term1, term2)


def alien_inverse(
    g: PowerSeries,
    g_image: AsymptoticImage,
    alpha: Fraction = ALPHA,
    beta: Fraction = BETA_HALF,
) -> AsymptoticImage:
    """Inversion rule: the image of the compositional inverse of g.

    image(g^-1) = -(g^-1)' * (x/g^-1)^beta * exp((g^-1 - x)/(alpha*x*g^-1))
                  * image(g)(g^-1).
    """
    _require_tangent_to_identity(g)
    ginv = g.reverse()
    const, transport = _exp_transport_factor(ginv, alpha, beta)
    inner = ginv.truncate(min(ginv.order, g_image.series.order))
    series = -(ginv.derivative() * transport * g_image.series.compose(inner))
    return AsymptoticImage(
        g_image.e_exp + const, g_image.sqrt_two_pi_exp, series
    )


def shift_up(image: AsymptoticImage, m: int) -> AsymptoticImage:
    """Image at scale offset beta+m from the one at beta: multiply by x^m."""
    return AsymptoticImage(
        image.e_exp, image.sqrt_two_pi_exp, image.series.mul_x_pow(m)
    )


# -- reference coefficient table -----------------------------------------------

IMAGE_REFERENCE: dict[str, tuple] = {
    "S": (1, 1, 2, 10, 82, 898, 12018),
    "(S+x)^2": (1, 4, 8, 28, 208, 2164, 28056),
    "[(S+x)^2-1]/(2x)": (2, 4, 14, 104, 1082, 14028),
    "C2*S": (0, 0, 1, 2, 10, 82, 898, 12018),
    "x^2/(C2*S)": (1, -2, -6, -50, -574, -8082),
    "e^2*exp(-[(S+x)^2-1]/(2x))": (
        Fraction(1),
        Fraction(-4),
        Fraction(-6),
        Fraction(-176, 3),
        Fraction(-2008, 3),
        Fraction(-46636, 5),
    ),
}


def image_table_series(order: int) -> dict[str, PowerSeries]:
    """The ingredient series of the 2-connected image's closed form.

    The last row is the exponential factor scaled by e^2, i.e. with its
    transcendental constant stripped, so all entries are exact rationals.
    """
    s = gf.series_two_connected_sequences(order + 2)
    c2 = gf.series_two_connected(order + 3)
    x = PowerSeries.x(s.order)
    s_plus_x_sq = (s + x) ** 2
    half_shift = (s_plus_x_sq - 1).div_x_pow(1) / 2
    c2s = (c2 * s).truncate(order + 2)
    return {
        "S": s,
        "(S+x)^2": s_plus_x_sq,
        "[(S+x)^2-1]/(2x)": half_shift,
        "C2*S": c2s,
        "x^2/(C2*S)": c2s.div_x_pow(2).reciprocal(),
        "e^2*exp(-[(S+x)^2-1]/(2x))": (-(half_shift - 2)).exp(),
    }


# -- full derivation check ---------------------------------------------------------


@dataclass(frozen=True)
class ChainStep:
    name: str
    passed: bool
    first_mismatch: Optional[int]


@dataclass(frozen=True)
class ChainReport:
    order: int
    steps: tuple[ChainStep, ...]

    @property
    def passed(self) -> bool:
        return all(step.passed for step in self.steps)


def _first_mismatch(a: PowerSeries, b: PowerSeries, order: int) -> Optional[int]:
    for i in range(order + 1):
        if a[i] != b[i]:
            return i
    return None


def _step(name: str, a: PowerSeries, b: PowerSeries, order: int) -> ChainStep:
    bad = _first_mismatch(a, b, order)
    return ChainStep(name, bad is None, bad)


def verify_derivation_chain(
    order: int,
    connected_image: Optional[AsymptoticImage] = None,
    two_connected_image: Optional[AsymptoticImage] = None,
) -> ChainReport:
    """Check each step of the derivation tying the two closed forms together.

    (a) The chain rule applied to the functional relation: the image of the
        composed 2-connected series equals (2C - x) times the connected image.
    (b) The 2-connected image evaluated at C^2/x equals
        1/sqrt(2pi) * C^2/(C-x) * exp(-[C^2 + 2C + 1 - x^2/C^2]/(2x)).
    (c) Composing (b) with the inverse of C^2/x returns the direct closed
        form of the 2-connected image.

    All three are exact identities, verified coefficient by coefficient up to
    ``order``; optional image arguments substitute for the computed ones (so
    corrupted inputs can be shown to fail).
    """
    if order < 6:
        raise ValueError("order must be at least 6")
    work = order + 3
    c = gf.series_connected(work + 1)
    t = gf.connected_sq_div_x(work)
    c2 = gf.series_two_connected(work)
    a_c = connected_image if connected_image is not None else alien_connected(work)
    a_c2 = (
        two_connected_image
        if two_connected_image is not None
        else alien_two_connected(work)
    )

    # (a) chain rule across the functional relation
    image_t = alien_product(c, a_c, c, a_c)  # image of C^2, equals image of t shifted
    rhs = alien_compose(c2, shift_up(a_c2, 1), t, image_t, ALPHA, BETA_THREE_HALVES)
    lhs_series = (2 * c - PowerSeries.x(c.order)) * a_c.series
    lhs = AsymptoticImage(a_c.e_exp, a_c.sqrt_two_pi_exp, lhs_series)
    step_a_series_ok = _step(
        "chain-rule-expansion", lhs.series, rhs.series, order
    )
    step_a = ChainStep(
        step_a_series_ok.name,
        step_a_series_ok.passed and lhs.same_prefactor(rhs),
        step_a_series_ok.first_mismatch,
    )

    # (b) closed form at the substituted argument
    x = PowerSeries.x(work + 1)
    c_over_x_sq = (c.div_x_pow(1)) ** 2
    exponent = (c * c + 2 * c + (1 - c_over_x_sq.reciprocal())).div_x_pow(1) / 2
    const, remainder = exp_with_constant(-exponent)
    prefront = (c * c).div_x_pow(2) * (c - x).div_x_pow(2).reciprocal()
    rhs_b = prefront * remainder
    lhs_b = a_c2.series.compose(t.truncate(min(t.order, a_c2.series.order)))
    step_b_series = _step("substituted-closed-form", lhs_b, rhs_b, order)
    step_b = ChainStep(
        step_b_series.name,
        step_b_series.passed and const == a_c2.e_exp,
        step_b_series.first_mismatch,
    )

    # (c) invert the substitution to land on the direct closed form
    y = t.reverse()
    lhs_c = rhs_b.compose(y.truncate(min(y.order, rhs_b.order)))
    step_c = _step("inverted-closed-form", lhs_c, a_c2.series, order)

    return ChainReport(order, (step_a, step_b, step_c))
