"""Rational-function representations of points on the unit circle.

For |t| < 1 the odd-zeta series

    T(t) = sum_{n odd} zeta(n+1) t^(n+1)

has the closed form (t/2)(2t/(1-t^2) - (1-t) C(1-t) + (1+t) C(1+t)), and
with it e^{-2 pi i t} = Q + iR where

    Q = 1 - 2 pi^2 t^2 / D,   R = 2 pi t (2T - 1) / D,   D = (1 - 2T)^2 + (pi t)^2.

S(f, p) is p * T(f/p) and W(r) is T(r); the (Q, R) pair for (f, p) is the
same expression after multiplying numerator and denominator by p^2.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError, InvalidModulus, TruncationFailure
from .numerics import PrecisionContext
from .special import SeriesDiagnostics, series_C, zeta_pos

__all__ = [
    "FracDecomposition",
    "UnitPoint",
    "S_series",
    "S_closed",
    "S_bounds",
    "QR",
    "frac_decompose",
    "W_series",
    "W_closed",
    "Q1R1",
    "NEAR_ONE",
]

DEFAULT_MAX_TERMS = 50_000
# r closer than this to 1 is evaluated in closed form only
NEAR_ONE = Fraction(1, 2**20)


@dataclass(frozen=True)
class FracDecomposition:
    """f/p = k + r with k an integer and r in [0, 1), r kept as an exact rational."""

    k: int
    r: Fraction


@dataclass(frozen=True)
class UnitPoint:
    q: object
    r_im: object

    def as_complex(self, ctx: PrecisionContext):
        return ctx.mp.mpc(self.q, self.r_im)


def _ratio(f, p) -> Fraction:
    return Fraction(f) / Fraction(p)


def _check_inside(f, p):
    if p <= 0:
        raise InvalidModulus("p must be positive")
    if not abs(Fraction(f)) < p:
        raise DomainError(f"|f|={abs(f)} must be < p={p}")


def _odd_zeta_series(t: Fraction, scale, ctx: PrecisionContext, max_terms: int):
    """scale * sum_{n odd} zeta(n+1) t^(n+1), stopped on a geometric tail bound."""
    mp = ctx.mp
    if t == 0:
        return mp.zero, SeriesDiagnostics(0, mp.zero)
    x = ctx.real(t)
    q = x * x
    one_minus_q = 1 - q
    zeta2 = zeta_pos(2, ctx)
    eps = ctx.epsilon
    total = mp.zero
    power = q  # t^(n+1) for n = 1
    terms = 0
    n = 1
    while terms < max_terms:
        total += zeta_pos(n + 1, ctx) * power * scale
        terms += 1
        power *= q
        # remaining terms have zeta factors <= zeta(2) and ratio q
        bound = abs(scale) * zeta2 * power / one_minus_q
        if bound < eps:
            return total, SeriesDiagnostics(terms, bound)
        n += 2
    raise TruncationFailure(f"odd-zeta series at t={t} needs more than {max_terms} terms")


def _odd_zeta_closed(t, ctx: PrecisionContext, tol=None):
    """(t/2)(2t/(1-t^2) - (1-t) C(1-t) + (1+t) C(1+t)) for |t| < 1."""
    mp = ctx.mp
    if t == 0:
        return mp.zero
    if isinstance(t, Fraction):
        pole = ctx.real(2 * t / (1 - t * t))
        lo, hi = 1 - t, 1 + t
        x = ctx.real(t)
        lo_r, hi_r = ctx.real(lo), ctx.real(hi)
    else:
        x = ctx.real(t)
        pole = 2 * x / (1 - x * x)
        lo_r, hi_r = 1 - x, 1 + x
    a, _ = series_C(lo_r, ctx, tol)
    b, _ = series_C(hi_r, ctx, tol)
    return x / 2 * (pole - lo_r * a + hi_r * b)


def S_series(f_val, p: int, ctx: PrecisionContext, max_terms: int = DEFAULT_MAX_TERMS):
    """S = sum_{n odd} zeta(n+1) f^(n+1) / p^n by direct summation.

    ``f_val`` may be an integer or an exact rational (the thm2 count
    feeds f(x)/p^2).  Returns ``(value, SeriesDiagnostics)``.
    """
    _check_inside(f_val, p)
    return _odd_zeta_series(_ratio(f_val, p), p, ctx, max_terms)


def S_closed(f_val, p: int, ctx: PrecisionContext):
    """S in closed form through the C(lambda) series."""
    _check_inside(f_val, p)
    return p * _odd_zeta_closed(_ratio(f_val, p), ctx)


def S_bounds(f_val, p: int, ctx: PrecisionContext):
    """(lo, hi) = f^2 (p/(p^2 - f^2) + c/p) for c = 3/4 and c = pi^2/6 + 1.

    ``hi`` bounds S from above.  ``lo`` does not bound it from below: for
    small t, S ~ zeta(2) f^2 / p while lo ~ 1.75 f^2 / p, and the lower value
    exceeds S on every tested (f, p).
    """
    _check_inside(f_val, p)
    mp = ctx.mp
    if f_val == 0:
        return mp.zero, mp.zero
    f = Fraction(f_val)
    base = ctx.real(Fraction(p) / (p * p - f * f))
    f2 = ctx.real(f * f)
    lo = f2 * (base + ctx.real(Fraction(3, 4 * p)))
    hi = f2 * (base + (mp.pi ** 2 / 6 + 1) / p)
    return lo, hi


def _unit_point(t, half_series, ctx: PrecisionContext) -> UnitPoint:
    """(Q, R) from t and T(t); shared by the (f, p) pair and the fractional-part pair."""
    mp = ctx.mp
    x = ctx.real(t)
    c = 1 - 2 * half_series
    pt = mp.pi * x
    d = c * c + pt * pt
    q = 1 - 2 * pt * pt / d
    r_im = -2 * pt * c / d
    return UnitPoint(q, r_im)


def QR(f_val, p: int, ctx: PrecisionContext) -> UnitPoint:
    """(Q, R) with Q + iR = e^{-2 pi i f/p}, for |f| < p."""
    _check_inside(f_val, p)
    mp = ctx.mp
    if f_val == 0:
        return UnitPoint(mp.one, mp.zero)
    t = _ratio(f_val, p)
    return _unit_point(t, _odd_zeta_closed(t, ctx), ctx)


def frac_decompose(f_val: int, p: int) -> FracDecomposition:
    if p < 2:
        raise InvalidModulus("p must be >= 2")
    k = f_val // p
    return FracDecomposition(k, Fraction(f_val - k * p, p))


def _check_unit_interval(r):
    if not 0 <= r < 1:
        raise DomainError(f"r={r} outside [0, 1)")


def W_series(r, ctx: PrecisionContext, max_terms: int = DEFAULT_MAX_TERMS):
    """W(r) = sum_{n odd} zeta(n+1) r^(n+1) by direct summation."""
    _check_unit_interval(r)
    if isinstance(r, int):
        r = Fraction(r)
    return _odd_zeta_series(r, 1, ctx, max_terms)


def W_closed(r, ctx: PrecisionContext):
    """W(r) in closed form; W(0) = 0."""
    _check_unit_interval(r)
    return _odd_zeta_closed(r, ctx)


def Q1R1(r, ctx: PrecisionContext) -> UnitPoint:
    """(Q1, R1) with Q1 + iR1 = e^{-2 pi i r}.

    R1 carries the factor (2W - 1), the same orientation as R in Q + iR;
    with (1 - 2W) the pair would be e^{+2 pi i r}.
    """
    _check_unit_interval(r)
    if r == 0:
        return UnitPoint(ctx.mp.one, ctx.mp.zero)
    return _unit_point(r, _odd_zeta_closed(r, ctx), ctx)
