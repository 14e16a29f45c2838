"""Floor and fractional part of n/p through roots-of-unity filters."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath.libmp as libmp

from .errors import BudgetExceeded, DomainError, InvalidModulus, InvariantViolation, PrecisionExceeded
from .counting import f_eval
from .numerics import CurveParams, PrecisionContext, is_prime, require_odd_prime, roots_of_unity

MAX_N = 10**5
MAX_P = 101


@dataclass(frozen=True)
class FloorSumReport:
    n: int
    p: int
    floor_value: int
    expsum_value: object  # XComplex
    deviation: object  # XReal


def floor_via_expsum(n: int, p: int, ctx: PrecisionContext) -> FloorSumReport:
    """floor(n/p) = (1/p) sum_{k=1}^{n} sum_{m=0}^{p-1} e^{2 pi i m k / p}."""
    if n < 1 or p < 2:
        raise DomainError("need n >= 1 and p >= 2")
    if n > MAX_N or p > MAX_P:
        raise BudgetExceeded(f"n={n}, p={p} exceeds the n <= {MAX_N}, p <= {MAX_P} gate")
    mp = ctx.mp
    table = roots_of_unity(p, ctx)
    terms = [table[m * k % p] for k in range(1, n + 1) for m in range(p)]
    value = mp.mpc(mp.fsum(z.real for z in terms), mp.fsum(z.imag for z in terms)) / p
    floor_value = int(mp.nint(value.real))
    deviation = abs(value - floor_value)
    if not deviation < 0.5:
        raise PrecisionExceeded(f"floor sum deviates by {mp.nstr(deviation, 5)}")
    return FloorSumReport(n, p, floor_value, value, deviation)


def frac_via_expsum(f_val: int, p: int, ctx: PrecisionContext):
    """{f/p} = f/p - floor sum, for f >= 1."""
    report = floor_via_expsum(f_val, p, ctx)
    return ctx.real(Fraction(f_val, p)) - report.expsum_value.real


def _frac(q: Fraction) -> Fraction:
    return q - (q.numerator // q.denominator)


def prop4_verify(f_val: int, p: int) -> bool:
    """Check the one-step recursions for {f/p} in exact rationals."""
    if p < 3:
        raise InvalidModulus("p must be >= 3")
    if f_val < 2:
        raise DomainError("f must be >= 2")
    if f_val % p:
        return _frac(Fraction(f_val, p)) == _frac(Fraction(f_val - 1, p)) + Fraction(1, p)
    return _frac(Fraction(f_val - 2, p)) == 1 - Fraction(2, p)


def prop5_bound_exact(f_val: int, p: int) -> Fraction:
    """The lower bound for {f/p} as an exact rational.

    The m = 0 term of the first sum is taken as f itself: the k-sum of
    e^0 over f terms has modulus exactly f.
    """
    f = Fraction(f_val)
    half = p // 2
    first = f + sum(min(Fraction(p, m), f) for m in range(1, half + 1))
    second = sum(min(Fraction(p, p - m), f) for m in range(half + 1, p))
    return f / p - first / p - second / p


def prop5_lower_bound(f_val: int, p: int, ctx: PrecisionContext):
    """Lower bound for {f/p}, rounded toward -infinity."""
    require_odd_prime(p)
    if f_val < 1:
        raise DomainError("f must be >= 1")
    q = prop5_bound_exact(f_val, p)
    raw = libmp.from_rational(q.numerator, q.denominator, ctx.bits, libmp.round_floor)
    return ctx.mp.make_mpf(raw)


def lagrange_root_count(curve: CurveParams) -> int:
    """#{x in [0, p) : f(x) = 0 mod p}; a cubic has at most three roots."""
    if not is_prime(curve.p):
        raise InvalidModulus(f"p={curve.p} is not prime")
    p = curve.p
    roots = sum(1 for x in range(p) if f_eval(curve, x) % p == 0)
    if roots > 3:
        raise InvariantViolation(f"{roots} roots of a cubic mod {p}")
    return roots
