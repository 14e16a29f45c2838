"""Point counts of y^2 = x^3 + a x + b over F_p.

Exact methods (``naive``, ``legendre``) serve as oracles for the analytic
ones.  The analytic counts all share one shape,

    N_p = 1 + p + (1/p) * sum_{m=1}^{p-1} G(m) * X(m),

where G(m) is the quadratic Gauss sum over y and X(m) = sum_x z_x^m for a
unit-circle value z_x = e^{-2 pi i f(x)/p}.  They differ only in how z_x
is produced:

* ``expsum``: cos/sin of the exactly reduced angle,
* ``thm2``: (Q + iR)^(p^2) with (Q, R) built from f(x)/p^2,
* ``thm3``: (Q, R) from f(x) while |f(x)| < p, otherwise (Q1, R1) of the
  fractional part of f(x)/p.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .errors import (
    AdmissibilityError,
    BranchError,
    DomainError,
    InvalidModulus,
    PrecisionExceeded,
    PrecisionTooLow,
    SingularCurve,
)
from .numerics import (
    CurveParams,
    PrecisionContext,
    is_prime,
    legendre_symbol,
    renormalize,
    require_odd_prime,
    required_bits,
    roots_of_unity,
    unit_pow,
)
from .parallel import DEFAULT_CHUNK, chunks, ordered_map
from .representation import QR, Q1R1, frac_decompose

ROUNDING_TARGET = Fraction(1, 2**40)


class Method(str, enum.Enum):
    NAIVE = "naive"
    LEGENDRE = "legendre"
    EXPSUM = "expsum"
    THM2 = "thm2"
    THM3 = "thm3"


class DiscriminantClass(str, enum.Enum):
    NONSINGULAR = "nonsingular"
    SINGULAR = "singular"


@dataclass(frozen=True)
class CountResult:
    method: Method
    n_p: int
    raw: object = None  # XComplex, analytic methods only
    residual: object = 0  # |raw - n_p|
    l_value: Optional[int] = None
    bits: Optional[int] = None
    diagnostics: dict = field(default_factory=dict)


@dataclass(frozen=True)
class GaussSumValue:
    m: int
    p: int
    value: object  # XComplex


def f_eval(curve: CurveParams, x: int) -> int:
    return x * x * x + curve.a * x + curve.b


def discriminant_class(curve: CurveParams) -> DiscriminantClass:
    if (4 * curve.a ** 3 + 27 * curve.b ** 2) % curve.p == 0:
        return DiscriminantClass.SINGULAR
    return DiscriminantClass.NONSINGULAR


def _check_curve(curve: CurveParams, include_singular: bool, odd: bool) -> None:
    if odd:
        require_odd_prime(curve.p)
    elif not is_prime(curve.p):
        raise InvalidModulus(f"p={curve.p} is not prime")
    if not include_singular and discriminant_class(curve) is DiscriminantClass.SINGULAR:
        raise SingularCurve(f"4a^3 + 27b^2 = 0 mod {curve.p}")


def count_naive(curve: CurveParams, include_singular: bool = False) -> CountResult:
    """1 + #{(x, y) in [0, p)^2 : y^2 = f(x) mod p}, by enumeration."""
    _check_curve(curve, include_singular, odd=False)
    p = curve.p
    squares = [y * y % p for y in range(p)]
    affine = sum(squares.count(f_eval(curve, x) % p) for x in range(p))
    return CountResult(Method.NAIVE, 1 + affine)


def count_legendre(curve: CurveParams, include_singular: bool = False) -> CountResult:
    """1 + p + sum_x (f(x)/p)."""
    _check_curve(curve, include_singular, odd=True)
    p = curve.p
    total = sum(legendre_symbol(f_eval(curve, x), p) for x in range(p))
    return CountResult(Method.LEGENDRE, 1 + p + total)


# --------------------------------------------------------------------------
# Gauss sums

def _check_gauss_args(m: int, p: int) -> None:
    require_odd_prime(p)
    if m % p == 0:
        raise DomainError("m must not be divisible by p")


def gauss_sum_direct(m: int, p: int, ctx: PrecisionContext) -> GaussSumValue:
    """sum_y e^{2 pi i m y^2 / p}, term by term."""
    _check_gauss_args(m, p)
    table = roots_of_unity(p, ctx)
    acc = ctx.mp.mpc(0, 0)
    for y in range(p):
        acc += table[m * y * y % p]
    return GaussSumValue(m, p, acc)


def gauss_sum_closed(m: int, p: int, ctx: PrecisionContext) -> GaussSumValue:
    """(m/p) sqrt(p) for p = 1 mod 4, (m/p) i sqrt(p) for p = 3 mod 4."""
    _check_gauss_args(m, p)
    mp = ctx.mp
    root = legendre_symbol(m, p) * mp.sqrt(p)
    if p % 4 == 1:
        return GaussSumValue(m, p, mp.mpc(root, 0))
    return GaussSumValue(m, p, mp.mpc(0, root))


# --------------------------------------------------------------------------
# analytic counts

def _require_bits(ctx: PrecisionContext, max_power: int) -> int:
    need = required_bits(max_power, ROUNDING_TARGET)
    if ctx.bits < need:
        raise PrecisionTooLow(f"context has {ctx.bits} bits, exponent {max_power} needs {need}")
    return need


def _power_row(z, count: int, ctx: PrecisionContext) -> list:
    """[z^1, ..., z^count] by repeated multiplication with periodic renormalization."""
    row = []
    acc = z
    for m in range(1, count + 1):
        row.append(acc)
        acc = acc * z
        if m % 16 == 0:
            acc = renormalize(acc, ctx)
    return row


def _assemble(p: int, bases: list, ctx: PrecisionContext, workers: int):
    """1 + p + (1/p) sum_m G(m) sum_x bases[x]^m with a fixed reduction order."""
    mp = ctx.mp
    zero = mp.mpc(0, 0)

    def chunk_sums(chunk):
        acc = [zero] * (p - 1)
        for z in chunk:
            for i, w in enumerate(_power_row(z, p - 1, ctx)):
                acc[i] += w
        return acc

    x_sums = [zero] * (p - 1)
    for part in ordered_map(chunk_sums, chunks(bases, DEFAULT_CHUNK), workers):
        x_sums = [s + t for s, t in zip(x_sums, part)]
    total = zero
    for m in range(1, p):
        total += gauss_sum_closed(m, p, ctx).value * x_sums[m - 1]
    return 1 + p + total / p


def _rounded(method: Method, raw, ctx: PrecisionContext, **extra) -> CountResult:
    n = int(ctx.mp.nint(raw.real))
    residual = abs(raw - n)
    if not residual < 0.5:
        raise PrecisionExceeded(f"{method.value}: residual {ctx.mp.nstr(residual, 5)} >= 0.5")
    return CountResult(method, n, raw=raw, residual=residual, bits=ctx.bits, **extra)


def count_expsum(curve: CurveParams, ctx: PrecisionContext, workers: int = 1) -> CountResult:
    """Count from the exponential sum with the y-sum collapsed to Gauss sums."""
    require_odd_prime(curve.p)
    _require_bits(ctx, curve.p)
    p = curve.p
    table = roots_of_unity(p, ctx)
    mp = ctx.mp
    residues = [f_eval(curve, x) % p for x in range(p)]

    def term(m):
        x_sum = mp.mpc(0, 0)
        for f in residues:
            x_sum += table[-m * f % p]
        return gauss_sum_closed(m, p, ctx).value * x_sum

    total = mp.mpc(0, 0)
    for t in ordered_map(term, list(range(1, p)), workers):
        total += t
    return _rounded(Method.EXPSUM, 1 + p + total / p, ctx)


def count_expsum_triple(curve: CurveParams, ctx: PrecisionContext) -> CountResult:
    """The unreduced triple sum over (x, y, m); a self-test for p <= 13 only."""
    require_odd_prime(curve.p)
    p = curve.p
    if p > 13:
        raise DomainError("triple-sum mode is limited to p <= 13")
    table = roots_of_unity(p, ctx)
    acc = ctx.mp.mpc(0, 0)
    for x in range(p):
        fx = f_eval(curve, x)
        for y in range(p):
            big_f = y * y - fx
            for m in range(p):
                acc += table[m * big_f % p]
    return _rounded(Method.EXPSUM, 1 + acc / p, ctx)


def thm2_admissible(curve: CurveParams) -> bool:
    """|f(x)/p^2| < p for every x in [0, p), checked in integers."""
    p3 = curve.p ** 3
    return all(abs(f_eval(curve, x)) < p3 for x in range(curve.p))


def count_thm2(curve: CurveParams, ctx: PrecisionContext, workers: int = 1) -> CountResult:
    """Count with x-terms (Q + iR)^(m p^2), (Q, R) evaluated at f(x)/p^2."""
    require_odd_prime(curve.p)
    p = curve.p
    if not thm2_admissible(curve):
        raise AdmissibilityError("some |f(x)| >= p^3")
    _require_bits(ctx, (p - 1) * p * p)
    p2 = p * p

    def base(x):
        z = QR(Fraction(f_eval(curve, x), p2), p, ctx).as_complex(ctx)
        return unit_pow(z, p2, ctx)

    bases = ordered_map(base, list(range(p)), workers)
    return _rounded(Method.THM2, _assemble(p, bases, ctx, workers), ctx)


def find_L(curve: CurveParams) -> int:
    """Largest L in [-1, p-1] with f(x) < p for all 0 <= x <= L (a, b >= 0)."""
    if curve.a < 0 or curve.b < 0:
        raise BranchError("find_L needs a >= 0 and b >= 0")
    p = curve.p
    lo, hi = -1, p - 1  # f(lo) < p holds vacuously at lo = -1
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if f_eval(curve, mid) < p:
            lo = mid
        else:
            hi = mid - 1
    return lo


def _decreasing_cutoff(curve: CurveParams) -> int:
    """Smallest L in [-1, p-1] with |f(x)| < p for every L < x <= p-1."""
    p = curve.p
    # |f| is nondecreasing here, so the admissible suffix is all or nothing
    # beyond the first x with |f(x)| >= p; bisect on that first x.
    lo, hi = 0, p  # first index with |f| >= p, or p if none
    while lo < hi:
        mid = (lo + hi) // 2
        if abs(f_eval(curve, mid)) >= p:
            hi = mid
        else:
            lo = mid + 1
    return -1 if lo == p else p - 1


def thm3_branch(curve: CurveParams) -> str:
    p = curve.p
    if curve.a >= 0 and curve.b >= 0:
        return "increasing"
    if curve.a < -3 * (p - 1) ** 2 and curve.b <= 0:
        return "decreasing"
    raise BranchError(
        f"a={curve.a}, b={curve.b}: f is not monotone on [0, {p - 1}] "
        "(needs a, b >= 0, or a < -3(p-1)^2 and b <= 0)"
    )


def count_thm3(curve: CurveParams, ctx: PrecisionContext, workers: int = 1) -> CountResult:
    """Count with the x-range split at L into (Q, R) terms and (Q1, R1) terms."""
    require_odd_prime(curve.p)
    p = curve.p
    branch = thm3_branch(curve)
    values = [f_eval(curve, x) for x in range(p)]
    steps = [v - u for u, v in zip(values, values[1:])]
    if branch == "increasing" and not all(d > 0 for d in steps):
        raise AdmissibilityError("f is not strictly increasing on [0, p-1]")
    if branch == "decreasing" and not all(d < 0 for d in steps):
        raise AdmissibilityError("f is not strictly decreasing on [0, p-1]")
    _require_bits(ctx, p - 1)

    if branch == "increasing":
        L = find_L(curve)

        def direct(x):
            return x <= L
    else:
        L = _decreasing_cutoff(curve)

        def direct(x):
            return x > L

    def base(x):
        f = values[x]
        if direct(x):
            if not abs(f) < p:
                raise AdmissibilityError(f"|f({x})| = {abs(f)} >= p in the direct range")
            return QR(f, p, ctx).as_complex(ctx)
        # r = 0 happens for at most three x; Q1R1 returns (1, 0) there
        return Q1R1(frac_decompose(f, p).r, ctx).as_complex(ctx)

    bases = ordered_map(base, list(range(p)), workers)
    n_direct = sum(1 for x in range(p) if direct(x))
    return _rounded(
        Method.THM3,
        _assemble(p, bases, ctx, workers),
        ctx,
        l_value=L,
        diagnostics={"branch": branch, "direct_terms": n_direct},
    )


def hasse_check(n_p: int, p: int) -> bool:
    """(N - p - 1)^2 < 4p, i.e. |N - p - 1| < 2 sqrt(p), in integers."""
    d = n_p - p - 1
    return d * d < 4 * p


def count(curve: CurveParams, method, ctx: Optional[PrecisionContext] = None,
          include_singular: bool = False, workers: int = 1) -> CountResult:
    method = Method(method)
    if method is Method.NAIVE:
        return count_naive(curve, include_singular)
    if method is Method.LEGENDRE:
        return count_legendre(curve, include_singular)
    if ctx is None:
        raise PrecisionTooLow("analytic methods need a precision context")
    if method is Method.EXPSUM:
        return count_expsum(curve, ctx, workers)
    if method is Method.THM2:
        return count_thm2(curve, ctx, workers)
    return count_thm3(curve, ctx, workers)


def budget_bits(curve: CurveParams, method) -> int:
    """Smallest context width the analytic method accepts for this curve."""
    method = Method(method)
    p = curve.p
    if method is Method.EXPSUM:
        return required_bits(p, ROUNDING_TARGET)
    if method is Method.THM2:
        return required_bits((p - 1) * p * p, ROUNDING_TARGET)
    if method is Method.THM3:
        return required_bits(max(p - 1, 1), ROUNDING_TARGET)
    return 64
