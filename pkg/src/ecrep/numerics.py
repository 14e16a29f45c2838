"""Extended-precision scalars, precision budgeting and exact modular primitives.

Real and complex scalars are ``mpmath`` ``mpf``/``mpc`` values bound to a
private :class:`mpmath.MPContext` owned by each :class:`PrecisionContext`.
The global ``mpmath.mp`` context is never touched, so contexts of different
widths can coexist.  Library code never changes a context's precision after
creation (mpmath's wrapped functions such as ``log1p`` do so temporarily and
are avoided), which keeps a context safe to share between threads.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

import mpmath
import mpmath.libmp as libmp
from mpmath.ctx_mp_python import _mpf

from .errors import DomainError, InvalidModulus, PrecisionTooLow

GUARD_BITS = 32
MIN_BITS = 64
RENORM_EVERY = 16

Number = Union[int, Fraction, float, "mpmath.mpf"]


@dataclass(frozen=True)
class PrecisionContext:
    """Working precision in bits; ``epsilon`` is derived from it."""

    bits: int
    guard_bits: int = GUARD_BITS
    mp: mpmath.ctx_mp.MPContext = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.bits < MIN_BITS:
            raise PrecisionTooLow(f"bits={self.bits} < {MIN_BITS}")
        if self.guard_bits < GUARD_BITS:
            raise PrecisionTooLow(f"guard_bits={self.guard_bits} < {GUARD_BITS}")
        ctx = mpmath.MPContext()
        ctx.prec = self.bits
        object.__setattr__(self, "mp", ctx)

    @property
    def epsilon(self):
        return self.mp.ldexp(self.mp.one, -(self.bits - self.guard_bits))

    @property
    def digits(self) -> int:
        return math.ceil(self.bits * 0.302)

    def real(self, value: Number):
        """Convert an int, Fraction, float, string or mpf to an XReal (one rounding)."""
        if isinstance(value, Fraction):
            if value.denominator == 1:
                return self.mp.mpf(value.numerator)
            return self.mp.mpf(value.numerator) / value.denominator
        return self.mp.mpf(value)

    def complex(self, re, im=0):
        return self.mp.mpc(self.real(re), self.real(im))

    @property
    def pi(self):
        return self.mp.pi


@dataclass(frozen=True)
class CurveParams:
    """The curve y^2 = x^3 + a x + b (mod p)."""

    a: int
    b: int
    p: int

    def __post_init__(self):
        if self.p < 2:
            raise InvalidModulus(f"p={self.p} < 2")


def make_context(bits: int) -> PrecisionContext:
    return PrecisionContext(bits)


def to_fraction(value: Number) -> Fraction:
    """Exact rational value of an int, float, Fraction or finite mpf."""
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(value)
    if isinstance(value, _mpf):
        man, exp = value.man_exp
        return Fraction(man) * Fraction(2) ** exp
    raise TypeError(f"cannot convert {type(value).__name__} to Fraction")


def _ceil_log2(q: Fraction) -> int:
    """Smallest integer k with 2**k >= q, for q > 0."""
    n, d = q.numerator, q.denominator
    k = n.bit_length() - d.bit_length()
    # 2^(k-1) < n/d < 2^(k+1) holds for this k; fix up exactly.
    while Fraction(2) ** k < q:
        k += 1
    while Fraction(2) ** (k - 1) >= q:
        k -= 1
    return k


def required_bits(max_power: int, target_eps: Number) -> int:
    """Bits needed so that z**max_power keeps its argument error below target_eps.

    The argument error of a power grows linearly in the exponent, hence
    ``ceil(log2(max_power / target_eps)) + GUARD_BITS``, clamped to 64.
    """
    if max_power < 1:
        raise DomainError("max_power must be >= 1")
    eps = to_fraction(target_eps)
    if not 0 < eps < 1:
        raise DomainError("target_eps must lie in (0, 1)")
    return max(MIN_BITS, _ceil_log2(Fraction(max_power) / eps) + GUARD_BITS)


_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for n < 3.3e24 (plenty for this package)."""
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def require_odd_prime(p: int) -> None:
    if p < 3 or p % 2 == 0 or not is_prime(p):
        raise InvalidModulus(f"p={p} is not an odd prime")


def legendre_symbol(n: int, p: int) -> int:
    """Legendre symbol (n/p) by Euler's criterion."""
    if p < 3 or p % 2 == 0:
        raise InvalidModulus(f"p={p} must be an odd prime")
    t = pow(n % p, (p - 1) // 2, p)
    if t == p - 1:
        return -1
    return t


def unit_exp(t: Number, ctx: PrecisionContext):
    """e^{2 pi i t} as an XComplex, computed by cos/sin of the reduced angle.

    Rational ``t`` is reduced modulo 1 exactly before any rounding, so large
    numerators cost no accuracy.
    """
    mp = ctx.mp
    if isinstance(t, (int, Fraction)):
        t = Fraction(t) % 1
        if t == 0:
            return mp.mpc(1, 0)
    x = ctx.real(t)
    two_x = 2 * x
    return mp.mpc(mp.cospi(two_x), mp.sinpi(two_x))


def _mag(x) -> int:
    _, man, exp, bc = x._mpf_
    return exp + bc if man else 0


def log1p(x, ctx: PrecisionContext):
    """log(1 + x) for x > -1 without touching ``ctx.mp.prec``."""
    if not x:
        return ctx.mp.zero
    prec = ctx.mp.prec
    wp = prec + 20 + max(0, -_mag(x))
    one_plus = libmp.mpf_add(libmp.fone, x._mpf_, 0)  # exact
    return ctx.mp.make_mpf(libmp.mpf_pos(libmp.mpf_log(one_plus, wp), prec, libmp.round_nearest))


def expm1(x, ctx: PrecisionContext):
    """e^x - 1 without touching ``ctx.mp.prec``."""
    if not x:
        return ctx.mp.zero
    prec = ctx.mp.prec
    wp = prec + 20 + max(0, -_mag(x))
    e = libmp.mpf_exp(x._mpf_, wp)
    return ctx.mp.make_mpf(libmp.mpf_sub(e, libmp.fone, prec, libmp.round_nearest))


@functools.lru_cache(maxsize=512)
def roots_of_unity(p: int, ctx: PrecisionContext) -> tuple:
    """(e^{2 pi i k/p} for k in range(p))."""
    return tuple(unit_exp(Fraction(k, p), ctx) for k in range(p))


def renormalize(z, ctx: PrecisionContext):
    """Project z back onto the unit circle (argument unchanged)."""
    return z / ctx.mp.sqrt(z.real * z.real + z.imag * z.imag)


def unit_pow(z, exponent: int, ctx: PrecisionContext):
    """z**exponent for a unit-modulus z by binary exponentiation.

    The running values are pulled back to modulus one every
    ``RENORM_EVERY`` multiplications so the modulus cannot drift.
    """
    if exponent < 0:
        raise DomainError("exponent must be >= 0")
    result = ctx.mp.mpc(1, 0)
    base = z
    mults = 0
    while exponent:
        if exponent & 1:
            result = result * base
            mults += 1
        exponent >>= 1
        if exponent:
            base = base * base
            mults += 1
        if mults >= RENORM_EVERY:
            result = renormalize(result, ctx)
            base = renormalize(base, ctx)
            mults = 0
    return result


def format_xreal(x, ctx: PrecisionContext) -> str:
    return ctx.mp.nstr(x, ctx.digits, strip_zeros=False, min_fixed=-4, max_fixed=20)


def parse_xreal(text: str, ctx: PrecisionContext):
    return ctx.mp.mpf(text)


def format_xcomplex(z, ctx: PrecisionContext) -> str:
    return f"{format_xreal(z.real, ctx)}|{format_xreal(z.imag, ctx)}"


def parse_xcomplex(text: str, ctx: PrecisionContext):
    re, im = text.split("|")
    return ctx.mp.mpc(parse_xreal(re, ctx), parse_xreal(im, ctx))
