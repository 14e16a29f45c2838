"""Bernoulli numbers, zeta values and the auxiliary series C(lambda).

Every infinite series here is an explicit partial sum followed by an
Euler-Maclaurin tail.  The summands are completely monotone, so the first
omitted correction term bounds the remainder; that bound is what
:class:`SeriesDiagnostics` reports.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .errors import DomainError, TruncationFailure, UnsupportedArgument
from .numerics import PrecisionContext, expm1, log1p

__all__ = [
    "SeriesDiagnostics",
    "bernoulli",
    "zeta_pos",
    "zeta_neg",
    "zeta_neg_via_functional",
    "series_C",
    "pair_series",
    "aux_A1B1",
    "aux_A2B2",
    "lemma1_integral",
    "lemma1_integrand",
    "gauss_legendre_nodes",
]


@dataclass(frozen=True)
class SeriesDiagnostics:
    terms_used: int
    tail_bound: object  # XReal


# --------------------------------------------------------------------------
# Bernoulli numbers

_bern_lock = threading.Lock()
_bern: list[Fraction] = [Fraction(1), Fraction(-1, 2)]


def bernoulli(n: int) -> Fraction:
    """B_n from sum_{k<=n} C(n+1, k) B_k = 0, B_0 = 1.

    This is the z/(e^z - 1) convention, so B_1 = -1/2.  Only n = 0 and
    n >= 2 enter the generating function z/(e^z-1) + z/2 used by the
    counting formulas; odd indices above 1 are exactly zero.
    """
    if n < 0:
        raise DomainError("n must be >= 0")
    if n < len(_bern):
        return _bern[n]
    with _bern_lock:
        while len(_bern) <= n:
            m = len(_bern)
            if m % 2 == 1:
                _bern.append(Fraction(0))
                continue
            s = sum(comb(m + 1, k) * _bern[k] for k in range(m) if k < 2 or k % 2 == 0)
            _bern.append(-s / (m + 1))
    return _bern[n]


_em_lock = threading.Lock()
_em_coeffs: dict[tuple[int, int], list] = {}


def _em_coefficients(ctx: PrecisionContext, count: int) -> list:
    """[B_2/2!, B_4/4!, ...] as XReals, cached per precision."""
    key = (ctx.bits, count)
    cached = _em_coeffs.get(key)
    if cached is None:
        cached = [ctx.real(bernoulli(2 * k) / math.factorial(2 * k)) for k in range(1, count + 1)]
        with _em_lock:
            _em_coeffs[key] = cached
    return cached


def _explicit_terms(ctx: PrecisionContext) -> int:
    # The Euler-Maclaurin corrections bottom out near exp(-2 pi N), far
    # below 2^-bits for this choice.
    return max(20, ctx.bits // 4)


def _max_corrections(n_explicit: int) -> int:
    return max(4, int(math.pi * n_explicit) - 1)


# --------------------------------------------------------------------------
# zeta at integers

_zeta_lock = threading.Lock()
_zeta_cache: dict[tuple[int, int], object] = {}


def zeta_pos(s: int, ctx: PrecisionContext):
    """Riemann zeta at an integer s >= 2 to working precision."""
    if s < 2 or int(s) != s:
        raise DomainError("zeta_pos needs an integer s >= 2")
    s = int(s)
    key = (ctx.bits, s)
    hit = _zeta_cache.get(key)
    if hit is not None:
        return hit
    value = _zeta_pos_uncached(s, ctx)
    with _zeta_lock:
        _zeta_cache[key] = value
    return value


def _zeta_pos_uncached(s: int, ctx: PrecisionContext):
    mp = ctx.mp
    target = mp.ldexp(mp.one, -(ctx.bits + 2))
    # direct summation when N^(1-s)/(s-1) < target already for small N
    log2_n = (ctx.bits + 3) / (s - 1)
    if log2_n <= 6:
        n_direct = int(2 ** log2_n) + 1
        total = mp.zero
        for n in range(n_direct, 0, -1):
            total += mp.power(n, -s)
        return total

    n_explicit = _explicit_terms(ctx)
    total = mp.zero
    for n in range(n_explicit - 1, 0, -1):
        total += mp.power(n, -s)
    N = mp.mpf(n_explicit)
    n_pow = mp.power(N, -s)
    total += N * n_pow / (s - 1) + n_pow / 2
    # B_{2k}/(2k)! * s(s+1)...(s+2k-2) * N^{-s-2k+1}
    limit = _max_corrections(n_explicit)
    coeffs = _em_coefficients(ctx, limit)
    rising = mp.mpf(s)
    power = n_pow / N
    for k in range(1, limit + 1):
        term = coeffs[k - 1] * rising * power
        total += term
        if abs(term) < target:
            return total
        rising *= (s + 2 * k - 1) * (s + 2 * k)
        power /= N * N
    raise TruncationFailure(f"zeta({s}) tail did not converge")


def zeta_neg(n: int) -> Fraction:
    """zeta(-n) = -B_{n+1}/(n+1) for n >= 1, exactly."""
    if n == 0:
        raise UnsupportedArgument("zeta(0) depends on the B_1 sign convention; n >= 1 only")
    if n < 0:
        raise DomainError("n must be >= 1")
    return -bernoulli(n + 1) / (n + 1)


def zeta_neg_via_functional(n: int, ctx: PrecisionContext):
    """zeta(-n) = -sin(pi n/2) n! zeta(n+1) / (2^n pi^(n+1)), evaluated numerically."""
    if n < 1:
        raise DomainError("n must be >= 1")
    mp = ctx.mp
    sine = mp.sinpi(mp.mpf(n) / 2)
    if sine == 0:
        return mp.zero
    return -sine * math.factorial(n) * zeta_pos(n + 1, ctx) / (mp.ldexp(mp.one, n) * mp.pi ** (n + 1))


# --------------------------------------------------------------------------
# sum_{n>=1} 1/((n+alpha)(n+beta))

def pair_series(alpha, beta, ctx: PrecisionContext, tol=None):
    """Sum of 1/((n+alpha)(n+beta)) over n >= 1, for beta > alpha > -1.

    Returns ``(value, SeriesDiagnostics)``.
    """
    mp = ctx.mp
    a = ctx.real(alpha)
    b = ctx.real(beta)
    if not (b > a > -1):
        raise DomainError("pair_series needs beta > alpha > -1")
    tol = ctx.epsilon if tol is None else ctx.real(tol)
    if tol <= 0:
        raise DomainError("tol must be > 0")
    delta = b - a

    n_explicit = _explicit_terms(ctx)
    total = mp.zero
    for n in range(n_explicit - 1, 0, -1):
        total += 1 / ((n + a) * (n + b))

    na = n_explicit + a
    nb = n_explicit + b
    # integral from N to infinity, then g(N)/2
    total += log1p(delta / na, ctx) / delta
    total += 1 / (2 * na * nb)

    target = min(tol, ctx.epsilon) / 4
    limit = _max_corrections(n_explicit)
    coeffs = _em_coefficients(ctx, limit)
    inv_a2, inv_b2 = 1 / (na * na), 1 / (nb * nb)
    pa, pb = inv_a2, inv_b2
    prev = None
    for k in range(1, limit + 1):
        # -B_{2k}/(2k)! g^{(2k-1)}(N) with g^{(j)} from the partial fractions
        term = coeffs[k - 1] * math.factorial(2 * k - 1) * (pa - pb) / delta
        if abs(term) < target:
            bound = 2 * abs(term)
            return total, SeriesDiagnostics(n_explicit + k - 1, bound)
        if prev is not None and abs(term) > abs(prev):
            break
        total += term
        prev = term
        pa *= inv_a2
        pb *= inv_b2
    raise TruncationFailure("Euler-Maclaurin corrections stopped decreasing before reaching tol")


def series_C(lam, ctx: PrecisionContext, tol=None):
    """C(lambda) = sum_{n>=1} 1/(n(n+lambda)) for lambda > 0."""
    if ctx.real(lam) <= 0:
        raise DomainError("lambda must be > 0")
    return pair_series(0, lam, ctx, tol)


def _as_exact_or_real(value, ctx):
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    return ctx.real(value)


def aux_A1B1(t, ctx: PrecisionContext, tol=None):
    """(A1, B1) = (C(1 - t), C(1 + t)) for |t| < 1."""
    t = _as_exact_or_real(t, ctx)
    if not abs(t) < 1:
        raise DomainError("|t| must be < 1")
    a1, _ = series_C(_lambda(1 - t, ctx), ctx, tol)
    b1, _ = series_C(_lambda(1 + t, ctx), ctx, tol)
    return a1, b1


def aux_A2B2(r, ctx: PrecisionContext, tol=None):
    """(A2, B2) = (C(1 - r), C(1 + r)) for 0 <= r < 1."""
    r = _as_exact_or_real(r, ctx)
    if not 0 <= r < 1:
        raise DomainError("r must lie in [0, 1)")
    a2, _ = series_C(_lambda(1 - r, ctx), ctx, tol)
    b2, _ = series_C(_lambda(1 + r, ctx), ctx, tol)
    return a2, b2


def _lambda(value, ctx):
    return ctx.real(value) if isinstance(value, Fraction) else value


# --------------------------------------------------------------------------
# (1/(beta-alpha)) * int_0^1 (x^alpha - x^beta)/(1-x) dx

_gl_lock = threading.Lock()
_gl_cache: dict[tuple[int, int], tuple[list, list]] = {}


def gauss_legendre_nodes(order: int, ctx: PrecisionContext):
    """Nodes and weights on [-1, 1] by Newton iteration on P_order."""
    key = (order, ctx.bits)
    hit = _gl_cache.get(key)
    if hit is not None:
        return hit
    mp = ctx.mp
    nodes, weights = [], []
    tiny = mp.ldexp(mp.one, -ctx.bits + 4)
    for i in range(1, order + 1):
        x = mp.cos(mp.pi * (i - mp.mpf(0.25)) / (order + mp.mpf(0.5)))
        for _ in range(100):
            p0, p1 = mp.one, x
            for k in range(2, order + 1):
                p0, p1 = p1, ((2 * k - 1) * x * p1 - (k - 1) * p0) / k
            dp = order * (x * p1 - p0) / (x * x - 1)
            step = p1 / dp
            x -= step
            if abs(step) < tiny:
                break
        p0, p1 = mp.one, x
        for k in range(2, order + 1):
            p0, p1 = p1, ((2 * k - 1) * x * p1 - (k - 1) * p0) / k
        dp = order * (x * p1 - p0) / (x * x - 1)
        nodes.append(x)
        weights.append(2 / ((1 - x * x) * dp * dp))
    with _gl_lock:
        _gl_cache[key] = (nodes, weights)
    return nodes, weights


def lemma1_integrand(x, alpha, beta, ctx: PrecisionContext):
    """(x^alpha - x^beta)/(1 - x), continuously extended by beta - alpha at x = 1."""
    mp = ctx.mp
    x = ctx.real(x)
    a, b = ctx.real(alpha), ctx.real(beta)
    if x == 1:
        return b - a
    if x == 0:
        return mp.zero
    # x^a (1 - x^(b-a)), written to avoid cancellation near x = 1
    return -mp.power(x, a) * expm1((b - a) * mp.log(x), ctx) / (1 - x)


def _gl_panel(f, lo, hi, nodes, weights):
    half = (hi - lo) / 2
    mid = (hi + lo) / 2
    acc = 0
    for x, w in zip(nodes, weights):
        acc += w * f(mid + half * x)
    return acc * half


def lemma1_integral(alpha, beta, ctx: PrecisionContext, tol=None, order: int = 20, max_depth: int = 400):
    """Adaptive Gauss-Legendre value of int_0^1 (x^alpha - x^beta)/(1 - x) dx, divided by beta - alpha."""
    mp = ctx.mp
    a, b = ctx.real(alpha), ctx.real(beta)
    if not (b > a > 0):
        raise DomainError("need beta > alpha > 0")
    tol = mp.mpf(10) ** -14 if tol is None else ctx.real(tol)
    nodes, weights = gauss_legendre_nodes(order, ctx)

    def f(x):
        return lemma1_integrand(x, a, b, ctx)

    total = mp.zero
    # (lo, hi, coarse estimate, depth); left-to-right so the sum order is fixed
    stack = [(mp.zero, mp.one, _gl_panel(f, mp.zero, mp.one, nodes, weights), 0)]
    while stack:
        lo, hi, coarse, depth = stack.pop()
        mid = (lo + hi) / 2
        left = _gl_panel(f, lo, mid, nodes, weights)
        right = _gl_panel(f, mid, hi, nodes, weights)
        if abs(left + right - coarse) <= tol / 2 * (hi - lo):
            total += left + right
            continue
        if depth >= max_depth:
            raise TruncationFailure("quadrature refinement depth exceeded")
        stack.append((mid, hi, right, depth + 1))
        stack.append((lo, mid, left, depth + 1))
    return total / (b - a)
