"""Invariant suites driven by ``ecrep verify``.

Each suite yields :class:`Case` rows in input order; a suite passes when
every row does.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator

from . import counting, fracpart, identity, representation, special
from .numerics import CurveParams, PrecisionContext, is_prime, legendre_symbol, make_context, unit_exp


@dataclass(frozen=True)
class Case:
    suite: str
    case: str
    passed: bool
    deviation: object = 0
    tolerance: object = 0


def _primes(lo: int, hi: int) -> list[int]:
    return [p for p in range(lo, hi + 1) if is_prime(p)]


def suite_numerics(ctx: PrecisionContext, max_p: int, rng: random.Random) -> Iterator[Case]:
    for p in _primes(3, min(max_p, 101)):
        squares = {y * y % p for y in range(1, p)}
        ok = all(
            legendre_symbol(n, p) == (0 if n % p == 0 else (1 if n % p in squares else -1))
            for n in range(2 * p)
        )
        yield Case("numerics", f"legendre p={p}", ok)
    worst = ctx.mp.zero
    for _ in range(200):
        t = ctx.real(rng.uniform(-10, 10))
        worst = max(worst, abs(unit_exp(t, ctx) * unit_exp(-t, ctx) - 1))
    tol = 4 * ctx.epsilon
    yield Case("numerics", "unit_exp(t)*unit_exp(-t)=1", worst <= tol, worst, tol)


def suite_special(ctx: PrecisionContext, max_p: int, rng: random.Random) -> Iterator[Case]:
    mp = ctx.mp
    eps = ctx.epsilon
    for n in range(1, 20):
        exact = ctx.real(special.zeta_neg(n))
        dev = abs(special.zeta_neg_via_functional(n, ctx) - exact)
        tol = eps * (1 + abs(exact))
        yield Case("special", f"zeta(-{n}) functional", dev <= tol, dev, tol)
    for s, closed in ((2, mp.pi ** 2 / 6), (4, mp.pi ** 4 / 90)):
        dev = abs(special.zeta_pos(s, ctx) - closed)
        yield Case("special", f"zeta({s}) closed form", dev <= eps, dev, eps)
    for k in range(1, 10):
        yield Case("special", f"zeta(-{2 * k}) = 0", special.zeta_neg(2 * k) == 0)
    lower, upper = mp.mpf(3) / 4, mp.pi ** 2 / 6 + 1
    for j in range(-19, 20):
        t = Fraction(j, 20)
        a1, b1 = special.aux_A1B1(t, ctx)
        yield Case("special", f"3/4 < A1,B1 < pi^2/6+1 at t={t}", lower < a1 < upper and lower < b1 < upper)
    tol = mp.mpf(10) ** -12
    for alpha, beta in ((1, 2), (1, 3), (Fraction(1, 2), Fraction(3, 2)), (Fraction(3, 10), Fraction(17, 10))):
        quad = special.lemma1_integral(alpha, beta, ctx, tol / 10)
        series, _ = special.pair_series(alpha, beta, ctx)
        dev = abs(quad - series)
        yield Case("special", f"lemma1 ({alpha},{beta})", dev <= tol, dev, tol)


def suite_repr(ctx: PrecisionContext, max_p: int, rng: random.Random) -> Iterator[Case]:
    mp = ctx.mp
    tol = mp.mpf(10) ** -25 if ctx.bits >= 128 else 1000 * ctx.epsilon
    for p in _primes(3, 13):
        for f in range(p):
            s_ser, _ = representation.S_series(f, p, ctx)
            s_cl = representation.S_closed(f, p, ctx)
            dev = abs(s_ser - s_cl)
            yield Case("repr", f"S series=closed f={f} p={p}", dev <= tol, dev, tol)
            if f:
                lo, hi = representation.S_bounds(f, p, ctx)
                yield Case("repr", f"S sandwich f={f} p={p}", lo < s_cl < hi)
    for j in range(64):
        r = Fraction(j, 64)
        dev = abs(representation.W_series(r, ctx)[0] - representation.W_closed(r, ctx))
        yield Case("repr", f"W series=closed r={r}", dev <= tol, dev, tol)
        pt = representation.Q1R1(r, ctx)
        ref = unit_exp(-r, ctx)
        dev = max(abs(pt.q - ref.real), abs(pt.r_im - ref.imag))
        yield Case("repr", f"Q1R1 = e(-r) r={r}", dev <= 16 * ctx.epsilon, dev, 16 * ctx.epsilon)
    for p in range(2, min(max_p, 101) + 1):
        worst = mp.zero
        for x in range(p):
            pt = representation.QR(x, p, ctx)
            ref = unit_exp(Fraction(-x, p), ctx)
            worst = max(worst, abs(pt.q - ref.real), abs(pt.r_im - ref.imag),
                        abs(pt.q ** 2 + pt.r_im ** 2 - 1))
        yield Case("repr", f"QR = e(-x/p) p={p}", worst <= 16 * ctx.epsilon, worst, 16 * ctx.epsilon)


def _nonsingular(a, b, p):
    curve = CurveParams(a, b, p)
    return curve, counting.discriminant_class(curve) is counting.DiscriminantClass.NONSINGULAR


def suite_counting(ctx: PrecisionContext, max_p: int, rng: random.Random) -> Iterator[Case]:
    for p in _primes(3, min(max_p, 97)):
        for a in range(6):
            for b in range(6):
                curve, ok = _nonsingular(a, b, p)
                if not ok:
                    continue
                naive = counting.count_naive(curve).n_p
                leg = counting.count_legendre(curve).n_p
                yield Case("counting", f"legendre=naive {a},{b},{p}",
                           naive == leg and counting.hasse_check(naive, p))
    for p in _primes(5, min(max_p, 31)):
        for a in range(4):
            for b in range(4):
                curve = CurveParams(a, b, p)
                naive = counting.count_naive(curve, include_singular=True).n_p
                c = make_context(max(ctx.bits, counting.budget_bits(curve, "expsum")))
                res = counting.count_expsum(curve, c)
                tol = 1e-9
                yield Case("counting", f"expsum=naive {a},{b},{p}",
                           res.n_p == naive and res.residual < tol, res.residual, tol)
                c3 = make_context(max(ctx.bits, counting.budget_bits(curve, "thm3")))
                res = counting.count_thm3(curve, c3)
                yield Case("counting", f"thm3=naive {a},{b},{p}",
                           res.n_p == naive and res.residual < tol, res.residual, tol)
    for p in (5, 7, 11, 13):
        for a in range(3):
            for b in range(3):
                curve = CurveParams(a, b, p)
                if not counting.thm2_admissible(curve):
                    continue
                naive = counting.count_naive(curve, include_singular=True).n_p
                c = make_context(max(ctx.bits, counting.budget_bits(curve, "thm2")))
                res = counting.count_thm2(curve, c)
                yield Case("counting", f"thm2=naive {a},{b},{p}",
                           res.n_p == naive and res.residual < 1e-6, res.residual, 1e-6)


def suite_gauss(ctx: PrecisionContext, max_p: int, rng: random.Random) -> Iterator[Case]:
    mp = ctx.mp
    for p in _primes(3, min(max_p, 101)):
        tol = 8 * p * ctx.epsilon
        worst = mp.zero
        for m in range(1, p):
            direct = counting.gauss_sum_direct(m, p, ctx).value
            closed = counting.gauss_sum_closed(m, p, ctx).value
            worst = max(worst, abs(direct - closed), abs(abs(direct) - mp.sqrt(p)))
        yield Case("gauss", f"direct=closed p={p} (p%4={p % 4})", worst <= tol, worst, tol)


def suite_fracpart(ctx: PrecisionContext, max_p: int, rng: random.Random) -> Iterator[Case]:
    tol = ctx.mp.mpf(10) ** -20
    for p in (2, 3, 5, 7, 11, 12, 13):
        for n in list(range(1, 3 * p + 2)) + [100, 1000]:
            rep = fracpart.floor_via_expsum(n, p, ctx)
            frac = fracpart.frac_via_expsum(n, p, ctx)
            dev = max(rep.deviation, abs(frac - ctx.real(Fraction(n % p, p))))
            yield Case("fracpart", f"floor/frac n={n} p={p}",
                       rep.floor_value == n // p and dev <= tol, dev, tol)
    for p in (3, 5, 7, 11, 13):
        ok = all(fracpart.prop4_verify(f, p) for f in range(2, 501))
        yield Case("fracpart", f"prop4 p={p}", ok)
        ok = all(
            fracpart.prop5_lower_bound(f, p, ctx) <= ctx.real(Fraction(f % p, p))
            for f in range(1, 201)
        )
        yield Case("fracpart", f"prop5 p={p}", ok)
    for p in _primes(2, min(max_p, 101)):
        for a in range(-3, 4):
            for b in range(-3, 4):
                n = fracpart.lagrange_root_count(CurveParams(a, b, p))
                if n > 3:
                    yield Case("fracpart", f"roots a={a} b={b} p={p}", False, n, 3)
        yield Case("fracpart", f"lagrange p={p}", True)


def suite_identity(ctx: PrecisionContext, max_p: int, rng: random.Random) -> Iterator[Case]:
    tol_unit = ctx.mp.mpf(10) ** -20
    for p in range(2, max_p + 1):
        rep = identity.identity_check(p, ctx)
        dev = max(rep.abs_error, abs(rep.q_sum), abs(rep.r_sum))
        yield Case("identity", f"p={p}", dev <= tol_unit * p, dev, tol_unit * p)


SUITES: dict[str, Callable[..., Iterator[Case]]] = {
    "numerics": suite_numerics,
    "special": suite_special,
    "repr": suite_repr,
    "counting": suite_counting,
    "gauss": suite_gauss,
    "fracpart": suite_fracpart,
    "identity": suite_identity,
}


def run_suite(name: str, ctx: PrecisionContext, max_p: int = 101, seed: int = 0) -> list[Case]:
    rng = random.Random(seed)
    names = list(SUITES) if name == "all" else [name]
    rows: list[Case] = []
    for n in names:
        rows.extend(SUITES[n](ctx, max_p, rng))
    return rows
