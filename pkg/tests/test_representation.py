from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ecrep.errors import DomainError, InvalidModulus, TruncationFailure
from ecrep.numerics import unit_exp
from ecrep.representation import (
    NEAR_ONE,
    Q1R1,
    QR,
    FracDecomposition,
    S_bounds,
    S_closed,
    S_series,
    W_closed,
    W_series,
    frac_decompose,
)


def oracle_odd_zeta(t, terms=200, scale=1):
    """scale * sum_{n odd} zeta(n+1) t^(n+1) with mpmath's own zeta."""
    with mpmath.workprec(300):
        x = mpmath.mpf(t.numerator) / t.denominator
        return scale * mpmath.fsum(mpmath.zeta(n + 1) * x ** (n + 1) for n in range(1, 2 * terms, 2))


def test_S_half_pinned_by_oracle(ctx256):
    value, _ = S_series(1, 2, ctx256)
    oracle = oracle_odd_zeta(Fraction(1, 2), scale=2)
    assert abs(value - oracle) < 1e-60
    assert abs(value - 1) < 1e-60


def test_W_half(ctx128):
    assert abs(W_closed(Fraction(1, 2), ctx128) - Fraction(1, 2)) <= 4 * ctx128.epsilon


def test_W_zero(ctx128):
    assert W_closed(0, ctx128) == 0
    value, diag = W_series(0, ctx128)
    assert value == 0 and diag.terms_used == 0


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13])
def test_S_series_matches_closed(ctx128, p):
    for f in range(p):
        s, _ = S_series(f, p, ctx128)
        assert abs(s - S_closed(f, p, ctx128)) <= 1e-25


@pytest.mark.parametrize("f, p", [(1, 3), (2, 7), (5, 11), (12, 13)])
def test_S_matches_cotangent_oracle(ctx192, f, p):
    t = Fraction(f, p)
    with mpmath.workprec(250):
        x = mpmath.mpf(f) / p
        ref = p * (1 - mpmath.pi * x * mpmath.cot(mpmath.pi * x)) / 2
    assert abs(S_closed(f, p, ctx192) - ref) <= 8 * ctx192.epsilon
    assert abs(S_series(f, p, ctx192)[0] - oracle_odd_zeta(t, 4000, scale=p)) < 1e-40


def test_S_even_in_f(ctx128):
    for f in range(1, 7):
        assert abs(S_closed(f, 7, ctx128) - S_closed(-f, 7, ctx128)) <= 8 * ctx128.epsilon
        assert S_series(f, 7, ctx128)[0] == S_series(-f, 7, ctx128)[0]


def test_S_domain(ctx128):
    with pytest.raises(DomainError):
        S_closed(7, 7, ctx128)
    with pytest.raises(DomainError):
        S_series(-8, 7, ctx128)


def test_S_upper_bound(ctx128):
    for p in range(3, 14):
        for f in range(1, p):
            _, hi = S_bounds(f, p, ctx128)
            assert S_closed(f, p, ctx128) < hi


def test_S_bounds_lower_value_exceeds_S_for_small_ratio(ctx128):
    # documented behaviour of the lower value; see README
    lo, _ = S_bounds(3, 7, ctx128)
    assert lo > S_closed(3, 7, ctx128)


@pytest.mark.parametrize("j", [1, 8, 16, 32, 48, 63])
def test_W_series_matches_closed(ctx128, j):
    r = Fraction(j, 64)
    value, diag = W_series(r, ctx128)
    assert abs(value - W_closed(r, ctx128)) <= 1e-25
    assert diag.tail_bound < ctx128.epsilon


def test_W_terms_grow_with_r(ctx128):
    used = [W_series(Fraction(j, 16), ctx128)[1].terms_used for j in range(1, 16)]
    assert used == sorted(used)
    assert used[-1] > used[0]


def test_W_series_near_one_truncates(ctx128):
    with pytest.raises(TruncationFailure):
        W_series(1 - NEAR_ONE, ctx128, max_terms=1000)


def test_W_closed_near_one_is_finite(ctx128):
    r = 1 - NEAR_ONE
    with mpmath.workprec(200):
        x = mpmath.mpf(r.numerator) / r.denominator
        ref = (1 - mpmath.pi * x * mpmath.cot(mpmath.pi * x)) / 2
    assert abs(W_closed(r, ctx128) - ref) / abs(ref) < 1e-25


def test_W_domain(ctx128):
    for bad in (1, Fraction(-1, 5), Fraction(3, 2)):
        with pytest.raises(DomainError):
            W_closed(bad, ctx128)
        with pytest.raises(DomainError):
            Q1R1(bad, ctx128)


def test_QR_quarter(ctx128):
    pt = QR(1, 4, ctx128)
    assert abs(pt.q) <= 4 * ctx128.epsilon
    assert abs(pt.r_im + 1) <= 4 * ctx128.epsilon


def test_QR_zero(ctx128):
    pt = QR(0, 5, ctx128)
    assert pt.q == 1 and pt.r_im == 0


def test_Q1R1_quarter(ctx128):
    pt = Q1R1(Fraction(1, 4), ctx128)
    assert abs(pt.q) <= 4 * ctx128.epsilon
    assert abs(pt.r_im + 1) <= 4 * ctx128.epsilon


@pytest.mark.parametrize("p", [2, 3, 4, 9, 31, 101])
def test_QR_reconstructs_unit_exp(ctx128, p):
    tol = 16 * ctx128.epsilon
    for x in range(-(p - 1), p):
        pt = QR(x, p, ctx128)
        ref = unit_exp(Fraction(-x, p), ctx128)
        assert abs(pt.as_complex(ctx128) - ref) <= tol
        assert abs(pt.q ** 2 + pt.r_im ** 2 - 1) <= tol


@settings(max_examples=60, deadline=None)
@given(st.fractions(min_value=0, max_value=Fraction(999, 1000)))
def test_Q1R1_on_unit_circle(r):
    from ecrep.numerics import make_context

    ctx = make_context(128)
    pt = Q1R1(r, ctx)
    ref = unit_exp(-r, ctx)
    assert abs(pt.as_complex(ctx) - ref) <= 16 * ctx.epsilon


@pytest.mark.parametrize(
    "f, p, k, r",
    [(10, 7, 1, Fraction(3, 7)), (-1, 7, -1, Fraction(6, 7)), (14, 7, 2, Fraction(0)), (0, 5, 0, Fraction(0))],
)
def test_frac_decompose(f, p, k, r):
    assert frac_decompose(f, p) == FracDecomposition(k, r)


@given(st.integers(-10**6, 10**6), st.integers(2, 10**4))
def test_frac_decompose_roundtrip(f, p):
    d = frac_decompose(f, p)
    assert 0 <= d.r < 1
    assert d.k + d.r == Fraction(f, p)


def test_frac_decompose_bad_modulus():
    with pytest.raises(InvalidModulus):
        frac_decompose(3, 1)
