from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ecrep.errors import BudgetExceeded, DomainError, InvalidModulus
from ecrep.fracpart import (
    floor_via_expsum,
    frac_via_expsum,
    lagrange_root_count,
    prop4_verify,
    prop5_bound_exact,
    prop5_lower_bound,
)
from ecrep.numerics import CurveParams, is_prime


@pytest.mark.parametrize("n, p", [(1, 2), (7, 3), (12, 12), (100, 7), (1000, 13)])
def test_floor_matches_integer_division(ctx128, n, p):
    rep = floor_via_expsum(n, p, ctx128)
    assert rep.floor_value == n // p
    assert rep.deviation < 1e-20


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 400), st.integers(2, 40))
def test_frac_matches_exact(n, p):
    from ecrep.numerics import make_context

    ctx = make_context(128)
    assert abs(frac_via_expsum(n, p, ctx) - ctx.real(Fraction(n % p, p))) < 1e-20


def test_floor_gate(ctx128):
    with pytest.raises(BudgetExceeded):
        floor_via_expsum(10**5 + 1, 3, ctx128)
    with pytest.raises(BudgetExceeded):
        floor_via_expsum(10, 103, ctx128)
    with pytest.raises(DomainError):
        floor_via_expsum(0, 3, ctx128)


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13])
def test_prop4_exhaustive(p):
    assert all(prop4_verify(f, p) for f in range(2, 501))


def test_prop4_domain():
    with pytest.raises(DomainError):
        prop4_verify(1, 5)
    with pytest.raises(InvalidModulus):
        prop4_verify(5, 2)


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13])
def test_prop5_never_exceeds_frac(ctx128, p):
    for f in range(1, 301):
        exact = Fraction(f % p, p)
        assert prop5_bound_exact(f, p) <= exact
        assert prop5_lower_bound(f, p, ctx128) <= ctx128.real(exact)


def test_prop5_rounds_down(ctx128):
    q = prop5_bound_exact(4, 7)
    value = prop5_lower_bound(4, 7, ctx128)
    assert value <= ctx128.real(q)
    assert abs(value - ctx128.real(q)) <= 2 * ctx128.epsilon


def test_prop5_domain(ctx128):
    with pytest.raises(DomainError):
        prop5_lower_bound(0, 5, ctx128)
    with pytest.raises(InvalidModulus):
        prop5_lower_bound(3, 9, ctx128)


@pytest.mark.parametrize("p", [p for p in range(2, 102) if is_prime(p)])
def test_lagrange_at_most_three(p):
    for a in range(-3, 4):
        for b in range(-3, 4):
            n = lagrange_root_count(CurveParams(a, b, p))
            assert 0 <= n <= 3
            assert n == sum(1 for x in range(p) if (x ** 3 + a * x + b) % p == 0)


def test_lagrange_composite():
    with pytest.raises(InvalidModulus):
        lagrange_root_count(CurveParams(0, 0, 8))
