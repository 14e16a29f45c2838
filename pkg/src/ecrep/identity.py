"""The closing identity for f(x) = x: sum Q = sum R = 0 and sum (1 - Q) = p."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError
from .numerics import PrecisionContext
from .parallel import chunked_sum
from .representation import S_closed


@dataclass(frozen=True)
class IdentityReport:
    p: int
    q_sum: object
    r_sum: object
    identity_sum: object
    abs_error: object


def identity_terms(x: int, p: int, ctx: PrecisionContext):
    """(Q(x), R(x), 2 pi^2 x^2 / D(x)) for f(x) = x; x = 0 gives (1, 0, 0)."""
    mp = ctx.mp
    if x == 0:
        return mp.one, mp.zero, mp.zero
    s = S_closed(x, p, ctx)
    c = p - 2 * s
    px = mp.pi * x
    d = c * c + px * px
    share = 2 * px * px / d
    return 1 - share, 2 * px * (2 * s - p) / d, share


def identity_check(p: int, ctx: PrecisionContext, workers: int = 1) -> IdentityReport:
    """Evaluate all three sums over x in [0, p); p need not be prime."""
    if p < 2:
        raise DomainError("p must be >= 2")
    mp = ctx.mp
    zero = (mp.zero, mp.zero, mp.zero)

    class _Acc(tuple):
        def __add__(self, other):
            return _Acc(a + b for a, b in zip(self, other))

    total = chunked_sum(lambda x: _Acc(identity_terms(x, p, ctx)), list(range(p)), _Acc(zero), workers)
    q_sum, r_sum, identity_sum = total
    return IdentityReport(p, q_sum, r_sum, identity_sum, abs(identity_sum - p))
