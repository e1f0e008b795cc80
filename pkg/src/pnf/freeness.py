"""Multiplicative and additive freeness of field elements.

An element is e-free (for e dividing q^n - 1) when it is not a proper d-th
power for any d | e; equivalently gcd(e, (q^n-1)/ord(alpha)) = 1, which we
test through the cheap prime-power form: alpha^((q^n-1)/l) != 1 for every
prime l | e.  Primitive means (q^n-1)-free.

On the additive side, F_{q^n} is an F_q[x]-module under f acting as
sum f_i alpha^(q^i); the F_q-order of alpha is the minimal monic divisor of
x^n - 1 annihilating it, alpha is g-free when gcd(g, (x^n-1)/order) = 1, and
normal means (x^n-1)-free.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import cyclo, ff
from .errors import NotADivisor, ZeroElement


def mult_order(ctx, a) -> int:
    """Exact multiplicative order via divisor descent on q^n - 1."""
    if a == 0:
        raise ZeroElement("order of zero")
    o = ctx.group_order
    for l, _ in ctx.group_factors.factors:
        while o % l == 0 and ctx.pow(a, o // l) == ctx.one:
            o //= l
    return o


def is_e_free(ctx, a, e) -> bool:
    """True iff a is e-free: for every prime l | e, a^((q^n-1)/l) != 1."""
    if a == 0:
        raise ZeroElement("zero is not in the unit group")
    N = ctx.group_order
    if e < 1 or N % e:
        raise NotADivisor(f"{e} does not divide {N}")
    for l, _ in ctx.group_factors.factors:
        if e % l == 0 and ctx.pow(a, N // l) == ctx.one:
            return False
    return True


def is_primitive(ctx, a) -> bool:
    """Generator test; uses the discrete log when the table exists."""
    if a == 0:
        return False
    if ctx.has_dlog:
        return math.gcd(ctx.dlog_of(a), ctx.group_order) == 1
    return is_e_free(ctx, a, ctx.group_order)


def fq_order(ctx, a):
    """Minimal monic divisor g of x^n - 1 with g acting on a as zero.

    Found by stripping irreducible factors off x^n - 1 while annihilation
    persists (the annihilating divisors form the principal filter above the
    order, so greedy stripping reaches the minimum).  fq_order(0) = 1.
    """
    fp = cyclo.factor_xn_minus_1(ctx)
    exps = [m for _, m in fp.factors]
    for i, (_, mult) in enumerate(fp.factors):
        while exps[i] > 0:
            exps[i] -= 1
            trial = cyclo.poly_from_exponents(ctx.fq, fp, exps)
            if ctx.poly_action(trial, a) != 0:
                exps[i] += 1
                break
    return cyclo.poly_from_exponents(ctx.fq, fp, exps)


def is_g_free(ctx, a, g) -> bool:
    """True iff gcd(g, (x^n-1)/fq_order(a)) = 1 in F_q[x]."""
    fq = ctx.fq
    fp = cyclo.factor_xn_minus_1(ctx)
    cyclo.divisor_exponents(fq, fp, g)  # raises NotADivisor when invalid
    quot, rem = ff.pdivmod(fq, fp.poly, fq_order(ctx, a))
    assert not rem
    return ff.pgcd(fq, g, quot) == ff.POLY_ONE


def is_normal(ctx, a) -> bool:
    """Normal over F_q iff the F_q-order is all of x^n - 1."""
    return fq_order(ctx, a) == ctx.xn_minus_1()


def quad_map(ctx, a):
    """The companion value a^2 + a + 1."""
    return ctx.add(ctx.add(ctx.mul(a, a), a), ctx.one)


@dataclass(frozen=True)
class FreenessProfile:
    """Joint multiplicative/additive profile of one element."""

    element: int
    mult_order: int
    fq_order: tuple
    is_primitive: bool
    is_normal: bool


def profile(ctx, a) -> FreenessProfile:
    if a == 0:
        return FreenessProfile(0, 0, ff.POLY_ONE, False, False)
    order = mult_order(ctx, a)
    fqo = fq_order(ctx, a)
    return FreenessProfile(
        element=a,
        mult_order=order,
        fq_order=fqo,
        is_primitive=order == ctx.group_order,
        is_normal=fqo == ctx.xn_minus_1(),
    )


def is_primitive_normal_pair(ctx, a) -> bool:
    """True iff a is primitive normal and a^2 + a + 1 is nonzero, primitive,
    and normal.  Checks are ordered cheapest rejector first."""
    if a == 0 or not is_primitive(ctx, a):
        return False
    b = quad_map(ctx, a)
    if b == 0 or not is_primitive(ctx, b):
        return False
    return is_normal(ctx, a) and is_normal(ctx, b)
