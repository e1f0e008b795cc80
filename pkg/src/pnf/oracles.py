"""Independent verification routes.

Each function here re-derives a fact the main modules compute, by a
different algorithm: primitivity by enumerating powers instead of order
descent, normality by the rank of the conjugate matrix instead of the
divisor-lattice order, g-freeness by the literal image-membership
definition instead of the gcd characterization, factorization by plain
trial division instead of the rho machinery, and additive-character orders
through the reversed-polynomial annihilator instead of full enumeration.
The verification suite and the tests compare both routes; a substitution on
one side never touches the other.
"""

from __future__ import annotations

import math

from . import cyclo, ff
from .freeness import quad_map


# ---------------------------------------------------------------------------
# integer side


def trial_division_factors(n):
    """Naive factorization as a {prime: exponent} dict (independent of the
    rho-based route)."""
    out = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def smallest_factor_sieve(limit):
    """spf[i] = smallest prime factor of i, for 0 <= i <= limit."""
    spf = list(range(limit + 1))
    for i in range(2, int(math.isqrt(limit)) + 1):
        if spf[i] == i:
            for j in range(i * i, limit + 1, i):
                if spf[j] == j:
                    spf[j] = i
    return spf


def omega_from_sieve(spf, n):
    count = 0
    last = 0
    while n > 1:
        p = spf[n]
        if p != last:
            count += 1
            last = p
        n //= p
    return count


def phi_by_gcd_count(n):
    """Euler phi by counting units (small n only)."""
    return sum(1 for a in range(1, n + 1) if math.gcd(a, n) == 1)


# ---------------------------------------------------------------------------
# field side


def order_by_powers(ctx, a):
    """Multiplicative order by running through the powers of a."""
    if a == 0:
        raise ValueError("zero has no order")
    cur = a
    order = 1
    while cur != ctx.one:
        cur = ctx.mul(cur, a)
        order += 1
        if order > ctx.group_order:
            raise ArithmeticError("order enumeration overran the group (bug)")
    return order


def primitive_by_enumeration(ctx, a):
    return a != 0 and order_by_powers(ctx, a) == ctx.group_order


def rank_over_fq(ctx, rows):
    """Rank of a matrix with F_q entries (row tuples), by elimination."""
    fq = ctx.fq
    rows = [list(r) for r in rows]
    rank = 0
    cols = len(rows[0]) if rows else 0
    for col in range(cols):
        pivot = None
        for r in range(rank, len(rows)):
            if rows[r][col]:
                pivot = r
                break
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = fq.inv(rows[rank][col])
        rows[rank] = [fq.mul(inv, v) for v in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col]:
                c = rows[r][col]
                rows[r] = [
                    fq.sub(v, fq.mul(c, w)) for v, w in zip(rows[r], rows[rank])
                ]
        rank += 1
    return rank


def normal_by_matrix_rank(ctx, a):
    """Normality as full rank of the n x n matrix whose rows are the
    coordinate expansions of a, a^q, ..., a^(q^(n-1))."""
    rows = [ctx.decode(x) for x in ctx.frobenius_orbit(a)]
    return rank_over_fq(ctx, rows) == ctx.n


def g_free_by_existential(ctx, a, g):
    """Literal definition: a is g-free unless a lies in the image of the
    action of some divisor h != 1 of g."""
    fq = ctx.fq
    fp = cyclo.factor_xn_minus_1(ctx)
    for h in cyclo.all_monic_divisors(ctx.fq, fp):
        if h == ff.POLY_ONE:
            continue
        try:
            cyclo.divisor_exponents(fq, fp, h)
        except Exception:
            continue
        # h must divide g
        _, rem = ff.pdivmod(fq, g, h)
        if rem:
            continue
        if any(ctx.poly_action(h, b) == a for b in ctx.elements()):
            return False
    return True


def membership_count_enumeration(ctx):
    """Pair-witness count by the independent route: power-enumeration
    primitivity and matrix-rank normality.  Returns (count, first_witness)
    with first_witness None when the count is zero."""
    count = 0
    first = None
    for a in ctx.units():
        if not primitive_by_enumeration(ctx, a):
            continue
        b = quad_map(ctx, a)
        if b == 0 or not primitive_by_enumeration(ctx, b):
            continue
        if normal_by_matrix_rank(ctx, a) and normal_by_matrix_rank(ctx, b):
            count += 1
            if first is None:
                first = a
    return count, first


def add_char_order_by_reversal(ctx, delta):
    """F_q-order of psi_delta via duality: composing psi_delta with the
    action of g is trivial exactly when the reversed polynomial
    g~ = sum g_i x^((n - i) mod n) annihilates delta, so the order is the
    minimal monic divisor g of x^n - 1 with that property."""
    fq = ctx.fq
    fp = cyclo.factor_xn_minus_1(ctx)
    n = ctx.n
    for g in cyclo.all_monic_divisors(fq, fp):
        rev = [0] * n
        for i, c in enumerate(g):
            j = (n - i) % n
            rev[j] = fq.add(rev[j], c)
        if ctx.poly_action(ff.ptrim(rev), delta) == 0:
            return g
    raise ArithmeticError("no annihilating divisor found (bug)")
