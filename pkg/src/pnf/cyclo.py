"""Structure of x^n - 1 over F_q: factorization, Phi_q, divisor enumeration.

x^n - 1 is the only polynomial the toolkit ever factors, so instead of a
general factoring algorithm we use its cyclotomic-coset structure directly:
write n = n' * p^e with gcd(n', p) = 1; the distinct irreducible factors
correspond one-to-one with the q-cyclotomic cosets mod n', and every factor
appears with multiplicity p^e.  The factor attached to a coset C is
prod_{j in C} (x - zeta^j) for a fixed n'-th root of unity zeta, computed in
the splitting extension F_{q^L}, L = ord_{n'}(q), and read back into F_q.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import ff
from .arith import factor_int
from .errors import NotADivisor


def multiplicative_order(a, m):
    """Order of a modulo m (gcd(a, m) = 1)."""
    if m == 1:
        return 1
    a %= m
    x = a
    for i in range(1, m + 1):
        if x == 1:
            return i
        x = x * a % m
    raise ValueError(f"{a} is not a unit mod {m}")


def cyclotomic_cosets(q, m):
    """The q-cyclotomic cosets of Z/m (orbits of multiplication by q),
    each sorted, listed by smallest member."""
    seen = bytearray(m)
    cosets = []
    for c in range(m):
        if not seen[c]:
            orbit = []
            x = c
            while not seen[x]:
                seen[x] = 1
                orbit.append(x)
                x = x * q % m
            cosets.append(sorted(orbit))
    return cosets


def split_tame_part(n, p):
    """n = n' * p^e with gcd(n', p) = 1; returns (n', p^e)."""
    wild = 1
    while n % p == 0:
        n //= p
        wild *= p
    return n, wild


def count_irreducible_divisors(q, p, n):
    """Omega_q(x^n - 1) without building any field: the number of
    q-cyclotomic cosets mod the tame part of n."""
    n1, _ = split_tame_part(n, p)
    return len(cyclotomic_cosets(q, n1))


@dataclass(frozen=True)
class FactoredPoly:
    """A monic polynomial over F_q with its irreducible factorization.

    factors holds (irreducible, multiplicity) pairs in canonical order
    (degree first, then coefficient tuple).  Polynomials are coefficient
    tuples as in the ff module.
    """

    poly: tuple
    factors: tuple

    @property
    def omega(self) -> int:
        """Number of distinct monic irreducible divisors."""
        return len(self.factors)


def _root_of_unity(fq, n1, L):
    """An element of order exactly n1 inside F_{q^L}, as a polynomial over
    F_q reduced mod the canonical degree-L modulus.  Returns (element, M)."""
    M = ff.smallest_irreducible(fq, L)
    group = fq.q ** L - 1
    cof = group // n1
    needed = [n1 // l for l, _ in factor_int(n1).factors]
    for code in range(2, fq.q ** L):
        cand = ff.ptrim(ff.code_to_poly(fq, code, L))
        xi = ff.ppowmod(fq, cand, cof, M)
        if xi in ((), ff.POLY_ONE):
            continue
        if all(ff.ppowmod(fq, xi, t, M) != ff.POLY_ONE for t in needed):
            return xi, M
    raise ArithmeticError("no root of unity found (impossible)")


def xn_minus_1_poly(fq, n):
    """The polynomial x^n - 1 over F_q."""
    return ff.ptrim((fq.neg(1),) + (0,) * (n - 1) + (1,))


def factor_xn_minus_1_over(fq, n) -> FactoredPoly:
    """Factor x^n - 1 over F_q.  Works for any (q, n): only F_q and the
    splitting extension of the tame part are ever constructed, never the
    degree-n field itself.  The result is verified by multiplying the
    factors back together."""
    n1, wild = split_tame_part(n, fq.p)
    target = xn_minus_1_poly(fq, n)
    irreducibles = []
    if n1 == 1:
        irreducibles.append((fq.neg(1), 1))  # x - 1
    else:
        cosets = cyclotomic_cosets(fq.q, n1)
        L = multiplicative_order(fq.q % n1, n1)
        xi, M = _root_of_unity(fq, n1, L)
        # zeta^j for all j < n1, as extension elements
        powers = [ff.POLY_ONE]
        for _ in range(n1 - 1):
            powers.append(ff.pmod(fq, ff.pmul(fq, powers[-1], xi), M))
        for coset in cosets:
            # product over the coset of (X - zeta^j); coefficients are
            # extension elements that must collapse into F_q
            coeffs = [ff.POLY_ONE]
            for j in coset:
                root = powers[j]
                new = [()] * (len(coeffs) + 1)
                for i, c in enumerate(coeffs):
                    new[i + 1] = ff.padd(fq, new[i + 1], c)
                    prod = ff.pmod(fq, ff.pmul(fq, c, root), M)
                    new[i] = ff.psub(fq, new[i], prod)
                coeffs = new
            flat = []
            for c in coeffs:
                if len(c) > 1:
                    raise ArithmeticError("factor coefficient escaped F_q (bug)")
                flat.append(c[0] if c else 0)
            irreducibles.append(ff.ptrim(flat))
    irreducibles.sort(key=lambda f: (len(f), f))
    factors = tuple((f, wild) for f in irreducibles)
    rebuilt = ff.POLY_ONE
    for f, mult in factors:
        for _ in range(mult):
            rebuilt = ff.pmul(fq, rebuilt, f)
    if rebuilt != target:
        raise ArithmeticError("x^n - 1 reconstruction failed (bug)")
    return FactoredPoly(poly=target, factors=factors)


def factor_xn_minus_1(ctx) -> FactoredPoly:
    """Context-cached factorization of x^n - 1 for the context's (q, n)."""
    cached = ctx._caches.get("xn1_factors")
    if cached is None:
        cached = factor_xn_minus_1_over(ctx.fq, ctx.n)
        ctx._caches["xn1_factors"] = cached
    return cached


def poly_phi(fq, fp: FactoredPoly) -> int:
    """Phi_q(g): the order of the unit group of F_q[x]/(g), multiplicative
    over the factorization: each irreducible of degree d with multiplicity m
    contributes q^(d*m) - q^(d*(m-1))."""
    out = 1
    for f, m in fp.factors:
        d = ff.pdeg(f)
        out *= fq.q ** (d * m) - fq.q ** (d * (m - 1))
    return out


def phi_of_poly_divisor(fq, fp: FactoredPoly, g) -> int:
    """Phi_q(g) for a divisor g of fp.poly, via g's exponent vector."""
    exps = divisor_exponents(fq, fp, g)
    out = 1
    for (f, _), e in zip(fp.factors, exps):
        if e:
            d = ff.pdeg(f)
            out *= fq.q ** (d * e) - fq.q ** (d * (e - 1))
    return out


def divisor_exponents(fq, fp: FactoredPoly, g):
    """Exponent vector of the monic divisor g with respect to fp's factor
    list.  Raises NotADivisor if g does not divide fp.poly."""
    if not g or g[-1] != 1:
        raise NotADivisor("divisor must be monic")
    exps = []
    rest = g
    for f, mult in fp.factors:
        e = 0
        while e < mult:
            quot, rem = ff.pdivmod(fq, rest, f)
            if rem:
                break
            rest = quot
            e += 1
        exps.append(e)
    if rest != ff.POLY_ONE:
        raise NotADivisor("polynomial does not divide x^n - 1")
    return exps


def poly_from_exponents(fq, fp: FactoredPoly, exps):
    out = ff.POLY_ONE
    for (f, _), e in zip(fp.factors, exps):
        for _ in range(e):
            out = ff.pmul(fq, out, f)
    return out


def poly_mobius(fq, fp: FactoredPoly, g) -> int:
    """mu'(g): 0 if g has a repeated irreducible factor, else (-1)^s for a
    product of s distinct monic irreducibles."""
    exps = divisor_exponents(fq, fp, g)
    if any(e > 1 for e in exps):
        return 0
    return -1 if sum(exps) % 2 else 1


def squarefree_poly_divisors(fq, fp: FactoredPoly):
    """All 2^Omega squarefree monic divisors with mu', sorted by (degree,
    coefficients); includes 1 (with mu' = +1)."""
    divs = [(ff.POLY_ONE, 1)]
    for f, _ in fp.factors:
        divs += [(ff.pmul(fq, d, f), -mu) for d, mu in divs]
    divs.sort(key=lambda t: (len(t[0]), t[0]))
    return divs


def all_monic_divisors(fq, fp: FactoredPoly):
    """Every monic divisor of fp.poly, sorted by (degree, coefficients)."""
    divs = [ff.POLY_ONE]
    for f, mult in fp.factors:
        grown = []
        for d in divs:
            cur = d
            grown.append(cur)
            for _ in range(mult):
                cur = ff.pmul(fq, cur, f)
                grown.append(cur)
        divs = grown
    divs.sort(key=lambda t: (len(t), t))
    return divs
