"""Exact arithmetic in the tower F_p < F_q < F_{q^n}.

Elements are integer codes.  An element of F_q = F_p[y]/(h) with coefficients
(a_0, ..., a_{k-1}) has code sum(a_j * p^j); an element of F_{q^n} = F_q[x]/(m)
with F_q coefficients (c_0, ..., c_{n-1}) has code sum(c_i * q^i).  Codes are
canonical, so equality of elements is equality of ints and flat tables can be
indexed directly by element.

Moduli are chosen deterministically (the irreducible polynomial of the right
degree with the smallest code), so every context, generator, and downstream
report is reproducible bit for bit.  All integer arithmetic is Python
arbitrary precision; explicit caps stand in for overflow checks.
"""

from __future__ import annotations

import math

from .arith import factor_int, is_prime
from .config import DEFAULT_CAPS, SizeCaps
from .errors import (
    CapExceeded,
    DivisionByZero,
    NoIrreducibleFound,
    NotPrime,
    ZeroElement,
)


# ---------------------------------------------------------------------------
# inner field F_q = F_p[y]/(h)


class Fq:
    """The middle field of the tower, with int-coded elements.

    For k = 1 this is the prime field and all operations reduce to modular
    integer arithmetic; for k > 1 elements are polynomials in y over F_p,
    reduced mod the stored irreducible modulus.
    """

    def __init__(self, p, k):
        if not is_prime(p):
            raise NotPrime(f"{p} is not prime")
        if k < 1:
            raise ValueError("extension degree k must be positive")
        self.p = p
        self.k = k
        self.q = p ** k
        if k == 1:
            self.modulus = (0, 1)  # y itself; F_p[y]/(y) = F_p
            self._red = None
        else:
            base = Fq(p, 1)
            self.modulus = smallest_irreducible(base, k)
            # reduction rows: y^(k+i) mod h as coefficient tuples, i < k-1
            self._red = []
            row = list(self.modulus[:k])
            neg = [(p - c) % p for c in row]
            self._red.append(tuple(neg))
            for _ in range(k - 2):
                shifted = [0] + list(self._red[-1])
                top = shifted.pop()
                if top:
                    shifted = [
                        (c + top * r) % p for c, r in zip(shifted, self._red[0])
                    ]
                self._red.append(tuple(shifted))

    def decode(self, a):
        """Coefficient tuple (length k) of the element with code a."""
        p = self.p
        return tuple((a // p ** j) % p for j in range(self.k))

    def encode(self, coeffs):
        a = 0
        for j, c in enumerate(coeffs):
            a += (c % self.p) * self.p ** j
        return a

    def add(self, a, b):
        p = self.p
        if self.k == 1:
            return (a + b) % p
        out = 0
        mul = 1
        for _ in range(self.k):
            out += ((a + b) % p) * mul
            a //= p
            b //= p
            mul *= p
        return out

    def neg(self, a):
        p = self.p
        if self.k == 1:
            return (-a) % p
        out = 0
        mul = 1
        for _ in range(self.k):
            out += ((p - a % p) % p) * mul
            a //= p
            mul *= p
        return out

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        p = self.p
        if self.k == 1:
            return a * b % p
        if a == 0 or b == 0:
            return 0
        av = self.decode(a)
        bv = self.decode(b)
        k = self.k
        prod = [0] * (2 * k - 1)
        for i, ai in enumerate(av):
            if ai:
                for j, bj in enumerate(bv):
                    prod[i + j] = (prod[i + j] + ai * bj) % p
        for i in range(2 * k - 2, k - 1, -1):
            top = prod[i]
            if top:
                row = self._red[i - k]
                for j, r in enumerate(row):
                    prod[j] = (prod[j] + top * r) % p
        return self.encode(prod[:k])

    def pow(self, a, e):
        if e < 0:
            return self.pow(self.inv(a), -e)
        if self.k == 1:
            return pow(a, e, self.p)
        out = 1
        base = a
        while e:
            if e & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            e >>= 1
        return out

    def inv(self, a):
        if a == 0:
            raise DivisionByZero("inverse of zero")
        if self.k == 1:
            return pow(a, self.p - 2, self.p)
        return self.pow(a, self.q - 2)

    def elements(self):
        return range(self.q)

    def __repr__(self):
        return f"Fq(p={self.p}, k={self.k})"


# ---------------------------------------------------------------------------
# polynomials over an Fq instance
#
# A polynomial is a tuple of element codes, index = degree, with no trailing
# zeros; () is the zero polynomial and (1,) the constant one.

POLY_ONE = (1,)


def ptrim(coeffs):
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


def pdeg(f):
    return len(f) - 1


def padd(fq, f, g):
    if len(f) < len(g):
        f, g = g, f
    out = list(f)
    for i, c in enumerate(g):
        out[i] = fq.add(out[i], c)
    return ptrim(out)


def psub(fq, f, g):
    out = list(f) + [0] * (len(g) - len(f))
    for i, c in enumerate(g):
        out[i] = fq.sub(out[i], c)
    return ptrim(out)


def pscale(fq, f, c):
    if c == 0:
        return ()
    return ptrim(fq.mul(a, c) for a in f)


def pmul(fq, f, g):
    if not f or not g:
        return ()
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] = fq.add(out[i + j], fq.mul(a, b))
    return ptrim(out)


def pdivmod(fq, f, g):
    if not g:
        raise DivisionByZero("polynomial division by zero")
    f = list(f)
    dg = pdeg(g)
    inv_lead = fq.inv(g[-1])
    quot = [0] * max(len(f) - dg, 0)
    while len(f) - 1 >= dg and f:
        shift = len(f) - 1 - dg
        c = fq.mul(f[-1], inv_lead)
        quot[shift] = c
        for i, b in enumerate(g):
            f[shift + i] = fq.sub(f[shift + i], fq.mul(c, b))
        while f and f[-1] == 0:
            f.pop()
    return ptrim(quot), ptrim(f)


def pmod(fq, f, g):
    return pdivmod(fq, f, g)[1]


def pmonic(fq, f):
    if not f:
        return ()
    if f[-1] == 1:
        return f
    return pscale(fq, f, fq.inv(f[-1]))


def pgcd(fq, f, g):
    while g:
        f, g = g, pmod(fq, f, g)
    return pmonic(fq, f)


def ppowmod(fq, f, e, mod):
    out = POLY_ONE
    base = pmod(fq, f, mod)
    while e:
        if e & 1:
            out = pmod(fq, pmul(fq, out, base), mod)
        base = pmod(fq, pmul(fq, base, base), mod)
        e >>= 1
    return out


def peval(fq, f, x):
    out = 0
    for c in reversed(f):
        out = fq.add(fq.mul(out, x), c)
    return out


def pis_irreducible(fq, f):
    """Irreducibility over F_q via the Frobenius fixed-point criterion:
    f (degree d) is irreducible iff x^(q^d) = x mod f and, for every prime
    l | d, gcd(x^(q^(d/l)) - x, f) = 1."""
    d = pdeg(f)
    if d < 1:
        return False
    if d == 1:
        return True
    x = (0, 1)
    prime_steps = {d // l for l, _ in factor_int(d).factors}
    r = x
    for j in range(1, d + 1):
        r = ppowmod(fq, r, fq.q, f)
        if j in prime_steps:
            if pgcd(fq, psub(fq, r, x), f) != POLY_ONE:
                return False
    return r == pmod(fq, x, f)


def code_to_poly(fq, code, length):
    """Decode an integer into a coefficient tuple base q (used when scanning
    candidate polynomials in canonical order)."""
    out = []
    for _ in range(length):
        out.append(code % fq.q)
        code //= fq.q
    return tuple(out)


def smallest_irreducible(fq, degree):
    """The monic irreducible of the given degree with the smallest code
    (coefficients read least significant first)."""
    for code in range(fq.q ** degree):
        f = code_to_poly(fq, code, degree) + (1,)
        if pis_irreducible(fq, f):
            return f
    raise NoIrreducibleFound(f"no irreducible of degree {degree} over q={fq.q}")


def pstr(fq, f, var="x"):
    """Readable form, constant term last, e.g. 'x^2 + 2'."""
    if not f:
        return "0"
    parts = []
    for i in range(len(f) - 1, -1, -1):
        c = f[i]
        if c == 0:
            continue
        if fq.k == 1:
            cs = str(c)
        else:
            cs = "(" + pstr(Fq(fq.p, 1), fq.decode(c), "y") + ")"
        if i == 0:
            parts.append(cs)
        else:
            xs = var if i == 1 else f"{var}^{i}"
            parts.append(xs if cs == "1" else f"{cs}*{xs}")
    return " + ".join(parts)


# ---------------------------------------------------------------------------
# the outer field F_{q^n} = F_q[x]/(m)


class FieldContext:
    """Everything needed to compute exactly in F_{q^n} over F_q over F_p.

    Immutable after construction apart from lazily built tables (discrete
    log, per-module caches); safe to share across workers.
    """

    def __init__(self, fq: Fq, n: int, caps: SizeCaps, build_dlog=True):
        self.fq = fq
        self.n = n
        self.q = fq.q
        self.caps = caps
        self.order = fq.q ** n
        self.group_order = self.order - 1
        if self.order > caps.enumeration_cap:
            raise CapExceeded(
                f"q^n = {self.order} exceeds enumeration cap {caps.enumeration_cap}"
            )
        self.modulus = smallest_irreducible(fq, n)
        self._red = []
        if n > 1:
            neg = tuple(fq.neg(c) for c in self.modulus[:n])
            self._red.append(neg)
            for _ in range(n - 2):
                shifted = [0] + list(self._red[-1])
                top = shifted.pop()
                if top:
                    shifted = [
                        fq.add(c, fq.mul(top, r))
                        for c, r in zip(shifted, self._red[0])
                    ]
                self._red.append(tuple(shifted))
        self._prime_direct = fq.k == 1 and n == 1
        self.group_factors = factor_int(self.group_order)
        self.zero = 0
        self.one = 1
        self._exp = None
        self._dlog = None
        self._caches = {}
        self.gen = self._find_generator()
        if build_dlog:
            self.ensure_dlog()

    # -- element codecs ----------------------------------------------------

    def decode(self, a):
        q = self.q
        return tuple((a // q ** i) % q for i in range(self.n))

    def encode(self, coeffs):
        a = 0
        for i, c in enumerate(coeffs):
            a += (c % self.q) * self.q ** i
        return a

    def coeff_matrix_row(self, a):
        """Coefficients of a as a vector over F_q (decode alias for callers
        doing linear algebra)."""
        return self.decode(a)

    def embed(self, c):
        """F_q scalar into the big field; inner and outer codes coincide."""
        if not 0 <= c < self.q:
            raise ValueError("scalar out of range")
        return c

    def elements(self):
        return range(self.order)

    def units(self):
        return range(1, self.order)

    # -- arithmetic --------------------------------------------------------

    def add(self, a, b):
        if self._prime_direct:
            return (a + b) % self.q
        if self.n == 1:
            return self.fq.add(a, b)
        q = self.q
        out = 0
        mul = 1
        for _ in range(self.n):
            out += self.fq.add(a % q, b % q) * mul
            a //= q
            b //= q
            mul *= q
        return out

    def neg(self, a):
        if self._prime_direct:
            return (-a) % self.q
        if self.n == 1:
            return self.fq.neg(a)
        q = self.q
        out = 0
        mul = 1
        for _ in range(self.n):
            out += self.fq.neg(a % q) * mul
            a //= q
            mul *= q
        return out

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def _mul_sym(self, a, b):
        """Multiplication through the polynomial representation (used before
        the discrete-log table exists)."""
        if self._prime_direct:
            return a * b % self.q
        if self.n == 1:
            return self.fq.mul(a, b)
        if a == 0 or b == 0:
            return 0
        fq = self.fq
        av = self.decode(a)
        bv = self.decode(b)
        n = self.n
        prod = [0] * (2 * n - 1)
        for i, ai in enumerate(av):
            if ai:
                for j, bj in enumerate(bv):
                    prod[i + j] = fq.add(prod[i + j], fq.mul(ai, bj))
        for i in range(2 * n - 2, n - 1, -1):
            top = prod[i]
            if top:
                row = self._red[i - n]
                for j, r in enumerate(row):
                    prod[j] = fq.add(prod[j], fq.mul(top, r))
        return self.encode(prod[:n])

    def mul(self, a, b):
        if self._dlog is not None:
            if a == 0 or b == 0:
                return 0
            return self._exp[(self._dlog[a] + self._dlog[b]) % self.group_order]
        return self._mul_sym(a, b)

    def inv(self, a):
        if a == 0:
            raise DivisionByZero("inverse of zero")
        if self._dlog is not None:
            return self._exp[-self._dlog[a] % self.group_order]
        return self._pow_sym(a, self.group_order - 1)

    def _pow_sym(self, a, e):
        out = 1
        base = a
        while e:
            if e & 1:
                out = self._mul_sym(out, base)
            base = self._mul_sym(base, base)
            e >>= 1
        return out

    def pow(self, a, e):
        """a^e with any integer exponent (negative uses the inverse)."""
        if a == 0:
            if e > 0:
                return 0
            if e == 0:
                return 1
            raise DivisionByZero("0 to a negative power")
        if self._dlog is not None:
            return self._exp[(self._dlog[a] * e) % self.group_order]
        if e < 0:
            return self._pow_sym(self.inv(a), -e)
        return self._pow_sym(a, e % self.group_order) if self.group_order else 1

    # -- Frobenius, module action, trace ------------------------------------

    def frobenius(self, a, i=1):
        """a^(q^i); i is reduced mod n."""
        i %= self.n
        if i == 0 or a == 0 or a == 1:
            return a
        if self._dlog is not None:
            return self._exp[(self._dlog[a] * pow(self.q, i, self.group_order)) % self.group_order]
        out = a
        for _ in range(i):
            out = self._pow_sym(out, self.q)
        return out

    def frobenius_orbit(self, a):
        """[a, a^q, ..., a^(q^(n-1))]."""
        orbit = [a]
        for _ in range(self.n - 1):
            orbit.append(self.frobenius(orbit[-1], 1))
        return orbit

    def poly_action(self, f, a):
        """The F_q[x]-module action: f acting on a is sum f_i * a^(q^i),
        constant term included."""
        out = 0
        power = a  # a^(q^i) as i walks the coefficients
        for i, c in enumerate(f):
            if i:
                power = self.frobenius(power, 1)
            if c:
                out = self.add(out, self.mul(self.embed(c), power))
        return out

    def abs_trace(self, a):
        """Absolute trace down to F_p, returned as an int in [0, p)."""
        kn = self.fq.k * self.n
        acc = a
        t = a
        for _ in range(kn - 1):
            t = self.pow(t, self.fq.p)
            acc = self.add(acc, t)
        # the trace lands in F_p, whose codes are 0..p-1
        assert acc < self.fq.p, "trace left the prime field"
        return acc

    # -- generator and discrete logs ----------------------------------------

    def _order_is_maximal(self, a):
        for l, _ in self.group_factors.factors:
            if self._pow_sym(a, self.group_order // l) == 1:
                return False
        return True

    def _find_generator(self):
        if self.group_order == 1:
            return 1
        for cand in range(2, self.order):
            if self._order_is_maximal(cand):
                return cand
        raise NoIrreducibleFound("no generator found (impossible)")

    def ensure_dlog(self):
        """Build exp/dlog tables (size q^n).  Idempotent."""
        if self._dlog is not None:
            return
        N = self.group_order
        exp = [1] * N
        dlog = [0] * self.order
        cur = 1
        for j in range(N):
            exp[j] = cur
            dlog[cur] = j
            cur = self._mul_sym(cur, self.gen)
        if cur != 1:
            raise NoIrreducibleFound("generator order check failed (bug)")
        self._exp = exp
        self._dlog = dlog

    @property
    def has_dlog(self):
        return self._dlog is not None

    def dlog_of(self, a):
        if a == 0:
            raise ZeroElement("zero has no discrete log")
        self.ensure_dlog()
        return self._dlog[a]

    def exp_of(self, j):
        self.ensure_dlog()
        return self._exp[j % self.group_order] if self.group_order else 1

    # -- misc ----------------------------------------------------------------

    def poly_str(self, f, var="x"):
        return pstr(self.fq, f, var)

    def element_str(self, a):
        return pstr(self.fq, ptrim(self.decode(a)), "x") if a else "0"

    def xn_minus_1(self):
        """The polynomial x^n - 1 over F_q."""
        return ptrim((self.fq.neg(1),) + (0,) * (self.n - 1) + (1,))

    def __repr__(self):
        return (
            f"FieldContext(p={self.fq.p}, k={self.fq.k}, n={self.n}, "
            f"order={self.order})"
        )


def make_field_ctx(p, k, n, caps: SizeCaps = DEFAULT_CAPS, build_dlog=True) -> FieldContext:
    """Construct the tower F_p < F_(p^k) < F_(p^(kn)) with verified moduli.

    Raises NotPrime, CapExceeded.
    """
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if k < 1 or n < 1:
        raise ValueError("k and n must be positive")
    return FieldContext(Fq(p, k), n, caps, build_dlog=build_dlog)


def find_generator_and_dlog(ctx: FieldContext):
    """The context's fixed primitive element and its discrete-log table."""
    ctx.ensure_dlog()
    return ctx.gen, list(ctx._dlog)


def field_arith(ctx: FieldContext, op: str, *operands):
    """Dispatch table matching the documented operation names."""
    table = {
        "add": ctx.add,
        "sub": ctx.sub,
        "mul": ctx.mul,
        "inv": ctx.inv,
        "pow": ctx.pow,
    }
    if op not in table:
        raise ValueError(f"unknown op {op!r}")
    return table[op](*operands)
