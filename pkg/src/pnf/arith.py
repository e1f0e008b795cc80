"""Integer-side structure: factorization and multiplicative functions.

Everything downstream (group orders, divisor lattices, criterion checks)
consumes the `FactoredInt` record produced here.  Factorization is fully
deterministic: trial division up to 10^6, then Brent-style rho with a fixed
seed sequence, with primality certified by a Miller-Rabin witness set that is
exact below 2^64.  Inputs above 2^64 are rejected rather than factored
probabilistically.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass

from .errors import TooLarge

TRIAL_LIMIT = 10 ** 6
FACTOR_LIMIT = 2 ** 64

# Deterministic Miller-Rabin witnesses, complete for n < 3.3 * 10^24 (covers 2^64).
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic primality test for n < 2^64 (raises TooLarge above)."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    if n > FACTOR_LIMIT:
        raise TooLarge(f"{n} exceeds the deterministic primality limit 2^64")
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
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


def _brent_rho(n: int) -> int:
    """Return a nontrivial factor of composite odd n.  Deterministic: the
    polynomial increment c walks 1, 2, 3, ... until a factor appears."""
    if n % 2 == 0:
        return 2
    for c in range(1, 256):
        y, m, g, r, q = 2, 128, 1, 1, 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    raise ArithmeticError(f"rho failed to split {n}")  # unreachable in practice


@dataclass(frozen=True)
class FactoredInt:
    """A positive integer with its complete prime factorization.

    factors is a tuple of (prime, exponent) pairs sorted by prime; the empty
    tuple represents 1.
    """

    n: int
    factors: tuple[tuple[int, int], ...]

    @property
    def omega(self) -> int:
        """Number of distinct prime divisors."""
        return len(self.factors)

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def __str__(self):
        if not self.factors:
            return "1"
        return " * ".join(f"{p}^{e}" if e > 1 else str(p) for p, e in self.factors)


class FactorCache:
    """Optional persistent cache, one record per line: N\\tp1^e1 p2^e2 ...

    Read once at construction, appended after each fresh factorization.
    Entries are re-verified on read so correctness never depends on the file.
    """

    def __init__(self, path):
        self.path = path
        self._table = {}
        if os.path.exists(path):
            with open(path, "r", encoding="ascii") as fh:
                for line in fh:
                    line = line.strip()
                    if not line or line.startswith("#"):
                        continue
                    try:
                        left, right = line.split("\t")
                        n = int(left)
                        facs = []
                        for tok in right.split():
                            if "^" in tok:
                                p, e = tok.split("^")
                                facs.append((int(p), int(e)))
                            else:
                                facs.append((int(tok), 1))
                        facs = tuple(sorted(facs))
                    except ValueError:
                        continue
                    if _verify_factors(n, facs):
                        self._table[n] = facs

    def lookup(self, n):
        return self._table.get(n)

    def record(self, n, factors):
        if n in self._table:
            return
        self._table[n] = factors
        body = " ".join(f"{p}^{e}" if e > 1 else str(p) for p, e in factors)
        with open(self.path, "a", encoding="ascii") as fh:
            fh.write(f"{n}\t{body}\n")


def _verify_factors(n, factors):
    prod = 1
    for p, e in factors:
        if e < 1 or not is_prime(p):
            return False
        prod *= p ** e
    return prod == n


_active_cache: FactorCache | None = None


def use_cache(path) -> None:
    """Activate (or with None, deactivate) the persistent factor cache."""
    global _active_cache
    _active_cache = FactorCache(path) if path else None


_TRIAL_PREFIX = 10 ** 3  # unconditional wheel phase; beyond it, primality
                         # short-circuits first and rho splits what remains


def factor_int(n: int) -> FactoredInt:
    """Complete factorization of n >= 1.  Raises TooLarge above 2^64.

    Pipeline: a trial-division wheel strips every factor up to 10^3; each
    remaining cofactor is either certified prime, finished by trial division
    (when its square root stays within the 10^6 trial limit), or split by
    rho.  Fully deterministic, so repeated runs factor identically.
    """
    if n < 1:
        raise ValueError("factor_int requires n >= 1")
    if n > FACTOR_LIMIT:
        raise TooLarge(f"{n} exceeds the factoring limit 2^64")
    if _active_cache is not None:
        hit = _active_cache.lookup(n)
        if hit is not None:
            return FactoredInt(n, hit)
    m = n
    found: dict[int, int] = {}
    for p in (2, 3, 5):
        while m % p == 0:
            found[p] = found.get(p, 0) + 1
            m //= p
    d = 7
    step = 4  # alternates 4, 2 to walk 6k+1, 6k-1
    while d <= _TRIAL_PREFIX and d * d <= m:
        while m % d == 0:
            found[d] = found.get(d, 0) + 1
            m //= d
        d += step
        step = 6 - step
    stack = [m] if m > 1 else []
    while stack:
        c = stack.pop()
        if c == 1:
            continue
        if c <= _TRIAL_PREFIX * _TRIAL_PREFIX or is_prime(c):
            # below 10^6 the wheel already proved c prime; otherwise MR did
            found[c] = found.get(c, 0) + 1
            continue
        if c <= TRIAL_LIMIT * TRIAL_LIMIT:
            # composite with sqrt within the trial limit: finish by wheel
            d = _TRIAL_PREFIX + 6 - (_TRIAL_PREFIX % 6) + 1  # next 6k+1
            step = 4
            while d * d <= c:
                if c % d == 0:
                    stack.append(d)
                    stack.append(c // d)
                    break
                d += step
                step = 6 - step
            else:
                found[c] = found.get(c, 0) + 1  # unreachable: c was composite
            continue
        # perfect power check keeps rho off prime powers it splits poorly
        split = False
        for k in (2, 3, 5):
            root = round(c ** (1.0 / k))
            for cand in (root - 1, root, root + 1):
                if cand > 1 and cand ** k == c:
                    stack.extend([cand] * k)
                    split = True
                    break
            if split:
                break
        if split:
            continue
        g = _brent_rho(c)
        stack.append(g)
        stack.append(c // g)
    result = FactoredInt(n, tuple(sorted(found.items())))
    assert _verify_factors(n, result.factors)
    if _active_cache is not None:
        _active_cache.record(n, result.factors)
    return result


def euler_phi(fi: FactoredInt) -> int:
    """phi(N) from the factorization."""
    out = 1
    for p, e in fi.factors:
        out *= (p - 1) * p ** (e - 1)
    return out


def mobius(fi: FactoredInt) -> int:
    """mu(N): 0 on a square factor, else (-1)^omega."""
    for _, e in fi.factors:
        if e > 1:
            return 0
    return -1 if fi.omega % 2 else 1


def squarefree_divisors(fi: FactoredInt) -> list[tuple[int, int]]:
    """All 2^omega squarefree divisors of N with their Mobius values, sorted.

    Includes d = 1 (with mu = +1).
    """
    divs = [(1, 1)]
    for p, _ in fi.factors:
        divs += [(d * p, -mu) for d, mu in divs]
    divs.sort()
    return divs


def phi_of_divisor(fi: FactoredInt, d: int) -> int:
    """phi(d) for a divisor d of fi.n, using fi's primes (no refactoring)."""
    if fi.n % d:
        raise ValueError(f"{d} does not divide {fi.n}")
    out = 1
    for p, _ in fi.factors:
        if d % p == 0:
            e = 0
            while d % p == 0:
                d //= p
                e += 1
            out *= (p - 1) * p ** (e - 1)
    return out


def primes_up_to(limit: int) -> list[int]:
    """Simple sieve, inclusive."""
    if limit < 2:
        return []
    sieve = bytearray([1]) * (limit + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, int(math.isqrt(limit)) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(sieve[i * i :: i]))
    return [i for i in range(limit + 1) if sieve[i]]


def first_primes(m: int) -> list[int]:
    """The first m primes."""
    out = []
    cand = 2
    while len(out) < m:
        if is_prime(cand):
            out.append(cand)
        cand += 1
    return out
