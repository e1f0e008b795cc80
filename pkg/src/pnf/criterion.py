"""Sufficient conditions for existence of a primitive normal pair.

The direct condition compares q^(n/2) against 4 * 2^(2*omega + 2*Omega),
where omega counts the distinct primes of q^n - 1 and Omega the distinct
monic irreducible divisors of x^n - 1 over F_q.  When q^n - 1 is too large
to factor, factoring-free variants replace 2^omega by the bound
C(N) * N^(1/5) (C piecewise 7.77 / 8.31 / 11.25 by divisibility of N by 5
and 7) and Omega by n or 3n/4 according to whether n divides q - 1, giving
q^(n/10) > 4*C*2^(2n) and q^(n/10) > 4*C*2^(1.5n); their closed-form
log-threshold versions use the constant 506.25, taken as normative.

Verdicts are decided in log domain at 60 significant digits (mpmath), far
past the 80-bit requirement; the reported lhs/rhs are double-precision
natural logs, and a verdict landing within 1e-9 of the boundary carries a
`boundary` flag.  The direct condition, whose operands always fit in
machine words, is additionally decided by exact integer comparison.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .arith import FACTOR_LIMIT, factor_int, first_primes
from .cyclo import count_irreducible_divisors
from .errors import NotPrime, TooLargeToFactor

_mp = mpmath.mp
_PRECISION_DPS = 60

# normative constants
C_NOT5 = Fraction(777, 100)    # applies when 5 does not divide N
C_NOT7 = Fraction(831, 100)    # applies when 7 does not divide N
C_ANY = Fraction(1125, 100)    # unconditional
LOG_THRESHOLD_CONST = Fraction(2025, 4)  # 506.25, as printed in the source result

BOUNDARY_EPS = 1e-9

EXCLUDED_CHARACTERISTICS = (2, 3)


def _hp_log(x) -> mpmath.mpf:
    """Natural log at working precision; accepts int or Fraction."""
    with mpmath.workdps(_PRECISION_DPS):
        if isinstance(x, Fraction):
            return mpmath.log(mpmath.mpf(x.numerator) / x.denominator)
        return mpmath.log(mpmath.mpf(x))


def prime_power_split(q):
    """q = p^k with p prime; raises NotPrime otherwise."""
    fi = factor_int(q)
    if fi.omega != 1:
        raise NotPrime(f"{q} is not a prime power")
    return fi.factors[0]


@dataclass(frozen=True)
class CriterionReport:
    """Outcome of one sufficient-condition check.

    lhs_log/rhs_log are natural logs of the two sides of the tested
    inequality.  omega is None on routes that avoid factoring q^n - 1.
    """

    q: int
    n: int
    route: str
    omega: int | None
    Omega: int
    lhs_log: float
    rhs_log: float
    holds: bool
    flags: tuple = ()

    CSV_HEADER = "q,n,route,omega,Omega,lhs_log,rhs_log,holds,flags"

    @property
    def excluded_characteristic(self):
        return "excluded_characteristic" in self.flags

    def to_csv_row(self):
        om = "" if self.omega is None else str(self.omega)
        return (
            f"{self.q},{self.n},{self.route},{om},{self.Omega},"
            f"{self.lhs_log:.12g},{self.rhs_log:.12g},"
            f"{'true' if self.holds else 'false'},{';'.join(self.flags)}"
        )

    def to_json_dict(self):
        return {
            "schema": 1,
            "q": self.q,
            "n": self.n,
            "route": self.route,
            "omega": self.omega,
            "Omega": self.Omega,
            "lhs_log": self.lhs_log,
            "rhs_log": self.rhs_log,
            "holds": self.holds,
            "flags": list(self.flags),
        }


def _finish(q, n, route, omega, Omega, lhs_log, rhs_log, holds, flags):
    flags = list(flags)
    if abs(float(lhs_log) - float(rhs_log)) < BOUNDARY_EPS:
        flags.append("boundary")
    return CriterionReport(
        q=q,
        n=n,
        route=route,
        omega=omega,
        Omega=Omega,
        lhs_log=float(lhs_log),
        rhs_log=float(rhs_log),
        holds=holds,
        flags=tuple(flags),
    )


def direct_condition(q, n) -> CriterionReport:
    """Exact check of q^(n/2) > 4 * 2^(2*omega + 2*Omega).

    Needs the factorization of q^n - 1, so q^n - 1 must stay below the
    factoring limit (TooLargeToFactor otherwise).  For p in {2, 3} the
    membership implication is not claimed; the report carries an
    excluded_characteristic flag but is still produced.
    """
    p, k = prime_power_split(q)
    N = q ** n - 1
    if N > FACTOR_LIMIT:
        raise TooLargeToFactor(
            f"q^n - 1 = {N} exceeds the factoring limit; use a factoring-free route"
        )
    omega = factor_int(N).omega
    Omega = count_irreducible_divisors(q, p, n)
    # squared: q^n > 2^(4 + 4*omega + 4*Omega), an exact integer comparison
    holds = q ** n > 1 << (4 + 4 * omega + 4 * Omega)
    lhs_log = 0.5 * n * math.log(q)
    rhs_log = math.log(4) + (2 * omega + 2 * Omega) * math.log(2)
    flags = ["excluded_characteristic"] if p in EXCLUDED_CHARACTERISTICS else []
    return _finish(q, n, "direct", omega, Omega, lhs_log, rhs_log, holds, flags)


def pow2_omega_constant(div5: bool, div7: bool) -> Fraction:
    """The constant C with 2^omega(N) < C * N^(1/5): 7.77 when 5 does not
    divide N, else 8.31 when 7 does not, else 11.25 (the smallest
    applicable constant wins)."""
    if not div5:
        return C_NOT5
    if not div7:
        return C_NOT7
    return C_ANY


def _divisibility_by_5_and_7(q, n):
    """Whether 5 and 7 divide q^n - 1, from residues alone."""
    div5 = q % 5 != 0 and pow(q, n, 5) == 1
    div7 = q % 7 != 0 and pow(q, n, 7) == 1
    return div5, div7


def factoring_free_condition(q, n, route) -> CriterionReport:
    """Check q^(n/10) > 4*C(q^n - 1)*2^(2n) (route 'div', for n | q-1 where
    Omega = n) or q^(n/10) > 4*C(q^n - 1)*2^(1.5n) (route 'nondiv', where
    Omega <= 3n/4).  No integer factoring: divisibility of q^n - 1 by 5 and
    7 comes from q^n mod 5 and mod 7.

    A route that does not match the actual divisibility of q - 1 by n is
    still evaluated, with a route_mismatch flag.
    """
    if route not in ("div", "nondiv"):
        raise ValueError("route must be 'div' or 'nondiv'")
    p, k = prime_power_split(q)
    div5, div7 = _divisibility_by_5_and_7(q, n)
    C = pow2_omega_constant(div5, div7)
    coef = 2 * n if route == "div" else Fraction(3, 2) * n
    ln2 = _hp_log(2)
    lhs = Fraction(n, 10) * _hp_log(q)
    rhs = _hp_log(4 * C) + coef * ln2
    holds = bool(lhs > rhs)
    flags = []
    if p in EXCLUDED_CHARACTERISTICS:
        flags.append("excluded_characteristic")
    divides = (q - 1) % n == 0
    if (route == "div") != divides:
        flags.append("route_mismatch")
    # flag cells where picking the larger applicable constant would flip
    # the verdict (only possible when both refined constants apply)
    if not div5 and not div7:
        alt = bool(lhs > _hp_log(4 * C_NOT7) + coef * ln2)
        if alt != holds:
            flags.append("constant_choice_sensitive")
    Omega = count_irreducible_divisors(q, p, n)
    return _finish(
        q, n, f"capped-{route}", None, Omega, lhs, rhs, holds, flags
    )


def best_condition(q, n) -> CriterionReport:
    """Direct check when q^n - 1 is factorable, otherwise the applicable
    factoring-free route."""
    try:
        return direct_condition(q, n)
    except TooLargeToFactor:
        route = "div" if (q - 1) % n == 0 else "nondiv"
        return factoring_free_condition(q, n, route)


def omega_bound(n, m) -> float:
    """Upper bound on the number of distinct primes of n built from the
    first m primes: (log n - sum log p_i) / log p_m + m."""
    if n <= 1 or m < 1:
        raise ValueError("need n > 1 and m >= 1")
    ps = first_primes(m)
    return (math.log(n) - sum(math.log(p) for p in ps)) / math.log(ps[-1]) + m


def big_omega_bound(q, n):
    """(bound, refined): Omega_q(x^n - 1) <= (n + gcd(n, q-1))/2 always, and
    additionally <= 3n/4 when n does not divide q - 1 (refined is None
    otherwise)."""
    g = math.gcd(n, q - 1)
    bound = Fraction(n + g, 2)
    refined = Fraction(3 * n, 4) if (q - 1) % n else None
    return bound, refined


def threshold_check_divides(p, k, n) -> bool:
    """Closed-form threshold for the n | q-1 regime:
    log q > (10 * log 506.25)/n + 20 * log 2; base-independent, decided at
    working precision."""
    lhs = k * _hp_log(p)
    rhs = Fraction(10, n) * _hp_log(LOG_THRESHOLD_CONST) + 20 * _hp_log(2)
    return bool(lhs > rhs)


def min_degree_threshold(q):
    """Least n for which q^(n/10) > 506.25 * 2^(1.5 n) holds, i.e. the first
    integer strictly above log(506.25) / (log(q)/10 - 1.5*log(2)).

    None when q <= 32768 = 2^15 (the denominator must be positive).
    """
    if q <= 2 ** 15:
        return None
    with mpmath.workdps(_PRECISION_DPS):
        denom = _hp_log(q) / 10 - Fraction(3, 2) * _hp_log(2)
        ratio = _hp_log(LOG_THRESHOLD_CONST) / denom
        n = int(mpmath.floor(ratio)) + 1
        # guard the floor against precision loss right at an integer
        while n - 1 >= 1 and (n - 1) * denom > _hp_log(LOG_THRESHOLD_CONST):
            n -= 1
        while not n * denom > _hp_log(LOG_THRESHOLD_CONST):
            n += 1
    return n
