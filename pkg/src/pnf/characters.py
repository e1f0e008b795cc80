"""Characters of F_{q^n}, indicator character sums, and the grouped
decomposition of the pair-counting sum.

Multiplicative characters are powers of a fixed character attached to the
context's generator: chi_t(alpha) = zeta^(t * dlog(alpha)) with zeta a
primitive (q^n - 1)-th root of unity; the character of order d come from
twists t = (q^n-1)/d * s with gcd(s, d) = 1.  Additive characters are
psi_delta(alpha) = exp(2 pi i Tr(delta * alpha) / p).  Roots of unity are
tabulated once per modulus so repeated evaluation cannot drift.

The weighted character sums rho_e and kappa_g evaluate to 0/1 indicators of
e-freeness and g-freeness; the decomposition groups the full quadruple
character expansion of the pair count by which of the four character slots
(multiplicative/additive, evaluated at alpha or at alpha^2 + alpha + 1) are
nontrivial, giving sixteen sums whose proven bounds are checked against the
measured magnitudes.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

from . import cyclo, ff
from .arith import phi_of_divisor, squarefree_divisors
from .errors import (
    BoundViolated,
    CapExceeded,
    HypothesisViolated,
    NotADivisor,
    ZeroElement,
)
from .freeness import quad_map

# slot labels for the sixteen nontriviality patterns: multiplicative or
# additive character, evaluated at alpha ("a") or at alpha^2+alpha+1 ("b")
_SLOTS = ("mult_a", "mult_b", "add_a", "add_b")


# ---------------------------------------------------------------------------
# character values


@dataclass(frozen=True)
class MultChar:
    """Multiplicative character of exact order `order`, realized by twist
    `twist` against the context's fixed generator.  Extended to 0 by the
    usual convention: trivial character maps 0 to 1, others to 0."""

    order: int
    twist: int
    ctx: object = field(repr=False, compare=False)

    @property
    def is_trivial(self):
        return self.order == 1

    def value(self, a):
        if a == 0:
            return 1.0 + 0j if self.order == 1 else 0j
        ws = _workspace(self.ctx)
        return ws.roots[(self.twist * self.ctx.dlog_of(a)) % self.ctx.group_order]

    __call__ = value


@dataclass(frozen=True)
class AddChar:
    """Additive character psi_delta: alpha -> exp(2 pi i Tr(delta alpha)/p).

    delta = 1 gives the canonical character; delta = 0 the trivial one.
    """

    delta: int
    ctx: object = field(repr=False, compare=False)

    def value(self, a):
        ws = _workspace(self.ctx)
        return ws.proots[ws.trace[self.ctx.mul(self.delta, a)]]

    __call__ = value

    @property
    def fq_order(self):
        return add_char_fq_order(self.ctx, self.delta)


def mult_chars_of_order(ctx, d):
    """The phi(d) multiplicative characters of exact order d, for d dividing
    q^n - 1, in ascending twist order."""
    N = ctx.group_order
    if d < 1 or N % d:
        raise NotADivisor(f"{d} does not divide {N}")
    base = N // d
    return [
        MultChar(order=d, twist=base * s, ctx=ctx)
        for s in range(1, d + 1)
        if math.gcd(s, d) == 1
    ] if d > 1 else [MultChar(order=1, twist=0, ctx=ctx)]


def add_char(ctx, delta):
    return AddChar(delta=delta, ctx=ctx)


# ---------------------------------------------------------------------------
# per-context workspace (tables shared by every character operation)


class _Workspace:
    def __init__(self, ctx):
        ctx.ensure_dlog()
        self.ctx = ctx
        N = ctx.group_order
        self.roots = [cmath.exp(2j * math.pi * j / N) for j in range(N)]
        self.proots = [cmath.exp(2j * math.pi * t / ctx.fq.p) for t in range(ctx.fq.p)]
        self.trace = [ctx.abs_trace(a) for a in ctx.elements()]
        self.beta = [quad_map(ctx, a) for a in ctx.elements()]
        self.fxn = cyclo.factor_xn_minus_1(ctx)
        self._delta_order = None
        self._parts = None
        self._mult_tables = {}
        self._add_tables = {}
        self._rho_tables = {}
        self._kappa_tables = {}

    # -- additive-character orders (the definitional route) -----------------

    def _build_partition(self):
        if self._parts is not None:
            return
        ctx = self.ctx
        divisors = cyclo.all_monic_divisors(ctx.fq, self.fxn)
        # image of each divisor's module action, deduplicated: psi_delta
        # composed with g is trivial iff Tr(delta * v) = 0 for all v in the
        # image, so scanning the image with early exit is enough
        images = []
        for g in divisors:
            images.append(sorted({ctx.poly_action(g, a) for a in ctx.elements()}))
        trace = self.trace
        order_of = []
        parts = {g: [] for g in divisors}
        for delta in ctx.elements():
            for g, img in zip(divisors, images):
                ok = True
                for v in img:
                    if v and trace[ctx.mul(delta, v)]:
                        ok = False
                        break
                if ok:
                    order_of.append(g)
                    parts[g].append(delta)
                    break
        self._delta_order = order_of
        self._parts = parts

    def delta_order(self, delta):
        self._build_partition()
        return self._delta_order[delta]

    def partition(self):
        self._build_partition()
        return self._parts

    # -- nontrivial-slot tables ---------------------------------------------

    def mult_table(self, e):
        """Table over all element codes of the nontrivial multiplicative
        part: sum over squarefree 1 != d | e of mu(d)/phi(d) times the sum of
        the order-d character values (0 at the zero element)."""
        tab = self._mult_tables.get(e)
        if tab is not None:
            return tab
        ctx = self.ctx
        N = ctx.group_order
        fi = ctx.group_factors
        terms = []
        for d, mu in squarefree_divisors(fi):
            if d == 1 or e % d:
                continue
            w = mu / phi_of_divisor(fi, d)
            base = N // d
            for s in range(1, d + 1):
                if math.gcd(s, d) == 1:
                    terms.append((w, base * s % N))
        roots = self.roots
        tab = [0j] * ctx.order
        exp = ctx._exp
        for j in range(N):
            acc = 0j
            for w, t in terms:
                acc += w * roots[t * j % N]
            tab[exp[j]] = acc
        self._mult_tables[e] = tab
        return tab

    def add_table(self, g):
        """Table over all element codes of the nontrivial additive part: sum
        over squarefree 1 != f | g of mu'(f)/Phi(f) times the sum over
        delta of F_q-order f of psi_delta."""
        key = g
        tab = self._add_tables.get(key)
        if tab is not None:
            return tab
        ctx = self.ctx
        parts = self.partition()
        fq = ctx.fq
        gexps = cyclo.divisor_exponents(fq, self.fxn, g)
        tab = [0j] * ctx.order
        N = ctx.group_order
        exp, proots, trace = ctx._exp, self.proots, self.trace
        for f, mu in cyclo.squarefree_poly_divisors(fq, self.fxn):
            if f == ff.POLY_ONE or mu == 0:
                continue
            fexps = cyclo.divisor_exponents(fq, self.fxn, f)
            if any(fe > ge for fe, ge in zip(fexps, gexps)):
                continue  # f does not divide g
            deltas = parts[f]
            w = mu / len(deltas)
            for delta in deltas:
                jd = ctx.dlog_of(delta)
                tab[0] += w  # psi(0) = 1
                for j in range(N):
                    tab[exp[j]] += w * proots[trace[exp[(jd + j) % N]]]
        self._add_tables[key] = tab
        return tab

    # -- indicator tables (include the zero code via the chi(0) rules) ------

    def rho_table(self, e):
        tab = self._rho_tables.get(e)
        if tab is not None:
            return tab
        theta = _theta(self.ctx, e)
        base = self.mult_table(e)
        tab = [theta * (1 + v) for v in base]
        tab[0] = theta  # only the trivial character survives at 0
        self._rho_tables[e] = tab
        return tab

    def kappa_table(self, g):
        tab = self._kappa_tables.get(g)
        if tab is not None:
            return tab
        Theta = _big_theta(self.ctx, g)
        base = self.add_table(g)
        tab = [Theta * (1 + v) for v in base]
        self._kappa_tables[g] = tab
        return tab


def _workspace(ctx) -> _Workspace:
    ws = ctx._caches.get("characters")
    if ws is None:
        ws = _Workspace(ctx)
        ctx._caches["characters"] = ws
    return ws


def _theta(ctx, e):
    """phi(e)/e for a divisor e of the group order."""
    N = ctx.group_order
    if e < 1 or N % e:
        raise NotADivisor(f"{e} does not divide {N}")
    return phi_of_divisor(ctx.group_factors, e) / e


def _big_theta(ctx, g):
    """Phi_q(g) / q^deg(g), the unique normalization making the additive
    indicator take values in {0, 1}."""
    fxn = cyclo.factor_xn_minus_1(ctx)
    phi = cyclo.phi_of_poly_divisor(ctx.fq, fxn, g)
    return phi / ctx.q ** ff.pdeg(g)


def _require_character_cap(ctx):
    if ctx.order > ctx.caps.character_cap:
        raise CapExceeded(
            f"q^n = {ctx.order} exceeds character cap {ctx.caps.character_cap}"
        )


# ---------------------------------------------------------------------------
# public operations


def add_char_fq_order(ctx, delta):
    """F_q-order of psi_delta: the minimal monic divisor g of x^n - 1 such
    that psi_delta composed with the action of g is the trivial character.
    Computed from the definition by scanning divisors in degree order."""
    return _workspace(ctx).delta_order(delta)


def add_char_partition(ctx):
    """delta values grouped by the F_q-order of psi_delta, keyed by monic
    divisor of x^n - 1."""
    return _workspace(ctx).partition()


def rho(ctx, e, a):
    """Weighted character sum that indicates e-freeness of a (nonzero)."""
    if a == 0:
        raise ZeroElement("rho is defined on the unit group")
    ws = _workspace(ctx)
    return ws.rho_table(e)[a]


def kappa(ctx, g, a):
    """Weighted additive-character sum that indicates g-freeness of a."""
    ws = _workspace(ctx)
    cyclo.divisor_exponents(ctx.fq, ws.fxn, g)  # validates divisibility
    return ws.kappa_table(g)[a]


_SUM_KINDS = ("trivial", "gauss", "two_mult", "additive_weil", "mult_poly", "mixed")


def bounded_char_sum(ctx, kind, chi1=None, chi2=None, delta=0, gamma=0):
    """Full-enumeration character sum together with its proven bound.

    Computes sum over alpha in F_{q^n} of
        chi1(alpha) * chi2(alpha^2+alpha+1) * psi_0(delta*alpha +
        gamma*(alpha^2+alpha+1))
    with absent characters treated as the constant 1 and the chi(0)
    extension rules applied.  `kind` selects which bound applies (and which
    hypotheses are enforced):

      trivial        no hypotheses; bound q^n
      gauss          chi1 nontrivial, delta != 0, gamma = 0: bound q^(n/2),
                     attained exactly
      two_mult       chi1, chi2 nontrivial, delta = gamma = 0: bound
                     (1 + n2 - 1) q^(n/2), n2 the degree of the largest
                     squarefree divisor of x^2+x+1
      additive_weil  no multiplicative characters, quadratic or linear
                     additive argument: bound (deg - 1) q^(n/2); requires
                     p != 2 when gamma != 0
      mult_poly      chi2 nontrivial alone: bound (d - 1) q^(n/2) with d the
                     number of distinct roots of x^2+x+1 (magnitude is
                     independent of any unit scalar inside chi2)
      mixed          any nontrivial combination with a nontrivial additive
                     part: bound (n1 + n2 - 1) q^(n/2)

    Returns (value, bound).  Raises HypothesisViolated when the supplied
    configuration breaks the selected bound's hypotheses.
    """
    if kind not in _SUM_KINDS:
        raise ValueError(f"unknown sum kind {kind!r}")
    p = ctx.fq.p
    Q = math.sqrt(ctx.order)
    n1_quad = 1 if p == 3 else 2  # largest squarefree divisor degree of x^2+x+1
    d_quad = 1 if p == 3 else 2   # distinct roots of x^2+x+1

    def nontrivial(c):
        return c is not None and not c.is_trivial

    if kind == "trivial":
        bound = float(ctx.order)
    elif kind == "gauss":
        if not nontrivial(chi1) or chi2 is not None or delta == 0 or gamma != 0:
            raise HypothesisViolated("gauss kind needs nontrivial chi1 and psi")
        bound = Q
    elif kind == "two_mult":
        if not (nontrivial(chi1) and nontrivial(chi2)) or delta or gamma:
            raise HypothesisViolated("two_mult kind needs two nontrivial characters only")
        if p == 3 and chi2.order == 2:
            raise HypothesisViolated("x^2+x+1 is a square in characteristic 3")
        bound = (1 + n1_quad - 1) * Q
    elif kind == "additive_weil":
        if chi1 is not None or chi2 is not None or (delta == 0 and gamma == 0):
            raise HypothesisViolated("additive_weil kind needs a nontrivial psi only")
        deg = 2 if gamma else 1
        if gamma and p == 2:
            raise HypothesisViolated("Weil bound needs gcd(deg, q) = 1")
        bound = (deg - 1) * Q
    elif kind == "mult_poly":
        if not nontrivial(chi2) or chi1 is not None or delta or gamma:
            raise HypothesisViolated("mult_poly kind needs a single nontrivial chi2")
        if p == 3 and chi2.order == 2:
            raise HypothesisViolated("x^2+x+1 is a square in characteristic 3")
        bound = (d_quad - 1) * Q
    else:  # mixed
        if delta == 0 and gamma == 0:
            raise HypothesisViolated("mixed kind needs a nontrivial additive part")
        if (chi1 is not None and chi1.is_trivial) or (chi2 is not None and chi2.is_trivial):
            raise HypothesisViolated("supplied characters must be nontrivial")
        if gamma and ctx.q == 2 and _is_artin_schreier_quadratic(ctx, delta, gamma):
            raise HypothesisViolated("additive argument of the form r^q - r")
        n1 = (1 if chi1 is not None else 0) + (2 if chi2 is not None else 0)
        n2 = 2 if gamma else 1
        bound = (n1 + n2 - 1) * Q

    ws = _workspace(ctx)
    proots, trace, beta = ws.proots, ws.trace, ws.beta
    value = 0j
    for a in ctx.elements():
        b = beta[a]
        term = proots[trace[ctx.add(ctx.mul(delta, a), ctx.mul(gamma, b))]]
        if chi1 is not None:
            term *= chi1.value(a)
            if not term:
                continue
        if chi2 is not None:
            term *= chi2.value(b)
        value += term
    return value, bound


def _is_artin_schreier_quadratic(ctx, delta, gamma):
    # over q = 2 a quadratic delta*x + gamma*(x^2+x+1) can coincide with
    # r(x)^q - r(x) for linear r; detect by enumeration
    target = (gamma, ctx.add(gamma, delta), gamma)  # constant, x, x^2 coeffs
    for c in ctx.units():
        c2 = ctx.mul(c, c)
        for d in ctx.elements():
            # (c x + d)^2 - (c x + d) = c^2 x^2 + (-c) x + d^2 - d
            if (
                c2 == target[2]
                and ctx.sub(0, c) == target[1]
                and ctx.sub(ctx.mul(d, d), d) == target[0]
            ):
                return True
    return False


# ---------------------------------------------------------------------------
# the sixteen grouped sums


@dataclass(frozen=True)
class SumTerm:
    index: int
    pattern: str
    value: complex
    bound: float

    @property
    def magnitude(self):
        return abs(self.value)

    @property
    def slack(self):
        return self.bound - self.magnitude


@dataclass(frozen=True)
class SumReport:
    """The grouped decomposition of the pair count.

    N = theta^2 * Theta^2 * sum of the sixteen grouped sums; each term also
    carries the bound proven for its nontriviality pattern.
    """

    p: int
    k: int
    q: int
    n: int
    omega: int
    Omega: int
    theta: float
    Theta: float
    terms: tuple
    flags: tuple = ()

    @property
    def total(self):
        return sum(t.value for t in self.terms)

    @property
    def n_real(self):
        return (self.theta ** 2) * (self.Theta ** 2) * self.total.real

    @property
    def n_rounded(self):
        return round(self.n_real)

    def to_json_dict(self):
        return {
            "schema": 1,
            "p": self.p,
            "k": self.k,
            "q": self.q,
            "n": self.n,
            "omega": self.omega,
            "Omega": self.Omega,
            "theta": self.theta,
            "Theta": self.Theta,
            "terms": [
                {
                    "index": t.index,
                    "pattern": t.pattern,
                    "value_re": t.value.real,
                    "value_im": t.value.imag,
                    "magnitude": t.magnitude,
                    "bound": t.bound,
                    "slack": t.slack,
                }
                for t in self.terms
            ],
            "N_real": self.n_real,
            "N_rounded": self.n_rounded,
            "flags": list(self.flags),
        }


def _pattern_name(bits):
    on = [name for name, b in zip(_SLOTS, bits) if b]
    return "+".join(on)


def _term_bounds(order, omega, Omega):
    """Proven bound for each of the sixteen patterns, indexed 1..16 in
    binary order over (mult_a, mult_b, add_a, add_b) nontriviality."""
    Q = math.sqrt(order)
    W = 2 ** omega - 1
    V = 2 ** Omega - 1
    return {
        1: float(order - 1),
        2: 0.0,
        3: (Q + 1) * W,
        4: 2 * Q * W * W,
        5: float(V),
        6: Q * W * V,
        7: (2 * Q + 1) * W * V,
        8: 3 * Q * W * W * V,
        9: (Q + 1) * V,
        10: 2 * Q * W * V,
        11: (3 * Q + 1) * W * V,
        12: 4 * Q * W * W * V,
        13: float(V * V),
        14: 2 * Q * W * V * V,
        15: (3 * Q + 1) * W * V * V,
        16: 4 * Q * W * W * V * V,
    }


def sum_decomposition(ctx, check_bounds=True) -> SumReport:
    """Compute the sixteen grouped sums by brute force and compare each
    against its proven bound.

    The grouping keys on which of the four character slots is nontrivial;
    characters of each exact order enter through twist enumeration.  With
    check_bounds (the default, meaningful for p not in {2, 3}) a violated
    bound raises BoundViolated; for p in {2, 3} violations are recorded as
    flags instead, since the bounds' hypotheses fail there.
    """
    _require_character_cap(ctx)
    ws = _workspace(ctx)
    N = ctx.group_order
    um = ws.mult_table(N)
    ua = ws.add_table(ctx.xn_minus_1())
    beta = ws.beta
    sums = [0j] * 17
    sums[1] = complex(N)
    for a in ctx.units():
        b = beta[a]
        m1, m2 = um[a], um[b]
        a1, a2 = ua[a], ua[b]
        m12 = m1 * m2
        a12 = a1 * a2
        sums[2] += m1
        sums[3] += m2
        sums[4] += m12
        sums[5] += a1
        sums[6] += m1 * a1
        sums[7] += m2 * a1
        sums[8] += m12 * a1
        sums[9] += a2
        sums[10] += m1 * a2
        sums[11] += m2 * a2
        sums[12] += m12 * a2
        sums[13] += a12
        sums[14] += m1 * a12
        sums[15] += m2 * a12
        sums[16] += m12 * a12
    omega = ctx.group_factors.omega
    Omega = ws.fxn.omega
    bounds = _term_bounds(ctx.order, omega, Omega)
    tol = 1e-6 + 1e-9 * ctx.order
    excluded = ctx.fq.p in (2, 3)
    flags = ["excluded_characteristic"] if excluded else []
    terms = []
    for i in range(1, 17):
        bits = ((i - 1) & 1, (i - 1) >> 1 & 1, (i - 1) >> 2 & 1, (i - 1) >> 3 & 1)
        term = SumTerm(index=i, pattern=_pattern_name(bits), value=sums[i], bound=bounds[i])
        terms.append(term)
        violated = term.magnitude > term.bound + tol
        if violated:
            flags.append(f"bound_violated:S{i}")
            if check_bounds and not excluded:
                raise BoundViolated(
                    f"grouped sum {i} ({term.pattern or 'all trivial'}): "
                    f"|S| = {term.magnitude:.6f} > bound {term.bound:.6f}"
                )
    fq = ctx.fq
    theta = phi_of_divisor(ctx.group_factors, N) / N if N > 1 else 1.0
    Theta = cyclo.poly_phi(fq, ws.fxn) / ctx.order
    return SumReport(
        p=fq.p,
        k=fq.k,
        q=ctx.q,
        n=ctx.n,
        omega=omega,
        Omega=Omega,
        theta=theta,
        Theta=Theta,
        terms=tuple(terms),
        flags=tuple(flags),
    )


def count_via_characters(ctx, m1, m2, g1, g2) -> float:
    """The character-sum count of alpha in the unit group with alpha m1-free,
    alpha^2+alpha+1 m2-free, alpha g1-free, alpha^2+alpha+1 g2-free.

    Evaluates the quadruple expansion through the indicator tables; zero
    arguments (alpha^2+alpha+1 = 0) follow the chi(0)/psi(0) conventions.
    The result is real up to rounding noise and integral when the indicator
    semantics are exact (always so for the maximal divisors).
    """
    _require_character_cap(ctx)
    ws = _workspace(ctx)
    r1 = ws.rho_table(m1)
    r2 = ws.rho_table(m2)
    k1 = ws.kappa_table(g1)
    k2 = ws.kappa_table(g2)
    beta = ws.beta
    total = 0j
    for a in ctx.units():
        b = beta[a]
        total += r1[a] * r2[b] * k1[a] * k2[b]
    if abs(total.imag) > 1e-6 + 1e-9 * ctx.order:
        raise ArithmeticError(f"count has residual imaginary part {total.imag}")
    return total.real
