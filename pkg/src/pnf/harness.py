"""Exhaustive membership search, grid scans, and the verification suite.

A membership report records, for one (p, k, n), how many alpha in the unit
group of F_{q^n} are primitive normal with alpha^2 + alpha + 1 also
primitive normal, alongside the criterion verdict and (under the character
cap) the character-sum count of the same quantity.  Scans stream one row
per cell and never abort on a per-cell error.  The verification suite
re-runs every cross-check the toolkit makes, at a quick desk scale or at
the full documented sweep sizes.
"""

from __future__ import annotations

import concurrent.futures
import dataclasses
import io
import math
import time
from dataclasses import dataclass

from . import arith, characters, criterion, cyclo, ff, freeness, oracles
from .config import DEFAULT_CAPS, RAISED_CHARACTER_CAP, SizeCaps
from .errors import CapExceeded, ToolkitError

SCAN_CSV_HEADER = (
    "p,k,n,q,qn,excluded_char,witness_count,example_witness,char_count,"
    "route,omega,Omega,lhs_log,rhs_log,holds,flags,error"
)


@dataclass(frozen=True)
class MembershipReport:
    """Per-(q, n) record of the exhaustive pair-witness search."""

    p: int
    k: int
    n: int
    q: int
    qn: int
    excluded_char: bool
    witness_count: int | None = None
    example_witness: int | None = None  # discrete-log index of one witness
    char_count: float | None = None
    criterion: criterion.CriterionReport | None = None
    runtime_ms: float | None = None
    error: str | None = None

    def to_csv_row(self):
        c = self.criterion
        fields = [
            str(self.p),
            str(self.k),
            str(self.n),
            str(self.q),
            str(self.qn),
            "true" if self.excluded_char else "false",
            "" if self.witness_count is None else str(self.witness_count),
            "" if self.example_witness is None else str(self.example_witness),
            "" if self.char_count is None else f"{self.char_count:.10g}",
            "" if c is None else c.route,
            "" if c is None or c.omega is None else str(c.omega),
            "" if c is None else str(c.Omega),
            "" if c is None else f"{c.lhs_log:.12g}",
            "" if c is None else f"{c.rhs_log:.12g}",
            "" if c is None else ("true" if c.holds else "false"),
            "" if c is None else ";".join(c.flags),
            self.error or "",
        ]
        return ",".join(fields)

    def to_json_dict(self, include_runtime=True):
        out = {
            "schema": 1,
            "p": self.p,
            "k": self.k,
            "n": self.n,
            "q": self.q,
            "qn": self.qn,
            "excluded_char": self.excluded_char,
            "witness_count": self.witness_count,
            "example_witness": self.example_witness,
            "char_count": self.char_count,
            "criterion": None if self.criterion is None else self.criterion.to_json_dict(),
            "error": self.error,
        }
        if include_runtime:
            out["runtime_ms"] = self.runtime_ms
        return out


def brute_force_membership(p, k, n, caps: SizeCaps = DEFAULT_CAPS, char_check=False):
    """Sweep all of F*_{q^n} and count primitive-normal pair witnesses.

    Characteristics 2 and 3 are flagged (the existence theorem's hypotheses
    exclude them) but enumerated all the same; the predicate is defined for
    every p.  With char_check (and q^n under the character cap) the
    character-sum count is computed and recorded alongside.
    """
    start = time.perf_counter()
    ctx = ff.make_field_ctx(p, k, n, caps=caps)
    N = ctx.group_order
    exp = ctx._exp
    count = 0
    first = None
    one = ctx.one
    n_is_1 = ctx.n == 1
    for j in range(N):
        if math.gcd(j, N) != 1:
            continue
        a = exp[j]
        b = freeness.quad_map(ctx, a)
        if b == 0 or math.gcd(ctx.dlog_of(b), N) != 1:
            continue
        # for n = 1 the F_q-order of any nonzero element is already x - 1
        if not n_is_1 and not (freeness.is_normal(ctx, a) and freeness.is_normal(ctx, b)):
            continue
        count += 1
        if first is None:
            first = j
    char_count = None
    if char_check and ctx.order <= caps.character_cap:
        char_count = characters.count_via_characters(
            ctx, N, N, ctx.xn_minus_1(), ctx.xn_minus_1()
        )
    try:
        crit = criterion.best_condition(ctx.q, n)
    except ToolkitError:
        crit = None
    return MembershipReport(
        p=p,
        k=k,
        n=n,
        q=ctx.q,
        qn=ctx.order,
        excluded_char=p in (2, 3),
        witness_count=count,
        example_witness=first,
        char_count=char_count,
        criterion=crit,
        runtime_ms=(time.perf_counter() - start) * 1000.0,
    )


# ---------------------------------------------------------------------------
# grid scans


def _scan_cell(args):
    p, k, n, caps, char_check = args
    q = p ** k
    qn = q ** n
    start = time.perf_counter()
    error = None
    crit = None
    try:
        crit = criterion.best_condition(q, n)
    except ToolkitError as exc:
        error = f"criterion:{type(exc).__name__}"
    if qn <= caps.enumeration_cap:
        try:
            rep = brute_force_membership(p, k, n, caps=caps, char_check=char_check)
            if error:
                rep = dataclasses.replace(rep, error=error)
            return rep
        except ToolkitError as exc:
            error = f"membership:{type(exc).__name__}"
    return MembershipReport(
        p=p,
        k=k,
        n=n,
        q=q,
        qn=qn,
        excluded_char=p in (2, 3),
        criterion=crit,
        runtime_ms=(time.perf_counter() - start) * 1000.0,
        error=error,
    )


def grid_cells(p_range, k_range, n_range):
    """Cells (p, k, n) with p prime inside p_range, in grid order."""
    p_lo, p_hi = p_range
    cells = []
    for p in arith.primes_up_to(p_hi):
        if p < p_lo:
            continue
        for k in range(k_range[0], k_range[1] + 1):
            for n in range(n_range[0], n_range[1] + 1):
                cells.append((p, k, n))
    return cells


def scan(p_range, k_range, n_range, caps: SizeCaps = DEFAULT_CAPS, char_check=False, workers=1):
    """Yield MembershipReports over the grid, in grid order.

    Cells above the enumeration cap produce criterion-only rows; per-cell
    errors are captured in the row.  With workers > 1 the cells run in a
    process pool; the output order (and content) is identical regardless.
    """
    cells = [(p, k, n, caps, char_check) for p, k, n in grid_cells(p_range, k_range, n_range)]
    if workers <= 1:
        for args in cells:
            yield _scan_cell(args)
        return
    with concurrent.futures.ProcessPoolExecutor(max_workers=workers) as pool:
        chunk = max(1, len(cells) // (workers * 8))
        yield from pool.map(_scan_cell, cells, chunksize=chunk)


def scan_to_csv(reports, stream):
    """Write scan rows as CSV (preceded by a schema comment line).

    runtime_ms is deliberately not serialized: identical scans must produce
    byte-identical files.
    """
    stream.write("# schema: 1\n")
    stream.write(SCAN_CSV_HEADER + "\n")
    for rep in reports:
        stream.write(rep.to_csv_row() + "\n")


def scan_to_json_lines(reports, stream):
    import json

    for rep in reports:
        stream.write(json.dumps(rep.to_json_dict(include_runtime=False), sort_keys=False))
        stream.write("\n")


def consistency_cells(limit=10 ** 4, p_min=5):
    """All (p, k, n) with p >= p_min prime and q^n <= limit."""
    cells = []
    for p in arith.primes_up_to(limit):
        if p < p_min:
            continue
        k = 1
        while p ** k <= limit:
            n = 1
            while p ** (k * n) <= limit:
                cells.append((p, k, n))
                n += 1
            k += 1
    return cells


def theorem_consistency_scan(limit=10 ** 4, caps: SizeCaps = DEFAULT_CAPS):
    """Check that no cell with p >= 5 and q^n <= limit satisfies the direct
    condition while lacking a witness.  Returns (failures, summary dict)."""
    failures = []
    holds_cells = 0
    witness_without_condition = 0
    total = 0
    for p, k, n in consistency_cells(limit):
        rep = brute_force_membership(p, k, n, caps=caps)
        total += 1
        crit = rep.criterion
        if crit is not None and crit.route == "direct" and crit.holds:
            holds_cells += 1
            if rep.witness_count == 0:
                failures.append(
                    f"condition holds but no witness at p={p} k={k} n={n}"
                )
        if rep.witness_count and (crit is None or not crit.holds):
            witness_without_condition += 1
    summary = {
        "cells": total,
        "condition_holds": holds_cells,
        "witness_despite_condition_failing": witness_without_condition,
    }
    return failures, summary


# ---------------------------------------------------------------------------
# verification suite


@dataclass
class CheckOutcome:
    name: str
    failures: list
    info: str = ""
    seconds: float = 0.0

    @property
    def ok(self):
        return not self.failures


def _fields_upto(limit, p_min=2, n_min=1):
    """All (p, k, n) with q^n <= limit (n >= n_min)."""
    out = []
    for p in arith.primes_up_to(limit):
        if p < p_min:
            continue
        k = 1
        while p ** k <= limit:
            n = n_min
            while p ** (k * n) <= limit:
                out.append((p, k, n))
                n += 1
            k += 1
    return out


def _check_field_arithmetic(scale):
    fails = []
    for p, k, n in scale["arith_fields"]:
        ctx = ff.make_field_ctx(p, k, n)
        for a in ctx.units():
            if ctx.mul(a, ctx.inv(a)) != ctx.one:
                fails.append(f"inverse failed at {a} in {ctx}")
        for a in range(min(ctx.order, 12)):
            for b in range(min(ctx.order, 12)):
                lhs = ctx.pow(ctx.add(a, b), p)
                rhs = ctx.add(ctx.pow(a, p), ctx.pow(b, p))
                if lhs != rhs:
                    fails.append(f"Frobenius additivity failed at ({a},{b}) in {ctx}")
        for a in ctx.elements():
            if ctx.pow(a, ctx.order) != a:
                fails.append(f"a^(q^n) != a at {a} in {ctx}")
        rebuilt = ff.make_field_ctx(p, k, n)
        if rebuilt.modulus != ctx.modulus or rebuilt.gen != ctx.gen:
            fails.append(f"context rebuild not deterministic for {ctx}")
    return fails, ""


def _check_trace_and_orbits(scale):
    fails = []
    for p, k, n in scale["arith_fields"]:
        ctx = ff.make_field_ctx(p, k, n)
        hit = {ctx.abs_trace(a) for a in ctx.elements()}
        if hit != set(range(p)):
            fails.append(f"trace not onto F_p in {ctx}")
        for a in list(ctx.elements())[: min(ctx.order, 40)]:
            tr = ctx.abs_trace(a)
            for x in ctx.frobenius_orbit(a):
                if ctx.abs_trace(x) != tr:
                    fails.append(f"trace not Frobenius-invariant at {a} in {ctx}")
                    break
    return fails, ""


def _check_poly_action_composition(scale):
    fails = []
    for p, k, n in scale["action_fields_exhaustive"]:
        ctx = ff.make_field_ctx(p, k, n)
        polys = [ff.ptrim(ff.code_to_poly(ctx.fq, c, n)) for c in range(ctx.order)]
        for f in polys:
            for g in polys:
                fg = ff.pmul(ctx.fq, f, g)
                for a in ctx.elements():
                    if ctx.poly_action(fg, a) != ctx.poly_action(f, ctx.poly_action(g, a)):
                        fails.append(f"action composition failed {ctx} f={f} g={g} a={a}")
                        return fails, ""
        # linearity in a and additivity in f, sampled
        for a in ctx.elements():
            for b in ctx.elements():
                f = polys[min(3, len(polys) - 1)]
                if ctx.poly_action(f, ctx.add(a, b)) != ctx.add(
                    ctx.poly_action(f, a), ctx.poly_action(f, b)
                ):
                    fails.append(f"action not additive in argument {ctx}")
                    return fails, ""
    for p, k, n in scale["action_fields_sampled"]:
        ctx = ff.make_field_ctx(p, k, n)
        rng_state = 123456789
        def nxt(bound):
            nonlocal rng_state
            rng_state = (1103515245 * rng_state + 12345) % (1 << 31)
            return rng_state % bound
        for _ in range(scale["action_samples"]):
            f = ff.ptrim(ff.code_to_poly(ctx.fq, nxt(ctx.order), n))
            g = ff.ptrim(ff.code_to_poly(ctx.fq, nxt(ctx.order), n))
            a = nxt(ctx.order)
            fg = ff.pmul(ctx.fq, f, g)
            if ctx.poly_action(fg, a) != ctx.poly_action(f, ctx.poly_action(g, a)):
                fails.append(f"action composition failed (sampled) {ctx} f={f} g={g} a={a}")
                return fails, ""
    return fails, ""


def _check_factor_oracle(scale):
    fails = []
    limit = scale["factor_limit"]
    spf = oracles.smallest_factor_sieve(limit)
    for n in range(1, limit + 1):
        fi = arith.factor_int(n)
        prod = 1
        om = 0
        m = n
        last = 0
        while m > 1:
            d = spf[m]
            if d != last:
                om += 1
                last = d
            m //= d
        for pr, e in fi.factors:
            prod *= pr ** e
        if prod != n or fi.omega != om:
            fails.append(f"factorization mismatch at {n}")
            if len(fails) > 5:
                break
    # larger samples through the rho path; the naive oracle only reaches the
    # square root of the second-largest factor, so keep those moderate
    for n in (2 ** 31 - 1, 600851475143, 1000003 * 1000033, 999983 ** 2 * 7):
        fi = arith.factor_int(n)
        if dict(fi.factors) != oracles.trial_division_factors(n):
            fails.append(f"factorization mismatch at {n}")
    # known closed-form factorizations exercise the 64-bit extreme
    known = {
        2 ** 64 - 1: ((3, 1), (5, 1), (17, 1), (257, 1), (641, 1), (65537, 1), (6700417, 1)),
        2 ** 61 - 1: ((2 ** 61 - 1, 1),),
    }
    for n, want in known.items():
        if arith.factor_int(n).factors != want:
            fails.append(f"factorization mismatch at {n}")
    return fails, f"checked 1..{limit} plus large samples"


def _check_mobius_sum(scale):
    fails = []
    for n in range(2, scale["mobius_limit"] + 1):
        fi = arith.factor_int(n)
        total = sum(mu for _, mu in arith.squarefree_divisors(fi))
        if total != 0:
            fails.append(f"Mobius sum nonzero at {n}")
    return fails, ""


def _check_xn1_reconstruction(scale):
    fails = []
    qmax, nmax = scale["xn1_q_max"], scale["xn1_n_max"]
    prime_powers = [
        (p, k)
        for p in arith.primes_up_to(qmax)
        for k in range(1, 21)
        if p ** k <= qmax
    ]
    for p, k in sorted(prime_powers, key=lambda t: t[0] ** t[1]):
        q = p ** k
        fq = ff.Fq(p, k)
        for n in range(1, nmax + 1):
            fp = cyclo.factor_xn_minus_1_over(fq, n)  # reconstruction verified inside
            if fp.omega != cyclo.count_irreducible_divisors(q, p, n):
                fails.append(f"coset count mismatch q={q} n={n}")
            for f, _m in fp.factors:
                if not ff.pis_irreducible(fq, f):
                    fails.append(f"claimed factor not irreducible q={q} n={n}")
    return fails, f"q <= {qmax}, n <= {nmax}"


def _check_phi_partition(scale):
    fails = []
    for p, k, n in _fields_upto(scale["phi_partition_limit"]):
        ctx = ff.make_field_ctx(p, k, n, build_dlog=False)
        fp = cyclo.factor_xn_minus_1(ctx)
        total = sum(
            cyclo.phi_of_poly_divisor(ctx.fq, fp, g)
            for g in cyclo.all_monic_divisors(ctx.fq, fp)
        )
        if total != ctx.order:
            fails.append(f"unit-count partition failed for {ctx}")
    return fails, ""


def _check_freeness_cross_oracle(scale):
    fails = []
    for p, k, n in scale["freeness_fields"]:
        ctx = ff.make_field_ctx(p, k, n)
        prim_count = 0
        normal_count = 0
        for a in ctx.elements():
            normal = freeness.is_normal(ctx, a)
            if normal != oracles.normal_by_matrix_rank(ctx, a):
                fails.append(f"normality mismatch at {a} in {ctx}")
            if normal:
                normal_count += 1
            if a and freeness.is_primitive(ctx, a):
                prim_count += 1
        fp = cyclo.factor_xn_minus_1(ctx)
        if prim_count != arith.euler_phi(ctx.group_factors):
            fails.append(f"primitive count != phi in {ctx}")
        if normal_count != cyclo.poly_phi(ctx.fq, fp):
            fails.append(f"normal count != Phi in {ctx}")
    for p, k, n in scale["power_enum_fields"]:
        ctx = ff.make_field_ctx(p, k, n)
        for a in ctx.units():
            if freeness.is_e_free(ctx, a, ctx.group_order) != oracles.primitive_by_enumeration(ctx, a):
                fails.append(f"primitivity mismatch at {a} in {ctx}")
    return fails, f"{len(scale['freeness_fields'])} fields"


def _check_gfree_existential(scale):
    fails = []
    for p, k, n in scale["gfree_fields"]:
        ctx = ff.make_field_ctx(p, k, n)
        fp = cyclo.factor_xn_minus_1(ctx)
        for g in cyclo.all_monic_divisors(ctx.fq, fp):
            for a in ctx.elements():
                if freeness.is_g_free(ctx, a, g) != oracles.g_free_by_existential(ctx, a, g):
                    fails.append(f"g-free mismatch {ctx} g={ctx.poly_str(g)} a={a}")
    return fails, ""


def _check_indicator_functions(scale):
    fails = []
    for p, k, n in scale["char_fields"]:
        ctx = ff.make_field_ctx(p, k, n, caps=scale["char_caps"])
        N = ctx.group_order
        fp = cyclo.factor_xn_minus_1(ctx)
        divisors = [d for d in range(1, N + 1) if N % d == 0]
        for e in divisors:
            for a in ctx.units():
                got = characters.rho(ctx, e, a)
                want = 1.0 if freeness.is_e_free(ctx, a, e) else 0.0
                if abs(got - want) > 1e-6:
                    fails.append(f"rho not indicator: {ctx} e={e} a={a} got={got}")
                    return fails, ""
        for g in cyclo.all_monic_divisors(ctx.fq, fp):
            for a in ctx.elements():
                got = characters.kappa(ctx, g, a)
                want = 1.0 if freeness.is_g_free(ctx, a, g) else 0.0
                if abs(got - want) > 1e-6:
                    fails.append(
                        f"kappa not indicator: {ctx} g={ctx.poly_str(g)} a={a} got={got}"
                    )
                    return fails, ""
    return fails, ""


def _check_orthogonality(scale):
    fails = []
    for p, k, n in scale["char_fields"]:
        ctx = ff.make_field_ctx(p, k, n, caps=scale["char_caps"])
        N = ctx.group_order
        for d in sorted({d for d in range(2, N + 1) if N % d == 0}):
            for chi in characters.mult_chars_of_order(ctx, d):
                s = sum(chi.value(a) for a in ctx.units())
                if abs(s) > 1e-6 + 1e-9 * N:
                    fails.append(f"mult orthogonality failed {ctx} d={d}")
        for delta in ctx.units():
            psi = characters.add_char(ctx, delta)
            s = sum(psi.value(a) for a in ctx.elements())
            if abs(s) > 1e-6 + 1e-9 * ctx.order:
                fails.append(f"add orthogonality failed {ctx} delta={delta}")
        # character-count partitions
        tot = sum(
            len(characters.mult_chars_of_order(ctx, d))
            for d in range(1, N + 1)
            if N % d == 0
        )
        if tot != N:
            fails.append(f"sum phi(d) != q^n - 1 in {ctx}")
    return fails, ""


def _check_add_char_partition(scale):
    fails = []
    for p, k, n in scale["char_fields"]:
        ctx = ff.make_field_ctx(p, k, n, caps=scale["char_caps"])
        fp = cyclo.factor_xn_minus_1(ctx)
        parts = characters.add_char_partition(ctx)
        total = 0
        for g, deltas in parts.items():
            total += len(deltas)
            if len(deltas) != cyclo.phi_of_poly_divisor(ctx.fq, fp, g):
                fails.append(f"|Delta_g| != Phi(g) for g={ctx.poly_str(g)} in {ctx}")
        if total != ctx.order:
            fails.append(f"Delta partition does not cover the field in {ctx}")
        for delta in ctx.elements():
            if characters.add_char_fq_order(ctx, delta) != oracles.add_char_order_by_reversal(ctx, delta):
                fails.append(f"additive order duality mismatch delta={delta} in {ctx}")
    return fails, ""


def _check_gauss_equality(scale):
    fails = []
    for p, k, n in scale["gauss_fields"]:
        ctx = ff.make_field_ctx(p, k, n, caps=scale["char_caps"])
        N = ctx.group_order
        Q = math.sqrt(ctx.order)
        for d in sorted({d for d in range(2, N + 1) if N % d == 0}):
            for chi in characters.mult_chars_of_order(ctx, d):
                for delta in ctx.units():
                    v, bound = characters.bounded_char_sum(ctx, "gauss", chi1=chi, delta=delta)
                    if abs(abs(v) - Q) > 1e-6:
                        fails.append(f"gauss magnitude off {ctx} d={d} delta={delta}")
                        return fails, ""
    return fails, ""


def _nontrivial_chars(ctx):
    N = ctx.group_order
    out = []
    for d in sorted({d for d in range(2, N + 1) if N % d == 0}):
        out += characters.mult_chars_of_order(ctx, d)
    return out


def _check_weil_bounds(scale):
    fails = []
    for p, k, n in scale["weil_fields"]:
        ctx = ff.make_field_ctx(p, k, n, caps=scale["char_caps"])
        chis = _nontrivial_chars(ctx)
        deltas = scale["weil_deltas"](ctx)
        gammas = scale["weil_gammas"](ctx)

        def record(kind, **kw):
            v, bound = characters.bounded_char_sum(ctx, kind, **kw)
            if abs(v) > bound + 1e-6:
                fails.append(
                    f"{kind} bound violated in {ctx}: |v|={abs(v):.6f} > {bound:.6f} {kw}"
                )

        for chi1 in chis:
            for chi2 in chis:
                record("two_mult", chi1=chi1, chi2=chi2)
        for delta in list(ctx.elements())[: scale["weil_delta_full"]]:
            for gamma in gammas:
                if gamma:
                    record("additive_weil", delta=delta, gamma=gamma)
        for chi2 in chis:
            record("mult_poly", chi2=chi2)
        for chi1 in chis:
            for delta in deltas:
                if delta:
                    record("mixed", chi1=chi1, delta=delta)
                for gamma in gammas:
                    if gamma:
                        record("mixed", chi1=chi1, delta=delta, gamma=gamma)
        for chi2 in chis:
            for delta in deltas:
                if delta:
                    record("mixed", chi2=chi2, delta=delta)
        for chi1 in chis:
            for chi2 in chis:
                for delta in deltas:
                    if delta:
                        record("mixed", chi1=chi1, chi2=chi2, delta=delta)
                    for gamma in gammas:
                        if gamma:
                            record("mixed", chi1=chi1, chi2=chi2, delta=delta, gamma=gamma)
        if fails:
            return fails, ""
    return fails, ""


def _check_sum_decomposition(scale):
    fails = []
    for p, k, n in scale["char_fields"]:
        ctx = ff.make_field_ctx(p, k, n, caps=scale["char_caps"])
        try:
            rep = characters.sum_decomposition(ctx)
        except ToolkitError as exc:
            fails.append(f"decomposition raised {type(exc).__name__} in {ctx}")
            continue
        if rep.terms[0].value != complex(ctx.group_order):
            fails.append(f"S1 != q^n - 1 in {ctx}")
        if abs(rep.terms[1].value) > 1e-6:
            fails.append(f"S2 not ~0 in {ctx}")
        for t in rep.terms:
            if t.magnitude > t.bound + 1e-6 + 1e-9 * ctx.order:
                fails.append(f"S{t.index} exceeds bound in {ctx}")
        wit = brute_force_membership(p, k, n, caps=scale["char_caps"]).witness_count
        if abs(rep.n_real - wit) > 1e-4:
            fails.append(
                f"decomposition total {rep.n_real} != witness count {wit} in {ctx}"
            )
    return fails, ""


def _check_count_vs_enumeration(scale):
    fails = []
    for p, k, n in scale["count_fields"]:
        ctx = ff.make_field_ctx(p, k, n, caps=scale["char_caps"])
        N = ctx.group_order
        xn1 = ctx.xn_minus_1()
        got = characters.count_via_characters(ctx, N, N, xn1, xn1)
        wit = brute_force_membership(p, k, n, caps=scale["char_caps"]).witness_count
        if abs(got - wit) > 1e-4:
            fails.append(f"character count {got} != {wit} in {ctx}")
        triv = characters.count_via_characters(ctx, 1, 1, ff.POLY_ONE, ff.POLY_ONE)
        if abs(triv - N) > 1e-4:
            fails.append(f"trivial-tuple count off in {ctx}")
    return fails, f"{len(scale['count_fields'])} fields"


def _check_membership_cross_oracle(scale):
    fails = []
    for p, k, n in scale["membership_fields"]:
        ctx = ff.make_field_ctx(p, k, n)
        rep = brute_force_membership(p, k, n)
        cnt, _first = oracles.membership_count_enumeration(ctx)
        if rep.witness_count != cnt:
            fails.append(f"membership mismatch {ctx}: {rep.witness_count} vs {cnt}")
        if (rep.witness_count > 0) != (rep.example_witness is not None):
            fails.append(f"witness/example inconsistency in {ctx}")
    return fails, f"{len(scale['membership_fields'])} fields"


def _check_lemma_sweeps(scale):
    fails = []
    # polynomial-side bound sweep with exact Omega from coset counts
    for p, k, _n in _fields_upto(scale["omega_bound_q_max"], n_min=1):
        q = p ** k
        if q > scale["omega_bound_q_max"]:
            continue
        for n in range(1, scale["omega_bound_n_max"] + 1):
            Om = cyclo.count_irreducible_divisors(q, p, n)
            bound, refined = criterion.big_omega_bound(q, n)
            if Om > bound:
                fails.append(f"Omega bound violated q={q} n={n}")
            divides = (q - 1) % n == 0
            if divides != (Om == n):
                fails.append(f"Omega = n iff n | q-1 violated at q={q} n={n}")
            if refined is not None and Om > refined:
                fails.append(f"refined Omega bound violated q={q} n={n}")
    # 2^omega < C(N) N^(1/5)
    limit = scale["pow2_omega_limit"]
    spf = oracles.smallest_factor_sieve(limit)
    for N in range(1, limit + 1):
        om = oracles.omega_from_sieve(spf, N) if N > 1 else 0
        C = criterion.pow2_omega_constant(N % 5 == 0, N % 7 == 0)
        if 2.0 ** om >= float(C) * N ** 0.2:
            fails.append(f"2^omega bound violated at N={N}")
    # first-m-primes omega bound
    lim37 = scale["omega_prime_bound_limit"]
    spf2 = spf if lim37 <= limit else oracles.smallest_factor_sieve(lim37)
    for n in range(2, lim37 + 1):
        om = oracles.omega_from_sieve(spf2, n)
        for m in range(1, 7):
            if criterion.omega_bound(n, m) < om - 1e-9:
                fails.append(f"prime-count omega bound violated n={n} m={m}")
    return fails, f"N <= {limit}"


def _check_criterion_thresholds(scale):
    fails = []
    if criterion.min_degree_threshold(5 ** 7) != 72:
        fails.append("min degree threshold at 5^7 is not 72")
    for q in (2, 17, 1024, 32767, 32768):
        if criterion.min_degree_threshold(q) is not None:
            fails.append(f"min degree threshold should be absent for q={q}")
    if not criterion.threshold_check_divides(11, 7, 35):
        fails.append("threshold (11,7,35) should hold")
    if criterion.threshold_check_divides(11, 6, 35):
        fails.append("threshold (11,6,35) should not hold")
    r = criterion.direct_condition(5, 2)
    if r.omega != 2 or r.Omega != 2 or r.holds:
        fails.append("direct condition at (5,2) wrong")
    # raw-route consistency: within the factorable range the raw routes are
    # never affirmative (their thresholds start beyond 2^64), so any true
    # raw verdict with a false direct verdict is a failure
    for q, n in scale["route_cells"]:
        for route in ("div", "nondiv"):
            raw = criterion.factoring_free_condition(q, n, route)
            if raw.holds and not criterion.direct_condition(q, n).holds:
                fails.append(f"raw route stronger than direct at q={q} n={n}")
    return fails, ""


def _check_theorem_consistency(scale):
    failures, summary = theorem_consistency_scan(scale["consistency_limit"])
    info = (
        f"{summary['cells']} cells, condition holds on {summary['condition_holds']}, "
        f"witnesses despite failing condition on "
        f"{summary['witness_despite_condition_failing']}"
    )
    return failures, info


def _check_scan_determinism(scale):
    p_range, k_range, n_range = scale["determinism_grid"]
    outs = []
    for _ in range(2):
        buf = io.StringIO()
        scan_to_csv(scan(p_range, k_range, n_range, caps=scale["determinism_caps"]), buf)
        outs.append(buf.getvalue())
    if outs[0] != outs[1]:
        return ["scan output differs between identical runs"], ""
    return [], f"{len(outs[0].splitlines()) - 2} rows, byte-identical"


_CHECKS = [
    ("field-arithmetic", _check_field_arithmetic),
    ("trace-and-orbits", _check_trace_and_orbits),
    ("module-action-composition", _check_poly_action_composition),
    ("factorization-oracle", _check_factor_oracle),
    ("mobius-sums", _check_mobius_sum),
    ("xn1-reconstruction", _check_xn1_reconstruction),
    ("unit-count-partition", _check_phi_partition),
    ("freeness-cross-oracle", _check_freeness_cross_oracle),
    ("gfree-existential", _check_gfree_existential),
    ("indicator-functions", _check_indicator_functions),
    ("orthogonality", _check_orthogonality),
    ("additive-order-partition", _check_add_char_partition),
    ("gauss-equality", _check_gauss_equality),
    ("weil-bounds", _check_weil_bounds),
    ("sum-decomposition", _check_sum_decomposition),
    ("count-vs-enumeration", _check_count_vs_enumeration),
    ("membership-cross-oracle", _check_membership_cross_oracle),
    ("lemma-sweeps", _check_lemma_sweeps),
    ("criterion-thresholds", _check_criterion_thresholds),
    ("theorem-consistency", _check_theorem_consistency),
    ("scan-determinism", _check_scan_determinism),
]


def _quick_scale():
    return {
        "arith_fields": [(5, 1, 2), (7, 1, 2), (2, 1, 3), (3, 1, 2), (2, 2, 2), (5, 2, 1)],
        "action_fields_exhaustive": [(2, 1, 3), (3, 1, 2)],
        "action_fields_sampled": [(5, 1, 4)],
        "action_samples": 300,
        "factor_limit": 10 ** 4,
        "mobius_limit": 3000,
        "xn1_q_max": 9,
        "xn1_n_max": 12,
        "phi_partition_limit": 625,
        "freeness_fields": [(5, 1, 2), (7, 1, 2), (3, 1, 2), (2, 1, 3), (2, 2, 2), (11, 1, 2), (2, 1, 4), (3, 1, 3)],
        "power_enum_fields": [(5, 1, 2), (7, 1, 2), (2, 1, 3), (3, 1, 2)],
        "gfree_fields": [(5, 1, 2), (2, 1, 3), (2, 1, 2)],
        "char_fields": [(5, 1, 2), (7, 1, 2)],
        "char_caps": DEFAULT_CAPS,
        "gauss_fields": [(5, 1, 2), (7, 1, 2)],
        "weil_fields": [(5, 1, 2), (7, 1, 2)],
        "weil_deltas": lambda ctx: [1, 2, ctx.gen, ctx.order - 1],
        "weil_gammas": lambda ctx: [1, 2, ctx.gen],
        "weil_delta_full": 10,
        "count_fields": [(5, 1, 2), (7, 1, 2), (5, 1, 1), (11, 1, 1), (13, 1, 2)],
        "membership_fields": [(5, 1, 2), (7, 1, 2), (3, 1, 2), (2, 1, 3)],
        "omega_bound_q_max": 25,
        "omega_bound_n_max": 12,
        "pow2_omega_limit": 10 ** 4,
        "omega_prime_bound_limit": 10 ** 4,
        "route_cells": [(5, 2), (5, 4), (7, 3), (13, 2), (25, 2)],
        "consistency_limit": 1500,
        "determinism_grid": ((5, 13), (1, 1), (1, 3)),
        "determinism_caps": DEFAULT_CAPS,
    }


def _full_scale():
    scale = _quick_scale()
    raised = SizeCaps(character_cap=RAISED_CHARACTER_CAP)
    fields_2401 = _fields_upto(2401)
    scale.update(
        {
            "factor_limit": 10 ** 6,
            "mobius_limit": 10 ** 4,
            "xn1_q_max": 49,
            "xn1_n_max": 24,
            "phi_partition_limit": 625,
            "freeness_fields": fields_2401,
            "power_enum_fields": _fields_upto(625),
            "char_fields": [(5, 1, 2), (7, 1, 2), (11, 1, 2), (5, 1, 3), (7, 1, 4)],
            "char_caps": raised,
            "gauss_fields": [(5, 1, 2), (7, 1, 2), (11, 1, 2), (5, 1, 3)],
            "weil_fields": [(5, 1, 2), (7, 1, 2), (11, 1, 2), (5, 1, 3)],
            "count_fields": [c for c in _fields_upto(625, p_min=5)],
            "membership_fields": fields_2401,
            "omega_bound_q_max": 49,
            "omega_bound_n_max": 24,
            "pow2_omega_limit": 10 ** 6,
            "omega_prime_bound_limit": 10 ** 5,
            "consistency_limit": 10 ** 4,
            "determinism_grid": ((5, 97), (1, 2), (1, 4)),
        }
    )
    return scale


def verify_suite(level="quick", out=print):
    """Run every invariant check at the requested scale.

    quick targets under a minute; full sweeps to the documented caps and can
    take tens of minutes.  Returns the list of CheckOutcome records; the
    suite passes when all are ok.
    """
    if level not in ("quick", "full"):
        raise ValueError("level must be 'quick' or 'full'")
    scale = _quick_scale() if level == "quick" else _full_scale()
    outcomes = []
    for name, fn in _CHECKS:
        t0 = time.perf_counter()
        try:
            failures, info = fn(scale)
        except ToolkitError as exc:
            failures, info = [f"raised {type(exc).__name__}: {exc}"], ""
        seconds = time.perf_counter() - t0
        outcome = CheckOutcome(name=name, failures=failures, info=info, seconds=seconds)
        outcomes.append(outcome)
        if outcome.ok:
            extra = f" ({info})" if info else ""
            out(f"PASS {name}{extra} [{seconds:.2f}s]")
        else:
            out(f"FAIL {name}: {failures[0]}" + (f" [+{len(failures)-1} more]" if len(failures) > 1 else ""))
    return outcomes
