"""Verification toolkit for primitive normal pairs in finite fields.

Checks, at enumerable scale, every numerically testable step of the
character-sum argument that an extension F_{q^n} of F_q contains a
primitive normal element alpha whose companion alpha^2 + alpha + 1 is also
primitive normal: exact tower arithmetic, freeness predicates with
independent oracles, indicator character sums and their proven bounds, and
the asymptotic sufficient conditions on (q, n).
"""

from .arith import FactoredInt, euler_phi, factor_int, is_prime, mobius, squarefree_divisors
from .characters import (
    AddChar,
    MultChar,
    SumReport,
    add_char,
    add_char_fq_order,
    add_char_partition,
    bounded_char_sum,
    count_via_characters,
    kappa,
    mult_chars_of_order,
    rho,
    sum_decomposition,
)
from .config import DEFAULT_CAPS, SizeCaps
from .criterion import (
    CriterionReport,
    best_condition,
    big_omega_bound,
    direct_condition,
    factoring_free_condition,
    min_degree_threshold,
    omega_bound,
    pow2_omega_constant,
    threshold_check_divides,
)
from .cyclo import FactoredPoly, factor_xn_minus_1, poly_phi, squarefree_poly_divisors
from .errors import (
    BoundViolated,
    CapExceeded,
    DivisionByZero,
    HypothesisViolated,
    NoIrreducibleFound,
    NotADivisor,
    NotPrime,
    TooLarge,
    TooLargeToFactor,
    ToolkitError,
    ZeroElement,
)
from .ff import FieldContext, Fq, field_arith, find_generator_and_dlog, make_field_ctx
from .freeness import (
    FreenessProfile,
    fq_order,
    is_e_free,
    is_g_free,
    is_normal,
    is_primitive,
    is_primitive_normal_pair,
    mult_order,
    profile,
    quad_map,
)
from .harness import MembershipReport, brute_force_membership, scan, verify_suite

__version__ = "0.1.0"
