"""Exact-arithmetic toolkit for binomial double-sum sequences.

Computes the S/s/S_plus/R families and their auxiliaries exactly, verifies
the identities and polynomial-coefficient recurrences they satisfy (with
symbolic operator-combination certificates), checks the divisibility and
prime-power congruences of their prefix sums, and explores the conjectured
minimal multipliers - all over arbitrary-precision integers and rationals,
with no floating point anywhere.
"""

from .arith import (
    ExactRational,
    binomial,
    catalan,
    central_binomial,
    is_prime,
    legendre_symbol,
    pascal_row,
    primes_upto,
    rational_congruent,
)
from .errors import (
    BinomsumsError,
    DenominatorNotInvertible,
    IndexOutOfDomain,
    InternalInconsistencyError,
    UnknownIdError,
    WindowTooSmall,
)
from .polys import IntPolynomial, N, poly
from .recurrence import (
    CERTIFICATES,
    OPERATOR_TARGETS,
    OPERATORS,
    CombinationCertificate,
    RecurrenceOperator,
    check_certificate,
    fit_recurrence,
    run_certificate_induction,
    verify_annihilates,
)
from .reports import VerificationReport, parse_structured, to_human, to_structured, to_tabular
from .sequences import Sequence, dump_lines, get_sequence
from .verify import (
    SUITES,
    check_congruence,
    check_identity,
    minimal_multiplier,
    multiplier_report,
    run_suite,
)

__version__ = "0.1.0"

__all__ = [
    "BinomsumsError",
    "CERTIFICATES",
    "CombinationCertificate",
    "DenominatorNotInvertible",
    "ExactRational",
    "IndexOutOfDomain",
    "IntPolynomial",
    "InternalInconsistencyError",
    "N",
    "OPERATORS",
    "OPERATOR_TARGETS",
    "RecurrenceOperator",
    "SUITES",
    "Sequence",
    "UnknownIdError",
    "VerificationReport",
    "WindowTooSmall",
    "binomial",
    "catalan",
    "central_binomial",
    "check_certificate",
    "check_congruence",
    "check_identity",
    "dump_lines",
    "fit_recurrence",
    "get_sequence",
    "is_prime",
    "legendre_symbol",
    "minimal_multiplier",
    "multiplier_report",
    "parse_structured",
    "pascal_row",
    "poly",
    "primes_upto",
    "rational_congruent",
    "run_certificate_induction",
    "run_suite",
    "to_human",
    "to_structured",
    "to_tabular",
    "verify_annihilates",
]
