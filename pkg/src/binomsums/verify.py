"""Claim registry and execution engine.

Identities are checked by exact equality, congruences through the rational
congruence of ``arith.rational_congruent`` (so right-hand sides like p^2/8
are well-posed mod p^3), and the conjecture explorer reports minimal
multipliers. Theorem claims are hard assertions; conjecture claims are
findings. Edge primes whose Legendre-dependent right sides the source
results do not clearly cover are evaluated under the symbol-0 convention and
recorded as annotations, never asserted and never silently passed.
"""
from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Callable

from .arith import (
    central_binomial,
    catalan,
    legendre_symbol,
    pascal_row,
    primes_upto,
    rational_congruent,
)
from .errors import DenominatorNotInvertible, UnknownIdError
from .reports import Annotation, Failure, VerificationReport
from .sequences import (
    Sequence,
    alt_catalan_sum,
    catalan_weighted_square_sum,
    format_value,
    get_sequence,
)

_CHUNK = 64  # indices per worker task; fixed so chunking never depends on config


def _parallel_map(fn, items: list, workers: int) -> list:
    if workers <= 1 or len(items) <= _CHUNK:
        return [fn(i) for i in items]
    chunks = [items[i : i + _CHUNK] for i in range(0, len(items), _CHUNK)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(lambda ch: [fn(i) for i in ch], ch) for ch in chunks]
        out = []
        for fut in futures:
            out.extend(fut.result())
    return out


# --- claim types --------------------------------------------------------------


@dataclass(frozen=True)
class IdentityClaim:
    cid: str
    description: str
    lhs: Callable[[int], object]
    rhs: Callable[[int], object]
    start: int = 1
    asserted: bool = True


@dataclass(frozen=True)
class CongruenceClaim:
    cid: str
    description: str
    lhs: Callable[[int], object]
    rhs: Callable[[int], object]
    modulus: Callable[[int], int]
    modulus_family: str
    over_primes: bool = False
    start: int = 1
    asserted: bool = True
    #: candidate indices that are only recorded, never asserted
    annotate_only: frozenset = frozenset()
    #: optional informational note for an index (shown even when asserted)
    note_fn: Callable[[int], str | None] = field(default=lambda i: None)


def check_identity(
    claim: IdentityClaim, n_max: int, workers: int = 1
) -> VerificationReport:
    """Exact pointwise equality on [start, n_max]."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    t0 = time.perf_counter()
    indices = list(range(claim.start, n_max + 1))

    def one(n: int):
        lhs, rhs = claim.lhs(n), claim.rhs(n)
        return n, lhs, rhs, lhs == rhs

    results = _parallel_map(one, indices, workers)
    failures = [
        Failure(index=n, lhs=format_value(l), rhs=format_value(r), residue="-")
        for n, l, r, ok in results
        if not ok
    ]
    return VerificationReport(
        claim=claim.cid,
        lo=claim.start,
        hi=n_max,
        checked=sum(1 for *_, ok in results if ok),
        failures=failures,
        elapsed_ms=int((time.perf_counter() - t0) * 1000),
    )


def _difference_residue(lhs, rhs, m: int) -> str:
    d = Fraction(lhs) - Fraction(rhs)
    if gcd(d.denominator, m) != 1:
        return "ill-posed"
    return str(d.numerator * pow(d.denominator, -1, m) % m)


def check_congruence(
    claim: CongruenceClaim, bound: int, workers: int = 1
) -> VerificationReport:
    """Evaluate the claim at every domain index up to bound.

    Asserted indices count toward pass/fail; annotate-only indices are
    evaluated and written into the annotations with their outcome. An
    ill-posed congruence (non-invertible denominator) at an asserted index
    is a failure entry, never a pass.
    """
    if bound < claim.start:
        raise ValueError(f"bound {bound} below first domain index {claim.start}")
    t0 = time.perf_counter()
    if claim.over_primes:
        candidates = [p for p in primes_upto(bound) if p >= claim.start or p in claim.annotate_only]
    else:
        candidates = list(range(claim.start, bound + 1))

    def one(i: int):
        lhs, rhs, m = claim.lhs(i), claim.rhs(i), claim.modulus(i)
        try:
            ok = rational_congruent(lhs, rhs, m)
            return i, lhs, rhs, m, ("pass" if ok else "fail")
        except DenominatorNotInvertible:
            return i, lhs, rhs, m, "ill-posed"

    results = _parallel_map(one, candidates, workers)
    checked = 0
    failures: list[Failure] = []
    annotations: list[Annotation] = []
    for i, lhs, rhs, m, outcome in results:
        note = claim.note_fn(i)
        if i in claim.annotate_only:
            text = f"recorded only ({outcome}, modulus {m})"
            if note:
                text += f"; {note}"
            annotations.append(Annotation(index=i, note=text))
            continue
        if outcome == "pass":
            checked += 1
        elif outcome == "ill-posed":
            failures.append(
                Failure(
                    index=i,
                    lhs=format_value(lhs),
                    rhs=format_value(rhs),
                    residue="ill-posed",
                )
            )
        else:
            failures.append(
                Failure(
                    index=i,
                    lhs=format_value(lhs),
                    rhs=format_value(rhs),
                    residue=_difference_residue(lhs, rhs, m),
                )
            )
        if note:
            annotations.append(Annotation(index=i, note=note))
    return VerificationReport(
        claim=claim.cid,
        lo=claim.start,
        hi=bound,
        checked=checked,
        failures=failures,
        annotations=annotations,
        elapsed_ms=int((time.perf_counter() - t0) * 1000),
    )


# --- claim registry -----------------------------------------------------------

_S = get_sequence("S")
_s = get_sequence("s")
_Sp = get_sequence("S_plus")
_R = get_sequence("R")
_f = get_sequence("f")
_g = get_sequence("g")
_e = get_sequence("e")

# private prefix-sum carriers for the central-binomial and Catalan lemmas
_CENTRAL_SEQ = Sequence("central", central_binomial)
_CATALAN_SEQ = Sequence("catalan", catalan)


def _l3(p: int) -> int:
    return legendre_symbol(p, 3)


def _l5_zero_at_2(p: int) -> int:
    return 0 if p == 2 else legendre_symbol(p, 5)


IDENTITY_CLAIMS: dict[str, IdentityClaim] = {}


def _identity(cid, description, lhs, rhs):
    IDENTITY_CLAIMS[cid] = IdentityClaim(cid, description, lhs, rhs)


_identity(
    "sun0",
    "prefix sum of S equals n^2 times the squared-binomial Catalan sum",
    lambda n: _S.prefix_sum(n),
    lambda n: n * n * catalan_weighted_square_sum(n),
)
_identity(
    "s4",
    "4 * weighted prefix sum of S equals n^2 f(n-1)",
    lambda n: 4 * _S.weighted_prefix_sum(n),
    lambda n: n * n * _f(n - 1),
)
_identity(
    "sn-fn",
    "4 n S(n) equals (n+1)^2 f(n) - n^2 f(n-1)",
    lambda n: 4 * n * _S(n),
    lambda n: (n + 1) ** 2 * _f(n) - n * n * _f(n - 1),
)
_identity(
    "sun34",
    "prefix sum of s equals n^2 g(n-1)",
    lambda n: _s.prefix_sum(n),
    lambda n: n * n * _g(n - 1),
)
_identity(
    "sun35",
    "prefix sum of s equals n^2/(4n-1) times the 3/(4k^2-1) sum",
    lambda n: _s.prefix_sum(n),
    lambda n: Fraction(n * n, 4 * n - 1) * alt_catalan_sum(n),
)
_identity(
    "s5",
    "prefix sum of S_plus equals n^2 e(n-1)",
    lambda n: _Sp.prefix_sum(n),
    lambda n: n * n * _e(n - 1),
)
_identity(
    "u-eq-v",
    "u(n) = v(n) pointwise",
    lambda n: get_sequence("u")(n),
    lambda n: get_sequence("v")(n),
)
_identity(
    "s-eq-w",
    "s(n) = w(n) pointwise",
    lambda n: _s(n),
    lambda n: get_sequence("w")(n),
)
_identity(
    "s-eq-x",
    "s(n) = x(n) pointwise",
    lambda n: _s(n),
    lambda n: get_sequence("x")(n),
)
_identity(
    "splus-eq-y",
    "S_plus(n) = y(n) pointwise",
    lambda n: _Sp(n),
    lambda n: get_sequence("y")(n),
)

CONGRUENCE_CLAIMS: dict[str, CongruenceClaim] = {}


def _congruence(cid, description, **kwargs):
    CONGRUENCE_CLAIMS[cid] = CongruenceClaim(cid, description, **kwargs)


def _note_p3(i: int) -> str | None:
    if i == 3:
        return "(p/3) = 0 at p = 3 (lower-argument rule)"
    return None


_congruence(
    "sun11",
    "n^2 divides 4 * sum_{k<n} k S(k)",
    lhs=lambda n: 4 * _S.weighted_prefix_sum(n),
    rhs=lambda n: 0,
    modulus=lambda n: n * n,
    modulus_family="n^2",
)
_congruence(
    "sun12",
    "sum_{k<p} k S(k) = p^2/8 (5 - 9(p/3)) mod p^3",
    lhs=lambda p: _S.weighted_prefix_sum(p),
    rhs=lambda p: Fraction(p * p, 8) * (5 - 9 * _l3(p)),
    modulus=lambda p: p**3,
    modulus_family="p^3",
    over_primes=True,
    start=2,
    note_fn=_note_p3,
)
_congruence(
    "sun21",
    "n^2 divides sum_{k<n} s(k)",
    lhs=lambda n: _s.prefix_sum(n),
    rhs=lambda n: 0,
    modulus=lambda n: n * n,
    modulus_family="n^2",
)
_congruence(
    "sun22",
    "sum_{k<p} s(k) = -p^2/2 (1 + 9(p/3)) mod p^3",
    lhs=lambda p: _s.prefix_sum(p),
    rhs=lambda p: -Fraction(p * p, 2) * (1 + 9 * _l3(p)),
    modulus=lambda p: p**3,
    modulus_family="p^3",
    over_primes=True,
    start=2,
    note_fn=_note_p3,
)
_congruence(
    "sun31",
    "n^2 divides sum_{k<n} S_plus(k)",
    lhs=lambda n: _Sp.prefix_sum(n),
    rhs=lambda n: 0,
    modulus=lambda n: n * n,
    modulus_family="n^2",
)
_congruence(
    "sun32",
    "sum_{k<p} S_plus(k) = -p^2 (p/3) mod p^3",
    lhs=lambda p: _Sp.prefix_sum(p),
    rhs=lambda p: -p * p * _l3(p),
    modulus=lambda p: p**3,
    modulus_family="p^3",
    over_primes=True,
    start=2,
    note_fn=_note_p3,
)
_congruence(
    "sun33",
    "4n-1 divides sum_{k<n} C(n-1,k)^2 C(2k+1,k) 3/(4k^2-1)",
    lhs=lambda n: alt_catalan_sum(n),
    rhs=lambda n: 0,
    modulus=lambda n: 4 * n - 1,
    modulus_family="4n-1",
)
_congruence(
    "r-sum",
    "sum_{k<p} R(k) = -p - (-1/p) mod p^2 for odd primes",
    lhs=lambda p: _R.prefix_sum(p),
    rhs=lambda p: -p - (0 if p == 2 else legendre_symbol(-1, p)),
    modulus=lambda p: p * p,
    modulus_family="p^2",
    over_primes=True,
    start=3,
    annotate_only=frozenset({2}),
    note_fn=lambda i: "(-1/p) taken as 0 at p = 2" if i == 2 else None,
)
_congruence(
    "ps-1",
    "sum_{k<p} C(2k,k) = (p/3) mod p",
    lhs=lambda p: _CENTRAL_SEQ.prefix_sum(p),
    rhs=lambda p: _l3(p),
    modulus=lambda p: p,
    modulus_family="p",
    over_primes=True,
    start=2,
    note_fn=_note_p3,
)
_congruence(
    "ps-2",
    "sum_{k<p} C(2k,k)/(k+1) = (3(p/3) - 1)/2 mod p",
    lhs=lambda p: _CATALAN_SEQ.prefix_sum(p),
    rhs=lambda p: Fraction(3 * _l3(p) - 1, 2),
    modulus=lambda p: p,
    modulus_family="p",
    over_primes=True,
    start=2,
    note_fn=_note_p3,
)
_congruence(
    "ps-3",
    "C(2p-2, p-1)/p = -1 mod p",
    lhs=lambda p: Fraction(pascal_row(2 * p - 2)[p - 1], p),
    rhs=lambda p: -1,
    modulus=lambda p: p,
    modulus_family="p",
    over_primes=True,
    start=2,
)

for _r in (1, 2, 3, 4):
    _congruence(
        f"conj-s-even:{_r}",
        f"n^2 divides sum_{{k<n}} S^({2*_r})(k)",
        lhs=lambda n, r=_r: get_sequence(f"S_r:{2*r}").prefix_sum(n),
        rhs=lambda n: 0,
        modulus=lambda n: n * n,
        modulus_family="n^2",
        asserted=False,
    )
    _congruence(
        f"conj-t-even:{_r}",
        f"n^2 divides sum_{{k<n}} T^({2*_r})(k)",
        lhs=lambda n, r=_r: get_sequence(f"T_r:{2*r}").prefix_sum(n),
        rhs=lambda n: 0,
        modulus=lambda n: n * n,
        modulus_family="n^2",
        asserted=False,
    )

_congruence(
    "conj-t2-prime",
    "sum_{k<p} T^(2)(k) = p^2/2 (5 - 3(p/5)) mod p^3 for odd p != 5",
    lhs=lambda p: get_sequence("T_r:2").prefix_sum(p),
    rhs=lambda p: Fraction(p * p, 2) * (5 - 3 * _l5_zero_at_2(p)),
    modulus=lambda p: p**3,
    modulus_family="p^3",
    over_primes=True,
    start=3,
    asserted=False,
    annotate_only=frozenset({2, 5}),
    note_fn=lambda i: {
        2: "(p/5) taken as 0 at p = 2 by convention; with (2/5) = -1 the congruence holds",
        5: "(p/5) = 0 at p = 5 (lower-argument rule)",
    }.get(i),
)


# --- conjecture explorer: minimal multipliers ----------------------------------

#: conjectured multipliers, keyed by the odd exponent 2r-1
A_BY_EXPONENT = {3: 3, 5: 15, 7: 21, 9: 15, 11: 33, 13: 1365, 15: 3}
#: conjectured multipliers for the k-weighted sums, keyed by r
B_BY_R = {2: 12, 3: 4, 4: 60, 5: 20, 6: 84, 7: 28, 8: 60, 9: 20, 10: 132, 11: 44, 12: 5460}

MULTIPLIER_FAMILIES = ("S_odd", "kS")


def minimal_multiplier(family: str, r: int, n_max: int) -> int:
    """Least positive m with m * Sigma(n) = 0 (mod n^2) for all n <= n_max.

    Sigma is sum_{k<n} S^(2r-1)(k) for family "S_odd" and
    sum_{k<n} k S^(r)(k) for family "kS"; the result is
    lcm over n of n^2 / gcd(Sigma(n), n^2).
    """
    if n_max < 2:
        raise ValueError("n_max must be >= 2")
    if family == "S_odd":
        if not 1 <= r <= 8:
            raise ValueError(f"unsupported r={r} for S_odd (1..8)")
        seq = get_sequence(f"S_r:{2*r - 1}")
        sigma = seq.prefix_sum
    elif family == "kS":
        if not 1 <= r <= 16:
            raise ValueError(f"unsupported r={r} for kS (1..16)")
        seq = get_sequence(f"S_r:{r}")
        sigma = seq.weighted_prefix_sum
    else:
        raise ValueError(f"unknown multiplier family {family!r}")
    out = 1
    for n in range(1, n_max + 1):
        nn = n * n
        out = lcm(out, nn // gcd(int(sigma(n)), nn))
    return out


def multiplier_report(family: str, r: int, n_max: int) -> VerificationReport:
    """Explorer finding for one conjectured multiplier.

    Divisibility of the conjectured value by the observed minimal one is the
    asserted part (the conjectured multiplier must suffice on the tested
    prefix); strict inequality is only warned about, since the observation
    covers a prefix of the conjecture's domain.
    """
    t0 = time.perf_counter()
    if family == "S_odd":
        conjectured = A_BY_EXPONENT.get(2 * r - 1)
        cid = f"mult-a:{2*r - 1}"
    else:
        conjectured = B_BY_R.get(r)
        cid = f"mult-b:{r}"
    observed = minimal_multiplier(family, r, n_max)
    failures = []
    annotations = [
        Annotation(index=n_max, note=f"observed={observed} conjectured={conjectured}")
    ]
    if conjectured is None:
        annotations.append(Annotation(index=n_max, note="no conjectured value on record"))
    elif conjectured % observed != 0:
        failures.append(
            Failure(
                index=n_max,
                lhs=str(observed),
                rhs=str(conjectured),
                residue="observed multiplier does not divide the conjectured one",
            )
        )
    elif conjectured != observed:
        annotations.append(
            Annotation(
                index=n_max,
                note="warning: observed is a strict divisor of the conjectured value "
                "at this n_max",
            )
        )
    return VerificationReport(
        claim=cid,
        lo=1,
        hi=n_max,
        checked=n_max if not failures else n_max - 1,
        failures=failures,
        annotations=annotations,
        elapsed_ms=int((time.perf_counter() - t0) * 1000),
    )


_MULTIPLIER_ENTRIES: dict[str, tuple[str, int]] = {}
for _exp in (3, 5, 7, 9, 11):
    _MULTIPLIER_ENTRIES[f"mult-a:{_exp}"] = ("S_odd", (_exp + 1) // 2)
for _r in (2, 3, 4, 5, 6):
    _MULTIPLIER_ENTRIES[f"mult-b:{_r}"] = ("kS", _r)


# --- suites --------------------------------------------------------------------

SUITES: dict[str, tuple[str, ...]] = {
    "identities": tuple(IDENTITY_CLAIMS),
    "theorems": ("sun11", "sun12", "sun21", "sun22", "sun31", "sun32", "sun33"),
    "background": ("r-sum", "ps-1", "ps-2", "ps-3"),
    "conjectures": tuple(
        [f"conj-s-even:{r}" for r in (1, 2, 3, 4)]
        + [f"conj-t-even:{r}" for r in (1, 2, 3, 4)]
        + ["conj-t2-prime"]
        + list(_MULTIPLIER_ENTRIES)
    ),
}
SUITES["all"] = tuple(cid for name in ("identities", "theorems", "background", "conjectures") for cid in SUITES[name])


def claim_is_asserted(cid: str) -> bool:
    """Theorem claims are hard assertions; conjecture claims are findings."""
    if cid in IDENTITY_CLAIMS:
        return IDENTITY_CLAIMS[cid].asserted
    if cid in CONGRUENCE_CLAIMS:
        return CONGRUENCE_CLAIMS[cid].asserted
    if cid in _MULTIPLIER_ENTRIES:
        return False
    raise UnknownIdError(f"unknown claim id {cid!r}")


def run_claim(cid: str, *, n_max: int, prime_max: int, workers: int = 1) -> VerificationReport:
    if cid in IDENTITY_CLAIMS:
        return check_identity(IDENTITY_CLAIMS[cid], n_max, workers)
    if cid in CONGRUENCE_CLAIMS:
        claim = CONGRUENCE_CLAIMS[cid]
        bound = prime_max if claim.over_primes else n_max
        return check_congruence(claim, bound, workers)
    if cid in _MULTIPLIER_ENTRIES:
        family, r = _MULTIPLIER_ENTRIES[cid]
        return multiplier_report(family, r, n_max)
    raise UnknownIdError(f"unknown claim id {cid!r}")


def run_suite(
    suite_names, *, n_max: int = 300, prime_max: int = 199, workers: int = 1
) -> list[VerificationReport]:
    """Execute the named suites; reports come back sorted by claim id.

    Per-sequence prefix sums are shared across claims via the singleton
    sequence handles, and results do not depend on the worker count.
    """
    if isinstance(suite_names, str):
        suite_names = [suite_names]
    cids: list[str] = []
    for name in suite_names:
        if name not in SUITES:
            raise UnknownIdError(f"unknown suite {name!r}")
        for cid in SUITES[name]:
            if cid not in cids:
                cids.append(cid)
    reports = [
        run_claim(cid, n_max=n_max, prime_max=prime_max, workers=workers)
        for cid in cids
    ]
    reports.sort(key=lambda rep: rep.claim)
    return reports
