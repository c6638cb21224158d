"""Memoized exact generators for every sequence in the toolkit.

All defining sums are evaluated term by term with exact arithmetic; there
are no closed forms and no floating shortcuts. Handles are singletons (see
``get_sequence``), so memo tables and prefix-sum caches are shared by every
consumer in the process. Published values are ints or Fractions and never
mutate; memo insertion is synchronized, reads are lock-free.
"""
from __future__ import annotations

import threading
from fractions import Fraction
from typing import Callable

from .arith import catalan, central_binomial, pascal_row
from .errors import IndexOutOfDomain, UnknownIdError

_MAX_POWER = 16  # parametric families accept 0 <= r <= 16


class Sequence:
    """A named exact sequence: index n >= min_index maps to int | Fraction."""

    def __init__(
        self,
        sid: str,
        term: Callable[[int], "int | Fraction"],
        min_index: int = 0,
        check: Callable[[int, Fraction], "int | Fraction"] | None = None,
    ):
        self.id = sid
        self._term = term
        self.min_index = min_index
        self._check = check
        self._memo: dict[int, int | Fraction] = {}
        self._memo_lock = threading.Lock()
        # prefix caches: _prefix[i] = sum_{k < i} seq(k), one pass, grown on demand
        self._prefix: list[int | Fraction] = [0]
        self._wprefix: list[int | Fraction] = [0]
        self._prefix_lock = threading.Lock()

    def __repr__(self):
        return f"Sequence({self.id!r})"

    def eval(self, n: int) -> int | Fraction:
        """Exact value at index n; memoized."""
        if n < self.min_index:
            raise IndexOutOfDomain(
                f"{self.id} is defined for n >= {self.min_index}, got {n}"
            )
        memo = self._memo
        val = memo.get(n)
        if val is None:
            val = self._term(n)
            if self._check is not None:
                val = self._check(n, val)
            with self._memo_lock:
                val = memo.setdefault(n, val)
        return val

    __call__ = eval

    def prefix_sum(self, n: int) -> int | Fraction:
        """sum_{k=0}^{n-1} seq(k); prefix_sum(0) = 0."""
        if n < 0:
            raise IndexOutOfDomain(f"prefix_sum needs n >= 0, got {n}")
        if n >= len(self._prefix):
            with self._prefix_lock:
                while len(self._prefix) <= n:
                    m = len(self._prefix)
                    self._prefix.append(self._prefix[-1] + self.eval(m - 1))
        return self._prefix[n]

    def weighted_prefix_sum(self, n: int) -> int | Fraction:
        """sum_{k=0}^{n-1} k * seq(k)."""
        if n < 0:
            raise IndexOutOfDomain(f"weighted_prefix_sum needs n >= 0, got {n}")
        if n >= len(self._wprefix):
            with self._prefix_lock:
                while len(self._wprefix) <= n:
                    m = len(self._wprefix)
                    self._wprefix.append(self._wprefix[-1] + (m - 1) * self.eval(m - 1))
        return self._wprefix[n]


def _as_integer(sid: str):
    def check(n, val):
        if isinstance(val, Fraction):
            assert val.denominator == 1, f"{sid}({n}) unexpectedly non-integral: {val}"
            return int(val)
        return val

    return check


# --- cached per-k term factors -------------------------------------------
#
# The k = 0 terms with 1/(2k-1) denominators are exact rationals (-1), not
# special cases; the factors below happen to reduce to integers, which the
# Fraction arithmetic discovers on its own.

_central_over_odd_cache: dict[int, int | Fraction] = {}
_ballot_over_odd_cache: dict[int, int | Fraction] = {}
_factor_lock = threading.Lock()


def central_over_odd(k: int) -> int | Fraction:
    """C(2k,k) / (2k-1), the per-k factor of the s- and R-sums."""
    val = _central_over_odd_cache.get(k)
    if val is None:
        f = Fraction(central_binomial(k), 2 * k - 1)
        val = int(f) if f.denominator == 1 else f
        with _factor_lock:
            val = _central_over_odd_cache.setdefault(k, val)
    return val


def ballot_over_odd(k: int) -> int | Fraction:
    """C(2k+1,k) * 3 / (4k^2 - 1), the per-k factor of the h-sum."""
    val = _ballot_over_odd_cache.get(k)
    if val is None:
        b = central_binomial(k) * (2 * k + 1) // (k + 1)  # C(2k+1, k), exact
        f = Fraction(3 * b, 4 * k * k - 1)
        val = int(f) if f.denominator == 1 else f
        with _factor_lock:
            val = _ballot_over_odd_cache.setdefault(k, val)
    return val


def binomial_2k1_k(k: int) -> int:
    """C(2k+1, k)."""
    return central_binomial(k) * (2 * k + 1) // (k + 1)


# --- defining sums ----------------------------------------------------------


def _term_S(n: int) -> int:
    row = pascal_row(n)
    return sum(row[k] * row[k] * central_binomial(k) * (2 * k + 1) for k in range(n + 1))


def _term_S_r(r: int) -> Callable[[int], int]:
    def term(n: int) -> int:
        row = pascal_row(n)
        return sum(
            row[k] * row[k] * central_binomial(k) * (2 * k + 1) ** r
            for k in range(n + 1)
        )

    return term


def _term_T_r(r: int) -> Callable[[int], int]:
    def term(n: int) -> int:
        row = pascal_row(n)
        tot = 0
        for k in range(n + 1):
            t = row[k] * row[k] * central_binomial(k) * (2 * k + 1) ** r
            tot += -t if k & 1 else t
        return tot

    return term


def _term_s(n: int) -> Fraction:
    row = pascal_row(n)
    return sum(
        (row[k] * row[k] * central_over_odd(k) for k in range(n + 1)),
        start=Fraction(0),
    )


def _term_R(n: int) -> Fraction:
    tot = Fraction(0)
    for k in range(n + 1):
        tot += pascal_row(n + k)[2 * k] * central_over_odd(k)
    return tot


def _term_f(n: int) -> int:
    row = pascal_row(n)
    tot = 0
    for k in range(n + 1):
        nk1 = row[k + 1] if k + 1 <= n else 0
        tot += catalan(k) * (6 * k * row[k] * row[k] + row[k] * nk1)
    return tot


def _term_g(n: int) -> int:
    row = pascal_row(n)
    tot = 0
    for k in range(n + 1):
        nk1 = row[k + 1] if k + 1 <= n else 0
        tot += catalan(k) * (2 * row[k] * nk1 - row[k] * row[k])
    return tot


def _term_e(n: int) -> int:
    row = pascal_row(n)
    tot = 0
    for k in range(n + 1):
        nk1 = row[k + 1] if k + 1 <= n else 0
        tot += binomial_2k1_k(k) * row[k] * row[k] + catalan(k) * row[k] * nk1
    return tot


def _term_h(n: int) -> Fraction:
    row = pascal_row(n)
    tot = sum(
        (row[k] * row[k] * ballot_over_odd(k) for k in range(n + 1)),
        start=Fraction(0),
    )
    return Fraction(tot, 4 * n + 3)


def alt_catalan_sum(n: int) -> int | Fraction:
    """sum_{k<n} C(n-1,k)^2 C(2k+1,k) * 3/(4k^2-1), the 4n-1 divisibility sum.

    Equals (4n-1) * h(n-1); computed directly so congruence checks at large n
    do not go through the h handle.
    """
    row = pascal_row(n - 1)
    tot = sum(
        (row[k] * row[k] * ballot_over_odd(k) for k in range(n)),
        start=Fraction(0),
    )
    return int(tot) if tot.denominator == 1 else tot


def catalan_weighted_square_sum(n: int) -> int:
    """sum_{k<n} C(n-1,k)^2 * C(2k,k)/(k+1), the right side of the S-sum identity."""
    row = pascal_row(n - 1)
    return sum(row[k] * row[k] * catalan(k) for k in range(n))


# --- handle registry --------------------------------------------------------

# reentrant: building a derived handle (x, v, sum:S, ...) registers the
# sequences it wraps while the lock is held
_registry: dict[str, Sequence] = {}
_registry_lock = threading.RLock()


def _difference_check(sid: str, den_bound: Callable[[int], int]):
    """Rational-valued sequences must have denominators dividing a stated bound."""

    def check(n, val):
        if isinstance(val, Fraction):
            bound = den_bound(n)
            assert bound % val.denominator == 0, (
                f"{sid}({n}) denominator {val.denominator} does not divide {bound}"
            )
            return int(val) if val.denominator == 1 else val
        return val

    return check


class _HStats:
    """Observed-integrality counters for the h sequence (reported, not assumed)."""

    def __init__(self):
        self.evaluations = 0
        self.integral = 0
        self._lock = threading.Lock()

    def record(self, is_integral: bool):
        with self._lock:
            self.evaluations += 1
            if is_integral:
                self.integral += 1


h_integrality = _HStats()


def _h_check(n, val):
    val = Fraction(val)
    assert (4 * n + 3) % val.denominator == 0, (
        f"h({n}) denominator {val.denominator} does not divide {4*n+3}"
    )
    h_integrality.record(val.denominator == 1)
    return int(val) if val.denominator == 1 else val


def _build(sid: str) -> Sequence:
    if sid == "S":
        return Sequence("S", _term_S, check=_as_integer("S"))
    if sid == "s":
        return Sequence("s", _term_s, check=_as_integer("s"))
    if sid == "S_plus":
        return Sequence("S_plus", _term_S_r(2), check=_as_integer("S_plus"))
    if sid == "R":
        return Sequence("R", _term_R, check=_as_integer("R"))
    if sid == "f":
        return Sequence("f", _term_f)
    if sid == "g":
        return Sequence("g", _term_g)
    if sid == "e":
        return Sequence("e", _term_e)
    if sid == "h":
        return Sequence("h", _term_h, check=_h_check)
    if sid == "u":
        S = get_sequence("S")
        return Sequence("u", lambda n: 4 * n * S(n))
    if sid == "v":
        f = get_sequence("f")
        return Sequence(
            "v",
            lambda n: (n + 1) ** 2 * f(n) - n * n * f(n - 1),
            min_index=1,
        )
    if sid == "w":
        g = get_sequence("g")
        return Sequence(
            "w",
            lambda n: (n + 1) ** 2 * g(n) - n * n * g(n - 1),
            min_index=1,
        )
    if sid == "x":
        h = get_sequence("h")
        return Sequence(
            "x",
            lambda n: (n + 1) ** 2 * h(n) - n * n * h(n - 1),
            min_index=1,
            check=_difference_check("x", lambda n: (4 * n + 3) * (4 * n - 1)),
        )
    if sid == "y":
        e = get_sequence("e")
        return Sequence(
            "y",
            lambda n: (n + 1) ** 2 * e(n) - n * n * e(n - 1),
            min_index=1,
        )
    if sid.startswith("S_r:") or sid.startswith("T_r:"):
        try:
            r = int(sid[4:])
        except ValueError:
            raise UnknownIdError(f"bad power parameter in {sid!r}") from None
        if not 0 <= r <= _MAX_POWER:
            raise UnknownIdError(f"power out of range in {sid!r} (0..{_MAX_POWER})")
        term = _term_S_r(r) if sid[0] == "S" else _term_T_r(r)
        return Sequence(sid, term, check=_as_integer(sid))
    if sid.startswith("sum:"):
        inner = get_sequence(sid[4:])
        if inner.min_index != 0:
            raise UnknownIdError(f"prefix sum needs a sequence defined from 0: {sid!r}")
        return Sequence(sid, inner.prefix_sum)
    if sid.startswith("ksum:"):
        inner = get_sequence(sid[5:])
        if inner.min_index != 0:
            raise UnknownIdError(f"prefix sum needs a sequence defined from 0: {sid!r}")
        return Sequence(sid, inner.weighted_prefix_sum)
    if sid.startswith("constant:"):
        try:
            c = int(sid[9:])
        except ValueError:
            raise UnknownIdError(f"bad constant in {sid!r}") from None
        return Sequence(sid, lambda n: c)
    raise UnknownIdError(f"unknown sequence id {sid!r}")


def get_sequence(sid: str) -> Sequence:
    """Singleton handle for a sequence id.

    Base ids: S, s, S_plus (alias S+), R, f, g, h, e, u, v, w, x, y.
    Parametric: S_r:<r> and T_r:<r> with 0 <= r <= 16.
    Derived: sum:<id>, ksum:<id> (prefix and k-weighted prefix sums),
    constant:<int>.
    """
    sid = sid.strip()
    if sid == "S+":
        sid = "S_plus"
    seq = _registry.get(sid)
    if seq is None:
        with _registry_lock:
            seq = _registry.get(sid)
            if seq is None:
                seq = _build(sid)
                _registry[sid] = seq
    return seq


def known_base_ids() -> list[str]:
    return ["S", "s", "S_plus", "R", "f", "g", "h", "e", "u", "v", "w", "x", "y"]


# --- dump format -------------------------------------------------------------


def format_value(val: int | Fraction) -> str:
    """Decimal rendering with exact round-trip: '55' or '-45/8'."""
    if isinstance(val, Fraction) and val.denominator != 1:
        return f"{val.numerator}/{val.denominator}"
    return str(int(val))


def parse_value(text: str) -> int | Fraction:
    text = text.strip()
    if "/" in text:
        num, den = text.split("/", 1)
        return Fraction(int(num), int(den))
    return int(text)


def dump_lines(seq: Sequence, n_max: int):
    """Records `id, n, value` for min_index <= n <= n_max."""
    for n in range(seq.min_index, n_max + 1):
        yield f"{seq.id}, {n}, {format_value(seq.eval(n))}"


def parse_dump_line(line: str) -> tuple[str, int, int | Fraction]:
    sid, n, value = (part.strip() for part in line.split(",", 2))
    return sid, int(n), parse_value(value)
