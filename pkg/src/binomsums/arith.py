"""Exact integer and rational arithmetic plus elementary number theory.

Everything here is exact: values are Python ints or ``fractions.Fraction``
(always in lowest terms, positive denominator). No floating point anywhere.
"""
from __future__ import annotations

import threading
from fractions import Fraction
from math import gcd

from .errors import DenominatorNotInvertible

# Scalar values throughout the package are ints where provably integral and
# Fraction otherwise; Fraction keeps num/den coprime with den >= 1 by itself.
ExactRational = Fraction


class PascalCache:
    """Pascal-triangle rows grown on demand.

    Rows up to ``cap`` are cached (quadratic memory); rows above the cap are
    recomputed per call by the multiplicative formula and not retained.
    Growth is serialized by a lock; rows already published are read without
    locking and never mutated.
    """

    def __init__(self, cap: int = 1100):
        self.cap = cap
        self._rows: list[list[int]] = [[1]]
        self._lock = threading.Lock()

    def row(self, n: int) -> list[int]:
        """Return ``[C(n,0), ..., C(n,n)]``. Callers must not mutate it."""
        if n < 0:
            raise ValueError(f"row index must be >= 0, got {n}")
        if n > self.cap:
            return _stream_row(n)
        rows = self._rows
        if n < len(rows):
            return rows[n]
        with self._lock:
            while len(self._rows) <= n:
                prev = self._rows[-1]
                nxt = [1] * (len(prev) + 1)
                for i in range(len(prev) - 1):
                    nxt[i + 1] = prev[i] + prev[i + 1]
                self._rows.append(nxt)
        return self._rows[n]


def _stream_row(n: int) -> list[int]:
    row = [1] * (n + 1)
    c = 1
    for k in range(1, n // 2 + 1):
        c = c * (n - k + 1) // k
        row[k] = row[n - k] = c
    return row


_PASCAL = PascalCache()


def pascal_row(n: int) -> list[int]:
    """Shared read-only Pascal row; the workhorse behind every defining sum."""
    return _PASCAL.row(n)


def binomial(n: int, k: int, strict: bool = False) -> int:
    """Standard binomial coefficient; 0 when k < 0 or k > n >= 0.

    Negative n returns 0 (the generalized value is never needed here);
    ``strict=True`` rejects it instead.
    """
    if n < 0:
        if strict:
            raise ValueError(f"binomial: negative n={n} rejected in strict mode")
        return 0
    if k < 0 or k > n:
        return 0
    if n <= _PASCAL.cap:
        return _PASCAL.row(n)[k]
    k = min(k, n - k)
    c = 1
    for i in range(1, k + 1):
        c = c * (n - i + 1) // i
    return c


class _CentralCache:
    """C(2k,k) computed incrementally, independent of the triangle cap."""

    def __init__(self):
        self._vals = [1]
        self._lock = threading.Lock()

    def get(self, k: int) -> int:
        if k < 0:
            raise ValueError(f"central binomial index must be >= 0, got {k}")
        vals = self._vals
        if k < len(vals):
            return vals[k]
        with self._lock:
            while len(self._vals) <= k:
                j = len(self._vals)
                c = self._vals[-1] * (2 * (2 * j - 1))
                q, r = divmod(c, j)
                assert r == 0
                self._vals.append(q)
        return self._vals[k]


_CENTRAL = _CentralCache()


def central_binomial(k: int) -> int:
    """C(2k, k)."""
    return _CENTRAL.get(k)


def catalan(k: int) -> int:
    """k-th Catalan number C(2k,k)/(k+1); integrality is asserted."""
    if k < 0:
        raise ValueError(f"catalan index must be >= 0, got {k}")
    q, r = divmod(central_binomial(k), k + 1)
    assert r == 0, f"C({2*k},{k}) not divisible by {k+1}"
    return q


# Deterministic Miller-Rabin witness set, valid for all n < 3.3 * 10^24
# (covers the full 64-bit range with margin).
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic primality for |n| < 2**64 (and far beyond)."""
    if n < 2:
        return False
    for p in _MR_WITNESSES:
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_upto(bound: int) -> list[int]:
    """All primes <= bound, by sieve."""
    if bound < 2:
        return []
    sieve = bytearray([1]) * (bound + 1)
    sieve[0:2] = b"\x00\x00"
    for p in range(2, int(bound**0.5) + 1):
        if sieve[p]:
            start = p * p
            sieve[start : bound + 1 : p] = b"\x00" * ((bound - start) // p + 1)
    return [i for i in range(2, bound + 1) if sieve[i]]


def legendre_symbol(a: int, p: int) -> int:
    """Legendre symbol (a/p) for an odd prime p, via Euler's criterion."""
    if p == 2 or not is_prime(p):
        raise ValueError(f"legendre_symbol: p={p} is not an odd prime")
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def rational_congruent(a, b, m: int) -> bool:
    """Congruence of rationals: a == b (mod m) in the p-integral sense.

    Writing a - b = x/y in lowest terms, requires gcd(y, m) = 1 and tests
    m | x. A non-invertible denominator raises DenominatorNotInvertible:
    the statement is ill-posed at this modulus and must never silently pass.
    """
    if m < 1:
        raise ValueError(f"modulus must be >= 1, got {m}")
    d = Fraction(a) - Fraction(b)
    if gcd(d.denominator, m) != 1:
        raise DenominatorNotInvertible(d.numerator, d.denominator, m)
    return d.numerator % m == 0
