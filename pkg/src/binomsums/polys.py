"""Dense univariate polynomials with arbitrary-precision integer coefficients."""
from __future__ import annotations

from math import gcd


class IntPolynomial:
    """Immutable polynomial in one variable n; coeffs[i] multiplies n**i.

    Trailing zeros are trimmed; the zero polynomial has an empty tuple.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = list(coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("IntPolynomial is immutable")

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, n: int) -> int:
        val = 0
        for c in reversed(self.coeffs):
            val = val * n + c
        return val

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntPolynomial(out)

    __radd__ = __add__

    def __neg__(self):
        return IntPolynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return IntPolynomial()
        out = [0] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    out[i + j] += ca * cb
        return IntPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative polynomial power")
        out = IntPolynomial((1,))
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def shift(self, h: int = 1) -> "IntPolynomial":
        """Return p(n + h), by Horner in the polynomial ring."""
        base = IntPolynomial((h, 1))
        out = IntPolynomial()
        for c in reversed(self.coeffs):
            out = out * base + c
        return out

    def content(self) -> int:
        """gcd of the integer coefficients (0 for the zero polynomial)."""
        g = 0
        for c in self.coeffs:
            g = gcd(g, c)
        return g

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            elif i == 1:
                parts.append(f"{c}*n" if c != 1 else "n")
            else:
                parts.append(f"{c}*n^{i}" if c != 1 else f"n^{i}")
        return " + ".join(parts).replace("+ -", "- ")


def _coerce(value):
    if isinstance(value, IntPolynomial):
        return value
    if isinstance(value, int):
        return IntPolynomial((value,))
    return NotImplemented


def poly(*coeffs: int) -> IntPolynomial:
    """Polynomial from ascending coefficients: poly(3, 0, 1) = 3 + n^2."""
    return IntPolynomial(coeffs)


#: The variable itself, for building factored forms: (4*N + 3) * (N + 1) ...
N = IntPolynomial((0, 1))
