"""Exact scalar arithmetic: prime fields GF(p) and the rationals.

Matrices over GF(p) are numpy int64 arrays with entries kept in [0, p);
matrices over Q are numpy object arrays of Fraction.  Both are exact; no
floating point is used anywhere.
"""

from fractions import Fraction

import numpy as np


def _is_prime(p):
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


class GF:
    """The prime field F_p.  Elements are python ints reduced mod p."""

    dtype = np.int64

    def __init__(self, p):
        if not _is_prime(p):
            raise ValueError(f"field modulus {p} is not prime")
        self.p = p

    def normalize(self, arr):
        return arr % self.p

    def coerce(self, x):
        """Map an int or Fraction into F_p (fractions via modular inverse)."""
        if isinstance(x, Fraction):
            den = x.denominator % self.p
            if den == 0:
                raise ZeroDivisionError(f"denominator of {x} vanishes mod {self.p}")
            return (x.numerator % self.p) * pow(den, -1, self.p) % self.p
        return int(x) % self.p

    def inv(self, x):
        return pow(int(x), -1, self.p)

    def neg(self, x):
        return (-int(x)) % self.p

    def empty(self, rows, cols):
        return np.zeros((rows, cols), dtype=self.dtype)

    def scalar_str(self, x):
        return str(int(x))

    def __eq__(self, other):
        return isinstance(other, GF) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return f"GF({self.p})"

    @property
    def name(self):
        return str(self.p)


class QQ:
    """The rational numbers.  Elements are Fraction (always lowest terms)."""

    dtype = object

    def normalize(self, arr):
        return arr

    def coerce(self, x):
        return Fraction(x)

    def inv(self, x):
        return Fraction(1) / x

    def neg(self, x):
        return -x

    def empty(self, rows, cols):
        a = np.empty((rows, cols), dtype=object)
        a[...] = Fraction(0)
        return a

    def scalar_str(self, x):
        return str(x)

    def __eq__(self, other):
        return isinstance(other, QQ)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"

    @property
    def name(self):
        return "Q"


def field_from_name(name):
    """Parse a field descriptor: "Q" for the rationals, a prime for GF(p)."""
    name = name.strip()
    if name.upper() == "Q":
        return QQ()
    return GF(int(name))
