"""Exact coefficient fields: the rationals and prime fields GF(p).

Coefficients are carried as plain Python values (``fractions.Fraction`` for
the rationals, ``int`` in ``[0, p)`` for GF(p)); the field object only bundles
the arithmetic.  Hot loops fetch the bound methods once and work on the raw
values.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class CoefficientField:
    """The rationals (``char == 0``) or GF(p) for a machine-word prime p."""

    char: int = 0

    def __post_init__(self):
        if self.char:
            if not is_prime(self.char):
                raise ValueError(f"characteristic {self.char} is not prime")
            if self.char >= 1 << 63:
                raise ValueError("prime does not fit in a machine word")

    @property
    def is_prime_field(self) -> bool:
        return self.char != 0

    def of_int(self, n: int):
        return n % self.char if self.char else Fraction(n)

    def of_fraction(self, q: Fraction):
        if not self.char:
            return q
        den = q.denominator % self.char
        if den == 0:
            raise ZeroDivisionError(f"denominator of {q} vanishes mod {self.char}")
        return q.numerator * pow(den, -1, self.char) % self.char

    @property
    def zero(self):
        return 0 if self.char else Fraction(0)

    @property
    def one(self):
        return 1 if self.char else Fraction(1)

    def add(self, a, b):
        return (a + b) % self.char if self.char else a + b

    def sub(self, a, b):
        return (a - b) % self.char if self.char else a - b

    def mul(self, a, b):
        return (a * b) % self.char if self.char else a * b

    def neg(self, a):
        return -a % self.char if self.char else -a

    def inv(self, a):
        if self.char:
            if a % self.char == 0:
                raise ZeroDivisionError("inverse of 0")
            return pow(a, -1, self.char)
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return 1 / a

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def __str__(self):
        return "QQ" if not self.char else f"GF({self.char})"


QQ = CoefficientField(0)


def GF(p: int) -> CoefficientField:
    return CoefficientField(p)
