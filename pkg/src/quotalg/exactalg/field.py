"""Exact coefficient fields: the rationals and prime fields."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from gmpy2 import mpq

from ..errors import InputError


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class CoeffField:
    """Either the rationals (``p == 0``) or the prime field F_p.

    Rational coefficients are ``gmpy2.mpq``; prime-field coefficients are
    Python ints in ``range(p)``.
    """

    p: int = 0

    def __post_init__(self):
        if self.p and not _is_prime(self.p):
            raise InputError(f"{self.p} is not prime")

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def is_rational(self) -> bool:
        return self.p == 0

    def __call__(self, value) -> object:
        if self.p:
            if isinstance(value, (Fraction,)) or type(value).__name__ == "mpq":
                num, den = int(value.numerator), int(value.denominator)
                if den % self.p == 0:
                    raise InputError(f"denominator {den} vanishes in F_{self.p}")
                return num * pow(den, -1, self.p) % self.p
            return int(value) % self.p
        return mpq(value)

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def inv(self, a):
        if self.p:
            if a % self.p == 0:
                raise ZeroDivisionError("inverse of zero")
            return pow(int(a), -1, self.p)
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / mpq(a)

    def elements(self):
        """Iterate the field elements; only meaningful for prime fields."""
        if not self.p:
            raise ValueError("the rationals are infinite")
        return range(self.p)

    def parse(self, token: str):
        if "/" in token:
            num, den = token.split("/")
            return self(Fraction(int(num), int(den)))
        return self(int(token))

    def format(self, c) -> str:
        return str(c)

    def __str__(self):
        return f"F{self.p}" if self.p else "Q"

    @classmethod
    def from_spec(cls, text: str) -> "CoeffField":
        """Parse ``Q``, ``QQ``, ``F7``, ``GF(7)`` or ``F_7``."""
        t = text.strip().replace(" ", "")
        if t in ("Q", "QQ", "rationals"):
            return cls(0)
        for prefix in ("GF(", "F_", "GF", "F"):
            if t.startswith(prefix):
                digits = t[len(prefix):].rstrip(")")
                if digits.isdigit():
                    return cls(int(digits))
        raise InputError(f"unknown coefficient field {text!r}")


QQ = CoeffField(0)


def GF(p: int) -> CoeffField:
    return CoeffField(p)
