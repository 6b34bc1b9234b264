"""Exact ground fields: the rationals and prime fields F_p.

Rational scalars are plain :class:`fractions.Fraction` objects.  Prime-field
scalars are :class:`ModP` instances; combining a ``ModP`` with a scalar of a
different field raises :class:`FieldMismatchError`, while Python ints are
coerced silently.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction

from .errors import FieldMismatchError


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


class ModP:
    """An element of the prime field F_p."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        self.p = p
        self.value = value % p

    def _coerce(self, other):
        if isinstance(other, ModP):
            if other.p != self.p:
                raise FieldMismatchError(f"cannot combine F_{self.p} and F_{other.p} scalars")
            return other.value
        if isinstance(other, int):
            return other % self.p
        if isinstance(other, Fraction):
            raise FieldMismatchError(f"cannot combine F_{self.p} scalar with rational {other}")
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(self.value + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(self.value - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(o - self.value, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(self.value * o, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o == 0:
            raise ZeroDivisionError("division by zero in F_%d" % self.p)
        return ModP(self.value * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(o, self.p) / self

    def __neg__(self):
        return ModP(-self.value, self.p)

    def __pos__(self):
        return self

    def __bool__(self):
        return self.value != 0

    def __eq__(self, other):
        if isinstance(other, ModP):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def symmetric(self) -> int:
        """Representative in (-p/2, p/2]."""
        v = self.value
        return v - self.p if v > self.p // 2 else v

    def __repr__(self):
        return f"ModP({self.value}, {self.p})"

    def __str__(self):
        return str(self.symmetric())


@dataclass(frozen=True)
class Field:
    """Descriptor of the session field; ``characteristic == 0`` means Q."""

    characteristic: int = 0

    def __post_init__(self):
        p = self.characteristic
        if p != 0 and not _is_prime(p):
            raise ValueError(f"F_{p}: {p} is not prime")

    @classmethod
    def parse(cls, text: str) -> "Field":
        """Accept ``Q``, ``F5``, ``F 5``, ``F_5`` or ``GF5``."""
        t = text.strip().replace("_", "").replace(" ", "")
        if t in ("Q", "QQ"):
            return cls(0)
        for prefix in ("GF", "F"):
            if t.startswith(prefix) and t[len(prefix):].isdigit():
                return cls(int(t[len(prefix):]))
        raise ValueError(f"unknown field {text!r}; use Q or F<p>")

    @property
    def is_rational(self) -> bool:
        return self.characteristic == 0

    @property
    def name(self) -> str:
        return "Q" if self.is_rational else f"F{self.characteristic}"

    def __call__(self, x):
        """Coerce an int, Fraction, numeric string or own-field scalar."""
        p = self.characteristic
        if isinstance(x, str):
            x = Fraction(x)
        if p == 0:
            if isinstance(x, ModP):
                raise FieldMismatchError(f"cannot use F_{x.p} scalar over Q")
            return Fraction(x)
        if isinstance(x, ModP):
            if x.p != p:
                raise FieldMismatchError(f"cannot use F_{x.p} scalar over F_{p}")
            return x
        if isinstance(x, Fraction):
            if x.denominator % p == 0:
                raise ZeroDivisionError(f"{x} has no image in F_{p}")
            return ModP(x.numerator, p) / x.denominator
        return ModP(int(x), p)

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def owns(self, x) -> bool:
        if self.is_rational:
            return isinstance(x, Fraction)
        return isinstance(x, ModP) and x.p == self.characteristic

    def format(self, x) -> str:
        return str(x)

    def warn_if_char_two(self, context: str = ""):
        if self.characteristic == 2:
            warnings.warn(
                f"working over F_2{': ' + context if context else ''}; "
                "several constructions assume characteristic different from 2",
                stacklevel=2,
            )


QQ = Field(0)


def clear_denominators(coeffs):
    """Smallest positive integer multiplier making rational ``coeffs`` integral."""
    from math import lcm

    m = 1
    for c in coeffs:
        if isinstance(c, Fraction):
            m = lcm(m, c.denominator)
    return m
