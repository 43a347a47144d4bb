"""Exact scalars: the rationals and simple extensions Q[a]/(m(a)).

Rational scalars are plain ``fractions.Fraction`` values.  Elements of a
number field are ``NFElement`` instances holding a reduced coefficient
tuple over Q; they mix freely with ``int`` and ``Fraction`` operands.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from . import upoly
from .errors import ParseError


def parse_rational(text) -> Fraction:
    """Parse "p/q", "p" or an int into a Fraction."""
    if isinstance(text, bool):
        raise ParseError(f"not a scalar: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, Fraction):
        return text
    if not isinstance(text, str):
        raise ParseError(f"not a scalar: {text!r}")
    s = text.strip()
    try:
        if "/" in s:
            num, den = s.split("/")
            if not _is_int_literal(num) or not _is_int_literal(den):
                raise ValueError
            return Fraction(int(num), int(den))
        if not _is_int_literal(s):
            raise ValueError
        return Fraction(int(s))
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"not a rational scalar: {text!r}") from None


def _is_int_literal(s: str) -> bool:
    s = s.strip()
    if s[:1] in "+-":
        s = s[1:]
    return s.isdigit()


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


class RationalField:
    """The field Q; elements are Fractions."""

    degree = 1
    minpoly = None
    is_extension = False

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def __call__(self, x):
        if isinstance(x, NFElement):
            if not x.is_rational():
                raise ValueError(f"{x} is not rational")
            return x.coeffs[0]
        return Fraction(x)

    def parse(self, obj):
        if isinstance(obj, list):
            if len(obj) != 1:
                raise ParseError(f"extension element {obj!r} given but no field declared")
            obj = obj[0]
        return parse_rational(obj)

    def serialize(self, x):
        return format_rational(self(x))

    def contains(self, x) -> bool:
        return not isinstance(x, NFElement) or x.is_rational()

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


QQ = RationalField()


class NumberField:
    """Q[a]/(m(a)) for a monic irreducible integer polynomial m of degree >= 2.

    ``minpoly`` is the ascending integer coefficient list of m.
    """

    is_extension = True

    def __init__(self, minpoly: Sequence[int], name: str = "a"):
        coeffs = [int(c) for c in minpoly]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        if len(coeffs) < 3:
            raise ValueError("minimal polynomial must have degree >= 2")
        if coeffs[-1] != 1:
            raise ValueError("minimal polynomial must be monic")
        if not _is_irreducible(coeffs):
            raise ValueError(f"polynomial {coeffs} is reducible over Q")
        self.minpoly = tuple(coeffs)
        self.degree = len(coeffs) - 1
        self.name = name
        self._mod = [Fraction(c) for c in coeffs]

    @property
    def zero(self):
        return NFElement(self, (Fraction(0),) * self.degree)

    @property
    def one(self):
        return self(1)

    @property
    def gen(self):
        c = [Fraction(0)] * self.degree
        c[1] = Fraction(1)
        return NFElement(self, tuple(c))

    def __call__(self, x):
        if isinstance(x, NFElement):
            if x.field != self:
                raise ValueError("element of a different field")
            return x
        if isinstance(x, (list, tuple)):
            return self.from_coeffs(x)
        c = [Fraction(0)] * self.degree
        c[0] = Fraction(x)
        return NFElement(self, tuple(c))

    def from_coeffs(self, coeffs):
        return NFElement(self, self._reduce([Fraction(c) for c in coeffs]))

    def _reduce(self, coeffs) -> tuple:
        _, r = upoly.divmod_(coeffs, self._mod)
        r = list(r) + [Fraction(0)] * (self.degree - len(r))
        return tuple(Fraction(c) for c in r)

    def parse(self, obj):
        if isinstance(obj, list):
            if len(obj) > self.degree:
                raise ParseError(f"extension element {obj!r} has too many coefficients")
            return self.from_coeffs([parse_rational(c) for c in obj])
        return self(parse_rational(obj))

    def serialize(self, x):
        return [format_rational(c) for c in self(x).coeffs]

    def contains(self, x) -> bool:
        return not isinstance(x, NFElement) or x.field == self

    def __eq__(self, other):
        return isinstance(other, NumberField) and other.minpoly == self.minpoly

    def __hash__(self):
        return hash(self.minpoly)

    def __repr__(self):
        return f"NumberField({list(self.minpoly)})"


def _is_irreducible(coeffs) -> bool:
    import sympy

    x = sympy.Symbol("x")
    return sympy.Poly(list(reversed(coeffs)), x, domain="QQ").is_irreducible


class NFElement:
    """Element of a NumberField, stored as a reduced coefficient tuple."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: NumberField, coeffs: tuple):
        self.field = field
        self.coeffs = coeffs

    def _lift(self, other):
        if isinstance(other, NFElement):
            if other.field != self.field:
                raise ValueError("mixing elements of different number fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field(other)
        return None

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return NFElement(self.field, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return NFElement(self.field, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return NFElement(self.field, tuple(a - b for a, b in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return NFElement(self.field, tuple(a * other for a in self.coeffs))
        o = self._lift(other)
        if o is None:
            return NotImplemented
        prod = upoly.mul(list(self.coeffs), list(o.coeffs))
        return NFElement(self.field, self.field._reduce(prod))

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a number field")
        g, s, _ = upoly.xgcd(upoly.trim(self.coeffs), self.field._mod)
        if len(g) != 1:
            raise ZeroDivisionError("element is not invertible")
        return self.field.from_coeffs(s)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return NFElement(self.field, tuple(a / other for a in self.coeffs))
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash(self.coeffs)

    def __repr__(self):
        return f"NFElement({[str(c) for c in self.coeffs]})"

    def __str__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            a = self.field.name
            mon = "" if i == 0 else (a if i == 1 else f"{a}^{i}")
            if mon and c == 1:
                terms.append(mon)
            elif mon and c == -1:
                terms.append("-" + mon)
            else:
                terms.append(f"{c}*{mon}" if mon else str(c))
        return "(" + " + ".join(terms).replace("+ -", "- ") + ")" if terms else "0"


def field_of(*values):
    """The NumberField of any NFElement among ``values``, else QQ."""
    for v in values:
        if isinstance(v, NFElement):
            return v.field
    return QQ
