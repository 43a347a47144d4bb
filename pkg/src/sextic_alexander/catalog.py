"""Singularity types of the sextic catalog: names, normal forms, invariants."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .errors import ParseError
from .poly import Germ

# Non-simple types occurring on sextics of torus type.
NONSIMPLE_CATALOG = (
    "B3,6", "B3,8", "B3,10", "B3,12", "B4,6", "B6,6",
    "C3,7", "C3,8", "C3,9", "C3,12", "C3,15",
    "C6,6", "C6,9", "C6,12", "C9,9",
    "D4,7", "Sp1", "Sp2",
)

# Milnor numbers of the two Newton-degenerate types, from their normal
# forms (Jacobian colength; cross-checked in the test suite).
_SP_MILNOR = {1: 18, 2: 21}
_SP_BRANCHES = {1: 1, 2: 2}


@dataclass(frozen=True)
class SingularityType:
    """Family tag plus indices, e.g. ``A`` (5,), ``B`` (6, 6), ``Sp`` (1,)."""

    family: str
    indices: tuple = ()
    diagnostics: str = field(default="", compare=False)

    @property
    def name(self) -> str:
        if self.family == "Unknown":
            return "Unknown"
        return self.family + ",".join(str(i) for i in self.indices)

    def __str__(self):
        return self.name

    @property
    def is_unknown(self) -> bool:
        return self.family == "Unknown"

    @property
    def is_simple(self) -> bool:
        return self.family in ("A", "E") or (self.family == "D" and len(self.indices) == 1)

    @property
    def in_catalog(self) -> bool:
        if self.is_unknown:
            return False
        if self.is_simple:
            return True
        return self.name in NONSIMPLE_CATALOG

    @property
    def milnor(self) -> int:
        f, ix = self.family, self.indices
        if f in ("A", "E") or (f == "D" and len(ix) == 1):
            return ix[0]
        if f == "B":
            return (ix[0] - 1) * (ix[1] - 1)
        if f == "C":
            return ix[0] + ix[1] + 1
        if f == "D":
            return 16
        if f == "Sp":
            return _SP_MILNOR[ix[0]]
        raise ValueError(f"no Milnor number for {self}")

    @property
    def branches(self) -> int:
        f, ix = self.family, self.indices
        if f == "A":
            return 1 if ix[0] % 2 == 0 else 2
        if f == "D" and len(ix) == 1:
            return 3 if ix[0] % 2 == 0 else 2
        if f == "E":
            return 2 if ix[0] == 7 else 1
        if f == "B":
            return gcd(ix[0], ix[1])
        if f == "C":
            return gcd(ix[0] - 2, 2) + gcd(ix[1] - 2, 2)
        if f == "D":
            return 3
        if f == "Sp":
            return _SP_BRANCHES[ix[0]]
        raise ValueError(f"no branch count for {self}")

    def normal_form(self) -> Germ:
        f, ix = self.family, self.indices
        P = Germ.parse
        if f == "A":
            return P(f"v^2 + u^{ix[0] + 1}")
        if f == "D" and len(ix) == 1:
            return P(f"u*v^2 + u^{ix[0] - 1}")
        if f == "E":
            return {6: P("v^3 + u^4"), 7: P("v^3 + v*u^3"), 8: P("v^3 + u^5")}[ix[0]]
        if f == "B":
            return P(f"v^{ix[0]} + u^{ix[1]}")
        if f == "C":
            return P(f"v^{ix[0]} + u^2*v^2 + u^{ix[1]}")
        if f == "D":
            return P("v^4 + u^3*v^2 + u^5*v + u^7")
        if f == "Sp":
            return P("(u*v)^3 + (v^2 - u^3)^2") if ix[0] == 1 else P("(v^2 - u^3)^2 + v^6")
        raise ValueError(f"no normal form for {self}")


def delta_invariant(t: SingularityType) -> int:
    """delta = (mu + r - 1) / 2 (Milnor's formula)."""
    if t.is_unknown:
        raise ValueError("delta invariant of an Unknown singularity")
    d = Fraction(t.milnor + t.branches - 1, 2)
    if d.denominator != 1:
        raise ValueError(f"non-integral delta for {t}")
    return int(d)


_TYPE_RE = re.compile(r"^(A|D|E|B|C|Sp)_?\{?(\d+)(?:\s*,\s*(\d+))?\}?$")


def parse_type(text) -> SingularityType:
    """Accepts ``A5``, ``A_5``, ``B6,6``, ``B_{6,6}``, ``D4,7``, ``Sp1``, ..."""
    if isinstance(text, SingularityType):
        return text
    s = str(text).strip().replace(" ", "")
    if s == "Unknown":
        return SingularityType("Unknown")
    m = _TYPE_RE.match(s)
    if not m:
        raise ParseError(f"unrecognized singularity type {text!r}")
    fam, a, b = m.group(1), int(m.group(2)), m.group(3)
    ix = (a,) if b is None else (a, int(b))
    ok = (
        (fam == "A" and len(ix) == 1 and a >= 1)
        or (fam == "D" and len(ix) == 1 and a >= 4)
        or (fam == "D" and ix == (4, 7))
        or (fam == "E" and len(ix) == 1 and a in (6, 7, 8))
        or (fam in ("B", "C") and len(ix) == 2)
        or (fam == "Sp" and len(ix) == 1 and a in (1, 2))
    )
    if not ok:
        raise ParseError(f"unrecognized singularity type {text!r}")
    return SingularityType(fam, ix)


def simple_types(max_a: int = 22, max_d: int = 21):
    out = [SingularityType("A", (n,)) for n in range(1, max_a + 1)]
    out += [SingularityType("D", (n,)) for n in range(4, max_d + 1)]
    out += [SingularityType("E", (n,)) for n in (6, 7, 8)]
    return out


def nonsimple_types():
    return [parse_type(n) for n in NONSIMPLE_CATALOG]
