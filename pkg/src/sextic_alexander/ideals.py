"""The local ideals J_{P,k,d}.

Two engines compute them:

* the monomial criterion on a convenient non-degenerate germ: u^a v^b lies
  in J iff Q.(a, b) >= floor(k m(f,Q) / d) - |Q| + 1 for every face
  covector Q;
* a chart-valuation engine: J is cut out by order conditions
  ord_E(pi^* phi) >= floor(k m_E / d) - K_E on a list of exceptional
  divisors, each reached by a sequence of monomial charts and shifts.

The reference tables shipped in ``data/`` are read by ``reference_ideal``.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from math import ceil
from typing import Iterable, Optional, Sequence

import sympy

from . import upoly
from .algebra import DEFAULT_CAP, QuotientAlgebra, quotient, staircase
from .catalog import SingularityType, parse_type
from .errors import CapExceededError, ParseError, TruncationError, UnsupportedGermError, VerificationError
from .linalg import kernel, local_key
from .newton import Covector, Face, boundary, make_convenient
from .poly import CoordinateJets, Germ, compose, invert_jets


# ---------------------------------------------------------------------------
# LocalIdeal

def _lead(g: Germ):
    return min(g.terms, key=local_key)


def _generator_text(g: Germ) -> str:
    return g.to_string().replace(" ", "")


class LocalIdeal:
    """Finite-colength ideal of O_{C^2,0} given by generators."""

    def __init__(self, generators: Iterable, field=None):
        gens = []
        for g in generators:
            g = g if isinstance(g, Germ) else Germ.constant(g)
            if not g.is_zero():
                gens.append(g)
        if not gens:
            raise ValueError("the zero ideal has infinite colength")
        self.generators = tuple(gens)
        self.field = field
        self._quotient: Optional[QuotientAlgebra] = None

    @classmethod
    def unit(cls) -> "LocalIdeal":
        return cls([Germ.constant(1)])

    @classmethod
    def maximal(cls) -> "LocalIdeal":
        return cls([Germ.u(), Germ.v()])

    @classmethod
    def from_monomials(cls, exps) -> "LocalIdeal":
        return cls([Germ.monomial(a, b) for a, b in exps])

    @classmethod
    def parse(cls, text: str) -> "LocalIdeal":
        """Parse ``<u^4, v^2-u^3>``; ``<1>`` is the unit ideal."""
        s = text.strip()
        if not (s.startswith("<") and s.endswith(">")):
            raise ParseError(f"ideal must be written <g1, g2, ...>: {text!r}")
        parts = [p.strip() for p in s[1:-1].split(",") if p.strip()]
        if not parts:
            raise ParseError(f"empty ideal {text!r}")
        return cls([Germ.parse(p) for p in parts])

    @property
    def is_unit(self) -> bool:
        return any(g.terms.get((0, 0), 0) != 0 for g in self.generators)

    @property
    def is_monomial(self) -> bool:
        return all(len(g.terms) == 1 for g in self.generators)

    def quotient(self, cap: int = DEFAULT_CAP) -> QuotientAlgebra:
        if self._quotient is None:
            self._quotient = quotient(self.generators, cap=cap)
        return self._quotient

    @property
    def colength(self) -> int:
        return self.quotient().colength

    def contains(self, g: Germ) -> bool:
        if self.is_unit:
            return True
        return self.quotient().contains(g)

    __contains__ = contains

    def equals(self, other: "LocalIdeal") -> bool:
        """Equal colength plus mutual generator membership."""
        if self.colength != other.colength:
            return False
        return all(other.contains(g) for g in self.generators) and all(
            self.contains(g) for g in other.generators
        )

    def __eq__(self, other):
        if not isinstance(other, LocalIdeal):
            return NotImplemented
        return self.equals(other)

    __hash__ = None

    def minimal(self) -> "LocalIdeal":
        """Same ideal with a minimal, sorted generating set."""
        if self.is_unit:
            return LocalIdeal.unit()
        if self.is_monomial and all(g.is_exact() for g in self.generators):
            gens = [Germ.monomial(a, b) for a, b in staircase(self.generators)]
        else:
            gens = self.quotient().minimal_generators()
        out = LocalIdeal(sorted(gens, key=_display_key), self.field)
        out._quotient = self._quotient
        return out

    def transform(self, jets: CoordinateJets) -> "LocalIdeal":
        """Generators composed with ``jets``: the image ideal under the
        coordinate change (u, v) -> (x(u, v), y(u, v))."""
        return LocalIdeal([compose(g, jets.x, jets.y, jets.truncation) for g in self.generators], self.field)

    def sorted_generators(self) -> list:
        return sorted(self.generators, key=_display_key)

    def __str__(self):
        if self.is_unit:
            return "<1>"
        return "<" + ", ".join(_generator_text(g) for g in self.sorted_generators()) + ">"

    def __repr__(self):
        return f"LocalIdeal({self})"


def _display_key(g: Germ):
    a, b = _lead(g)
    return (-a, b, len(g.terms))


# ---------------------------------------------------------------------------
# Monomial criterion

@dataclass(frozen=True)
class FaceCondition:
    covector: Covector
    value: int        # m(f, Q)
    threshold: int    # floor(k m / d) - |Q| + 1

    def holds(self, a: int, b: int) -> bool:
        return self.covector(a, b) >= self.threshold


def _check_kd(k: int, d: int) -> None:
    if not (1 <= k < d):
        raise ValueError(f"need 1 <= k < d, got k={k}, d={d}")


def criterion_thresholds(f: Germ, k: int, d: int) -> list:
    """One condition per compact face of the Newton boundary."""
    _check_kd(k, d)
    return [
        FaceCondition(face.covector, face.value, (k * face.value) // d - face.covector.size + 1)
        for face in boundary(f).faces
    ]


def monomial_ideal_from_conditions(conditions: Sequence[FaceCondition]) -> LocalIdeal:
    top = max((c.threshold for c in conditions), default=0)
    if top <= 0:
        return LocalIdeal.unit()
    gens = []
    last_b = None
    for a in range(top + 1):
        b = 0
        for c in conditions:
            p, q = c.covector
            need = c.threshold - p * a
            if need > 0:
                b = max(b, -(-need // q))
        if last_b is None or b < last_b:
            gens.append((a, b))
            last_b = b
        if b == 0:
            break
    return LocalIdeal.from_monomials(gens).minimal()


def multiplier_ideal_monomial(f: Germ, k: int, d: int) -> LocalIdeal:
    """J_{k,d} of a convenient non-degenerate germ, as a monomial ideal."""
    _check_kd(k, d)
    nb = boundary(f)
    if not nb.is_convenient():
        raise UnsupportedGermError("the monomial criterion needs a convenient germ")
    if not all(face.is_nondegenerate() for face in nb.faces):
        raise UnsupportedGermError("the monomial criterion needs a non-degenerate Newton boundary")
    return monomial_ideal_from_conditions(criterion_thresholds(f, k, d))


# ---------------------------------------------------------------------------
# Charts

@dataclass(frozen=True)
class MonomialStep:
    """(u, v) <- (u1^a v1^b, u1^c v1^e) for matrix ((a, b), (c, e))."""

    matrix: tuple

    def __post_init__(self):
        (a, b), (c, e) = self.matrix
        if min(a, b, c, e) < 0:
            raise ValueError(f"chart matrix {self.matrix} has negative entries")
        if a * e - b * c not in (1, -1):
            raise ValueError(f"chart matrix {self.matrix} is not unimodular")

    @property
    def covector(self) -> tuple:
        """Weights of (u, v) along the divisor u1 = 0."""
        return (self.matrix[0][0], self.matrix[1][0])

    def apply(self, terms: dict) -> dict:
        (a, b), (c, e) = self.matrix
        return {(a * x + c * y, b * x + e * y): k for (x, y), k in terms.items()}

    def jacobian_exponents(self) -> tuple:
        (a, b), (c, e) = self.matrix
        return (a + c - 1, b + e - 1)


@dataclass(frozen=True)
class ShiftStep:
    """v <- v + constant * u^power; power 0 is a translation."""

    constant: object
    power: int = 0

    def __post_init__(self):
        if self.constant == 0:
            raise ValueError("shift constant must be nonzero")
        if self.power < 0:
            raise ValueError("shift power must be nonnegative")

    def apply(self, terms: dict) -> dict:
        if not terms:
            return {}
        u, v = Germ.u(), Germ.v()
        return dict(compose(Germ(terms), u, v + Germ.monomial(self.power, 0, self.constant)).terms)


_SWAP = MonomialStep(((0, 1), (1, 0)))


@dataclass(frozen=True)
class ChartSequence:
    """Steps applied left to right; the divisor is the final chart variable
    named by ``divisor`` (u1 = 0 by default)."""

    steps: tuple
    label: str = ""
    divisor: str = "u"

    def __post_init__(self):
        if self.divisor not in ("u", "v"):
            raise ValueError("divisor variable must be 'u' or 'v'")
        if not any(isinstance(s, MonomialStep) for s in self.steps):
            raise ValueError("a chart sequence needs at least one monomial step")

    @property
    def _steps(self) -> tuple:
        return self.steps + ((_SWAP,) if self.divisor == "v" else ())

    def pullback(self, g: Germ) -> dict:
        """Exact pull-back of the known terms of g."""
        terms = dict(g.terms)
        for step in self._steps:
            terms = step.apply(terms)
        return terms

    def jacobian_order(self) -> int:
        """Order of the pulled-back 2-form du ^ dv along the divisor."""
        steps = self._steps
        total = 0
        for i, step in enumerate(steps):
            if isinstance(step, MonomialStep):
                x, y = step.jacobian_exponents()
                total += _valuation(steps[i + 1:], {(x, y): 1}, None)
        return total


def _valuation(steps: Sequence, terms: dict, truncation: Optional[int]) -> int:
    # Tail of unknown terms: all monomials with w . (a, b) >= bound.
    w, bound = (1, 1), truncation
    for step in steps:
        terms = step.apply(terms)
        if bound is None:
            continue
        if isinstance(step, MonomialStep):
            (a, _), (c, _) = step.matrix
            ratios = [coef / wt for coef, wt in ((a, w[0]), (c, w[1])) if wt > 0]
            bound, w = ceil(bound * min(ratios)), (1, 0)
        elif step.power == 0 and w != (1, 0):
            bound, w = 0, (1, 0)
    if bound is not None and w != (1, 0):
        raise ValueError("chart sequence without a monomial step")
    known = min((a for a, _ in terms), default=None)
    if bound is None:
        if known is None:
            raise ValueError("the pull-back vanishes identically")
        return known
    if known is not None and known < bound:
        return known
    raise TruncationError(f"order along the divisor is not determined below {bound}")


def chart_valuation(chart: ChartSequence, g: Germ) -> int:
    """Order of pi^* g along the chart's divisor."""
    if g.is_zero():
        raise ValueError("valuation of the zero germ")
    return _valuation(chart._steps, dict(g.terms), g.truncation)


@dataclass(frozen=True)
class DivisorData:
    label: str
    K: int            # order of the pulled-back 2-form
    f_mult: int       # order of pi^* f
    u_mult: int = 0
    v_mult: int = 0

    def threshold(self, k: int, d: int) -> int:
        return (k * self.f_mult) // d - self.K

    def __post_init__(self):
        if min(self.K, self.f_mult, self.u_mult, self.v_mult) < 0:
            raise ValueError("divisor multiplicities must be nonnegative")


def divisor_data(chart: ChartSequence, f: Germ) -> DivisorData:
    return DivisorData(
        chart.label,
        chart.jacobian_order(),
        chart_valuation(chart, f),
        chart_valuation(chart, Germ.u()),
        chart_valuation(chart, Germ.v()),
    )


def multiplier_ideal_charts(divisors: Sequence, k: int, d: int, candidate_degree_cap: int = DEFAULT_CAP) -> LocalIdeal:
    """Ideal of all phi with ord_E(pi^* phi) >= floor(k m_E / d) - K_E.

    ``divisors`` is a list of (ChartSequence, DivisorData).  Since every
    monomial of degree N has order >= N * min(ord u, ord v) on E, the ideal
    contains m^N for the N computed below; the rest is linear algebra on
    polynomials of degree < N.
    """
    _check_kd(k, d)
    conds = []
    N = 0
    for chart, data in divisors:
        t = data.threshold(k, d)
        if t <= 0:
            continue
        alpha = data.u_mult or chart_valuation(chart, Germ.u())
        beta = data.v_mult or chart_valuation(chart, Germ.v())
        N = max(N, -(-t // min(alpha, beta)))
        conds.append((chart, t))
    if not conds:
        return LocalIdeal.unit()
    if N > candidate_degree_cap:
        raise CapExceededError(f"candidate degree {N} exceeds the cap {candidate_degree_cap}")
    mons = [(a, n - a) for n in range(N) for a in range(n, -1, -1)]
    columns = []
    for mon in mons:
        col = {}
        for i, (chart, t) in enumerate(conds):
            for (x, y), c in chart.pullback(Germ.monomial(*mon)).items():
                if x < t:
                    col[(i, x, y)] = c
        columns.append(col)
    gens = [Germ({mons[j]: c for j, c in combo.items()}) for combo in kernel(columns)]
    gens += [Germ.monomial(a, N - a) for a in range(N + 1)]
    return LocalIdeal(gens).minimal()


# ---------------------------------------------------------------------------
# Toric fans and the general two-stage engine

def unimodular_matrix(Q) -> tuple:
    """A chart matrix ((p, b), (q, e)) with p e - b q = 1 and b, e >= 0."""
    p, q = Q
    if p == 0 or q == 0:
        raise ValueError("axis covectors have no exceptional chart")
    e = pow(p, -1, q) if q > 1 else 1
    b = (p * e - 1) // q
    return ((p, b), (q, e))


def stern_brocot_fan(covectors: Iterable) -> list:
    """Smallest regular fan containing the given interior rays, as the list
    of its interior rays ordered by slope q/p."""
    rays = set()
    for Q in covectors:
        p, q = Q
        left, right = (1, 0), (0, 1)
        while True:
            med = (left[0] + right[0], left[1] + right[1])
            rays.add(med)
            if med == (p, q):
                break
            if q * med[0] > med[1] * p:
                left = med
            else:
                right = med
    out = sorted(rays, key=lambda r: r[1] / r[0])
    chain = [(1, 0)] + out + [(0, 1)]
    for r, s in zip(chain, chain[1:]):
        assert r[0] * s[1] - r[1] * s[0] == 1, "fan is not regular"
    return [Covector(*r) for r in out]


def _rational_roots(radical: list) -> list:
    t = sympy.Symbol("t")
    try:
        coeffs = [sympy.Rational(str(c)) for c in radical]
    except (TypeError, ValueError, sympy.SympifyError):
        raise UnsupportedGermError("repeated face root outside the rational field") from None
    roots = []
    for fac, _ in sympy.factor_list(sum(c * t**i for i, c in enumerate(coeffs)), t)[1]:
        if sympy.degree(fac, t) != 1:
            raise UnsupportedGermError("repeated face root is not rational")
        a1, a0 = sympy.Poly(fac, t).all_coeffs()
        r = -a0 / a1
        roots.append(Fraction(int(r.p), int(r.q)))
    return roots


def field_roots(radical: list) -> list:
    """Roots of a square-free polynomial, all of which must lie in the field."""
    if upoly.degree(radical) <= 0:
        return []
    if upoly.degree(radical) == 1:
        return [-upoly._div(radical[0], radical[1])]
    return _rational_roots(radical)


def _face_roots(face: Face) -> list:
    return field_roots(upoly.repeated_part(face.polynomial()))


def _strict_transform(terms: dict, steps: Sequence, m: int) -> dict:
    for step in steps:
        terms = step.apply(terms)
    return {(a - m, b): c for (a, b), c in terms.items()}


def _straighten(terms: dict, max_shifts: int = 12):
    """Shift w <- w + c u^q across degenerate (1, q) faces."""
    shifts = []
    for _ in range(max_shifts + 1):
        nb = boundary(Germ(terms))
        bad = [f for f in nb.faces if not f.is_nondegenerate()]
        if not bad:
            return shifts, nb
        face = bad[0]
        if face.covector.p != 1:
            raise UnsupportedGermError("degenerate germ needs more than two toric stages")
        step = ShiftStep(_face_roots(face)[0], face.covector.q)
        shifts.append(step)
        terms = step.apply(terms)
    raise UnsupportedGermError("could not straighten the strict transform")


def toric_divisors(f: Germ) -> list:
    """Divisors of a toric resolution of f, with one extra toric stage above
    each repeated root of a degenerate face.  Returns (chart, data) pairs."""
    nb = boundary(f)
    charts = [
        ChartSequence((MonomialStep(unimodular_matrix(P)),), label=f"E{tuple(P)}")
        for P in stern_brocot_fan(nb.covectors)
    ]
    known = dict(f.terms)
    for face in nb.faces:
        if face.is_nondegenerate():
            continue
        for c in _face_roots(face):
            base = [MonomialStep(unimodular_matrix(face.covector)), ShiftStep(c, 0)]
            f1 = _strict_transform(known, base, face.value)
            shifts, nb1 = _straighten(f1)
            prefix = tuple(base + shifts)
            for P in stern_brocot_fan(nb1.covectors):
                charts.append(ChartSequence(
                    prefix + (MonomialStep(unimodular_matrix(P)),),
                    label=f"E{tuple(face.covector)}@{c}/E{tuple(P)}",
                ))
    return [(ch, divisor_data(ch, f)) for ch in charts]


def face_divisors(f: Germ) -> list:
    """Single-stage toric data: one divisor per face covector of f."""
    return [
        (ch, divisor_data(ch, f))
        for ch in (
            ChartSequence((MonomialStep(unimodular_matrix(face.covector)),), label=f"E{tuple(face.covector)}")
            for face in boundary(f).faces
        )
    ]


def multiplier_ideal(f: Germ, k: int, d: int) -> LocalIdeal:
    """J_{k,d} of f in the coordinates of f.

    Non-degenerate germs go through the monomial criterion after a
    convenience substitution, mapped back to the original coordinates;
    everything else goes through the chart engine.
    """
    _check_kd(k, d)
    nb = boundary(f)
    if all(face.is_nondegenerate() for face in nb.faces):
        try:
            g, jets = make_convenient(f)
        except UnsupportedGermError:
            return multiplier_ideal_charts(face_divisors(f), k, d)
        ideal = multiplier_ideal_monomial(g, k, d)
        if jets == CoordinateJets.identity(jets.truncation):
            return ideal
        order = 2 * DEFAULT_CAP
        inverse = invert_jets(jets.truncate(None) if jets.is_exact() else jets, order)
        return ideal.transform(inverse).minimal()
    return multiplier_ideal_charts(toric_divisors(f), k, d)


# ---------------------------------------------------------------------------
# The two degenerate types, with explicit charts

_T_MATRICES = {"T1": ((1, 2), (1, 3)), "T2": ((2, 1), (3, 2)), "T3": ((1, 0), (2, 1))}
_S_MATRICES = {"S1": ((1, 2), (1, 3)), "S2": ((2, 1), (3, 2)), "S3": ((1, 0), (2, 1))}
_R_MATRICES = {"R1": ((1, 1), (1, 2)), "R2": ((1, 1), (2, 3)), "R3": ((1, 0), (3, 1))}

# Multiplicity vectors on (T1, T2, T3, S1, S2, S3) for Sp1.
SP1_PRINTED = {
    "K": (1, 4, 2, 5, 12, 6),
    "f": (4, 12, 6, 14, 30, 15),
    "u": (1, 2, 1, 2, 4, 2),
    "v": (1, 3, 2, 3, 6, 3),
}


def sp_charts(index: int) -> list:
    """First stage along the (2, 3) face, then the translation v1 <- v1 + 1
    and the second fan (S for Sp1, R for Sp2)."""
    first = [ChartSequence((MonomialStep(m),), label=name) for name, m in _T_MATRICES.items()]
    second = _S_MATRICES if index == 1 else _R_MATRICES
    base = (MonomialStep(_T_MATRICES["T2"]), ShiftStep(1, 0))
    return first + [ChartSequence(base + (MonomialStep(m),), label=name) for name, m in second.items()]


def sp_divisors(index: int) -> list:
    """(chart, data) for Sp1 / Sp2, computed on the normal form; the Sp1
    data is checked against the tabulated multiplicity vectors."""
    f = SingularityType("Sp", (index,)).normal_form()
    out = [(ch, divisor_data(ch, f)) for ch in sp_charts(index)]
    if index == 1:
        got = {
            "K": tuple(dd.K for _, dd in out),
            "f": tuple(dd.f_mult for _, dd in out),
            "u": tuple(dd.u_mult for _, dd in out),
            "v": tuple(dd.v_mult for _, dd in out),
        }
        if got != SP1_PRINTED:
            raise VerificationError(f"Sp1 divisor data {got} disagrees with {SP1_PRINTED}")
    return out


# ---------------------------------------------------------------------------
# Reference tables

@dataclass(frozen=True)
class TableRow:
    type: str
    k: int
    generators: str
    rho: int
    item: Optional[int] = None

    @property
    def ideal(self) -> LocalIdeal:
        return LocalIdeal.parse(self.generators)


_TABLE_FILES = {"simple": "simple_table.csv", "nonsimple": "nonsimple_table.csv"}


@lru_cache(maxsize=None)
def load_table(which: str) -> tuple:
    if which not in _TABLE_FILES:
        raise ValueError(f"unknown table {which!r}")
    text = resources.files("sextic_alexander").joinpath("data", _TABLE_FILES[which]).read_text()
    rows = []
    for rec in csv.DictReader(io.StringIO(text)):
        item = rec.get("item")
        rows.append(TableRow(rec["type"], int(rec["k"]), rec["generators"], int(rec["rho"]), int(item) if item else None))
    return tuple(rows)


def reference_row(type_, k: int) -> TableRow:
    t = parse_type(type_)
    if t.is_simple and k in (2, 3):
        return TableRow(t.name, k, "<1>", 0)
    for row in load_table("simple" if t.is_simple else "nonsimple"):
        if row.type == t.name and row.k == k:
            return row
    raise KeyError(f"no tabulated ideal for {t.name} at k={k}")


def reference_ideal(type_, k: int) -> LocalIdeal:
    """The tabulated J_{P,k,6} in normal coordinates, as printed."""
    return reference_row(type_, k).ideal


def reference_rho(type_, k: int) -> int:
    return reference_row(type_, k).rho


def engine_ideal(type_, k: int, d: int = 6) -> LocalIdeal:
    """J_{P,k,d} computed from the normal form of a catalog type."""
    t = parse_type(type_)
    if t.family == "Sp":
        return multiplier_ideal_charts(sp_divisors(t.indices[0]), k, d)
    return multiplier_ideal(t.normal_form(), k, d)


def regenerate_table(which: str) -> list:
    """Engine values for every row key of the reference table."""
    out = []
    for row in load_table(which):
        ideal = engine_ideal(row.type, row.k)
        out.append(TableRow(row.type, row.k, str(ideal), ideal.colength, row.item))
    return out


def write_table(rows: Sequence[TableRow], stream, with_item: Optional[bool] = None) -> None:
    if with_item is None:
        with_item = any(r.item is not None for r in rows)
    w = csv.writer(stream, lineterminator="\n")
    w.writerow(["type", "k", "generators", "rho"] + (["item"] if with_item else []))
    for r in rows:
        w.writerow([r.type, r.k, r.generators, r.rho] + ([r.item] if with_item else []))
