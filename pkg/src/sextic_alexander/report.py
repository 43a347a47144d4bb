"""End-to-end analysis of a curve document and the resulting report."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .alexander import AlexanderPolynomial
from .document import CurveDocument
from .errors import UnsupportedGermError
from .field import QQ
from .ideals import multiplier_ideal
from .newton import boundary
from .poly import Germ
from .sigma import CurveSpec, sigma_matrix
from .singularity import analyze_point, normalize, plucker_check

POINTS_CAVEAT = (
    "singular points as declared: each listed point was verified to be singular, "
    "but the list itself is not checked for completeness"
)
INFINITY_NOTE = (
    "Delta(t) is computed projectively; it is the affine invariant when the line "
    "at infinity meets the curve transversally"
)


def _show(c) -> str:
    return str(c) if not isinstance(c, Fraction) else (str(c.numerator) if c.denominator == 1 else str(c))


def _keys_to_int(d: dict) -> dict:
    return {int(k): v for k, v in d.items()}


@dataclass
class PointReport:
    point: list                 # serialized homogeneous coordinates
    chart: int
    type: str
    milnor: int
    delta: int
    branches: int
    rho: dict                   # k -> rho(P, k)
    ideals: dict                # k -> generator string

    @classmethod
    def from_dict(cls, obj: dict) -> "PointReport":
        obj = dict(obj)
        obj["rho"] = _keys_to_int(obj["rho"])
        obj["ideals"] = _keys_to_int(obj["ideals"])
        return cls(**obj)


@dataclass
class Report:
    degree: int
    field: Optional[list]       # minimal polynomial, None for Q
    num_components: int
    ks: list
    points: list
    rho: dict                   # k -> rho(k)
    rank: dict                  # k -> rank sigma_k
    ell: dict                   # k -> l_k
    reduced_alexander: Optional[str] = None
    alexander: Optional[str] = None
    alexander_coefficients: Optional[list] = None
    warnings: list = field(default_factory=list)
    flags: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    def to_dict(self) -> dict:
        out = asdict(self)
        for key in ("rho", "rank", "ell"):
            out[key] = {str(k): v for k, v in out[key].items()}
        for p in out["points"]:
            p["rho"] = {str(k): v for k, v in p["rho"].items()}
            p["ideals"] = {str(k): v for k, v in p["ideals"].items()}
        return out

    @classmethod
    def from_dict(cls, obj: dict) -> "Report":
        obj = dict(obj)
        obj["points"] = [PointReport.from_dict(p) for p in obj["points"]]
        for key in ("rho", "rank", "ell"):
            obj[key] = _keys_to_int(obj[key])
        return cls(**obj)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "Report":
        return cls.from_dict(json.loads(text))

    def render_text(self) -> str:
        fld = "Q" if self.field is None else f"Q[a]/({_minpoly_str(self.field)})"
        lines = [f"Curve of degree {self.degree} over {fld}, r = {self.num_components}", ""]
        lines.append(f"Singular points ({len(self.points)}):")
        for i, p in enumerate(self.points, 1):
            coords = ":".join(_show_serialized(c) for c in p.point)
            lines.append(f"  P{i} = ({coords})  {p.type}  mu = {p.milnor}  delta = {p.delta}  branches = {p.branches}")
            if all(k in p.rho for k in (3, 4, 5)):
                lines.append(f"      rho_{{3,5}} = ({p.rho[5]}, {p.rho[4]}, {p.rho[3]})")
            for k in sorted(p.ideals):
                if p.rho[k]:
                    lines.append(f"      J_{k} = {p.ideals[k]}  (rho = {p.rho[k]})")
        lines.append("")
        lines.append("   k  rho(k)  rank  l_k")
        for k in self.ks:
            lines.append(f"  {k:>2}  {self.rho[k]:>6}  {self.rank[k]:>4}  {self.ell[k]:>3}")
        lines.append("")
        if self.alexander is not None:
            lines.append(f"Reduced Alexander polynomial: {self.reduced_alexander}")
            lines.append(f"Alexander polynomial:         {self.alexander}")
        else:
            lines.append("Alexander polynomial: not assembled (k-range does not cover 1..d-1)")
        for title, items in (("Warnings", self.warnings), ("Flags", self.flags), ("Notes", self.notes)):
            if items:
                lines.append("")
                lines.append(f"{title}:")
                lines.extend(f"  - {s}" for s in items)
        return "\n".join(lines) + "\n"


def _minpoly_str(coeffs) -> str:
    from .alexander import format_polynomial

    return format_polynomial(coeffs, "a")


def _show_serialized(c) -> str:
    if isinstance(c, list):
        parts = [f"{x}*a^{i}" if i else x for i, x in enumerate(c) if not x.startswith("0/")]
        return "(" + " + ".join(parts) + ")" if parts else "0"
    num, _, den = c.partition("/")
    return num if den == "1" else c


# ---------------------------------------------------------------------------
# Pipeline

def build_curve(doc: CurveDocument, ks: Sequence[int]) -> CurveSpec:
    """Verify and analyze every declared point of the document."""
    data = [
        analyze_point(doc.polynomial, rec.point, declared=rec.type, jets=rec.jets(), ks=tuple(ks), d=doc.degree)
        for rec in doc.singular_points
    ]
    return CurveSpec(doc.polynomial, doc.num_components, data, doc.field)


def analyze_document(doc: CurveDocument, ks: Optional[Sequence[int]] = None) -> Report:
    d = doc.degree
    ks = sorted(set(ks)) if ks is not None else list(range(1, d))
    if any(not (1 <= k < d) for k in ks):
        raise ValueError(f"k must lie in 1..{d - 1}")
    curve = build_curve(doc, ks)
    return report_for(curve, ks)


def report_for(curve: CurveSpec, ks: Sequence[int]) -> Report:
    d = curve.degree
    fld = curve.field
    points = [
        PointReport(
            [fld.serialize(c) for c in P.point],
            P.chart,
            P.type.name,
            P.milnor,
            P.delta,
            P.type.branches,
            {k: P.rho(k) for k in ks},
            {k: str(P.ideals[k]) for k in ks},
        )
        for P in curve.points
    ]
    rho, rank, ell = {}, {}, {}
    for k in ks:
        rho[k] = sum(p.rho[k] for p in points)
        rank[k] = sigma_matrix(curve, k).rank
        ell[k] = rho[k] - rank[k]
    rep = Report(
        d,
        None if fld is QQ else list(fld.minpoly),
        curve.r,
        list(ks),
        points,
        rho,
        rank,
        ell,
        warnings=[POINTS_CAVEAT],
        notes=[INFINITY_NOTE],
    )
    if all(k in ell for k in range(1, d)):
        full = AlexanderPolynomial(d, tuple(ell[k] for k in range(1, d)), curve.r)
        rep.reduced_alexander = full.reduced().render()
        rep.alexander = full.render()
        if full.is_rational():
            rep.alexander_coefficients = full.coefficients()
        rep.warnings.extend(_consistency_warnings(rep, full, curve))
    if d == 6 and rho.get(5, 0) >= 7:
        rep.flags.append(
            f"rho(5) = {rho[5]} >= 7: expected to be of torus type by the conjectural "
            "characterization; not verified"
        )
    return rep


def _consistency_warnings(rep: Report, full: AlexanderPolynomial, curve: CurveSpec) -> list:
    if curve.r != 1 or full.d != 6:
        return []
    out = []
    odd = [k for k in (2, 3, 4) if full.ells[k - 1]]
    if odd:
        out.append(
            "declared irreducible (r = 1) but l_k > 0 for k = "
            + ", ".join(map(str, odd))
            + "; such factors only occur for reducible sextics"
        )
    alpha = full.ells[0] + full.ells[4]
    if alpha > 3:
        out.append(f"declared irreducible (r = 1) but (t^2 - t + 1) has exponent {alpha} > 3")
    types = [p.type for p in rep.points]
    if types and not plucker_check(types):
        out.append("the delta invariants of the rho(4)-essential points exceed 10, impossible for an irreducible sextic")
    return out


# ---------------------------------------------------------------------------
# Single germs

@dataclass
class GermReport:
    germ: str
    type: str
    milnor: int
    vertices: list
    covectors: list
    d: int
    ideals: dict                # k -> generator string
    rho: dict
    coordinates: str            # "input" or "normal"

    def render_text(self) -> str:
        lines = [
            f"germ: {self.germ}",
            f"type: {self.type}  mu = {self.milnor}",
            "Newton boundary vertices: " + " ".join(f"({a},{b})" for a, b in self.vertices),
            "face covectors: " + " ".join(f"({p},{q})" for p, q in self.covectors),
        ]
        if self.coordinates == "normal":
            lines.append("ideals are given in normal-form coordinates")
        for k in sorted(self.ideals):
            lines.append(f"J_{{{k},{self.d}}} = {self.ideals[k]}  rho = {self.rho[k]}")
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        out = asdict(self)
        out["ideals"] = {str(k): v for k, v in out["ideals"].items()}
        out["rho"] = {str(k): v for k, v in out["rho"].items()}
        return out


def analyze_germ(text: str, ks: Sequence[int] = (5,), d: int = 6) -> GermReport:
    """Type, Newton data and J_{k,d} for a germ given as a string in u, v.

    Ideals are computed in the input coordinates when the engine can work
    there directly, else in the coordinates of the recognized normal form.
    """
    f = Germ.parse(text)
    n = normalize(f)
    nb = boundary(f)
    ideals, where = {}, "input"
    try:
        for k in ks:
            ideals[k] = multiplier_ideal(f, k, d)
    except UnsupportedGermError:
        if n.type.is_unknown:
            raise
        where = "normal"
        ideals = {k: multiplier_ideal(n.germ, k, d) for k in ks}
    return GermReport(
        str(f),
        n.type.name,
        n.milnor,
        [list(v) for v in nb.vertices],
        [list(c) for c in nb.covectors],
        d,
        {k: str(I) for k, I in ideals.items()},
        {k: I.colength for k, I in ideals.items()},
        where,
    )
