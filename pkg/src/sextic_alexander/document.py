"""The JSON curve-description file.

    {"field": [1, 1, 1],                  # optional minimal polynomial
     "degree": 6,
     "polynomial": [{"exps": [6, 0, 0], "coeff": "1/1"}, ...],
     "num_components": 1,
     "singular_points": [{"point": ["0/1", "0/1", "1/1"], "type": "auto",
                          "local_coordinates": {"x": "u", "y": "v+u^2"},
                          "truncation": 12}]}

Scalars are "p/q" strings (plain integers are accepted on input); number
field elements are arrays of such strings, lowest power first.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional

from .catalog import parse_type
from .errors import ParseError, TruncationError
from .field import QQ, NumberField
from .poly import CoordinateJets, Germ, HomogeneousForm


@dataclass(frozen=True)
class PointRecord:
    point: tuple
    type: str = "auto"
    local_coordinates: Optional[tuple] = None   # (x, y) as germ strings in u, v
    truncation: Optional[int] = None

    def jets(self) -> Optional[CoordinateJets]:
        if self.local_coordinates is None:
            return None
        x, y = (Germ.parse(s, truncation=self.truncation) for s in self.local_coordinates)
        try:
            return CoordinateJets(x, y, self.truncation)
        except (ValueError, TruncationError) as exc:
            raise ParseError(f"local coordinates {self.local_coordinates}: {exc}") from None


@dataclass(frozen=True)
class CurveDocument:
    polynomial: HomogeneousForm
    num_components: int
    singular_points: tuple = ()
    field: object = QQ

    @property
    def degree(self) -> int:
        return self.polynomial.degree

    # -- parsing ------------------------------------------------------------

    @classmethod
    def from_dict(cls, obj) -> "CurveDocument":
        if not isinstance(obj, dict):
            raise ParseError("curve document must be a JSON object")
        fld = _parse_field(obj.get("field"))
        degree = _int(obj, "degree")
        raw = obj.get("polynomial")
        if not isinstance(raw, list) or not raw:
            raise ParseError("'polynomial' must be a nonempty list of terms")
        terms: dict = {}
        for t in raw:
            if not isinstance(t, dict) or "exps" not in t or "coeff" not in t:
                raise ParseError(f"bad term {t!r}; need 'exps' and 'coeff'")
            e = t["exps"]
            if not (isinstance(e, list) and len(e) == 3 and all(isinstance(x, int) and not isinstance(x, bool) and x >= 0 for x in e)):
                raise ParseError(f"bad exponent triple {e!r}")
            if sum(e) != degree:
                raise ParseError(f"exponents {e} do not sum to the degree {degree}")
            c = fld.parse(t["coeff"])
            terms[tuple(e)] = terms.get(tuple(e), 0) + c
        F = HomogeneousForm(degree, terms)
        if F.is_zero():
            raise ParseError("the polynomial is zero")
        r = _int(obj, "num_components")
        if r < 1:
            raise ParseError("'num_components' must be at least 1")
        pts = obj.get("singular_points", [])
        if not isinstance(pts, list):
            raise ParseError("'singular_points' must be a list")
        return cls(F, r, tuple(_parse_point(p, fld) for p in pts), fld)

    @classmethod
    def loads(cls, text: str) -> "CurveDocument":
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}") from None
        return cls.from_dict(obj)

    @classmethod
    def load(cls, path) -> "CurveDocument":
        try:
            with open(path, encoding="utf-8") as fh:
                return cls.loads(fh.read())
        except OSError as exc:
            raise ParseError(f"cannot read {path}: {exc}") from None

    # -- serialization --------------------------------------------------------

    def to_dict(self) -> dict:
        fld = self.field
        out: dict = {}
        if isinstance(fld, NumberField):
            out["field"] = list(fld.minpoly)
        out["degree"] = self.degree
        out["polynomial"] = [
            {"exps": list(e), "coeff": fld.serialize(c)}
            for e, c in sorted(self.polynomial.terms.items(), reverse=True)
        ]
        out["num_components"] = self.num_components
        pts = []
        for p in self.singular_points:
            rec = {"point": [fld.serialize(c) for c in p.point], "type": p.type}
            if p.local_coordinates is not None:
                rec["local_coordinates"] = {"x": p.local_coordinates[0], "y": p.local_coordinates[1]}
            if p.truncation is not None:
                rec["truncation"] = p.truncation
            pts.append(rec)
        out["singular_points"] = pts
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    @classmethod
    def from_curve(cls, curve) -> "CurveDocument":
        """Document for an analyzed CurveSpec, declaring the found types."""
        pts = tuple(PointRecord(tuple(P.point), P.type.name) for P in curve.points)
        return cls(curve.F, curve.r, pts, curve.field)


def _int(obj: dict, key: str) -> int:
    v = obj.get(key)
    if not isinstance(v, int) or isinstance(v, bool):
        raise ParseError(f"{key!r} must be an integer")
    return v


def _parse_field(raw):
    if raw is None:
        return QQ
    if not (isinstance(raw, list) and all(isinstance(c, int) and not isinstance(c, bool) for c in raw)):
        raise ParseError("'field' must be an integer coefficient array")
    if len(raw) == 2 and raw[-1] == 1:
        return QQ
    try:
        return NumberField(raw)
    except ValueError as exc:
        raise ParseError(f"bad field {raw}: {exc}") from None


def _parse_point(obj, fld) -> PointRecord:
    if not isinstance(obj, dict) or "point" not in obj:
        raise ParseError(f"bad singular point record {obj!r}")
    raw = obj["point"]
    if not isinstance(raw, list) or len(raw) != 3:
        raise ParseError(f"a point needs 3 homogeneous coordinates, got {raw!r}")
    pt = tuple(fld.parse(c) for c in raw)
    if all(c == 0 for c in pt):
        raise ParseError("the zero vector is not a projective point")
    kind = obj.get("type", "auto")
    if not isinstance(kind, str):
        raise ParseError(f"bad type {kind!r}")
    if kind != "auto":
        parse_type(kind)
    loc = obj.get("local_coordinates")
    if loc is not None:
        if not (isinstance(loc, dict) and isinstance(loc.get("x"), str) and isinstance(loc.get("y"), str)):
            raise ParseError("'local_coordinates' must be {x: str, y: str}")
        loc = (loc["x"], loc["y"])
    trunc = obj.get("truncation")
    if trunc is not None and (not isinstance(trunc, int) or isinstance(trunc, bool) or trunc < 1):
        raise ParseError("'truncation' must be a positive integer")
    rec = PointRecord(pt, kind, loc, trunc)
    rec.jets()   # surface germ syntax errors at parse time
    return rec
