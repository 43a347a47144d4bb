"""Classification of plane curve germs into the sextic catalog, normal
coordinates, and per-point local data."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Optional, Sequence

from . import upoly
from .algebra import milnor_number
from .catalog import SingularityType, delta_invariant, parse_type
from .errors import TruncationError, UnsupportedGermError, VerificationError
from .ideals import _face_roots, engine_ideal, field_roots, multiplier_ideal
from .newton import boundary, make_convenient
from .poly import CoordinateJets, Germ, HomogeneousForm, compose, dehomogenize_at, normalize_point, substitute

__all__ = [
    "LocalData",
    "Normalization",
    "analyze_point",
    "classify",
    "delta_invariant",
    "normal_coordinates",
    "normalize",
    "plucker_check",
    "plucker_sum",
]


def _unknown(reason: str) -> SingularityType:
    return SingularityType("Unknown", (), reason)


# ---------------------------------------------------------------------------
# Tangent cone

@dataclass(frozen=True)
class TangentCone:
    degree: int
    repeated: tuple      # ((alpha, beta), multiplicity) for alpha*u + beta*v, mult >= 2
    other: Optional[tuple] = None   # the remaining line when the cofactor is linear
    split: bool = True   # all repeated lines found over the field

    @property
    def max_multiplicity(self) -> int:
        return max((m for _, m in self.repeated), default=1)


def _divide_line(phi: list, r) -> list:
    q, rem = upoly.divmod_(phi, [-r, 1])
    assert upoly.degree(rem) < 0 or all(c == 0 for c in rem)
    return q


def _root_multiplicity(phi: list, r) -> tuple:
    mult = 0
    while upoly.degree(phi) >= 1 and upoly.evaluate(phi, r) == 0:
        phi = _divide_line(phi, r)
        mult += 1
    return mult, phi


def tangent_cone(f: Germ) -> TangentCone:
    """Lines of the lowest form sum c_j u^(m-j) v^j, found over the field."""
    form = f.lowest_form()
    m = f.order()
    phi = upoly.trim([form.get((m - j, j), 0) for j in range(m + 1)])
    repeated = []
    e = m - upoly.degree(phi)
    rest_u = e
    if e >= 2:
        repeated.append(((1, 0), e))
        rest_u = 0
    radical = upoly.repeated_part(phi)
    split = True
    if upoly.degree(radical) >= 1:
        try:
            roots = field_roots(radical)
        except UnsupportedGermError:
            roots, split = [], False
        for r in roots:
            mult, phi = _root_multiplicity(phi, r)
            repeated.append(((-r, 1), mult))
    other = None
    rest_deg = upoly.degree(phi) + rest_u
    if split and rest_deg == 1:
        # phi[0] + phi[1] t has root t = r, the line v - r u
        other = (1, 0) if rest_u == 1 else (upoly._div(phi[0], phi[1]), 1)
    repeated.sort(key=lambda lm: -lm[1])
    return TangentCone(m, tuple(repeated), other, split)


def _alignment(cone: TangentCone) -> CoordinateJets:
    """Linear jets making the most repeated line v = 0 and, when there is
    one, the other distinguished line u = 0."""
    if not cone.repeated:
        return CoordinateJets.identity()
    l1 = cone.repeated[0][0]
    if len(cone.repeated) > 1:
        l2 = cone.repeated[1][0]
    elif cone.other is not None:
        l2 = cone.other
    else:
        l2 = (0, 1) if l1[1] == 0 else (1, 0)
    # new (u', v') = (l2, l1) in old (u, v); the jets express old in new
    a, b = l2
    c, d = l1
    det = a * d - b * c
    div = upoly._div
    return CoordinateJets.linear(div(d, det), div(-b, det), div(-c, det), div(a, det))


# ---------------------------------------------------------------------------
# Normalization

@dataclass
class Normalization:
    type: SingularityType
    jets: CoordinateJets     # original coordinates in terms of (u, v)
    germ: Germ               # f o jets, truncated at the working order
    milnor: int
    cone: TangentCone


def _shift_step(face) -> CoordinateJets:
    p, q = face.covector
    c = _face_roots(face)[0]
    u, v = Germ.u(), Germ.v()
    if p == 1:
        return CoordinateJets(u, v + Germ.monomial(q, 0, c))
    return CoordinateJets(u + Germ.monomial(0, p, upoly._div(1, c)), v)


def _straighten(g: Germ, jets: CoordinateJets, W: int):
    """Newton shifts along degenerate faces with p = 1 or q = 1."""
    for _ in range(2 * W):
        nb = boundary(g)
        bad = [f for f in nb.faces if not f.is_nondegenerate() and 1 in (f.covector.p, f.covector.q)]
        if not bad:
            return g, jets
        step = _shift_step(bad[0])
        g = compose(g, step.x, step.y, W)
        jets = jets.then(step)
    raise UnsupportedGermError("Newton shifts did not terminate")


_SWAP = CoordinateJets(Germ.v(), Germ.u())


def _swap(g: Germ, jets: CoordinateJets):
    return g.swap(), jets.then(_SWAP)


def _nonsimple(g: Germ, jets: CoordinateJets, mu: int):
    nb = boundary(g)
    degenerate = [f for f in nb.faces if not f.is_nondegenerate()]
    if degenerate:
        face = degenerate[0]
        if len(nb.faces) == 1 and tuple(face.covector) in ((2, 3), (3, 2)) and face.length == 2:
            if tuple(face.covector) == (3, 2):
                g, jets = _swap(g, jets)
                face = boundary(g).faces[0]
            r = _face_roots(face)[0]
            # (v^2 - r u^3)^2 -> r^4 (v^2 - u^3)^2 under u -> r u, v -> r^2 v
            scale = CoordinateJets.linear(r, 0, 0, r * r)
            g = compose(g, scale.x, scale.y, g.truncation)
            jets = jets.then(scale)
            idx = {18: 1, 21: 2}.get(mu)
            if idx is None:
                return _unknown(f"degenerate (2,3) face with mu={mu}"), g, jets
            return SingularityType("Sp", (idx,)), g, jets
        return _unknown(f"degenerate face {face.covector} not reducible by Newton shifts"), g, jets
    shape_g = g
    if not nb.is_convenient():
        try:
            shape_g, _ = make_convenient(g)
        except UnsupportedGermError:
            return _unknown("non-convenient boundary"), g, jets
    verts = list(boundary(shape_g).vertices)
    if verts[0][1] > verts[-1][0]:
        verts = [(b, a) for a, b in reversed(verts)]
        g, jets = _swap(g, jets)
    t = None
    if len(verts) == 2:
        t = SingularityType("B", (verts[0][1], verts[1][0]))
    elif len(verts) == 3 and verts[1] == (2, 2):
        t = SingularityType("C", (verts[0][1], verts[2][0]))
    elif verts == [(0, 4), (3, 2), (7, 0)]:
        t = SingularityType("D", (4, 7))
    if t is None:
        return _unknown(f"Newton boundary vertices {verts} outside the catalog shapes"), g, jets
    if t.milnor != mu:
        return _unknown(f"{t} shape but mu={mu}"), g, jets
    return t, g, jets


def working_order(mu: int) -> int:
    return max(2 * mu + 6, 16)


def normalize(f: Germ) -> Normalization:
    """Classify f and find coordinates adapted to its Newton boundary."""
    if f.coeff(0, 0) != 0:
        raise VerificationError("germ does not vanish at the origin")
    m = f.order()
    if m is None:
        raise VerificationError("the zero germ is not a reduced curve")
    if m < 2:
        raise VerificationError("the point is a smooth point of the curve")
    mu = milnor_number(f)
    W = working_order(mu)
    if f.truncation is not None:
        W = min(W, f.truncation)
    cone = tangent_cone(f)
    if not cone.split:
        g = f.truncate(W)
        return Normalization(_unknown("repeated tangent lines are not defined over the field"),
                             CoordinateJets.identity(), g, mu, cone)
    jets = _alignment(cone)
    g = compose(f, jets.x, jets.y, W)
    try:
        g, jets = _straighten(g, jets, W)
    except (UnsupportedGermError, TruncationError) as exc:
        return Normalization(_unknown(str(exc)), jets, g, mu, cone)
    if m == 2:
        t = SingularityType("A", (mu,))
    elif m == 3 and cone.max_multiplicity == 1:
        t = SingularityType("D", (4,)) if mu == 4 else _unknown(f"ordinary triple point with mu={mu}")
    elif m == 3 and cone.max_multiplicity == 2:
        t = SingularityType("D", (mu,))
    elif m == 3 and mu in (6, 7, 8):
        t = SingularityType("E", (mu,))
    else:
        t, g, jets = _nonsimple(g, jets, mu)
    return Normalization(t, jets, g, mu, cone)


def classify(f: Germ) -> SingularityType:
    return normalize(f).type


def normal_coordinates(f: Germ, type_=None) -> CoordinateJets:
    """Jets (x(u,v), y(u,v)) adapted to the type of f."""
    n = normalize(f)
    if type_ is not None:
        want = parse_type(type_)
        if n.type.is_unknown:
            raise UnsupportedGermError(
                f"automatic normalization failed ({n.type.diagnostics}); supply local coordinates"
            )
        if want != n.type:
            raise VerificationError(f"declared type {want} but the germ is {n.type}")
    return n.jets


# ---------------------------------------------------------------------------
# Global diagnostics

@lru_cache(maxsize=None)
def _rho4(name: str) -> int:
    return engine_ideal(name, 4).colength


def plucker_sum(types: Iterable) -> int:
    """Sum of delta over the points with rho(P, 4) > 0."""
    total = 0
    for t in types:
        t = parse_type(t)
        if _rho4(t.name) > 0:
            total += delta_invariant(t)
    return total


def plucker_check(types: Iterable, bound: int = 10) -> bool:
    """The Pluecker inequality for an irreducible sextic."""
    return plucker_sum(types) <= bound


# ---------------------------------------------------------------------------
# Per-point data

@dataclass
class LocalData:
    point: tuple
    chart: int
    germ: Germ                 # affine germ of the curve at the point
    jets: CoordinateJets       # chart coordinates in terms of (u, v)
    normal_germ: Germ          # germ o jets
    type: SingularityType
    milnor: int
    ideals: dict = field(default_factory=dict)
    d: int = 6

    def rho(self, k: int) -> int:
        if k not in self.ideals:
            raise KeyError(f"no ideal computed at k={k}")
        return self.ideals[k].colength

    @property
    def delta(self) -> int:
        return delta_invariant(self.type)

    @property
    def tangent_line(self) -> tuple:
        """Coefficients (a, b) with v = a x + b y to first order."""
        (p, q), (r, s) = self.jets.linear_matrix()
        det = p * s - q * r
        return (upoly._div(-r, det), upoly._div(p, det))


def analyze_point(
    F: HomogeneousForm,
    point: Sequence,
    declared: Optional[str] = None,
    jets: Optional[CoordinateJets] = None,
    ks: Iterable[int] = (1, 2, 3, 4, 5),
    d: int = 6,
    chart: Optional[int] = None,
) -> LocalData:
    """Verify, classify and compute J_{P,k,d} at one singular point."""
    p, chart = normalize_point(point, chart)
    f = dehomogenize_at(F, p, chart)
    if f.coeff(0, 0) != 0:
        raise VerificationError(f"point {p} does not lie on the curve")
    if f.coeff(1, 0) != 0 or f.coeff(0, 1) != 0:
        raise VerificationError(f"point {p} is a smooth point of the curve")
    base = f
    user = jets if jets is not None else CoordinateJets.identity()
    if jets is not None:
        base = substitute(f, jets)
    n = normalize(base)
    want = None if declared in (None, "", "auto") else parse_type(declared)
    if n.type.is_unknown:
        if want is not None and want.milnor != n.milnor:
            raise VerificationError(f"declared {want} (mu={want.milnor}) but mu={n.milnor} at {p}")
        raise UnsupportedGermError(
            f"singularity at {p} is outside the catalog ({n.type.diagnostics}); "
            "supply local_coordinates or check the curve"
        )
    if want is not None and want != n.type:
        raise VerificationError(f"declared {want} but found {n.type} at {p}")
    if not n.type.in_catalog:
        raise UnsupportedGermError(f"{n.type} at {p} is not in the catalog of sextic singularities")
    ideals = {k: multiplier_ideal(n.germ, k, d) for k in ks}
    return LocalData(p, chart, f, user.then(n.jets), n.germ, n.type, n.milnor, ideals, d)
