"""Newton boundary of a bivariate germ: faces, covectors, weights."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Optional

from . import upoly
from .errors import TruncationError, UnsupportedGermError
from .poly import CoordinateJets, Germ, compose


@dataclass(frozen=True, order=True)
class Covector:
    """Primitive weight (p, q) acting by (a, b) -> p*a + q*b."""

    p: int
    q: int

    def __post_init__(self):
        if self.p < 0 or self.q < 0 or (self.p, self.q) == (0, 0):
            raise ValueError(f"invalid covector {(self.p, self.q)}")
        if gcd(self.p, self.q) != 1:
            raise ValueError(f"covector {(self.p, self.q)} is not primitive")

    @property
    def size(self) -> int:
        """|Q| = p + q."""
        return self.p + self.q

    def __call__(self, a: int, b: int) -> int:
        return self.p * a + self.q * b

    def __iter__(self):
        return iter((self.p, self.q))

    def __repr__(self):
        return f"({self.p},{self.q})"


@dataclass(frozen=True)
class Face:
    covector: Covector
    start: tuple          # endpoint with smaller u-exponent
    end: tuple            # endpoint with smaller v-exponent
    value: int            # m(f, Q)
    function: Germ        # terms of f on the face

    @property
    def length(self) -> int:
        """Lattice length of the segment."""
        return (self.end[0] - self.start[0]) // self.covector.q

    def polynomial(self) -> list:
        """phi(t) with face function = u^a_end v^b_end phi(v^p / u^q)."""
        p, q = self.covector
        a_e, b_e = self.end
        return [
            self.function.terms.get((a_e - j * q, b_e + j * p), 0)
            for j in range(self.length + 1)
        ]

    def repeated_roots(self) -> list:
        """Monic radical of the repeated factors of phi."""
        return upoly.repeated_part(self.polynomial())

    def is_nondegenerate(self) -> bool:
        return upoly.degree(self.repeated_roots()) == 0


@dataclass(frozen=True)
class NewtonBoundary:
    vertices: tuple
    faces: tuple = field(default_factory=tuple)

    @property
    def covectors(self) -> list:
        return [f.covector for f in self.faces]

    def is_convenient(self) -> bool:
        return self.vertices[0][0] == 0 and self.vertices[-1][1] == 0


def _cross(o, a, b) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def boundary(f: Germ) -> NewtonBoundary:
    """Compact faces of the lower-left hull of the support of f."""
    if f.is_zero():
        raise ValueError("Newton boundary of the zero germ")
    if f.terms.get((0, 0), 0) != 0:
        raise ValueError("germ does not vanish at the origin")
    best: dict = {}
    for a, b in f.terms:
        if b not in best or a < best[b]:
            best[b] = a
    # keep the minimal staircase, ordered by increasing a
    pts = sorted((a, b) for b, a in best.items())
    stair = []
    for a, b in pts:
        if stair and stair[-1][1] <= b:
            continue
        stair.append((a, b))
    hull: list = []
    for pt in stair:
        while len(hull) >= 2 and _cross(hull[-2], hull[-1], pt) <= 0:
            hull.pop()
        hull.append(pt)
    faces = []
    for s, e in zip(hull, hull[1:]):
        da, db = e[0] - s[0], s[1] - e[1]
        g = gcd(da, db)
        Q = Covector(db // g, da // g)
        m = Q(*s)
        fn = Germ({mon: c for mon, c in f.terms.items() if Q(*mon) == m})
        faces.append(Face(Q, s, e, m, fn))
    nb = NewtonBoundary(tuple(hull), tuple(faces))
    if f.truncation is not None:
        _certify(nb, f.truncation)
    return nb


def _certify(nb: NewtonBoundary, trunc: int) -> None:
    for face in nb.faces:
        if min(face.covector.p, face.covector.q) * trunc <= face.value:
            raise TruncationError(f"face {face.covector} not determined below degree {trunc}")
    if not nb.faces and sum(nb.vertices[0]) >= trunc:
        raise TruncationError("Newton boundary not determined by the known jet")


def weight_value(g: Germ, Q) -> int:
    """m(g, Q): minimum of p*a + q*b over the support of g."""
    if g.is_zero():
        raise ValueError("weight of the zero germ is infinite")
    p, q = Q
    m = min(p * a + q * b for a, b in g.terms)
    if g.truncation is not None and min(p, q) * g.truncation <= m:
        raise TruncationError(f"weight along {tuple(Q)} not determined by the known jet")
    return m


def is_nondegenerate(f: Germ) -> bool:
    return all(face.is_nondegenerate() for face in boundary(f).faces)


def is_convenient(f: Germ) -> bool:
    return boundary(f).is_convenient()


CONVENIENCE_CONSTANTS = (1, -1, 2, -2, 3, -3)


def convenience_family():
    """The fixed search family of substitutions, as (label, jets) pairs."""
    u, v = Germ.u(), Germ.v()
    for c in CONVENIENCE_CONSTANTS:
        yield f"u -> u + {c}*v", CoordinateJets(u + v * c, v)
    for c in CONVENIENCE_CONSTANTS:
        yield f"v -> v + {c}*u", CoordinateJets(u, v + u * c)
    for c in CONVENIENCE_CONSTANTS:
        yield f"v -> v + {c}*u^2", CoordinateJets(u, v + u * u * c)


def make_convenient(f: Germ):
    """Return (g, jets) with g = f o jets convenient and non-degenerate.

    Already convenient, non-degenerate germs come back unchanged with
    identity jets.
    """
    nb = boundary(f)
    if nb.is_convenient() and all(face.is_nondegenerate() for face in nb.faces):
        return f, CoordinateJets.identity(f.truncation)
    for _, jets in convenience_family():
        g = compose(f, jets.x, jets.y, f.truncation)
        try:
            nb = boundary(g)
        except TruncationError:
            continue
        if nb.is_convenient() and all(face.is_nondegenerate() for face in nb.faces):
            return g, jets
    raise UnsupportedGermError(
        "no substitution from the convenience family gives a convenient "
        "non-degenerate germ; supply local coordinates"
    )
