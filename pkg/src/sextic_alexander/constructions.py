"""Explicit fixture curves with rational (or Q(omega)) singular points.

Every construction verifies that its points are singular and classifies
them before returning, so "generic" choices are checked rather than assumed.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

import sympy

from .algebra import intersection_multiplicity
from .catalog import SingularityType, parse_type
from .errors import UnsupportedGermError, VerificationError
from .field import QQ, NFElement, NumberField
from .poly import HomogeneousForm, dehomogenize_at
from .sigma import CurveSpec
from .singularity import analyze_point

X, Y, Z = (HomogeneousForm.variable(i) for i in range(3))
_SX, _SY, _SZ = sympy.symbols("X Y Z")

SIX_LINE_SLOPES = (0, 1, -1, 2, -2, 3)
CONIC_PARAMETERS = (0, 1, -1, 2, -2, 3)
EISENSTEIN = NumberField([1, 1, 1], name="w")


# ---------------------------------------------------------------------------
# sympy bridge

class _Bridge:
    """Converts between our scalars and a sympy domain for one field."""

    def __init__(self, field=QQ):
        self.field = field
        if isinstance(field, NumberField):
            x = sympy.Symbol("x")
            mp = sympy.Poly(list(reversed(field.minpoly)), x)
            self.alpha = sympy.CRootOf(mp, 0)
            self.domain = sympy.QQ.algebraic_field(self.alpha)
        else:
            self.alpha = None
            self.domain = sympy.QQ

    def to_sympy(self, c):
        if isinstance(c, NFElement):
            return sum(sympy.Rational(q.numerator, q.denominator) * self.alpha ** i for i, q in enumerate(c.coeffs))
        c = Fraction(c)
        return sympy.Rational(c.numerator, c.denominator)

    def from_domain(self, c):
        """A sympy number of the field as one of our scalars."""
        if self.alpha is None:
            q = sympy.Rational(c)
            return Fraction(int(q.p), int(q.q))
        c = self.domain.from_sympy(c)
        rep = [Fraction(int(q.numerator), int(q.denominator)) for q in c.to_list()]
        return self.field.from_coeffs(list(reversed(rep)))

    def form(self, F: HomogeneousForm):
        return sum(self.to_sympy(c) * _SX ** i * _SY ** j * _SZ ** l for (i, j, l), c in F.terms.items())

    def roots(self, expr, var) -> list:
        """Distinct roots of a univariate expression lying in the field."""
        if expr == 0:
            raise VerificationError("expected a nonzero univariate polynomial")
        p = sympy.Poly(expr, var, domain=self.domain)
        out = []
        for fac, _ in p.factor_list()[1]:
            if fac.degree() == 1:
                a, b = fac.all_coeffs()
                out.append(self.from_domain(-b / a))
        return out


def _from_sympy_form(expr, degree: int) -> HomogeneousForm:
    p = sympy.Poly(sympy.expand(expr), _SX, _SY, _SZ, domain=sympy.QQ)
    terms = {e: Fraction(int(c.p), int(c.q)) for e, c in p.terms()}
    return HomogeneousForm(degree, terms)


def common_zeros(F: HomogeneousForm, G: HomogeneousForm, field=QQ) -> list:
    """Projective common zeros of two forms with coordinates in ``field``.

    Raises VerificationError when F and G share a component.
    """
    br = _Bridge(field)
    f, g = br.form(F), br.form(G)
    gens = (_SX, _SY, _SZ)
    common = sympy.gcd(sympy.Poly(f, *gens, domain=br.domain), sympy.Poly(g, *gens, domain=br.domain))
    if common.total_degree() > 0:
        raise VerificationError("the two curves share a component")
    pts = []
    fa, ga = f.subs(_SZ, 1), g.subs(_SZ, 1)
    res = sympy.resultant(fa, ga, _SY)
    for x0 in br.roots(res, _SX):
        sx = br.to_sympy(x0)
        h = sympy.gcd(
            sympy.Poly(fa.subs(_SX, sx), _SY, domain=br.domain),
            sympy.Poly(ga.subs(_SX, sx), _SY, domain=br.domain),
        )
        if h.degree() > 0:
            pts.extend((x0, y0, 1) for y0 in br.roots(h.as_expr(), _SY))
    # the line Z = 0
    fi, gi = f.subs({_SZ: 0, _SY: 1}), g.subs({_SZ: 0, _SY: 1})
    h = sympy.gcd(sympy.Poly(fi, _SX, domain=br.domain), sympy.Poly(gi, _SX, domain=br.domain))
    if not h.is_zero and h.degree() > 0:
        pts.extend((x0, 1, 0) for x0 in br.roots(h.as_expr(), _SX))
    if F.evaluate((1, 0, 0)) == 0 and G.evaluate((1, 0, 0)) == 0:
        pts.append((1, 0, 0))
    return pts


def hessian(F: HomogeneousForm) -> HomogeneousForm:
    d = [[F.partial(i).partial(j) for j in range(3)] for i in range(3)]
    return (
        d[0][0] * (d[1][1] * d[2][2] - d[1][2] * d[2][1])
        - d[0][1] * (d[1][0] * d[2][2] - d[1][2] * d[2][0])
        + d[0][2] * (d[1][0] * d[2][1] - d[1][1] * d[2][0])
    )


def dual_of_cubic(C: HomogeneousForm) -> HomogeneousForm:
    """The dual curve of a smooth plane cubic, by elimination.

    The line aX + bY + cZ = 0 is tangent exactly when the binary cubic
    obtained by restricting C to it has a repeated root, so the dual is the
    discriminant with the spurious power of c removed.
    """
    if C.degree != 3:
        raise ValueError("expected a cubic form")
    a, b, c, s = sympy.symbols("a b c s")
    br = _Bridge(QQ)
    g = sympy.expand(c ** 3 * br.form(C).subs({_SX: s, _SY: 1, _SZ: -(a * s + b) / c}))
    disc = sympy.factor_list(sympy.discriminant(g, s))
    keep = [fac ** e for fac, e in disc[1] if sympy.Poly(fac, a, b, c).total_degree() > 1]
    if not keep:
        raise VerificationError("elimination degenerated; the cubic is not smooth")
    D = sympy.Poly(sympy.Mul(*keep), a, b, c)
    if D.total_degree() != 6 or not D.is_homogeneous:
        raise VerificationError("elimination degenerated; the cubic is not smooth")
    D = D.primitive()[1]
    return _from_sympy_form(D.as_expr().subs({a: _SX, b: _SY, c: _SZ}, simultaneous=True), 6)


# ---------------------------------------------------------------------------
# Curve assembly

def _spec(F: HomogeneousForm, r: int, points: Sequence, expect, field=QQ) -> CurveSpec:
    """Analyze each point, checking its type against ``expect`` (a type,
    a per-point list of types, or None)."""
    data = []
    for i, p in enumerate(points):
        want = expect[i] if isinstance(expect, (list, tuple)) else expect
        P = analyze_point(F, p)
        if want is not None and P.type != want:
            raise VerificationError(f"expected {want} at {P.point}, found {P.type}")
        data.append(P)
    return CurveSpec(F, r, data, field)


def six_lines(slopes: Sequence = SIX_LINE_SLOPES) -> CurveSpec:
    """Six concurrent lines Y = s X through (0:0:1): one B6,6 point, r = 6."""
    s = [Fraction(x) for x in slopes]
    if len(s) != 6:
        raise ValueError("six slopes are required")
    if len(set(s)) != 6:
        raise ValueError("slopes must be pairwise distinct")
    F = HomogeneousForm(0, {(0, 0, 0): 1})
    for x in s:
        F = F * (Y - X * x)
    return _spec(F, 6, [(0, 0, 1)], parse_type("B6,6"))


def torus_from_f2_f3(
    f2: HomogeneousForm,
    f3: HomogeneousForm,
    r: int = 1,
    points: Optional[Sequence] = None,
    field=QQ,
) -> CurveSpec:
    """F = f2^3 + f3^2 with singular points at f2 = f3 = 0.

    Where f2 and f3 are both smooth and meet with multiplicity i, the point
    must be of type A_{3i-1}; this is checked.
    """
    if f2.degree != 2 or f3.degree != 3:
        raise ValueError("f2 must be a conic and f3 a cubic")
    F = f2 ** 3 + f3 ** 2
    if points is None:
        points = common_zeros(f2, f3, field)
    expect = []
    for p in points:
        g2, g3 = dehomogenize_at(f2, p), dehomogenize_at(f3, p)
        smooth = all(g.coeff(0, 0) == 0 and (g.coeff(1, 0) != 0 or g.coeff(0, 1) != 0) for g in (g2, g3))
        if smooth:
            i = intersection_multiplicity(g2, g3)
            expect.append(SingularityType("A", (3 * i - 1,)))
        else:
            expect.append(None)
    return _spec(F, r, points, expect, field)


def _chord(s: int, t: int) -> HomogeneousForm:
    """The line through (1:s:s^2) and (1:t:t^2) on the conic XZ = Y^2."""
    return X * (s * t) - Y * (s + t) + Z


def torus_six_cusps(params: Sequence = CONIC_PARAMETERS) -> CurveSpec:
    """A torus sextic with six cusps at rational points of the conic XZ = Y^2.

    f3 = L1 L2 L3 + f2 * (X + Y + Z), where the L_i are chords through
    pairs of the six points, so f3 meets the conic exactly there.
    """
    t = [int(x) for x in params]
    if len(set(t)) != 6:
        raise ValueError("six distinct conic parameters are required")
    f2 = X * Z - Y * Y
    f3 = _chord(t[0], t[1]) * _chord(t[2], t[3]) * _chord(t[4], t[5]) + f2 * (X + Y + Z)
    points = [(1, s, s * s) for s in t]
    return torus_from_f2_f3(f2, f3, 1, points)


def linear_torus_3A5(
    line: Optional[HomogeneousForm] = None,
    f3: Optional[HomogeneousForm] = None,
) -> CurveSpec:
    """F = f3^2 + line^6 with three A5 points on the line; r = 2 since F
    splits as (f3 + i line^3)(f3 - i line^3)."""
    if line is None:
        line = Y
    if f3 is None:
        f3 = X * (X - Z) * (X + Z) + Y * (X * X + Y * Y * 2 - Z * Z * 3 + X * Y + Y * Z)
    if line.degree != 1 or f3.degree != 3:
        raise ValueError("need a line and a cubic")
    points = common_zeros(line, f3)
    if len(points) != 3:
        raise VerificationError(f"the line meets the cubic in {len(points)} rational points, not 3")
    for p in points:
        if intersection_multiplicity(dehomogenize_at(line, p), dehomogenize_at(f3, p)) != 1:
            raise VerificationError(f"the cubic is tangent to the line at {p}")
    return _spec(line ** 6 + f3 ** 2, 2, points, parse_type("A5"))


def nine_cuspidal(cubic: Optional[HomogeneousForm] = None, field: NumberField = EISENSTEIN) -> CurveSpec:
    """The dual of a smooth cubic: nine cusps at the duals of the flexes.

    The flexes (cubic meets Hessian) must be defined over ``field``; for the
    Fermat cubic that is Q(w), w^2 + w + 1 = 0.
    """
    if cubic is None:
        cubic = X ** 3 + Y ** 3 + Z ** 3
    D = dual_of_cubic(cubic)
    flexes = common_zeros(cubic, hessian(cubic), field)
    if len(flexes) != 9:
        raise UnsupportedGermError(f"only {len(flexes)} of the 9 flexes are defined over {field}")
    grads = [tuple(cubic.partial(i).evaluate(p) for i in range(3)) for p in flexes]
    return _spec(D, 1, grads, parse_type("A2"), field)


CONSTRUCTIONS = {
    "six-lines": six_lines,
    "torus-6-cusps": torus_six_cusps,
    "linear-3A5": linear_torus_3A5,
    "nine-cuspidal": nine_cuspidal,
}


def construct(name: str) -> CurveSpec:
    if name not in CONSTRUCTIONS:
        raise ValueError(f"unknown construction {name!r}; choose from {', '.join(CONSTRUCTIONS)}")
    return CONSTRUCTIONS[name]()
