"""Bivariate germs, ternary forms and coordinate jets.

A ``Germ`` is a sparse polynomial in (u, v) with an optional truncation
order N: terms of total degree >= N are unknown.  Every operation
propagates that order, and anything that would need unknown terms raises
``TruncationError``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Optional

from .errors import ParseError, TruncationError
from .field import NFElement, QQ, field_of

DEFAULT_TRUNCATION = 16

INF = float("inf")


def _tmin(*ts):
    vals = [t for t in ts if t is not None]
    if not vals:
        return None
    m = min(vals)
    return None if m == INF else int(m)


def _coerce(c):
    if isinstance(c, (NFElement, Fraction)):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError(f"unsupported scalar {c!r}")


def _fmt_scalar(c) -> str:
    return str(c)


def render_terms(terms: dict, names: tuple[str, ...]) -> str:
    """Human-readable polynomial, lowest degree first, e.g. ``v^2 - u^3``."""
    if not terms:
        return "0"
    order = sorted(terms, key=lambda e: (sum(e), [-x for x in e]))
    pieces = []
    for e in order:
        c = terms[e]
        mon = "*".join(
            (n if k == 1 else f"{n}^{k}") for n, k in zip(names, e) if k
        )
        neg = False
        if isinstance(c, Fraction) and c < 0:
            neg, c = True, -c
        if not mon:
            body = _fmt_scalar(c)
        elif c == 1:
            body = mon
        else:
            body = f"{_fmt_scalar(c)}*{mon}"
        pieces.append(("- " if neg else "+ ") + body)
    s = " ".join(pieces)
    return s[2:] if s.startswith("+ ") else "-" + s[2:]


class Germ:
    """Polynomial germ in (u, v) at the origin, possibly a truncated jet."""

    __slots__ = ("terms", "truncation")

    def __init__(self, terms: Optional[dict] = None, truncation: Optional[int] = None):
        clean = {}
        for (a, b), c in (terms or {}).items():
            if a < 0 or b < 0:
                raise ValueError("negative exponent")
            if truncation is not None and a + b >= truncation:
                continue
            c = _coerce(c)
            if c != 0:
                clean[(a, b)] = c
        self.terms = clean
        self.truncation = truncation

    # construction helpers
    @classmethod
    def monomial(cls, a: int, b: int, c=1, truncation=None) -> "Germ":
        return cls({(a, b): c}, truncation)

    @classmethod
    def constant(cls, c, truncation=None) -> "Germ":
        return cls({(0, 0): c}, truncation)

    @classmethod
    def u(cls) -> "Germ":
        return cls({(1, 0): 1})

    @classmethod
    def v(cls) -> "Germ":
        return cls({(0, 1): 1})

    @classmethod
    def parse(cls, text: str, truncation=None, names=("u", "v")) -> "Germ":
        """Parse a polynomial string such as ``"v^3+u^2*v^2+u^9"`` over Q."""
        terms = _parse_poly(text, names)
        return cls(terms, truncation)

    # basic queries
    def is_zero(self) -> bool:
        return not self.terms

    def is_exact(self) -> bool:
        return self.truncation is None

    def coeff(self, a: int, b: int):
        if self.truncation is not None and a + b >= self.truncation:
            raise TruncationError(f"coefficient of u^{a}v^{b} beyond truncation {self.truncation}")
        return self.terms.get((a, b), Fraction(0))

    def support(self):
        return sorted(self.terms)

    def order(self) -> Optional[int]:
        """Lowest total degree of a known term (None for the zero germ)."""
        if not self.terms:
            return None
        return min(a + b for a, b in self.terms)

    def degree(self) -> int:
        if self.truncation is not None:
            raise TruncationError("degree of a truncated germ is unknown")
        return max((a + b for a, b in self.terms), default=-1)

    def field(self):
        return field_of(*self.terms.values())

    def homogeneous_part(self, n: int) -> dict:
        if self.truncation is not None and n >= self.truncation:
            raise TruncationError(f"degree {n} part beyond truncation {self.truncation}")
        return {e: c for e, c in self.terms.items() if sum(e) == n}

    def lowest_form(self) -> dict:
        """The initial (lowest degree) homogeneous part, certified."""
        n = self.order()
        if n is None:
            raise TruncationError("zero jet has no certified initial form")
        return self.homogeneous_part(n)

    def truncate(self, n: Optional[int]) -> "Germ":
        return Germ(self.terms, _tmin(self.truncation, n))

    def value_at_origin(self):
        return self.coeff(0, 0)

    # arithmetic
    def __add__(self, other):
        if not isinstance(other, Germ):
            other = Germ.constant(other)
        t = _tmin(self.truncation, other.truncation)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return Germ(out, t)

    __radd__ = __add__

    def __neg__(self):
        return Germ({e: -c for e, c in self.terms.items()}, self.truncation)

    def __sub__(self, other):
        if not isinstance(other, Germ):
            other = Germ.constant(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Germ):
            c = _coerce(other)
            return Germ({e: c * x for e, x in self.terms.items()}, self.truncation)
        o1 = self.order()
        o2 = other.order()
        t = _tmin(
            None if self.truncation is None else self.truncation + (o2 if o2 is not None else other.truncation or 0),
            None if other.truncation is None else other.truncation + (o1 if o1 is not None else self.truncation or 0),
        )
        out: dict = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                e = (a1 + a2, b1 + b2)
                if t is not None and e[0] + e[1] >= t:
                    continue
                out[e] = out.get(e, 0) + c1 * c2
        return Germ(out, t)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a germ")
        result = Germ.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, Germ):
            other = Germ.constant(other)
        return self.terms == other.terms and self.truncation == other.truncation

    def __hash__(self):
        return hash((frozenset(self.terms.items()), self.truncation))

    def equal_mod(self, other: "Germ", n: int) -> bool:
        """Agreement of known terms below total degree n."""
        a = self.truncate(n)
        b = other.truncate(n)
        if (a.truncation or INF) < n or (b.truncation or INF) < n:
            raise TruncationError("comparison needs terms beyond the truncation")
        return a.terms == b.terms

    # calculus and substitutions
    def diff_u(self) -> "Germ":
        t = None if self.truncation is None else self.truncation - 1
        return Germ({(a - 1, b): a * c for (a, b), c in self.terms.items() if a}, t)

    def diff_v(self) -> "Germ":
        t = None if self.truncation is None else self.truncation - 1
        return Germ({(a, b - 1): b * c for (a, b), c in self.terms.items() if b}, t)

    def swap(self) -> "Germ":
        return Germ({(b, a): c for (a, b), c in self.terms.items()}, self.truncation)

    def evaluate(self, x, y):
        if self.truncation is not None:
            raise TruncationError("evaluation of a truncated germ")
        acc = Fraction(0)
        for (a, b), c in self.terms.items():
            acc = acc + c * (x ** a) * (y ** b)
        return acc

    def __repr__(self):
        t = "" if self.truncation is None else f" + O({self.truncation})"
        return f"Germ({self})" if not t else f"Germ({self}{t})"

    def __str__(self):
        return render_terms(self.terms, ("u", "v"))

    def to_string(self, names=("u", "v")) -> str:
        return render_terms(self.terms, names)


def _parse_poly(text: str, names) -> dict:
    import sympy
    from sympy.parsing.sympy_parser import (
        convert_xor,
        parse_expr,
        standard_transformations,
        implicit_multiplication_application,
    )

    symbols = sympy.symbols(names)
    local = {n: s for n, s in zip(names, symbols)}
    try:
        expr = parse_expr(
            text,
            local_dict=local,
            transformations=standard_transformations + (convert_xor, implicit_multiplication_application),
        )
        poly = sympy.Poly(sympy.expand(expr), *symbols, domain="QQ")
    except Exception as exc:  # sympy raises many exception types
        raise ParseError(f"cannot parse polynomial {text!r}: {exc}") from None
    out = {}
    for exps, c in poly.terms():
        out[tuple(int(e) for e in exps)] = Fraction(int(c.p), int(c.q))
    return out


def compose(g: Germ, x: Germ, y: Germ, truncation: Optional[int] = None) -> Germ:
    """g(x(u,v), y(u,v)) for arbitrary polynomial x, y.

    The truncation of the result is ``truncation`` combined with what the
    inputs determine.  When x or y has a constant term the substitution
    does not preserve degrees, so g and x, y must then be exact.
    """
    local = all(h.order() is None or h.order() >= 1 for h in (x, y))
    if not local and (g.truncation is not None or x.truncation is not None or y.truncation is not None):
        raise TruncationError("non-local substitution needs exact inputs")
    t = _tmin(truncation, g.truncation, x.truncation, y.truncation) if local else truncation
    if not g.terms:
        return Germ({}, t)
    amax = max(a for a, _ in g.terms)
    bmax = max(b for _, b in g.terms)
    xp = [Germ.constant(1, t)]
    for _ in range(amax):
        xp.append((xp[-1] * x).truncate(t))
    yp = [Germ.constant(1, t)]
    for _ in range(bmax):
        yp.append((yp[-1] * y).truncate(t))
    by_a: dict = {}
    for (a, b), c in g.terms.items():
        by_a.setdefault(a, []).append((b, c))
    total = Germ({}, t)
    for a, lst in by_a.items():
        inner = Germ({}, t)
        for b, c in lst:
            inner = inner + yp[b] * c
        total = total + (xp[a] * inner).truncate(t)
    return total.truncate(t)


class CoordinateJets:
    """Coordinate change x = x(u,v), y = y(u,v) with invertible linear part."""

    __slots__ = ("x", "y", "truncation")

    def __init__(self, x: Germ, y: Germ, truncation: Optional[int] = None):
        t = _tmin(truncation, x.truncation, y.truncation)
        x = x.truncate(t)
        y = y.truncate(t)
        if t is not None and t < 2:
            raise TruncationError("jets must be known at least to linear order")
        if x.coeff(0, 0) != 0 or y.coeff(0, 0) != 0:
            raise ValueError("coordinate jets must vanish at the origin")
        if self._det(x, y) == 0:
            raise ValueError("coordinate jets have a singular linear part")
        self.x = x
        self.y = y
        self.truncation = t

    @staticmethod
    def _det(x: Germ, y: Germ):
        return x.coeff(1, 0) * y.coeff(0, 1) - x.coeff(0, 1) * y.coeff(1, 0)

    @classmethod
    def identity(cls, truncation=None) -> "CoordinateJets":
        return cls(Germ.u(), Germ.v(), truncation)

    @classmethod
    def linear(cls, a, b, c, d) -> "CoordinateJets":
        """x = a u + b v, y = c u + d v."""
        return cls(Germ({(1, 0): a, (0, 1): b}), Germ({(1, 0): c, (0, 1): d}))

    def linear_matrix(self):
        return ((self.x.coeff(1, 0), self.x.coeff(0, 1)), (self.y.coeff(1, 0), self.y.coeff(0, 1)))

    def is_exact(self) -> bool:
        return self.truncation is None

    def then(self, inner: "CoordinateJets") -> "CoordinateJets":
        """Compose: first apply ``self`` then ``inner``.

        If self is x = X(u,v) and inner is u = U(s,t), v = V(s,t), the result
        expresses x, y in terms of (s, t).
        """
        t = _tmin(self.truncation, inner.truncation)
        return CoordinateJets(
            compose(self.x, inner.x, inner.y, t), compose(self.y, inner.x, inner.y, t), t
        )

    def truncate(self, n) -> "CoordinateJets":
        return CoordinateJets(self.x, self.y, _tmin(self.truncation, n))

    def __eq__(self, other):
        return (
            isinstance(other, CoordinateJets)
            and self.x == other.x
            and self.y == other.y
            and self.truncation == other.truncation
        )

    def __repr__(self):
        return f"CoordinateJets(x={self.x}, y={self.y}, truncation={self.truncation})"


def substitute(g: Germ, jets: CoordinateJets, order: Optional[int] = None) -> Germ:
    """g(x(u,v), y(u,v)), known below the propagated truncation order."""
    avail = _tmin(g.truncation, jets.truncation)
    if order is not None and avail is not None and avail < order:
        raise TruncationError(f"inputs known only below degree {avail}, requested {order}")
    return compose(g, jets.x, jets.y, _tmin(order, avail))


def invert_jets(jets: CoordinateJets, order: int) -> CoordinateJets:
    """Inverse coordinate change, correct modulo degree ``order``."""
    if jets.truncation is not None and jets.truncation < order:
        raise TruncationError(f"jets known below degree {jets.truncation}, inverse requested to {order}")
    (a, b), (c, d) = jets.linear_matrix()
    det = a * d - b * c
    if det == 0:
        raise ValueError("non-invertible linear part")
    ia, ib, ic, id_ = d / det, -b / det, -c / det, a / det
    hx = (jets.x - Germ({(1, 0): a, (0, 1): b})).truncate(order)
    hy = (jets.y - Germ({(1, 0): c, (0, 1): d})).truncate(order)
    X, Y = Germ.u(), Germ.v()
    u = Germ({(1, 0): ia, (0, 1): ib}, order)
    v = Germ({(1, 0): ic, (0, 1): id_}, order)
    for _ in range(order):
        rx = X - compose(hx, u, v, order)
        ry = Y - compose(hy, u, v, order)
        nu = (rx * ia + ry * ib).truncate(order)
        nv = (rx * ic + ry * id_).truncate(order)
        if nu == u and nv == v:
            break
        u, v = nu, nv
    return CoordinateJets(u, v, order)


class HomogeneousForm:
    """Homogeneous polynomial in (X, Y, Z) of a fixed degree."""

    __slots__ = ("degree", "terms")

    def __init__(self, degree: int, terms: Optional[dict] = None):
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(int(k) for k in e)
            if len(e) != 3 or min(e) < 0:
                raise ValueError(f"bad exponent triple {e}")
            if sum(e) != degree:
                raise ValueError(f"exponents {e} do not sum to degree {degree}")
            c = _coerce(c)
            if c != 0:
                clean[e] = clean.get(e, 0) + c
                if clean[e] == 0:
                    del clean[e]
        self.degree = degree
        self.terms = clean

    @classmethod
    def parse(cls, text: str) -> "HomogeneousForm":
        terms = _parse_poly(text, ("X", "Y", "Z"))
        degs = {sum(e) for e in terms}
        if len(degs) != 1:
            raise ParseError(f"{text!r} is not homogeneous")
        return cls(degs.pop(), terms)

    @classmethod
    def variable(cls, i: int) -> "HomogeneousForm":
        e = [0, 0, 0]
        e[i] = 1
        return cls(1, {tuple(e): 1})

    @staticmethod
    def monomials(degree: int) -> list:
        """Exponent triples of the given degree in a fixed deterministic order."""
        if degree < 0:
            return []
        out = []
        for i in range(degree, -1, -1):
            for j in range(degree - i, -1, -1):
                out.append((i, j, degree - i - j))
        return out

    def is_zero(self) -> bool:
        return not self.terms

    def field(self):
        return field_of(*self.terms.values())

    def __add__(self, other: "HomogeneousForm"):
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        if other.degree != self.degree:
            raise ValueError("adding forms of different degrees")
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return HomogeneousForm(self.degree, {e: c for e, c in out.items() if c != 0})

    def __neg__(self):
        return HomogeneousForm(self.degree, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, HomogeneousForm):
            c = _coerce(other)
            return HomogeneousForm(self.degree, {e: c * x for e, x in self.terms.items()})
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2])
                out[e] = out.get(e, 0) + c1 * c2
        return HomogeneousForm(self.degree + other.degree, {e: c for e, c in out.items() if c != 0})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result = HomogeneousForm(0, {(0, 0, 0): 1})
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other):
        return isinstance(other, HomogeneousForm) and self.degree == other.degree and self.terms == other.terms

    def __hash__(self):
        return hash((self.degree, frozenset(self.terms.items())))

    def evaluate(self, point: Iterable):
        x, y, z = point
        acc = Fraction(0)
        for (i, j, l), c in self.terms.items():
            acc = acc + c * x ** i * y ** j * z ** l
        return acc

    def partial(self, var: int) -> "HomogeneousForm":
        out = {}
        for e, c in self.terms.items():
            if e[var]:
                f = list(e)
                f[var] -= 1
                out[tuple(f)] = c * e[var]
        return HomogeneousForm(self.degree - 1, out)

    def gradient_at(self, point):
        return tuple(self.partial(i).evaluate(point) for i in range(3))

    def __repr__(self):
        return f"HomogeneousForm({self.degree}, {self})"

    def __str__(self):
        return render_terms(self.terms, ("X", "Y", "Z"))


def _height(c):
    if isinstance(c, NFElement):
        return max(abs(x) for x in c.coeffs)
    return abs(c)


def choose_chart(point) -> int:
    """Index of the affine chart used at ``point``.

    The coordinate of largest height (absolute value for rationals, largest
    coefficient for extension elements); ties prefer Z, then Y, then X.
    """
    best = None
    for i in (2, 1, 0):
        c = point[i]
        if c == 0:
            continue
        h = _height(c)
        if best is None or h > best[0]:
            best = (h, i)
    if best is None:
        raise ValueError("the zero vector is not a projective point")
    return best[1]


def normalize_point(point, chart: Optional[int] = None):
    if chart is None:
        chart = choose_chart(point)
    w = _coerce(point[chart])
    if w == 0:
        raise ValueError("chart coordinate vanishes at the point")
    return tuple(_coerce(c) / w for c in point), chart


def dehomogenize_at(F: HomogeneousForm, point, chart: Optional[int] = None) -> Germ:
    """Affine germ of F at ``point`` in the chosen chart, point moved to the origin.

    The local coordinates are the two non-chart coordinates in their natural
    order; the constant term equals F at the normalized point.
    """
    p, chart = normalize_point(point, chart)
    others = [i for i in range(3) if i != chart]
    loc = {others[0]: Germ.u(), others[1]: Germ.v()}
    lin = [None, None, None]
    for i in range(3):
        lin[i] = Germ.constant(1) if i == chart else loc[i] + p[i]
    powers = [[Germ.constant(1)] for _ in range(3)]
    for i in range(3):
        top = max((e[i] for e in F.terms), default=0)
        for _ in range(top):
            powers[i].append(powers[i][-1] * lin[i])
    out = Germ({})
    for (i, j, l), c in F.terms.items():
        out = out + powers[0][i] * powers[1][j] * powers[2][l] * c
    return out


def dehomogenize_monomial(exps, point, chart: int) -> Germ:
    return dehomogenize_at(HomogeneousForm(sum(exps), {tuple(exps): 1}), point, chart)
