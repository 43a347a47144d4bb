"""Finite-dimensional local algebra: quotients O/I, colengths, Milnor numbers,
intersection multiplicities.

Everything runs on the jet space of polynomials of degree <= N with the
local degree order (lowest degree leads).  N is certified by checking that
every monomial of degree N lies in the ideal.
"""

from __future__ import annotations

from typing import Optional, Sequence

from .errors import CapExceededError, TruncationError
from .field import QQ
from .linalg import Echelon, accelerate, local_key, settle
from .poly import Germ

DEFAULT_START = 12
DEFAULT_CAP = 48


def _monomials_below(n: int):
    return [(a, d - a) for d in range(n) for a in range(d, -1, -1)]


def _is_monomial(g: Germ) -> bool:
    return len(g.terms) == 1


class QuotientAlgebra:
    """O/I with a monomial basis B and an exact reduction map.

    ``N`` satisfies m^N in I; ``basis`` lists the standard monomials (all of
    degree < N) in local order.
    """

    def __init__(self, generators, N: int, basis: list, echelon: Optional[Echelon], staircase=None):
        self.generators = tuple(generators)
        self.N = N
        self.basis = basis
        self.index = {m: i for i, m in enumerate(basis)}
        self._echelon = echelon
        self._staircase = staircase

    @property
    def colength(self) -> int:
        return len(self.basis)

    def reduce(self, g: Germ) -> dict:
        """Normal form of g modulo I as {basis monomial: coefficient}."""
        if g.truncation is not None and g.truncation < self.N:
            raise TruncationError(f"reduction needs the jet below degree {self.N}, known below {g.truncation}")
        low = {m: c for m, c in g.terms.items() if m[0] + m[1] < self.N}
        if self._staircase is not None:
            return {m: c for m, c in low.items() if m in self.index}
        return {m: settle(c) for m, c in self._echelon.reduce(low).items()}

    def vector(self, g: Germ) -> list:
        red = self.reduce(g)
        out = [0] * len(self.basis)
        for m, c in red.items():
            out[self.index[m]] = c
        return out

    def contains(self, g: Germ) -> bool:
        return not self.reduce(g)

    def minimal_generators(self) -> list:
        """A minimal generating set, read off from I / mI."""
        if self._staircase is not None:
            return [Germ.monomial(a, b) for a, b in self._staircase]
        ech = Echelon(local_key)
        ech.rows = {k: dict(v) for k, v in self._echelon.rows.items()}
        rows = ech.interreduce()
        mI = Echelon(local_key)
        for r in rows.values():
            for da, db in ((1, 0), (0, 1)):
                shifted = {(a + da, b + db): c for (a, b), c in r.items() if a + b + 1 <= self.N}
                mI.insert(shifted)
        gens = []
        for lead in sorted(rows, key=local_key):
            if lead in mI.rows:
                continue
            gens.append(Germ({m: settle(c) for m, c in rows[lead].items()}))
        return gens


def staircase(generators: Sequence[Germ]) -> list:
    """Minimal monomial generators (a, b) sorted by decreasing a."""
    exps = []
    for g in generators:
        if not _is_monomial(g):
            raise ValueError(f"{g} is not a monomial")
        exps.append(next(iter(g.terms)))
    minimal = [
        e for e in set(exps)
        if not any(f != e and f[0] <= e[0] and f[1] <= e[1] for f in exps)
    ]
    return sorted(minimal, key=lambda e: (-e[0], e[1]))


def staircase_colength(ideal) -> int:
    """Lattice points under the staircase of a monomial ideal."""
    gens = _generators_of(ideal)
    st = staircase(gens)
    if not st or st[0][1] != 0 or st[-1][0] != 0:
        raise ValueError("monomial ideal has infinite colength")
    total = 0
    # st sorted by decreasing a, increasing b: strip b in [b_i, b_{i+1}) has width a_i
    for (a, b), (_, b_next) in zip(st, st[1:]):
        total += a * (b_next - b)
    return total


def _generators_of(ideal) -> list:
    gens = getattr(ideal, "generators", ideal)
    return [g if isinstance(g, Germ) else Germ.constant(g) for g in gens]


def _monomial_quotient(gens) -> QuotientAlgebra:
    st = staircase(gens)
    if (0, 0) in st:
        return QuotientAlgebra(gens, 0, [], None, staircase=st)
    if not st or st[0][1] != 0 or st[-1][0] != 0:
        raise CapExceededError("monomial ideal has infinite colength")
    basis = []
    for (a, b), (_, b_next) in zip(st, st[1:]):
        for bb in range(b, b_next):
            for aa in range(a):
                basis.append((aa, bb))
    basis.sort(key=local_key)
    N = max((a + b for a, b in basis), default=-1) + 1
    return QuotientAlgebra(gens, N, basis, None, staircase=st)


def quotient(ideal, start: int = DEFAULT_START, cap: int = DEFAULT_CAP) -> QuotientAlgebra:
    """Build O/I, raising the jet order N from ``start`` until m^N in I.

    N grows by a third per failed attempt (at least 4) rather than doubling:
    each attempt costs roughly N^4, so overshooting is the expensive part.
    """
    gens = [g for g in _generators_of(ideal) if not g.is_zero()]
    if not gens:
        raise CapExceededError("the zero ideal has infinite colength")
    if all(_is_monomial(g) and g.is_exact() for g in gens):
        return _monomial_quotient(gens)
    if any(g.terms.get((0, 0), 0) != 0 for g in gens):
        return QuotientAlgebra(gens, 0, [], Echelon(local_key))
    known = min((g.truncation for g in gens if g.truncation is not None), default=None)
    limit = cap if known is None else min(cap, known - 1)
    N = min(start, limit)
    while True:
        qa = _try_quotient(gens, N) if N >= 1 else None
        if qa is not None:
            return qa
        if N >= limit:
            if limit < cap:
                raise TruncationError(f"generators known below degree {known}; colength not certified there")
            raise CapExceededError(f"could not certify finite colength below degree {cap}")
        N = min(N + max(4, N // 3), limit)


def _try_quotient(gens, N: int) -> Optional[QuotientAlgebra]:
    for g in gens:
        if g.truncation is not None and g.truncation <= N:
            raise TruncationError(
                f"generator known below degree {g.truncation}; degree {N} certification needs more"
            )
    ech = Echelon(local_key)
    # gmpy2 only speeds up rational coefficients; number-field ones stay as they are
    lift = accelerate if all(g.field() is QQ for g in gens) else (lambda c: c)
    fast = [{m: lift(c) for m, c in g.terms.items()} for g in gens]
    jobs = []
    for i, g in enumerate(gens):
        o = g.order()
        for d in range(0, N - o + 1):
            for a in range(d, -1, -1):
                jobs.append((d + o, a, d - a, i))
    jobs.sort(key=lambda j: j[0])
    for _, a, b, i in jobs:
        row = {}
        for (x, y), c in fast[i].items():
            if x + y + a + b <= N:
                row[(x + a, y + b)] = c
        ech.insert(row)
    leads = ech.rows
    if any((a, N - a) not in leads for a in range(N + 1)):
        return None
    basis = [m for m in _monomials_below(N) if m not in leads]
    basis.sort(key=local_key)
    return QuotientAlgebra(gens, N, basis, ech)


def colength(ideal, **kw) -> int:
    return quotient(ideal, **kw).colength


def milnor_number(f: Germ, **kw) -> int:
    """Colength of the Jacobian ideal (f_u, f_v)."""
    try:
        return colength([f.diff_u(), f.diff_v()], **kw)
    except CapExceededError as exc:
        if isinstance(exc, TruncationError):
            raise
        raise CapExceededError("singularity is not isolated (Jacobian colength not finite within cap)") from exc


def intersection_multiplicity(f: Germ, g: Germ, **kw) -> int:
    """Colength of (f, g); infinite (error) when f, g share a component."""
    if f.terms.get((0, 0), 0) != 0 or g.terms.get((0, 0), 0) != 0:
        return 0
    return colength([f, g], **kw)
