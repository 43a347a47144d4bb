"""The evaluation maps sigma_k : H^0(P^2, O(k-3)) -> (+)_P O_P / J_{P,k,d}
and their cokernel dimensions l_k."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .errors import VerificationError
from .field import QQ
from .linalg import rank
from .poly import HomogeneousForm, dehomogenize_monomial, normalize_point, substitute
from .singularity import LocalData


@dataclass
class CurveSpec:
    """A plane curve F = 0 with its declared singular points."""

    F: HomogeneousForm
    r: int
    points: list = field(default_factory=list)
    field: object = QQ

    def __post_init__(self):
        if self.r < 1:
            raise ValueError("the component count r must be at least 1")
        for P in self.points:
            verify_singular(self.F, P.point)

    @property
    def degree(self) -> int:
        return self.F.degree


def verify_singular(F: HomogeneousForm, point) -> None:
    p, _ = normalize_point(point)
    if F.evaluate(p) != 0:
        raise VerificationError(f"point {p} does not lie on the curve")
    if any(c != 0 for c in F.gradient_at(p)):
        raise VerificationError(f"point {p} is not a singular point of the curve")


@dataclass
class SigmaMatrix:
    k: int
    columns: list      # exponent triples of the degree k-3 monomials
    rows: list         # (point index, quotient basis monomial)
    entries: list      # len(rows) lists of len(columns) scalars

    @property
    def shape(self) -> tuple:
        return (len(self.rows), len(self.columns))

    @property
    def rank(self) -> int:
        cols = [{i: row[j] for i, row in enumerate(self.entries) if row[j] != 0} for j in range(len(self.columns))]
        return rank(cols)


def _ideal(P: LocalData, k: int):
    if k not in P.ideals:
        raise VerificationError(f"local data at {P.point} has no ideal for k={k}")
    return P.ideals[k]


def sigma_matrix(curve: CurveSpec, k: int) -> SigmaMatrix:
    """Entry (row, col): coordinate on the row's basis monomial of the
    column monomial, expanded in the point's normal coordinates and
    reduced modulo J_{P,k,d}."""
    columns = HomogeneousForm.monomials(k - 3) if k >= 3 else []
    rows, entries = [], []
    for idx, P in enumerate(curve.points):
        qa = _ideal(P, k).quotient()
        if qa.colength == 0:
            continue
        block = [[0] * len(columns) for _ in qa.basis]
        for j, exps in enumerate(columns):
            h = dehomogenize_monomial(exps, P.point, P.chart)
            vec = qa.vector(substitute(h, P.jets))
            for i, c in enumerate(vec):
                block[i][j] = c
        rows.extend((idx, m) for m in qa.basis)
        entries.extend(block)
    return SigmaMatrix(k, columns, rows, entries)


def rho_total(curve: CurveSpec, k: int) -> int:
    return sum(_ideal(P, k).colength for P in curve.points)


def ell(curve: CurveSpec, k: int, matrix: Optional[SigmaMatrix] = None) -> int:
    """l_k = rho(k) - rank sigma_k."""
    m = matrix if matrix is not None else sigma_matrix(curve, k)
    return rho_total(curve, k) - m.rank
