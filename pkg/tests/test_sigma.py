import pytest
import sympy

from sextic_alexander.errors import VerificationError
from sextic_alexander.poly import HomogeneousForm
from sextic_alexander.sigma import CurveSpec, ell, rho_total, sigma_matrix
from sextic_alexander.singularity import analyze_point


def _sympy_rank(m) -> int:
    if not m.entries or not m.columns:
        return 0
    rows = [[sympy.Rational(c.numerator, c.denominator) if hasattr(c, "denominator") else c for c in r] for r in m.entries]
    return sympy.Matrix(rows).rank()


def _ells(curve):
    return tuple(ell(curve, k) for k in range(1, 6))


def test_six_lines(six_lines_curve):
    c = six_lines_curve
    assert [rho_total(c, k) for k in range(1, 6)] == [0, 1, 3, 6, 10]
    assert _ells(c) == (0, 1, 2, 3, 4)


def test_single_b66_point_at_k4(six_lines_curve):
    m = sigma_matrix(six_lines_curve, 4)
    assert m.shape == (6, 3)
    assert m.rank == 3 == _sympy_rank(m)


def test_k2_has_no_columns(six_lines_curve, torus_curve):
    for c in (six_lines_curve, torus_curve):
        m = sigma_matrix(c, 2)
        assert m.shape[1] == 0 and m.rank == 0
        assert ell(c, 2) == rho_total(c, 2)


def test_torus_six_cusps(torus_curve):
    assert [rho_total(torus_curve, k) for k in (4, 5)] == [0, 6]
    assert _ells(torus_curve) == (0, 0, 0, 0, 1)


def test_linear_torus(linear_torus_curve):
    c = linear_torus_curve
    assert rho_total(c, 5) == 6 and rho_total(c, 4) == 3
    assert ell(c, 4) == 1 and ell(c, 5) == 1


def test_nine_cusps(nine_cusp_curve):
    m = sigma_matrix(nine_cusp_curve, 5)
    assert m.shape == (9, 6)
    assert rho_total(nine_cusp_curve, 5) == 9
    assert m.rank == 6
    assert ell(nine_cusp_curve, 5) == 3


@pytest.mark.parametrize("k", [3, 4, 5])
def test_rank_matches_sympy_and_bounds(six_lines_curve, torus_curve, linear_torus_curve, k):
    for c in (six_lines_curve, torus_curve, linear_torus_curve):
        m = sigma_matrix(c, k)
        cols = (k - 1) * (k - 2) // 2
        assert m.shape == (rho_total(c, k), cols)
        assert m.rank == _sympy_rank(m)
        assert 0 <= m.rank <= min(cols, rho_total(c, k))
        assert ell(c, k) >= max(0, rho_total(c, k) - cols)


def _transform(F: HomogeneousForm, A) -> HomogeneousForm:
    """F composed with the inverse of A, so that A maps F = 0 onto the result."""
    X, Y, Z = sympy.symbols("X Y Z")
    Ainv = sympy.Matrix(A).inv()
    new = Ainv * sympy.Matrix([X, Y, Z])
    expr = sympy.sympify(str(F).replace("^", "**"))
    out = sympy.expand(expr.subs({X: new[0], Y: new[1], Z: new[2]}, simultaneous=True))
    return HomogeneousForm.parse(str(out).replace("**", "^"))


def test_rank_is_projectively_invariant(torus_curve, linear_torus_curve):
    A = [[1, 1, 0], [0, 1, 0], [1, 0, 1]]
    for c in (torus_curve, linear_torus_curve):
        G = _transform(c.F, A)
        pts = [tuple(sum(A[i][j] * P.point[j] for j in range(3)) for i in range(3)) for P in c.points]
        moved = CurveSpec(G, c.r, [analyze_point(G, p, ks=(4, 5)) for p in pts])
        assert [P.type for P in moved.points] == [P.type for P in c.points]
        for k in (4, 5):
            assert sigma_matrix(moved, k).rank == sigma_matrix(c, k).rank


def test_curve_spec_validation(torus_curve):
    with pytest.raises(ValueError):
        CurveSpec(torus_curve.F, 0, [])
    P = analyze_point(HomogeneousForm.parse("Y^2*Z-X^3"), (0, 0, 1), ks=(5,))
    with pytest.raises(VerificationError):
        CurveSpec(torus_curve.F, 1, [P])
    lonely = CurveSpec(HomogeneousForm.parse("Y^2*Z-X^3"), 1, [P])
    with pytest.raises(VerificationError):
        sigma_matrix(lonely, 4)
