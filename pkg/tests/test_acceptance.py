"""One check per acceptance criterion; the summary lines come from conftest."""

import time
from contextlib import contextmanager

import sympy
from conftest import ACCEPTANCE, excluded_configurations

import test_properties as props
from sextic_alexander.alexander import alexander_generic, alexander_reduced
from sextic_alexander.constructions import X, Y, Z, _spec, linear_torus_3A5, nine_cuspidal, six_lines, torus_six_cusps
from sextic_alexander.ideals import (
    SP1_PRINTED,
    criterion_thresholds,
    engine_ideal,
    load_table,
    sp_divisors,
)
from sextic_alexander.poly import Germ
from sextic_alexander.report import report_for
from sextic_alexander.singularity import plucker_check

T = sympy.Symbol("t")


@contextmanager
def criterion(n: int, budget: float = None):
    """Record PASS or FAIL for criterion ``n``; ``notes`` collects details."""
    notes: list = []
    start = time.perf_counter()
    try:
        yield notes
        elapsed = time.perf_counter() - start
        if budget is not None:
            notes.append(f"{elapsed:.1f}s of {budget:.0f}s")
            assert elapsed < budget, f"took {elapsed:.1f}s, budget {budget}s"
    except BaseException as exc:
        ACCEPTANCE[n] = ("FAIL", "; ".join(notes + [str(exc).splitlines()[0] if str(exc) else type(exc).__name__]))
        raise
    ACCEPTANCE[n] = ("PASS", "; ".join(notes))


def _expand(text: str):
    return sympy.expand(sympy.sympify(text.replace("^", "**").replace(" (", "*(")))


def _mismatches(rows) -> list:
    bad = []
    for row in rows:
        got = engine_ideal(row.type, row.k)
        if not (got.equals(row.ideal) and got.colength == row.rho):
            bad.append(f"{row.type} k={row.k}: engine {got} rho={got.colength}, table {row.generators} rho={row.rho}")
    return bad


def test_criterion_1_simple_table():
    with criterion(1, budget=10) as notes:
        rows = load_table("simple")
        bad = _mismatches(rows)
        notes.append(f"{len(rows) - len(bad)}/{len(rows)} rows")
        assert not bad, bad


def test_criterion_2_nonsimple_table():
    with criterion(2, budget=10) as notes:
        rows = load_table("nonsimple")
        assert sorted({r.item for r in rows}) == list(range(1, 15))
        bad = _mismatches(rows)
        # the (rho5, rho4, rho3) triples, one per type
        for name in dict.fromkeys(r.type for r in rows):
            printed = tuple(r.rho for k in (5, 4, 3) for r in rows if r.type == name and r.k == k)
            engine = tuple(engine_ideal(name, k).colength for k in (5, 4, 3))
            if printed != engine:
                bad.append(f"{name} triple: engine {engine}, table {printed}")
        assert engine_ideal("B6,6", 2).colength == 1
        sp1 = [dd for _, dd in sp_divisors(1)]
        got = {
            "K": tuple(dd.K for dd in sp1),
            "f": tuple(dd.f_mult for dd in sp1),
            "u": tuple(dd.u_mult for dd in sp1),
            "v": tuple(dd.v_mult for dd in sp1),
        }
        assert got == SP1_PRINTED
        sp2 = {dd.label: dd for _, dd in sp_divisors(2)}
        assert [(sp2[r].K, sp2[r].f_mult) for r in ("R1", "R2", "R3")] == [(5, 14), (6, 16), (7, 18)]
        notes.append(f"{len(rows)} rows, Sp1/Sp2 divisor data exact")
        assert not bad, " | ".join(bad)


def test_criterion_3_c39_thresholds():
    with criterion(3) as notes:
        f = Germ.parse("v^3+u^2*v^2+u^9")
        got = {k: [c.threshold for c in criterion_thresholds(f, k, 6)] for k in (5, 4, 3)}
        covectors = [tuple(c.covector) for c in criterion_thresholds(f, 5, 6)]
        assert covectors == [(1, 2), (2, 7)]
        assert got == {5: [3, 7], 4: [2, 4], 3: [1, 1]}
        notes.append(f"thresholds {got}")


def test_criterion_4_six_lines():
    with criterion(4, budget=30) as notes:
        rep = report_for(six_lines(), ks=range(1, 6))
        ells = tuple(rep.ell[k] for k in range(1, 6))
        assert ells == (0, 1, 2, 3, 4)
        assert rep.alexander == "(t - 1)^5 (t^2 - t + 1)^4 (t^2 + t + 1)^4 (t + 1)^4"
        total = (T - 1) ** 5 * (T ** 2 - T + 1) ** 4 * (T ** 2 + T + 1) ** 4 * (T + 1) ** 4
        assert sympy.expand(_expand(rep.alexander) - total) == 0
        assert sympy.Poly(total, T).all_coeffs()[::-1] == list(rep.alexander_coefficients)
        # the per-k split against the multiplicities of the factored total
        mult = {sympy.expand(f): e for f, e in sympy.factor_list(total)[1]}
        assert mult[T ** 2 + T + 1] == ells[1] + ells[3]
        assert mult[T ** 2 - T + 1] == ells[0] + ells[4]
        assert mult[T + 1] == 2 * ells[2]
        assert mult[T - 1] == rep.num_components - 1
        notes.append(f"l={ells}")


def test_criterion_5_torus_six_cusps():
    with criterion(5, budget=30) as notes:
        rep = report_for(torus_six_cusps(), ks=range(1, 6))
        ells = tuple(rep.ell[k] for k in range(1, 6))
        assert ells == (0, 0, 0, 0, 1)
        assert rep.alexander == "(t^2 - t + 1)"
        notes.append(f"l={ells}")


def test_criterion_6_linear_torus():
    with criterion(6, budget=30) as notes:
        rep = report_for(linear_torus_3A5(), ks=range(1, 6))
        ells = tuple(rep.ell[k] for k in range(1, 6))
        assert ells == (0, 0, 0, 1, 1)
        assert sympy.expand(_expand(rep.reduced_alexander) - (T ** 2 - T + 1) * (T ** 2 + T + 1)) == 0
        notes.append(f"l={ells}")


def test_criterion_7_nine_cuspidal():
    with criterion(7, budget=60) as notes:
        rep = report_for(nine_cuspidal(), ks=range(1, 6))
        assert rep.rho[5] == 9
        assert rep.rank[5] == 6  # every conic survives: injective
        assert [rep.ell[k] for k in range(1, 6)] == [0, 0, 0, 0, 3]
        assert rep.alexander == "(t^2 - t + 1)^3"
        notes.append("rho5=9, rank 6, l5=3")


def test_criterion_8_properties():
    with criterion(8) as notes:
        tests = [
            props.test_rho_is_nondecreasing_in_k,
            props.test_intersection_bound_at_simple_points,
            props.test_strict_intersection_bound_at_nonsimple_points,
            props.test_monomial_criterion_agrees_with_chart_valuations,
            props.test_milnor_numbers_by_jacobian_colength,
            props.test_classify_is_invariant_under_unit_jets,
        ]
        for t in tests:
            t()
        notes.append(f"{len(tests)} properties x {props.N} cases")


def test_criterion_9_plucker():
    with criterion(9) as notes:
        configs = excluded_configurations()
        accepted = [c for c in configs if plucker_check(c)]
        assert not accepted, accepted
        assert plucker_check(["A5"] * 3)
        notes.append(f"{len(configs)} configurations rejected, [3A5] accepted")


# criterion 10: configurations without explicit equations; only the local
# data and the assembly from l-vectors can be checked.
DECLARED = [
    (["A2"] * 8, 1, (0, 0, 0, 0, 2), "(t^2 - t + 1)^2"),
    (["A2"] * 8 + ["A1"], 1, (0, 0, 0, 0, 2), "(t^2 - t + 1)^2"),
    (["A2"] * 6 + ["E6"], 1, (0, 0, 0, 0, 2), "(t^2 - t + 1)^2"),
    (["A2"] * 6 + ["A5"], 1, (0, 0, 0, 0, 2), "(t^2 - t + 1)^2"),
    (["A2"] * 4 + ["A5"] * 2, 1, (0, 0, 0, 0, 2), "(t^2 - t + 1)^2"),
    (["A2"] * 4 + ["A5", "E6"], 1, (0, 0, 0, 0, 2), "(t^2 - t + 1)^2"),
    (["B3,6"] + ["A2"] * 3, 1, (0, 0, 0, 0, 2), "(t^2 - t + 1)^2"),
    (["B3,6"] + ["A2"] * 4, 1, (0, 0, 0, 0, 2), "(t^2 - t + 1)^2"),
    (["C3,9"] + ["A2"] * 3, 1, (0, 0, 0, 0, 2), "(t^2 - t + 1)^2"),
    (["B3,6"] + ["A2"] * 4 + ["A1"], 2, (0, 0, 0, 0, 2), "(t^2 - t + 1)^2"),
    (["C3,9"] + ["A2"] * 3 + ["A1"], 2, (0, 0, 0, 0, 2), "(t^2 - t + 1)^2"),
    (["B3,6"] * 2, 2, (0, 0, 0, 1, 2), "(t^2 - t + 1)^2 (t^2 + t + 1)"),
    (["B3,12"], 3, (0, 0, 1, 1, 2), "(t^2 - t + 1)^2 (t^2 + t + 1) (t + 1)^2"),
    (["C6,6", "A5"], 2, (0, 0, 0, 1, 1), "(t^2 - t + 1) (t^2 + t + 1)"),
    (["C6,12"], 2, (0, 0, 0, 1, 1), "(t^2 - t + 1) (t^2 + t + 1)"),
    (["B4,6", "A5"], 2, (0, 0, 0, 1, 1), "(t^2 - t + 1) (t^2 + t + 1)"),
    (["D4,7", "A5"], 2, (0, 0, 0, 1, 1), "(t^2 - t + 1) (t^2 + t + 1)"),
    (["Sp2"], 2, (0, 0, 0, 1, 1), "(t^2 - t + 1) (t^2 + t + 1)"),
    (["C3,7", "A2"], 1, (0, 0, 0, 0, 1), "(t^2 - t + 1)"),
]
CONICS = {2: 0, 3: 1, 4: 3, 5: 6}  # dimension of the degree k-3 forms


def _three_bitangent_conics():
    """Three members of the pencil XZ + c Y^2: two B3,6 points, r = 3."""
    F = (X * Z - Y * Y) * (X * Z + Y * Y) * (X * Z - Y * Y * 2)
    return _spec(F, 3, [(1, 0, 0), (0, 0, 1)], None)


def test_criterion_10_declared_not_reproducible():
    with criterion(10) as notes:
        inconsistent = []
        for types, r, ells, text in DECLARED:
            poly = alexander_reduced(ells)
            assert poly.render() == text, (types, poly.render())
            assert alexander_generic(poly, r).degree == 2 * sum(ells) + r - 1
            for k in (2, 3, 4, 5):
                rho = sum(engine_ideal(t, k).colength for t in types)
                # l_k = dim coker sigma_k lies between rho(k) - dim and rho(k)
                if not rho - CONICS[k] <= ells[k - 1] <= rho:
                    inconsistent.append((tuple(types), k, rho, ells[k - 1]))
        # the printed value for [2B3,6] has l3 = 0, but rho(3) = 2 exceeds the
        # single constant; an explicit curve with that configuration has l3 = 1
        assert inconsistent == [(("B3,6", "B3,6"), 3, 2, 0)], inconsistent
        curve = _three_bitangent_conics()
        assert [P.type.name for P in curve.points] == ["B3,6", "B3,6"]
        rep = report_for(curve, ks=range(1, 6))
        assert [rep.ell[k] for k in range(1, 6)] == [0, 0, 1, 1, 2]
        assert rep.reduced_alexander == "(t^2 - t + 1)^2 (t^2 + t + 1) (t + 1)^2"
        notes.append(f"{len(DECLARED)} configurations: local data and assembly only")
        notes.append("printed [2B3,6] value lacks (t + 1)^2; explicit curve gives l=(0,0,1,1,2)")
    ACCEPTANCE[10] = ("DECLARED", "not reproducible end-to-end; " + ACCEPTANCE[10][1])
