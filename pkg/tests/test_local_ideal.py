import io
from fractions import Fraction
from math import gcd

import pytest

from sextic_alexander.catalog import SingularityType, nonsimple_types, parse_type, simple_types
from sextic_alexander.errors import ParseError, UnsupportedGermError, VerificationError
from sextic_alexander.ideals import (
    SP1_PRINTED,
    LocalIdeal,
    chart_valuation,
    criterion_thresholds,
    engine_ideal,
    face_divisors,
    load_table,
    multiplier_ideal,
    multiplier_ideal_charts,
    multiplier_ideal_monomial,
    reference_ideal,
    reference_rho,
    regenerate_table,
    sp_charts,
    sp_divisors,
    toric_divisors,
    write_table,
)
from sextic_alexander.poly import Germ

C39 = Germ.parse("v^3+u^2*v^2+u^9")

# Rows where the printed table disagrees with the definition of the ideal.
ERRATA = {("C3,12", 4), ("B3,12", 5)}


def howald_ideal(f: Germ, k: int, d: int, box: int = 40) -> set:
    """Exponents (a, b) in a box with (a+1, b+1) strictly inside (k/d) Gamma_+(f).

    The supporting lines of the Newton polyhedron are found by brute force
    over pairs of support points, independently of the hull code.
    """
    pts = set(f.terms)
    lines = [((1, 0), min(a for a, _ in pts)), ((0, 1), min(b for _, b in pts))]
    for A in pts:
        for B in pts:
            if A[0] < B[0] and A[1] > B[1]:
                p, q = A[1] - B[1], B[0] - A[0]
                g = gcd(p, q)
                p, q = p // g, q // g
                m = p * A[0] + q * A[1]
                if all(p * a + q * b >= m for a, b in pts):
                    lines.append(((p, q), m))
    c = Fraction(k, d)
    return {
        (a, b)
        for a in range(box)
        for b in range(box)
        if all(p * (a + 1) + q * (b + 1) > c * m for (p, q), m in lines)
    }


def _members(ideal: LocalIdeal, box: int = 40) -> set:
    return {(a, b) for a in range(box) for b in range(box) if ideal.contains(Germ.monomial(a, b))}


# -- ideals and the criterion ---------------------------------------------


def test_c39_thresholds():
    got = {k: [(tuple(c.covector), c.threshold) for c in criterion_thresholds(C39, k, 6)] for k in (3, 4, 5)}
    assert got[5] == [((1, 2), 3), ((2, 7), 7)]
    assert got[4] == [((1, 2), 2), ((2, 7), 4)]
    assert got[3] == [((1, 2), 1), ((2, 7), 1)]


def test_monomial_criterion_examples():
    assert str(multiplier_ideal_monomial(C39, 5, 6)) == "<u^4, u*v, v^2>"
    assert str(multiplier_ideal_monomial(C39, 3, 6)) == "<u, v>"
    assert str(multiplier_ideal_monomial(Germ.parse("v^2+u^6"), 4, 6)) == "<u, v>"


def test_monomial_criterion_rejects_bad_input():
    with pytest.raises(UnsupportedGermError):
        multiplier_ideal_monomial(Germ.parse("u*v^2+u^3"), 5, 6)
    with pytest.raises(UnsupportedGermError):
        multiplier_ideal_monomial(Germ.parse("v^2-2*u^3*v+u^6+u^7"), 5, 6)
    with pytest.raises(ValueError):
        multiplier_ideal_monomial(C39, 6, 6)


@pytest.mark.parametrize(
    "germ",
    ["v^2+u^7", "v^3+u^4", "v^3+u^2*v^2+u^9", "v^4+u^2*v^2+u^6", "v^6+u^6", "v^3+u^2*v^2+u^12", "v^4+u^3*v^2+u^5*v+u^7"],
)
@pytest.mark.parametrize("k", [1, 2, 3, 4, 5])
def test_monomial_criterion_matches_howald_oracle(germ, k):
    f = Germ.parse(germ)
    assert _members(multiplier_ideal_monomial(f, k, 6)) == howald_ideal(f, k, 6)


@pytest.mark.parametrize("germ", ["v^3+u^2*v^2+u^9", "v^5+u^7", "v^4+u^3*v^2+u^5*v+u^7", "v^2+u^13"])
@pytest.mark.parametrize("k", [2, 3, 4, 5])
def test_single_stage_charts_agree_with_criterion(germ, k):
    f = Germ.parse(germ)
    assert multiplier_ideal_charts(face_divisors(f), k, 6) == multiplier_ideal_monomial(f, k, 6)


def test_ideal_parse_print_and_equality():
    I = LocalIdeal.parse("<v^2-u^3, u^4, u^2*v, v^3>")
    assert str(I) == "<u^4, u^2*v, v^2-u^3, v^3>"
    assert I.colength == 6
    J = LocalIdeal.parse("<u^4, u^2*v, v^2-u^3>")
    assert I == J
    assert I != LocalIdeal.parse("<u^4, u^2*v, v^2>")
    assert str(LocalIdeal.unit()) == "<1>"
    assert LocalIdeal.maximal().colength == 1
    with pytest.raises(ParseError):
        LocalIdeal.parse("u, v")


def test_ideal_membership():
    I = LocalIdeal.parse("<u^3, u*v, v^2>")
    assert Germ.parse("u*v+v^2") in I
    assert Germ.parse("u^2") not in I
    assert Germ.parse("u^2+u^3") not in I


# -- the chart engine ------------------------------------------------------


def test_sp1_divisor_data_reproduces_printed_vectors():
    data = [dd for _, dd in sp_divisors(1)]
    assert tuple(dd.K for dd in data) == SP1_PRINTED["K"] == (1, 4, 2, 5, 12, 6)
    assert tuple(dd.f_mult for dd in data) == SP1_PRINTED["f"] == (4, 12, 6, 14, 30, 15)
    assert tuple(dd.u_mult for dd in data) == SP1_PRINTED["u"]
    assert tuple(dd.v_mult for dd in data) == SP1_PRINTED["v"]
    assert tuple(dd.threshold(5, 6) for dd in data) == (2, 6, 3, 6, 13, 6)


def test_sp2_divisor_data():
    data = {dd.label: dd for _, dd in sp_divisors(2)}
    assert [(data[r].K, data[r].f_mult) for r in ("R1", "R2", "R3")] == [(5, 14), (6, 16), (7, 18)]
    assert all((data[r].u_mult, data[r].v_mult) == (2, 3) for r in ("R1", "R2", "R3"))


def test_chart_valuation_examples():
    charts = {ch.label: ch for ch in sp_charts(1)}
    assert chart_valuation(charts["S2"], Germ.u()) == 4
    assert chart_valuation(charts["S2"], Germ.v()) == 6
    assert chart_valuation(charts["T1"], Germ.constant(1)) == 0


def test_chart_engine_on_sp():
    sp1, sp2 = sp_divisors(1), sp_divisors(2)
    assert multiplier_ideal_charts(sp1, 5, 6) == LocalIdeal.parse("<u^4, v^2-u^3, v^3, u^2*v>")
    assert multiplier_ideal_charts(sp1, 3, 6) == LocalIdeal.maximal()
    assert multiplier_ideal_charts(sp2, 4, 6) == LocalIdeal.parse("<u^3, u*v, v^2>")
    assert multiplier_ideal_charts(sp2, 5, 6) == LocalIdeal.parse("<u^4, v^2-u^3, v^3, u*v^2>")


@pytest.mark.parametrize("index", [1, 2])
@pytest.mark.parametrize("k", [2, 3, 4, 5])
def test_general_toric_engine_matches_fixed_charts(index, k):
    f = SingularityType("Sp", (index,)).normal_form()
    assert multiplier_ideal_charts(toric_divisors(f), k, 6) == multiplier_ideal_charts(sp_divisors(index), k, 6)


def test_sp_check_catches_transcription_errors(monkeypatch):
    import sextic_alexander.ideals as mod

    monkeypatch.setitem(mod.SP1_PRINTED, "K", (1, 4, 2, 5, 12, 7))
    with pytest.raises(VerificationError):
        sp_divisors(1)


# -- reference tables ------------------------------------------------------


def test_reference_examples():
    assert reference_ideal("A11", 4) == LocalIdeal.parse("<u^2, v>")
    assert reference_rho("A11", 4) == 2
    assert reference_rho("B6,6", 2) == 1
    assert reference_ideal("E6", 5) == LocalIdeal.parse("<u^2, v>")
    assert reference_rho("A3", 3) == 0
    with pytest.raises(KeyError):
        reference_ideal("A11", 7)


def test_tables_cover_the_catalog():
    simple = {(r.type, r.k) for r in load_table("simple")}
    assert {t.name for t in simple_types()} == {t for t, _ in simple}
    missing = [(t.name, k) for t in simple_types() for k in (4, 5) if (t.name, k) not in simple]
    # k = 5 is printed only up to A19 and D20
    assert missing == [("A20", 5), ("A21", 5), ("A22", 5), ("D21", 5)]
    nonsimple = {(r.type, r.k) for r in load_table("nonsimple")}
    assert {t.name for t in nonsimple_types()} == {t for t, _ in nonsimple}
    assert len({r.item for r in load_table("nonsimple")}) == 14


def test_tabulated_rho_is_the_colength_of_the_tabulated_ideal():
    bad = [
        (r.type, r.k)
        for which in ("simple", "nonsimple")
        for r in load_table(which)
        if r.ideal.colength != r.rho
    ]
    # B3,12 at k=5 prints <u^6, v^2> (colength 12) next to rho = 8
    assert bad == [("B3,12", 5)]


@pytest.mark.parametrize("which", ["simple", "nonsimple"])
def test_engine_matches_tables_outside_errata(which):
    for row in load_table(which):
        if (row.type, row.k) in ERRATA:
            continue
        got = engine_ideal(row.type, row.k)
        assert got == row.ideal, (row.type, row.k, str(got))
        assert got.colength == row.rho


def test_errata_rows():
    # C3,12 = v^3 + u^2 v^2 + u^12 at k=4: on the (1,5) face u^2 gives
    # 2 < floor(4*12/6) - 6 + 1 = 3, so u^2 is not in the ideal
    c = engine_ideal("C3,12", 4)
    assert c == LocalIdeal.parse("<u^3, v>") and c.colength == 3
    assert Germ.monomial(2, 0) not in c
    assert _members(c) == howald_ideal(parse_type("C3,12").normal_form(), 4, 6)
    b = engine_ideal("B3,12", 5)
    assert b == LocalIdeal.parse("<u^6, u^2*v, v^2>") and b.colength == 8
    assert b.colength == reference_rho("B3,12", 5)


def test_engine_rho_is_monotone_in_k():
    for t in list(simple_types()) + list(nonsimple_types()):
        rhos = [engine_ideal(t.name, k).colength for k in (1, 2, 3, 4, 5)]
        assert rhos == sorted(rhos), t.name


def test_regenerated_table_csv_shape():
    rows = regenerate_table("nonsimple")
    buf = io.StringIO()
    write_table(rows, buf)
    lines = buf.getvalue().splitlines()
    assert lines[0] == "type,k,generators,rho,item"
    assert len(lines) == len(load_table("nonsimple")) + 1
    assert '"C6,6",5,"<u^3, u*v, v^3>",5,3' in lines


def test_multiplier_ideal_dispatch_in_disguised_coordinates():
    # A5 after v -> v + u: <u^2, v> moves to <u^2, v + u>
    from sextic_alexander.poly import compose

    f = compose(Germ.parse("v^2+u^6"), Germ.u(), Germ.parse("v+u"))
    I = multiplier_ideal(f, 5, 6)
    assert I.colength == 2
    assert Germ.parse("u+v") in I and Germ.parse("u") not in I
