import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from ratcurves.construct import (
    b_spec_dk,
    bjk_conics,
    chained_pair,
    monomial_curve,
    sacchiero,
    sacchiero_relations,
    separated_pair,
)
from ratcurves.curve import CurveMap
from ratcurves.errors import AssumptionViolated, DegenerateConic, FieldTooLarge, HypothesisViolated
from ratcurves.field import FieldCtx
from ratcurves.poly import HomPoly
from ratcurves.strata import (
    PlaneMeet,
    all_conics_codim,
    analyze_curve,
    bjk_fiber_formula,
    dim_mor,
    dims_two_conics,
    expected_codim_conics,
    expected_codim_dk,
    fiber_dim,
    fiber_nullity,
    fiber_system,
    h1_end,
    negative_dim_threshold,
    orbit_tangency_smallfield,
    p4_conics_dim,
    p4_expected_dim,
    parameterized_tangency,
    plane_intersection_type,
    stratum_report,
)
from ratcurves.syzygy import Relation, SplittingType

Q = FieldCtx.rationals()
P = FieldCtx.prime()


def h1_line_bundle(m):
    return max(0, -m - 1)


@given(st.lists(st.integers(1, 30), min_size=1, max_size=8))
def test_h1_end_matches_sum_over_pairs(b):
    expected = sum(h1_line_bundle(x - y) for x in b for y in b)
    assert h1_end(SplittingType(b, 0)) == expected


@given(st.integers(3, 14), st.integers(1, 80), st.integers(2, 5), st.integers(1, 12))
def test_closed_form_codim_equals_h1(n, e, d, k):
    assume(k <= n - 2 and 2 * e >= (d + 1) * (n - 1) - k + 2)
    assert expected_codim_dk(n, e, d, k) == h1_end(b_spec_dk(n, e, d, k))
    if d == 2:
        assert expected_codim_conics(n, e, k) == expected_codim_dk(n, e, d, k)


def test_codim_precondition():
    with pytest.raises(AssumptionViolated):
        expected_codim_dk(8, 5, 2, 3)


@pytest.mark.parametrize("n", [4, 6, 10])
def test_all_conics_codim_is_h1(n):
    e = 3 * n
    b = [2] * (n - 2) + [2 * e - 2 - 2 * (n - 2)]
    assert all_conics_codim(n, e) == h1_end(SplittingType(b, e))


def test_negative_dimension_threshold():
    assert negative_dim_threshold(10) == 36
    assert all_conics_codim(10, 35) < 36 * 11 <= all_conics_codim(10, 36) + 11


def test_two_conic_dimensions():
    assert dims_two_conics(5, 7) == (43, 43) == (dim_mor(5, 7) - 4,) * 2
    g, pt = dims_two_conics(7, 20)
    assert pt > g
    with pytest.raises(HypothesisViolated):
        dims_two_conics(5, 6)


@pytest.mark.parametrize("e", [5, 6, 9])
def test_p4_excess(e):
    assert p4_expected_dim(e) == e + 23
    assert p4_conics_dim(e) == 2 * e + 18


@pytest.mark.parametrize("k, j", [(1, 1), (2, 1), (2, 2)])
def test_conic_fiber_dimension(k, j):
    n, e = 3 * k - 1 if k > 1 else 3, 12
    assert fiber_dim(bjk_conics(n, k, j, Q), n, e) == bjk_fiber_formula(n, e, k, j)


def test_curve_lies_in_its_own_fiber():
    b = [2, 4, 5, 5]
    f = sacchiero(5, 9, b, field=Q)
    M, ncols = fiber_system(sacchiero_relations(5, b, Q), 5, 9)
    x = [c for comp in f.components for c in comp.coeffs]
    assert len(x) == ncols
    assert all(sum(a * v for a, v in zip(row, x)) == 0 for row in M)
    assert fiber_nullity(sacchiero_relations(5, b, Q), 5, 9) >= 1


def _conic(n, start, F=Q):
    forms = (HomPoly.monomial(2, 0, F), HomPoly.monomial(1, 1, F, -2), HomPoly.monomial(0, 2, F))
    entries = [HomPoly.zero(2, F)] * (n + 1)
    for i, x in enumerate(forms):
        entries[start + i] = x
    return Relation(2, tuple(entries))


def test_tangency_of_conic_pairs():
    assert parameterized_tangency(_conic(5, 0), _conic(5, 1))
    assert not parameterized_tangency(_conic(5, 0), _conic(5, 3))
    a, b = chained_pair(5, 3, 0, Q)
    assert parameterized_tangency(a, b)
    a, b = separated_pair(5, 3, 0, Q)
    assert not parameterized_tangency(a, b)


def test_orbit_search_small_field():
    F = FieldCtx.prime(7)
    assert orbit_tangency_smallfield(_conic(5, 0, F), _conic(5, 1, F))
    with pytest.raises(FieldTooLarge):
        orbit_tangency_smallfield(_conic(5, 0, P), _conic(5, 1, P))


def test_plane_meetings():
    assert plane_intersection_type(_conic(5, 0), _conic(5, 0)) is PlaneMeet.SAME_PLANE
    assert plane_intersection_type(_conic(5, 0), _conic(5, 1)) is PlaneMeet.LINE
    assert plane_intersection_type(_conic(5, 0), _conic(5, 2)) is PlaneMeet.POINT
    assert plane_intersection_type(_conic(5, 0), _conic(5, 3)) is PlaneMeet.DISJOINT
    flat = Relation(2, (HomPoly.monomial(2, 0, Q), HomPoly.monomial(1, 1, Q)) + (HomPoly.zero(2, Q),) * 4)
    with pytest.raises(DegenerateConic):
        plane_intersection_type(flat, _conic(5, 0))


def test_analysis_of_a_two_conic_curve():
    f = sacchiero(5, 7, [2, 2, 4, 4], field=Q)
    a = analyze_curve(f)
    assert a.normal.twists == (2, 2, 4, 4) and a.dual_checks_passed
    assert [k.value for k in a.conic_kinds] == ["SmoothConic", "SmoothConic"]
    d = a.to_dict()
    assert d["normal_splitting"]["twists"] == [2, 2, 4, 4]


def test_analysis_reports_base_point():
    s = HomPoly.monomial(1, 0, Q)
    f = CurveMap.from_polys([s * HomPoly.monomial(2 - i, i, Q) for i in range(3)] + [HomPoly.zero(3, Q)])
    a = analyze_curve(f)
    assert a.error and "error" in a.to_dict()


def test_stratum_report_marks_wrong_witness():
    spec = SplittingType((2, 2), 3)
    rep = stratum_report(3, 3, spec, [monomial_curve((3, 2, 1, 0), Q), monomial_curve((4, 3, 1, 0), Q)],
                         ["twisted cubic", "quartic"])
    assert rep.expected_dim == dim_mor(3, 3)
    assert rep.witnesses[0]["verified"] and not rep.witnesses[1]["verified"]
    assert rep.to_dict()["witnesses"][0]["id"] == "twisted cubic"


def _moved(a, g):
    from ratcurves.poly import reparameterize
    return Relation(a.b, tuple(reparameterize(x, g) for x in a.entries))


def test_orbit_search_recovers_a_hidden_reparameterization():
    F = FieldCtx.prime(7)
    g = [[2, 3], [1, 4]]
    a, b = _moved(_conic(5, 0, F), g), _moved(_conic(5, 1, F), g)
    assert not parameterized_tangency(a, b)
    assert orbit_tangency_smallfield(a, b)
    assert not orbit_tangency_smallfield(_conic(5, 0, F), _conic(5, 3, F))


def test_tangency_example_with_reversed_conics():
    forms = (HomPoly.monomial(0, 2, Q), HomPoly.monomial(1, 1, Q, -2), HomPoly.monomial(2, 0, Q))
    zero = HomPoly.zero(2, Q)
    alpha = Relation(2, forms + (zero,) * 3)
    beta = Relation(2, (zero,) + forms + (zero,) * 2)
    assert parameterized_tangency(alpha, beta)


@given(st.lists(st.integers(1, 20), min_size=1, max_size=7))
def test_h1_vanishes_exactly_on_balanced(b):
    E = SplittingType(b, 0)
    assert (h1_end(E) == 0) == E.is_balanced()


@given(st.integers(1, 3), st.integers(6, 14))
def test_adding_a_relation_never_grows_the_fiber(k, e):
    n = 3 * k + 2
    rels = bjk_conics(n, k + 1, 1, Q)
    dims = [fiber_dim(rels[:i], n, e) for i in range(1, len(rels) + 1)]
    assert dims == sorted(dims, reverse=True)


def test_p4_boundary_and_two_conic_gap():
    assert p4_conics_dim(5) == p4_expected_dim(5) == 28
    assert p4_conics_dim(6) == 30 > p4_expected_dim(6) == 29
    for n, e in ((5, 7), (6, 12), (9, 20)):
        g, pt = dims_two_conics(n, e)
        assert pt - g == e - 2 * n + 3
        assert g == dim_mor(n, e) - h1_end(b_spec_dk(n, e, 2, 2))
