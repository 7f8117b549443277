import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ratcurves.construct import (
    curve_with_splitting,
    monomial_curve,
    monomial_splitting,
    monomial_tangent,
    random_curve,
)
from ratcurves.curve import CurveMap, is_unramified
from ratcurves.errors import DegenerateInput, DegreeMismatch, NotARelation
from ratcurves.field import FieldCtx
from ratcurves.poly import HomPoly
from ratcurves.syzygy import (
    ConicKind,
    Relation,
    SplittingType,
    classify_degree2_relation,
    dual_relation_check,
    minimal_generators,
    normal_profile,
    normal_splitting,
    relation_basis,
    relation_space_dim,
    tangent_splitting,
    verify_relation,
)

Q = FieldCtx.rationals()
P = FieldCtx.prime()


def decreasing_exponents(max_n=5, max_e=10):
    """``e = k_0 > ... > k_n = 0`` with ``k_1 = e - 1`` and ``k_(n-1) = 1``."""
    @st.composite
    def build(draw):
        n = draw(st.integers(3, max_n))
        e = draw(st.integers(n, max_e))
        middle = set()
        if n > 3:
            middle = draw(st.sets(st.integers(2, e - 2), min_size=n - 3, max_size=n - 3))
        return (e, e - 1, *sorted(middle, reverse=True), 1, 0)
    return build()


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_rational_normal_curve(n):
    f = monomial_curve(tuple(range(n, -1, -1)), Q)
    assert normal_splitting(f) == SplittingType((2,) * (n - 1), n)
    assert tangent_splitting(f) == SplittingType((1,) * n, n)


@given(decreasing_exponents())
def test_monomial_closed_forms(k):
    f = monomial_curve(k, Q)
    assert is_unramified(f)
    assert normal_splitting(f) == monomial_splitting(k)
    assert tangent_splitting(f) == monomial_tangent(k)


def test_ramified_monomial_gives_jacobian_kernel():
    k = (4, 2, 1, 0)
    f = monomial_curve(k, Q)
    assert normal_splitting(f) == monomial_splitting(k, ramified_ok=True)


@given(st.integers(3, 5), st.integers(0, 2), st.integers(0, 10_000))
def test_random_curves_have_consistent_splittings(n, extra, seed):
    e = n + extra
    f = random_curve(n, e, random.Random(seed), P)
    split = normal_splitting(f)
    assert split.rank == n - 1 and split.degree == 2 * e - 2 and split.twists[0] >= 2
    tang = tangent_splitting(f)
    assert tang.rank == n and tang.degree == e


@given(st.lists(st.integers(2, 6), min_size=2, max_size=4).filter(lambda b: sum(b) % 2 == 0))
def test_relation_dimensions_follow_the_ramp(b):
    f = curve_with_splitting(b)
    split, table = normal_profile(f)
    assert list(split.twists) == sorted(b)
    for deg in range(0, max(b) + 2):
        assert relation_space_dim(f, deg) == split.ramp(deg)
    assert all(r == split.ramp(deg) for deg, r in table.items())


@given(st.lists(st.integers(2, 5), min_size=2, max_size=4).filter(lambda b: sum(b) % 2 == 0))
def test_minimal_generators_are_relations_with_dual_identities(b):
    f = curve_with_splitting(b)
    gens = minimal_generators(f)
    assert sorted(g.b for g in gens) == sorted(b)
    for g in gens:
        assert verify_relation(f, g)
        assert dual_relation_check(f, g)


def test_relation_basis_entries_annihilate():
    f = monomial_curve((5, 4, 2, 1, 0), Q)
    for deg in range(4):
        basis = relation_basis(f, deg)
        assert len(basis) == relation_space_dim(f, deg)
        assert all(verify_relation(f, a) for a in basis)


def test_non_relation_rejected():
    f = monomial_curve((3, 2, 1, 0), Q)
    a = Relation.from_polys([HomPoly.monomial(1, 0, Q)] + [HomPoly.zero(1, Q)] * 3)
    assert not verify_relation(f, a)
    with pytest.raises(NotARelation):
        dual_relation_check(f, a)


def test_base_point_and_hyperplane_rejected():
    s = HomPoly.monomial(1, 0, Q)
    base = CurveMap.from_polys([s * HomPoly.monomial(2 - i, i, Q) for i in range(3)] + [HomPoly.zero(3, Q)])
    with pytest.raises(DegenerateInput):
        normal_splitting(base)
    comps = [HomPoly.monomial(3 - i, i, Q) for i in range(4)]
    flat = CurveMap.from_polys(comps + [comps[0] + comps[3]])
    with pytest.raises(DegenerateInput):
        normal_splitting(flat)


def _rel(*entries):
    return Relation.from_polys([HomPoly.from_coeffs(c, Q) for c in entries])


def test_conic_classification():
    assert classify_degree2_relation(_rel([0, 0, 1], [0, -2, 0], [1, 0, 0], [0, 0, 0])) is ConicKind.SMOOTH_CONIC
    assert classify_degree2_relation(_rel([1, 0, 0], [0, 0, 1], [1, 0, 1], [0, 0, 0])) is ConicKind.DOUBLE_LINE
    assert classify_degree2_relation(_rel([1, 0, 0], [0, 1, 0], [0, 0, 0], [0, 0, 0])) is ConicKind.COMMON_ROOT
    with pytest.raises(DegreeMismatch):
        classify_degree2_relation(_rel([1, 0], [0, 1], [0, 0]))


def test_relation_invariants():
    with pytest.raises(DegreeMismatch):
        Relation(2, (HomPoly.zero(2, Q), HomPoly.zero(1, Q)))
    with pytest.raises(DegreeMismatch):
        Relation(1, (HomPoly.zero(1, Q), HomPoly.zero(1, Q)))
    a = _rel([1, 2], [3, 4])
    assert Relation.from_vector(a.vector(), 1, Q) == a


def test_splitting_type_rendering():
    st_ = SplittingType((4, 2, 2, 3, 3, 4, 2), 11)
    assert st_.twists == (2, 2, 2, 3, 3, 4, 4)
    assert st_.summands() == "O(13)^3 + O(14)^2 + O(15)^2"
    assert not st_.is_balanced() and SplittingType((3, 4, 4), 5).is_balanced()
    assert st_.ramp(2) == 3 and st_.ramp(1) == 0
