import json
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ratcurves.construct import monomial_curve, random_curve
from ratcurves.curve import (
    CurveMap,
    apply_ambient,
    apply_reparam,
    is_basepoint_free,
    is_nondegenerate,
    is_unramified,
    jacobian,
)
from ratcurves.errors import DegreeMismatch, ParseError, SingularMatrix
from ratcurves.field import FieldCtx
from ratcurves.poly import HomPoly

Q = FieldCtx.rationals()
P = FieldCtx.prime()


def twisted_cubic(F=Q):
    return monomial_curve((3, 2, 1, 0), F)


def test_twisted_cubic_flags():
    f = twisted_cubic()
    assert is_basepoint_free(f) and is_nondegenerate(f) and is_unramified(f)


def test_cuspidal_monomial_is_ramified():
    f = monomial_curve((4, 2, 1, 0), Q)
    assert is_basepoint_free(f) and is_nondegenerate(f)
    assert not is_unramified(f)


def test_base_point_detected():
    s = HomPoly.monomial(1, 0, Q)
    comps = [s * HomPoly.monomial(2 - i, i, Q) for i in range(3)]
    f = CurveMap.from_polys(comps + [HomPoly.zero(3, Q)])
    assert not is_basepoint_free(f)


def test_hyperplane_curve_is_degenerate():
    comps = [HomPoly.monomial(3 - i, i, Q) for i in range(3)]
    comps.append(comps[0] + comps[1])
    assert not is_nondegenerate(CurveMap.from_polys(comps))


def test_jacobian_satisfies_euler_relation():
    f = random_curve(4, 6, random.Random(1), P)
    J = jacobian(f)
    s, t = HomPoly.monomial(1, 0, P), HomPoly.monomial(0, 1, P)
    for ds, dt, c in zip(J.ds, J.dt, f.components):
        assert s * ds + t * dt == c.scale(f.e)


def _invertible(size, rng):
    while True:
        M = [[rng.randrange(-5, 6) for _ in range(size)] for _ in range(size)]
        try:
            from ratcurves.linalg import det
            if det(M, Q) != 0:
                return M
        except ZeroDivisionError:
            continue


@given(st.integers(0, 10_000))
def test_flags_invariant_under_group(seed):
    rng = random.Random(seed)
    f = monomial_curve((5, 4, 2, 1, 0), Q)
    g = apply_ambient(f, _invertible(5, rng))
    h = apply_reparam(f, _invertible(2, rng))
    for moved in (g, h):
        assert is_basepoint_free(moved) == is_basepoint_free(f)
        assert is_nondegenerate(moved) == is_nondegenerate(f)
        assert is_unramified(moved) == is_unramified(f)


def test_singular_group_elements_rejected():
    f = twisted_cubic()
    with pytest.raises(SingularMatrix):
        apply_ambient(f, [[1, 0, 0, 0]] * 4)
    with pytest.raises(SingularMatrix):
        apply_reparam(f, [[1, 1], [1, 1]])
    with pytest.raises(DegreeMismatch):
        apply_ambient(f, [[1, 0], [0, 1]])


def test_constructor_invariants():
    with pytest.raises(DegreeMismatch):
        CurveMap(1, 2, (HomPoly.monomial(2, 0, Q), HomPoly.monomial(0, 2, Q)), Q)
    with pytest.raises(DegreeMismatch):
        CurveMap.from_polys([HomPoly.zero(2, Q)] * 3)
    with pytest.raises(DegreeMismatch):
        CurveMap(2, 2, (HomPoly.monomial(2, 0, Q), HomPoly.monomial(0, 2, Q), HomPoly.monomial(0, 1, Q)), Q)


@pytest.mark.parametrize("F", [Q, P])
def test_json_round_trip(F):
    f = twisted_cubic(F)
    assert CurveMap.loads(f.dumps()) == f


@pytest.mark.parametrize("mutate", [
    lambda d: d.pop("field"),
    lambda d: d.update(n=1),
    lambda d: d.update(e="3"),
    lambda d: d.update(components=d["components"][:2]),
    lambda d: d["components"][0].update(degree=2, coeffs=["1", "0", "0"]),
    lambda d: d.update(field={"kind": "Fp", "p": 12}),
])
def test_loads_rejects_malformed(mutate):
    d = twisted_cubic().to_dict()
    mutate(d)
    with pytest.raises(ParseError):
        CurveMap.loads(json.dumps(d))


def test_loads_rejects_invalid_json():
    with pytest.raises(ParseError):
        CurveMap.loads("{")
