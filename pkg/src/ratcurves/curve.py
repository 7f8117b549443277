"""Parameterized rational curves ``f = (f_0 : ... : f_n)`` and their Jacobians."""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations

from . import linalg
from .errors import DegreeMismatch, ParseError, SingularMatrix, UnsupportedField
from .field import FieldCtx
from .poly import HomPoly, gcd_many, partial, reparameterize


@dataclass(frozen=True)
class CurveMap:
    n: int
    e: int
    components: tuple
    field: FieldCtx

    def __post_init__(self):
        if self.n < 2:
            raise DegreeMismatch(f"ambient dimension must be >= 2, got {self.n}")
        if self.e < 1:
            raise DegreeMismatch(f"degree must be >= 1, got {self.e}")
        if len(self.components) != self.n + 1:
            raise DegreeMismatch(f"need {self.n + 1} components, got {len(self.components)}")
        for i, c in enumerate(self.components):
            if c.degree != self.e:
                raise DegreeMismatch(f"component {i} has degree {c.degree}, expected {self.e}")
            if c.field != self.field:
                raise UnsupportedField(f"component {i} lives over {c.field}, curve over {self.field}")
        if all(c.is_zero() for c in self.components):
            raise DegreeMismatch("all components are zero")

    @classmethod
    def from_polys(cls, polys, field: FieldCtx | None = None) -> CurveMap:
        polys = tuple(polys)
        field = field or polys[0].field
        return cls(len(polys) - 1, polys[0].degree, polys, field)

    def coefficient_matrix(self):
        """``(n+1) x (e+1)`` matrix of raw coefficients."""
        return [list(c.coeffs) for c in self.components]

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "e": self.e,
            "field": self.field.to_dict(),
            "components": [c.to_dict() for c in self.components],
        }

    @classmethod
    def from_dict(cls, data) -> CurveMap:
        if not isinstance(data, dict):
            raise ParseError("curve: expected a JSON object")
        for key in ("n", "e", "field", "components"):
            if key not in data:
                raise ParseError(f"{key}: missing")
        n, e = data["n"], data["e"]
        if not isinstance(n, int) or isinstance(n, bool) or n < 2:
            raise ParseError("n: expected an integer >= 2")
        if not isinstance(e, int) or isinstance(e, bool) or e < 1:
            raise ParseError("e: expected an integer >= 1")
        field = FieldCtx.from_dict(data["field"])
        comps = data["components"]
        if not isinstance(comps, list) or len(comps) != n + 1:
            raise ParseError(f"components: expected a list of {n + 1} polynomials")
        polys = []
        for i, c in enumerate(comps):
            p = HomPoly.from_dict(c, field, where=f"components[{i}]")
            if p.degree != e:
                raise ParseError(f"components[{i}].degree: expected {e}, got {p.degree}")
            polys.append(p)
        if all(p.is_zero() for p in polys):
            raise ParseError("components: all zero")
        return cls(n, e, tuple(polys), field)

    def dumps(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def loads(cls, text: str) -> CurveMap:
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"curve: invalid JSON ({exc})") from exc
        return cls.from_dict(data)


@dataclass(frozen=True)
class JacobianMatrix:
    """Rows ``(d_s f_0, ..., d_s f_n)`` and ``(d_t f_0, ..., d_t f_n)``."""

    ds: tuple
    dt: tuple

    @property
    def rows(self):
        return (self.ds, self.dt)

    def minor(self, i: int, j: int) -> HomPoly:
        return self.ds[i] * self.dt[j] - self.ds[j] * self.dt[i]

    def minors(self):
        for i, j in combinations(range(len(self.ds)), 2):
            yield self.minor(i, j)


def jacobian(f: CurveMap) -> JacobianMatrix:
    return JacobianMatrix(
        tuple(partial(c, "s") for c in f.components),
        tuple(partial(c, "t") for c in f.components),
    )


def is_basepoint_free(f: CurveMap) -> bool:
    return gcd_many(f.components).degree == 0


def is_nondegenerate(f: CurveMap) -> bool:
    M = linalg.to_dense(f.coefficient_matrix(), f.e + 1, f.field)
    return linalg.rank(M, f.field, f.e + 1) == f.n + 1


def is_unramified(f: CurveMap) -> bool:
    """``d f`` has rank two at every point: the 2x2 minors share no root."""
    g = None
    for m in jacobian(f).minors():
        if m.is_zero():
            continue
        g = m.monic() if g is None else gcd_many([g, m])
        if g.degree == 0:
            return True
    return False


def _square(M, size, field):
    rows = [[field(x) for x in row] for row in M]
    if len(rows) != size or any(len(r) != size for r in rows):
        raise DegreeMismatch(f"expected a {size}x{size} matrix")
    if linalg.det(rows, field) == 0:
        raise SingularMatrix("matrix is singular")
    return rows


def apply_ambient(f: CurveMap, M) -> CurveMap:
    """Replace the components by ``M @ (f_0, ..., f_n)``."""
    F = f.field
    rows = _square(M, f.n + 1, F)
    comps = []
    for row in rows:
        acc = HomPoly.zero(f.e, F)
        for c, p in zip(row, f.components):
            if c != 0:
                acc = acc + p.scale(c)
        comps.append(acc)
    return CurveMap(f.n, f.e, tuple(comps), F)


def apply_reparam(f: CurveMap, g) -> CurveMap:
    F = f.field
    rows = _square(g, 2, F)
    return CurveMap(f.n, f.e, tuple(reparameterize(c, rows) for c in f.components), F)
