"""Relations among the Jacobian columns and the splitting types they determine.

The conormal bundle of an unramified curve is the kernel of
``O(-e)^(n+1) -> O(-1)^2`` given by the Jacobian, so ``N_f = sum O(e + b_i)``
exactly when the module of relations ``sum a_i d f_i = 0`` is free on
generators of degrees ``b_i``.  For a free module the dimension ``r(b)`` of the
degree-``b`` piece is ``sum_i max(0, b - b_i + 1)``, whose second difference
counts generators in degree ``b``.  Every ``r(b)`` here is one exact nullspace.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from . import linalg
from .curve import CurveMap, is_basepoint_free, is_nondegenerate, is_unramified, jacobian
from .errors import (
    DegenerateInput,
    DegreeMismatch,
    LemmaViolation,
    NonFreeProfile,
    NotARelation,
)
from .poly import HomPoly, gcd_many, partial


@dataclass(frozen=True)
class Relation:
    b: int
    entries: tuple

    def __post_init__(self):
        for i, a in enumerate(self.entries):
            if a.degree != self.b:
                raise DegreeMismatch(f"entry {i} has degree {a.degree}, relation degree is {self.b}")
        if all(a.is_zero() for a in self.entries):
            raise DegreeMismatch("a relation cannot be identically zero")

    @property
    def field(self):
        return self.entries[0].field

    @classmethod
    def from_vector(cls, vec, b: int, field) -> Relation:
        """Inverse of :meth:`vector` (entry index major, monomial index minor)."""
        w = b + 1
        entries = tuple(HomPoly(b, tuple(vec[i * w:(i + 1) * w]), field)
                        for i in range(len(vec) // w))
        return cls(b, entries)

    @classmethod
    def from_polys(cls, polys) -> Relation:
        polys = tuple(polys)
        return cls(polys[0].degree, polys)

    def vector(self) -> list:
        return [c for a in self.entries for c in a.coeffs]

    def coefficient_vectors(self):
        """The ``b + 1`` vectors in ``k^(n+1)`` multiplying ``s^(b-j) t^j``."""
        return [[a.coeffs[j] for a in self.entries] for j in range(self.b + 1)]

    def to_dict(self) -> dict:
        return {"b": self.b, "entries": [a.to_dict() for a in self.entries]}

    def __str__(self):
        return "(" + ", ".join(str(a) for a in self.entries) + ")"


@dataclass(frozen=True)
class SplittingType:
    """Twists ``(b_1 <= ... <= b_r)`` of a bundle written as ``sum O(baseline + b_i)``."""

    twists: tuple
    baseline: int

    def __post_init__(self):
        object.__setattr__(self, "twists", tuple(sorted(int(b) for b in self.twists)))

    @property
    def rank(self) -> int:
        return len(self.twists)

    @property
    def degree(self) -> int:
        return sum(self.twists)

    def is_balanced(self) -> bool:
        return not self.twists or self.twists[-1] - self.twists[0] <= 1

    def ramp(self, b: int) -> int:
        """Dimension of the degree-``b`` part of the free module on these twists."""
        return sum(max(0, b - bi + 1) for bi in self.twists)

    def to_dict(self) -> dict:
        return {"baseline": self.baseline, "twists": list(self.twists)}

    def summands(self) -> str:
        """``O(13)^3 + O(14)^2`` style rendering."""
        parts = []
        for b in sorted(set(self.twists)):
            m = self.twists.count(b)
            parts.append(f"O({self.baseline + b})" + (f"^{m}" if m > 1 else ""))
        return " + ".join(parts)


# -- linear systems --------------------------------------------------------------

def _product_system(groups, unknown_degree: int, field):
    """Matrix of ``x -> (sum_i P[g][i] * x_i)_g`` on coefficient vectors.

    ``groups[g][i]`` is the known form multiplying unknown ``x_i`` (all forms
    in a group share a degree); ``x_i`` has degree ``unknown_degree``.
    """
    w = unknown_degree + 1
    nunk = len(groups[0])
    heights = [groups[g][0].degree + w for g in range(len(groups))]
    if field.is_prime:
        M = np.zeros((sum(heights), nunk * w), dtype=np.int64 if field.modulus < 2**31 else object)
        offset = 0
        for g, polys in enumerate(groups):
            for i, P in enumerate(polys):
                col = np.array([int(c) % field.modulus for c in P.coeffs], dtype=M.dtype)
                for l in range(w):
                    M[offset + l:offset + l + len(col), i * w + l] = col
            offset += heights[g]
        return M, nunk * w
    sm = linalg.SparseMatrix(sum(heights), nunk * w, field)
    offset = 0
    for g, polys in enumerate(groups):
        for i, P in enumerate(polys):
            for m, c in enumerate(P.coeffs):
                if c == 0:
                    continue
                for l in range(w):
                    sm.add(offset + l + m, i * w + l, c)
        offset += heights[g]
    return sm.dense(), nunk * w


def _jacobian_system(f: CurveMap, b: int):
    J = jacobian(f)
    return _product_system([J.ds, J.dt], b, f.field)


def _euler_system(f: CurveMap, b: int):
    return _product_system([f.components], b, f.field)


def relation_space_dim(f: CurveMap, b: int) -> int:
    """``r(b)``: dimension of the degree-``b`` relations among the columns of ``d f``."""
    if b < 0:
        return 0
    M, ncols = _jacobian_system(f, b)
    return linalg.nullity(M, ncols, f.field)


def relation_basis(f: CurveMap, b: int) -> list[Relation]:
    """Basis of degree-``b`` relations in reduced row echelon form."""
    if b < 0:
        return []
    M, ncols = _jacobian_system(f, b)
    return [Relation.from_vector(v, b, f.field) for v in linalg.nullspace_dense(M, ncols, f.field)]


def _ramp(twists, b: int) -> int:
    return sum(max(0, b - x + 1) for x in twists)


def _profile(dim_at, target: int, bound: int):
    """Generator degrees of a free graded module from its dimension function.

    If ``twists`` are the generators found so far, ``dim_at(b)`` exceeds their
    ramp exactly for ``b`` at or beyond the next generator degree, so that
    degree is located by a galloping search followed by bisection.  The excess
    at that degree is the number of new generators there (the second
    difference of ``dim_at``).
    """
    table = {}

    def r(b):
        if b not in table:
            table[b] = dim_at(b)
        return table[b]

    twists = []
    b = 0
    while len(twists) < target:
        lo, hi, step = b, b, 1
        while hi > bound or r(hi) <= _ramp(twists, hi):
            if hi >= bound:
                raise NonFreeProfile(f"found {len(twists)} of {target} generators by degree {bound}")
            lo = hi + 1
            hi = min(hi + step, bound)
            step *= 2
        while lo < hi:
            mid = (lo + hi) // 2
            if r(mid) > _ramp(twists, mid):
                hi = mid
            else:
                lo = mid + 1
        b = lo
        if r(b) < _ramp(twists, b):
            raise NonFreeProfile(f"relation space in degree {b} is smaller than its known part")
        twists.extend([b] * (r(b) - _ramp(twists, b)))
        b += 1
    if len(twists) != target:
        raise NonFreeProfile(f"found {len(twists)} generators, expected {target}")
    return twists, dict(sorted(table.items()))


def _check_input(f: CurveMap):
    if not is_basepoint_free(f):
        raise DegenerateInput("components share a common factor (base point)")


def normal_profile(f: CurveMap):
    """``(SplittingType, {b: r(b)})`` for the kernel of the Jacobian.

    The table holds every ``r(b)`` that was computed by a nullspace.
    """
    _check_input(f)

    if not is_nondegenerate(f) and relation_space_dim(f, 1) > 0:
        raise DegenerateInput("curve lies in a hyperplane")
    twists, table = _profile(lambda b: relation_space_dim(f, b), f.n - 1, 2 * f.e - 2)
    split = SplittingType(twists, f.e)
    if split.degree != 2 * f.e - 2 and is_unramified(f):
        raise NonFreeProfile(f"twists sum to {split.degree}, expected {2 * f.e - 2}")
    return split, table


def normal_splitting(f: CurveMap) -> SplittingType:
    """Splitting type of ``N_f`` (of the Jacobian kernel when ``f`` is ramified)."""
    return normal_profile(f)[0]


def tangent_profile(f: CurveMap):
    _check_input(f)
    twists, table = _profile(lambda b: linalg.nullity(*_euler_system(f, b), f.field), f.n, f.e)
    split = SplittingType(twists, f.e)
    if split.degree != f.e:
        raise NonFreeProfile(f"tangent twists sum to {split.degree}, expected {f.e}")
    return split, table


def tangent_splitting(f: CurveMap) -> SplittingType:
    """Twists ``c_i`` with ``f^* T_{P^n} = sum O(e + c_i)``, read off the Euler kernel."""
    return tangent_profile(f)[0]


def _shift(vec, b: int, nentries: int, var: str, field):
    """Coefficient vector of ``s * a`` or ``t * a`` for a degree-``b`` relation vector."""
    w = b + 1
    out = []
    for i in range(nentries):
        block = list(vec[i * w:(i + 1) * w])
        out.extend(block + [field.zero] if var == "s" else [field.zero] + block)
    return out


def minimal_generators(f: CurveMap) -> list[Relation]:
    """``n - 1`` relations generating the relation module.

    In each generator degree ``b`` the degree-``b`` relations are reduced
    modulo the ``s``- and ``t``-multiples of the degree ``b - 1`` relations and
    the reduced representatives are put in reduced echelon form.
    """
    split = normal_splitting(f)
    F = f.field
    nent = f.n + 1
    gens = []
    for b in sorted(set(split.twists)):
        need = split.twists.count(b)
        width = nent * (b + 1)
        lower = [_shift(r.vector(), b - 1, nent, v, F)
                 for r in relation_basis(f, b - 1) for v in ("s", "t")]
        low_rows, low_piv = linalg.rref(lower, width, F)
        reduced = [linalg.reduce_against(r.vector(), low_rows, low_piv, F)
                   for r in relation_basis(f, b)]
        reduced = [v for v in reduced if any(x != 0 for x in v)]
        rows, _ = linalg.rref(reduced, width, F)
        if len(rows) != need:
            raise NonFreeProfile(f"degree {b}: {len(rows)} new generators, expected {need}")
        gens.extend(Relation.from_vector(v, b, F) for v in rows)
    return gens


def _pairing(polys_a, polys_b) -> HomPoly:
    total = None
    for x, y in zip(polys_a, polys_b):
        term = x * y
        total = term if total is None else total + term
    return total


def _check_shape(f: CurveMap, a: Relation):
    if len(a.entries) != f.n + 1:
        raise DegreeMismatch(f"relation has {len(a.entries)} entries, curve has {f.n + 1} components")
    if a.field != f.field:
        raise DegreeMismatch(f"relation over {a.field}, curve over {f.field}")


def verify_relation(f: CurveMap, a: Relation) -> bool:
    _check_shape(f, a)
    J = jacobian(f)
    return _pairing(a.entries, J.ds).is_zero() and _pairing(a.entries, J.dt).is_zero()


def dual_relation_check(f: CurveMap, a: Relation) -> bool:
    """Check the dual identities ``sum f_i d a_i = 0`` and ``sum a_i f_i = 0``."""
    if not verify_relation(f, a):
        raise NotARelation("tuple does not annihilate the Jacobian")
    if not _pairing(a.entries, f.components).is_zero():
        raise LemmaViolation("Euler pairing sum a_i f_i is nonzero")
    if a.b > 0:
        for var in ("s", "t"):
            da = [partial(x, var) for x in a.entries]
            if not _pairing(f.components, da).is_zero():
                raise LemmaViolation(f"sum f_i d_{var} a_i is nonzero")
    return True


class ConicKind(str, enum.Enum):
    SMOOTH_CONIC = "SmoothConic"
    DOUBLE_LINE = "DoubleLine"
    COMMON_ROOT = "CommonRootDegenerate"


def classify_degree2_relation(a: Relation) -> ConicKind:
    """Geometry of the degree-two map ``P^1 -> P^(n*)`` defined by a relation."""
    if a.b != 2:
        raise DegreeMismatch(f"expected a degree-2 relation, got degree {a.b}")
    if gcd_many(a.entries).degree > 0:
        return ConicKind.COMMON_ROOT
    F = a.field
    span = linalg.rref(a.coefficient_vectors(), len(a.entries), F)[0]
    if len(span) <= 2:
        return ConicKind.DOUBLE_LINE
    return ConicKind.SMOOTH_CONIC
