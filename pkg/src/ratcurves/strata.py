"""Dimension counts for splitting strata and the geometry of low-degree relations.

Closed-form dimension counts live next to routines that recompute the same
numbers by raw linear algebra.  Dimensions of spaces of maps follow the
projective convention ``dim Mor_e = (n+1)(e+1) - 1`` unless a function says
otherwise.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field as dc_field
from itertools import combinations, product

from . import linalg
from .construct import b_spec_dk
from .curve import CurveMap, is_basepoint_free, is_nondegenerate, is_unramified
from .errors import (
    AssumptionViolated,
    DegenerateConic,
    DegreeMismatch,
    FieldTooLarge,
    HypothesisViolated,
    RatCurvesError,
)
from .poly import exact_quotient, partial, reparameterize
from .syzygy import (
    ConicKind,
    Relation,
    SplittingType,
    classify_degree2_relation,
    dual_relation_check,
    minimal_generators,
    normal_profile,
    tangent_splitting,
)


# -- closed forms ----------------------------------------------------------------

def h1_end(E: SplittingType) -> int:
    """``sum (gap - 1)`` over pairs of twists differing by at least two."""
    b = E.twists
    return sum(b[j] - b[i] - 1 for i, j in combinations(range(len(b)), 2) if b[j] - b[i] >= 2)


def dim_mor(n: int, e: int) -> int:
    return (n + 1) * (e + 1) - 1


def expected_codim_dk(n: int, e: int, d: int, k: int) -> int:
    """``h^1(End)`` of ``b(d^k)`` in closed form: ``k(2e - 1 + d + k) - (d+1)nk``.

    Valid when ``2e >= (d+1)(n-1) - k + 2``, which is exactly the condition
    that the balanced twists exceed ``d`` by at least one.  For ``d = 2`` this
    is ``k(2e + 1 + k) - 3nk``.
    """
    if not 0 <= k <= n - 2:
        raise AssumptionViolated(f"need 0 <= k <= n-2, got k={k}, n={n}")
    if 2 * e < (d + 1) * (n - 1) - k + 2:
        raise AssumptionViolated(f"2e >= (d+1)(n-1) - k + 2 fails for n={n}, e={e}, d={d}, k={k}")
    return k * (2 * e - 1 + d + k) - (d + 1) * n * k


def expected_codim_conics(n: int, e: int, k: int) -> int:
    """The ``d = 2`` specialization ``k(2e + 1 + k) - 3nk``."""
    if 2 * e < 3 * (n - 1) - k + 2:
        raise AssumptionViolated(f"2e >= 3(n-1) - k + 2 fails for n={n}, e={e}, k={k}")
    return k * (2 * e + 1 + k) - 3 * n * k


def all_conics_codim(n: int, e: int) -> int:
    """``h^1(End)`` of ``(2^(n-2), 2e - 2 - 2(n-2))``."""
    return (n - 2) * (2 * e - 2 * n - 1)


def negative_dim_threshold(n: int) -> int:
    """Smallest ``e`` at which ``(2^(n-2), ...)`` has negative expected dimension."""
    e = n
    while all_conics_codim(n, e) < (e + 1) * (n + 1):
        e += 1
    return e


def dims_two_conics(n: int, e: int) -> tuple[int, int]:
    """Dimensions of the two families of curves with twists ``b(2^2)``.

    The first (conic relations in general position) has the expected
    dimension; the second (a tangent pair of conics) is at least as large
    once ``e >= 2n - 3``.
    """
    if n < 5 or e < 2 * n - 3:
        raise HypothesisViolated(f"need n >= 5 and e >= 2n-3, got n={n}, e={e}")
    return e * (n - 3) + 7 * n - 6, e * (n - 2) + 5 * n - 3


def p4_conics_dim(e: int) -> int:
    """Dimension of the curves in ``P^4`` with twists ``(2, 2, 2e - 6)``.

    Counted without removing scaling (as is :func:`p4_expected_dim`), so the
    two are directly comparable.
    """
    if e < 5:
        raise HypothesisViolated(f"need e >= 5, got {e}")
    return 2 * e + 18


def p4_expected_dim(e: int) -> int:
    """``5(e+1) - h^1(End)`` for ``(2, 2, 2e - 6)``, without removing scaling."""
    if e < 5:
        raise HypothesisViolated(f"need e >= 5, got {e}")
    return 5 * (e + 1) - h1_end(b_spec_dk(4, e, 2, 2))


# -- fibers over fixed relations -------------------------------------------------

def fiber_system(relations, n: int, e: int):
    """Linear conditions on the coefficients of ``f`` for every relation to hold.

    Unknown ``(i, m)`` is the coefficient of ``s^(e-m) t^m`` in ``f_i``; each
    relation contributes the coefficients of ``sum a_i d_s f_i`` and
    ``sum a_i d_t f_i``.
    """
    if not relations:
        raise DegreeMismatch("no relations given")
    F = relations[0].field
    w = e + 1
    ncols = (n + 1) * w
    nrows = sum(2 * (a.b + e) for a in relations)
    sm = linalg.SparseMatrix(nrows, ncols, F)
    offset = 0
    for a in relations:
        if len(a.entries) != n + 1:
            raise DegreeMismatch(f"relation has {len(a.entries)} entries, need {n + 1}")
        height = a.b + e
        for i, ai in enumerate(a.entries):
            for u, c in enumerate(ai.coeffs):
                if c == 0:
                    continue
                for m in range(e):  # d_s: coefficient m of f_i times (e - m)
                    sm.add(offset + u + m, i * w + m, F.mul(c, F(e - m)))
                for m in range(1, e + 1):  # d_t: coefficient m times m, lands at m - 1
                    sm.add(offset + height + u + m - 1, i * w + m, F.mul(c, F(m)))
        offset += 2 * height
    return sm.dense(), ncols


def fiber_nullity(relations, n: int, e: int) -> int:
    """Dimension of the vector space of coefficient tuples ``f`` satisfying the relations."""
    M, ncols = fiber_system(relations, n, e)
    return linalg.nullity(M, ncols, relations[0].field)


def fiber_dim(relations, n: int, e: int) -> int:
    """Projective dimension of the maps satisfying ``relations`` (``-1`` if none)."""
    return fiber_nullity(relations, n, e) - 1


def bjk_fiber_formula(n: int, e: int, k: int, j: int) -> int:
    return dim_mor(n, e) - (2 * k - j + 1) * (e + 2)


def bj_degree_d_conditions(e: int, d: int, k: int, j: int) -> int:
    return j * (3 * e + d + 4) + (k - 2 * j) * (2 * e + d + 2)


# -- relation geometry ----------------------------------------------------------

def _multiple_of(u, v):
    """Whether ``u = g * v`` entrywise for one homogeneous ``g``."""
    pivot = next((i for i, x in enumerate(v) if not x.is_zero()), None)
    if pivot is None:
        return all(x.is_zero() for x in u)
    g = exact_quotient(u[pivot], v[pivot])
    if g is None:
        return False
    return all((g * y - x).is_zero() for x, y in zip(u, v))


def _proportional(u, v) -> bool:
    return _multiple_of(u, v) or _multiple_of(v, u)


def parameterized_tangency(alpha: Relation, beta: Relation) -> bool:
    """Whether one relation's ``s``-partials are a polynomial multiple of the other's ``t``-partials.

    Both pairings (``d_s alpha`` with ``d_t beta`` and ``d_t alpha`` with
    ``d_s beta``) are tried, since exchanging ``s`` and ``t`` is itself a
    reparameterization shared by the two relations.
    """
    if len(alpha.entries) != len(beta.entries):
        raise DegreeMismatch("relations have different lengths")
    if alpha.b == 0 or beta.b == 0:
        return False
    da = {v: [partial(x, v) for x in alpha.entries] for v in "st"}
    db = {v: [partial(x, v) for x in beta.entries] for v in "st"}
    return _proportional(da["s"], db["t"]) or _proportional(da["t"], db["s"])


def _pgl2(p: int):
    """One representative per element of ``PGL_2(F_p)``."""
    for a, b, c, d in product(range(p), repeat=4):
        if (a * d - b * c) % p == 0:
            continue
        lead = next(x for x in (a, b, c, d) if x)
        if lead == 1:
            yield ((a, b), (c, d))


def _reparam_relation(a: Relation, g) -> Relation:
    return Relation(a.b, tuple(reparameterize(x, g) for x in a.entries))


def orbit_tangency_smallfield(alpha: Relation, beta: Relation) -> bool:
    """Tangency after some shared reparameterization, by exhaustive search over ``PGL_2(F_p)``."""
    F = alpha.field
    if not F.is_prime or F.modulus > 31:
        raise FieldTooLarge(f"exhaustive search needs a prime field with p <= 31, got {F}")
    if parameterized_tangency(alpha, beta):
        return True
    return any(parameterized_tangency(_reparam_relation(alpha, g), _reparam_relation(beta, g))
               for g in _pgl2(F.modulus))


class PlaneMeet(str, enum.Enum):
    DISJOINT = "Disjoint"
    POINT = "Point"
    LINE = "Line"
    SAME_PLANE = "SamePlane"


def plane_intersection_type(a1: Relation, a2: Relation) -> PlaneMeet:
    """How the planes spanned by two smooth conic relations meet."""
    for name, a in (("first", a1), ("second", a2)):
        if a.b != 2 or classify_degree2_relation(a) is not ConicKind.SMOOTH_CONIC:
            raise DegenerateConic(f"{name} relation is not a smooth conic")
    F = a1.field
    width = len(a1.entries)
    r = linalg.rank(linalg.to_dense(a1.coefficient_vectors() + a2.coefficient_vectors(), width, F),
                    F, width)
    return [PlaneMeet.DISJOINT, PlaneMeet.POINT, PlaneMeet.LINE, PlaneMeet.SAME_PLANE][6 - r]


# -- reports --------------------------------------------------------------------

@dataclass
class CurveAnalysis:
    """Everything computed about one curve, ready for serialization."""

    curve: CurveMap
    basepoint_free: bool
    nondegenerate: bool
    unramified: bool
    normal: SplittingType | None = None
    tangent: SplittingType | None = None
    relation_dims: dict = dc_field(default_factory=dict)
    generators: list = dc_field(default_factory=list)
    conic_kinds: list = dc_field(default_factory=list)
    plane_matrix: list = dc_field(default_factory=list)
    tangency_pairs: list = dc_field(default_factory=list)
    dual_checks_passed: bool = True
    error: str | None = None

    def conic_indices(self):
        return [i for i, g in enumerate(self.generators) if g.b == 2]

    def to_dict(self) -> dict:
        out = {
            "n": self.curve.n,
            "e": self.curve.e,
            "basepoint_free": self.basepoint_free,
            "nondegenerate": self.nondegenerate,
            "unramified": self.unramified,
        }
        if self.error is not None:
            out["error"] = self.error
            return out
        out.update({
            "normal_splitting": self.normal.to_dict(),
            "tangent_splitting": self.tangent.to_dict(),
            "relation_dims": {str(b): r for b, r in sorted(self.relation_dims.items())},
            "generators": [g.to_dict() for g in self.generators],
            "conic_kinds": [k.value for k in self.conic_kinds],
            "plane_matrix": [[x.value if x is not None else None for x in row] for row in self.plane_matrix],
            "tangency_pairs": [list(p) for p in self.tangency_pairs],
            "dual_checks_passed": self.dual_checks_passed,
        })
        return out


def analyze_curve(f: CurveMap) -> CurveAnalysis:
    """Flags, splittings, generators and low-degree relation geometry of ``f``."""
    res = CurveAnalysis(f, is_basepoint_free(f), is_nondegenerate(f), is_unramified(f))
    if not res.basepoint_free:
        res.error = "curve has a base point"
        return res
    res.normal, res.relation_dims = normal_profile(f)
    res.tangent = tangent_splitting(f)
    res.generators = minimal_generators(f)
    res.dual_checks_passed = all(dual_relation_check(f, g) for g in res.generators)
    conics = [g for g in res.generators if g.b == 2]
    res.conic_kinds = [classify_degree2_relation(g) for g in conics]
    smooth = [k is ConicKind.SMOOTH_CONIC for k in res.conic_kinds]
    res.plane_matrix = [[plane_intersection_type(a, b) if smooth[i] and smooth[j] and i != j else None
                         for j, b in enumerate(conics)] for i, a in enumerate(conics)]
    res.tangency_pairs = [(i, j) for i, j in combinations(range(len(res.generators)), 2)
                          if parameterized_tangency(res.generators[i], res.generators[j])]
    return res


def conic_tangency_pairs(analysis: CurveAnalysis) -> list:
    idx = set(analysis.conic_indices())
    return [p for p in analysis.tangency_pairs if p[0] in idx and p[1] in idx]


@dataclass
class StratumReport:
    n: int
    e: int
    splitting: SplittingType
    dim_mor: int
    expected_codim: int
    expected_dim: int
    witnesses: list

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "e": self.e,
            "splitting": self.splitting.to_dict(),
            "dim_mor": self.dim_mor,
            "expected_codim": self.expected_codim,
            "expected_dim": self.expected_dim,
            "witnesses": self.witnesses,
        }


def stratum_report(n: int, e: int, b: SplittingType, witnesses=(), labels=None) -> StratumReport:
    """Expected dimension of the stratum with twists ``b`` plus a check of each witness."""
    codim = h1_end(b)
    rows = []
    for idx, f in enumerate(witnesses):
        label = labels[idx] if labels else f"w{idx}"
        try:
            a = analyze_curve(f)
            if a.error:
                raise DegreeMismatch(a.error)
            conic_pairs = conic_tangency_pairs(a)
            rows.append({
                "id": label,
                "verified": a.normal == b and a.unramified and a.nondegenerate and a.dual_checks_passed,
                "splitting": a.normal.to_dict(),
                "unramified": a.unramified,
                "nondegenerate": a.nondegenerate,
                "conic_kinds": [k.value for k in a.conic_kinds],
                "tangent_conic_pairs": len(conic_pairs),
                "plane_matrix": a.to_dict()["plane_matrix"],
            })
        except RatCurvesError as exc:
            rows.append({"id": label, "verified": False, "error": f"{type(exc).__name__}: {exc}"})
    dm = dim_mor(n, e)
    return StratumReport(n, e, b, dm, codim, dm - codim, rows)
