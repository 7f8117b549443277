"""Builders for witness curves with prescribed normal-bundle splitting.

The central construction takes gaps ``delta_1 = 1, delta_2, ...`` and the
exponents ``k_i = c - (delta_1 + ... + delta_i)`` and returns

    f = (s^k_0 p, s^k_1 t^(c-k_1) p, ..., s^k_(n-1) t^(c-k_(n-1)) p, t^c q)

with general forms ``p, q`` of degree ``e - c``.  Consecutive triples of
columns of its Jacobian satisfy three-term relations of degree
``delta_i + delta_(i+1)``, which is where the splitting comes from.  The other
builders here only choose the gap sequence (or an explicit relation tuple).
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .curve import CurveMap, is_unramified
from .errors import (
    AssumptionViolated,
    BadDelta,
    DegreeMismatch,
    DegreeTooSmall,
    HypothesisViolated,
    IndexOutOfRange,
    NonFreeProfile,
    NotDecreasing,
    OddK,
    OrderingViolated,
    Ramified,
    ResampleExhausted,
)
from .field import FieldCtx
from .poly import HomPoly, divides, gcd_many, hom_gcd, is_squarefree, random_hompoly
from .syzygy import Relation, SplittingType

RESAMPLE_BUDGET = 64


@dataclass(frozen=True)
class DeltaSequence:
    deltas: tuple

    def __post_init__(self):
        object.__setattr__(self, "deltas", tuple(int(d) for d in self.deltas))
        if not self.deltas:
            raise BadDelta("empty gap sequence")
        if self.deltas[0] != 1:
            raise BadDelta(f"first gap must be 1, got {self.deltas[0]}")
        bad = [i + 1 for i, d in enumerate(self.deltas) if d < 1]
        if bad:
            raise BadDelta(f"nonpositive gaps at positions {bad}")

    @property
    def n(self) -> int:
        return len(self.deltas) + 1

    @property
    def c(self) -> int:
        return 1 + sum(self.deltas)

    def twists(self, e: int) -> list[int]:
        """Unsorted twists ``delta_i + delta_(i+1)`` followed by the closing twist."""
        d = self.deltas
        head = [d[i] + d[i + 1] for i in range(len(d) - 1)]
        return head + [2 * e - 2 - sum(head)]

    def __iter__(self):
        return iter(self.deltas)

    def __len__(self):
        return len(self.deltas)


# -- splitting specs -------------------------------------------------------------

def bspec_qr(n: int, e: int, d: int, k: int) -> tuple[int, int]:
    """Quotient and remainder in ``2e - 2 - dk = q(n - 1 - k) + r``."""
    if not 0 <= k <= n - 2:
        raise AssumptionViolated(f"need 0 <= k <= n-2, got k={k}, n={n}")
    if 2 * e < (n - 1) * d + n - k + 1:
        raise AssumptionViolated(f"2e >= (n-1)d + n - k + 1 fails for n={n}, e={e}, d={d}, k={k}")
    return divmod(2 * e - 2 - d * k, n - 1 - k)


def b_spec_dk(n: int, e: int, d: int, k: int) -> SplittingType:
    """``k`` twists equal to ``d`` and the remaining ``n-1-k`` as balanced as possible."""
    q, r = bspec_qr(n, e, d, k)
    return SplittingType((d,) * k + (q,) * (n - 1 - k - r) + (q + 1,) * r, e)


# -- the gap construction --------------------------------------------------------

def deltas_from_twists(b) -> list[int]:
    """Gaps with ``delta_1 = 1`` and ``delta_i + delta_(i+1) = b_i`` for ``i <= n-2``."""
    deltas = [1]
    for bi in b[:-1]:
        deltas.append(bi - deltas[-1])
    return deltas[:len(b)]


def _exponents(deltas) -> tuple[int, list[int]]:
    c = 1 + sum(deltas)
    ks = [c]
    for d in deltas:
        ks.append(ks[-1] - d)
    return c, ks


def _general_forms(m: int, field: FieldCtx, seed):
    """Forms ``p, q`` of degree ``m`` with no common or repeated roots, not divisible by s or t."""
    if m == 0:
        one = HomPoly.constant(1, field)
        return one, one
    if not field.is_prime:
        # fixed choice with distinct rational roots 1..m and -1..-m
        p = q = HomPoly.constant(1, field)
        for i in range(1, m + 1):
            p = p * HomPoly.from_coeffs([1, -i], field)
            q = q * HomPoly.from_coeffs([1, i], field)
        return p, q
    rng = random.Random(seed)
    s_form = HomPoly.monomial(1, 0, field)
    t_form = HomPoly.monomial(0, 1, field)
    for _ in range(RESAMPLE_BUDGET):
        p = random_hompoly(m, field, rng=rng)
        q = random_hompoly(m, field, rng=rng)
        if p.is_zero() or q.is_zero():
            continue
        if any(divides(v, x) for v in (s_form, t_form) for x in (p, q)):
            continue
        if hom_gcd(p, q).degree > 0 or not is_squarefree(p) or not is_squarefree(q):
            continue
        return p, q
    raise ResampleExhausted(f"no admissible p, q of degree {m} after {RESAMPLE_BUDGET} draws")


def sacchiero(n: int, e: int, b, seed=0, field: FieldCtx | None = None) -> CurveMap:
    """Unramified curve whose normal bundle has twists ``b`` (any order)."""
    field = field or FieldCtx.prime()
    b = [int(x) for x in b]
    if len(b) != n - 1:
        raise DegreeMismatch(f"need {n - 1} twists for n={n}, got {len(b)}")
    if sum(b) != 2 * e - 2:
        raise HypothesisViolated(f"twists sum to {sum(b)}, must be 2e-2 = {2 * e - 2}")
    deltas = deltas_from_twists(b)
    bad = [i + 1 for i, d in enumerate(deltas) if d < 1]
    if bad:
        raise BadDelta(f"gaps {deltas} are nonpositive at positions {bad}")
    c, ks = _exponents(deltas)
    if e < c:
        raise DegreeTooSmall(f"degree {e} is below c = {c}")
    # with e == c the curve is monomial and its twists follow without the ordering condition
    if e > c and n > 2 and b[-1] < max(b[:-1]) - 1:
        raise OrderingViolated(f"last twist {b[-1]} is below max(other twists) - 1")
    field.require_nonzero(e=e, **{f"b{i + 1}": x for i, x in enumerate(b)},
                          **{f"delta{i + 1}": x for i, x in enumerate(deltas)})
    p, q = _general_forms(e - c, field, seed)
    comps = [HomPoly.monomial(ks[i], c - ks[i], field) * p for i in range(n)]
    comps.append(HomPoly.monomial(0, c, field) * q)
    f = CurveMap(n, e, tuple(comps), field)
    if not is_unramified(f):
        raise NonFreeProfile("constructed curve is ramified despite general p, q")
    return f


def sacchiero_relations(n: int, b, field: FieldCtx | None = None) -> list[Relation]:
    """The three-term relations of degree ``b_i`` on columns ``i-1, i, i+1`` (``i <= n-2``)."""
    field = field or FieldCtx.prime()
    deltas = deltas_from_twists(list(b))
    rels = []
    for i in range(1, n - 1):
        bi, di, dn = b[i - 1], deltas[i - 1], deltas[i]
        entries = [HomPoly.zero(bi, field)] * (n + 1)
        entries[i - 1] = HomPoly.monomial(0, bi, field, dn)
        entries[i] = HomPoly.monomial(di, dn, field, -bi)
        entries[i + 1] = HomPoly.monomial(bi, 0, field, di)
        rels.append(Relation(bi, tuple(entries)))
    return rels


def curve_with_splitting(b, seed=0, field: FieldCtx | None = None) -> CurveMap:
    """Any twist vector with all ``b_i >= 2`` and even sum, sorted so the construction applies."""
    b = sorted(int(x) for x in b)
    if b[0] < 2:
        raise HypothesisViolated(f"all twists must be >= 2, got {b}")
    if sum(b) % 2:
        raise HypothesisViolated(f"twists must have even sum, got {sum(b)}")
    return sacchiero(len(b) + 1, sum(b) // 2 + 1, b, seed=seed, field=field)


def from_delta_sequence(n: int, e: int, deltas, seed=0, field: FieldCtx | None = None):
    """Curve built from a gap sequence, with its sorted splitting."""
    ds = deltas if isinstance(deltas, DeltaSequence) else DeltaSequence(tuple(deltas))
    if ds.n != n:
        raise DegreeMismatch(f"{len(ds)} gaps describe n={ds.n}, not n={n}")
    if e < n:
        raise HypothesisViolated(f"need e >= n, got e={e}, n={n}")
    b = ds.twists(e)
    if e > ds.c and n > 2 and b[-1] < max(b[:-1]) - 1:
        raise HypothesisViolated(f"closing twist {b[-1]} is below max(other twists) - 1")
    return sacchiero(n, e, b, seed=seed, field=field), SplittingType(b, e)


# -- monomial curves -------------------------------------------------------------

def _check_exponents(k):
    k = [int(x) for x in k]
    if len(k) < 3 or k[-1] != 0 or any(a <= b for a, b in zip(k, k[1:])):
        raise NotDecreasing(f"need e = k_0 > k_1 > ... > k_n = 0 with n >= 2, got {k}")
    return k


def monomial_curve(k, field: FieldCtx | None = None) -> CurveMap:
    """``(s^k_0, s^k_1 t^(e-k_1), ..., t^e)`` for strictly decreasing ``k`` ending at 0."""
    field = field or FieldCtx.rationals()
    k = _check_exponents(k)
    e = k[0]
    return CurveMap(len(k) - 1, e, tuple(HomPoly.monomial(x, e - x, field) for x in k), field)


def monomial_is_unramified(k) -> bool:
    k = _check_exponents(k)
    return k[1] == k[0] - 1 and k[-2] == 1


def monomial_splitting(k, ramified_ok: bool = False) -> SplittingType:
    """Twists ``k_(i-1) - k_(i+1)``; for ramified exponents these describe the Jacobian kernel."""
    k = _check_exponents(k)
    if not ramified_ok and not monomial_is_unramified(k):
        raise Ramified(f"exponents {k} give a ramified map (need k_1 = e-1 and k_(n-1) = 1)")
    return SplittingType([k[i - 1] - k[i + 1] for i in range(1, len(k) - 1)], k[0])


def monomial_tangent(k) -> SplittingType:
    k = _check_exponents(k)
    return SplittingType([k[i - 1] - k[i] for i in range(1, len(k))], k[0])


# -- gap sequences for prescribed low-degree relations ---------------------------

def _x_values(q: int, r: int, count: int) -> list[int]:
    half = r // 2
    return [q if i < half else q - 1 for i in range(count)]


def _check_against_spec(n, e, deltas, spec: SplittingType, label: str) -> DeltaSequence:
    try:
        ds = DeltaSequence(tuple(deltas))
    except BadDelta as exc:
        raise HypothesisViolated(f"{label}: {exc}") from exc
    if len(ds) != n - 1:
        raise HypothesisViolated(f"{label}: produced {len(ds)} gaps, need {n - 1}")
    b = ds.twists(e)
    if SplittingType(b, e) != spec:
        raise HypothesisViolated(f"{label}: gaps {list(ds)} give twists {sorted(b)}, not {list(spec.twists)}")
    if ds.c > e:
        raise HypothesisViolated(f"{label}: needs degree at least {ds.c}")
    if e > ds.c and b[-1] < max(b[:-1]) - 1:
        raise HypothesisViolated(f"{label}: closing twist {b[-1]} too small")
    return ds


def delta_seq_conics(n: int, e: int, k: int, chain_j: int) -> DeltaSequence:
    """Gaps giving twists ``b(2^k)`` whose conic relations form a tangency chain of ``chain_j``.

    The sequence is blocks of ones separated by ``x`` values: a first block
    of ``chain_j + 1`` ones, then ``k - chain_j`` blocks of two ones, then
    single ones.
    """
    if not 1 <= chain_j <= k:
        raise HypothesisViolated(f"need 1 <= chain_j <= k, got chain_j={chain_j}, k={k}")
    try:
        spec = b_spec_dk(n, e, 2, k)
        q, r = bspec_qr(n, e, 2, k)
    except AssumptionViolated as exc:
        raise HypothesisViolated(str(exc)) from exc
    if q < 2:
        raise HypothesisViolated(f"quotient q={q} must be at least 2")
    odd = (n - k) % 2 == 1
    nx = (n - k - 1) // 2 if odd else (n - k - 2) // 2
    if k - chain_j > nx:
        raise HypothesisViolated(f"n={n} leaves room for {nx} separators, need {k - chain_j}")
    blocks = [chain_j + 1] + [2] * (k - chain_j) + [1] * (nx - (k - chain_j))
    xs = _x_values(q, r, nx)
    seq = []
    for i, size in enumerate(blocks):
        seq.extend([1] * size)
        if i < nx:
            seq.append(xs[i])
    if odd:
        seq = seq[:-1]
    return _check_against_spec(n, e, seq, spec, "conic gaps")


def delta_seq_ddk(n: int, e: int, d: int, k: int, j: int) -> DeltaSequence:
    """Gaps giving twists ``b(d^k)`` with ``j`` chained pairs of degree-``d`` relations.

    Three phases: ``(1, d-1, 1, x)`` repeated ``j`` times, then
    ``(1, d-1, x - (d-2), d-1, 1, x')`` for the remaining ``(k - 2j)/2`` pairs,
    then ``(1, x)`` until the sequence has ``n - 1`` entries.
    """
    if k % 2:
        raise HypothesisViolated(f"k must be even, got {k}")
    if not 0 <= 2 * j <= k:
        raise HypothesisViolated(f"need 0 <= j <= k/2, got j={j}, k={k}")
    try:
        spec = b_spec_dk(n, e, d, k)
        q, r = bspec_qr(n, e, d, k)
    except AssumptionViolated as exc:
        raise HypothesisViolated(str(exc)) from exc
    if q < d:
        raise HypothesisViolated(f"quotient q={q} must be at least d={d}")
    xs = iter(_x_values(q, r, n))
    seq = []
    for _ in range(j):
        seq += [1, d - 1, 1, next(xs)]
    for _ in range((k - 2 * j) // 2):
        seq += [1, d - 1, next(xs) - (d - 2), d - 1, 1, next(xs)]
    if len(seq) > n - 1:
        raise HypothesisViolated(f"pattern needs {len(seq)} gaps, only {n - 1} available")
    while len(seq) < n - 1:
        seq += [1, next(xs)]
    return _check_against_spec(n, e, seq[:n - 1], spec, "degree-d gaps")


# -- explicit relation tuples ----------------------------------------------------

def _place(n: int, degree: int, field: FieldCtx, start: int, forms) -> Relation:
    entries = [HomPoly.zero(degree, field)] * (n + 1)
    for off, form in enumerate(forms):
        entries[start + off] = form
    return Relation(degree, tuple(entries))


def _mono(a, b, field, c=1):
    return HomPoly.monomial(a, b, field, c)


def bjk_conics(n: int, k: int, j: int, field: FieldCtx | None = None) -> list[Relation]:
    """``k`` conics ``(s^2, -2st, t^2)``: the first ``j`` on overlapping triples, the rest apart."""
    field = field or FieldCtx.rationals()
    if not 1 <= j <= k:
        raise IndexOutOfRange(f"need 1 <= j <= k, got j={j}, k={k}")
    top = k + 1 if j == k else 3 * k - 2 * j + 1
    if top > n:
        raise IndexOutOfRange(f"configuration uses coordinate {top}, ambient has 0..{n}")
    conic = (_mono(2, 0, field), _mono(1, 1, field, -2), _mono(0, 2, field))
    rels = []
    for i in range(1, k + 1):
        start = i - 1 if i <= j else 3 * i - 2 * j - 1
        rels.append(_place(n, 2, field, start, conic))
    return rels


def chained_pair(n: int, d: int, start: int, field: FieldCtx) -> list[Relation]:
    """Degree-``d`` relations on four consecutive coordinates sharing a tangent line."""
    first = (_mono(0, d, field, d - 1), _mono(1, d - 1, field, -d), _mono(d, 0, field))
    second = (_mono(0, d, field), _mono(d - 1, 1, field, -d), _mono(d, 0, field, d - 1))
    return [_place(n, d, field, start, first), _place(n, d, field, start + 1, second)]


def separated_pair(n: int, d: int, start: int, field: FieldCtx) -> list[Relation]:
    """Degree-``d`` relations on two disjoint coordinate triples."""
    first = (_mono(0, d, field), _mono(d - 1, 1, field, -d), _mono(d, 0, field, d - 1))
    second = (_mono(0, d, field, d - 1), _mono(1, d - 1, field, -d), _mono(d, 0, field))
    return [_place(n, d, field, start, first), _place(n, d, field, start + 3, second)]


def bj_degree_d(n: int, d: int, k: int, j: int, field: FieldCtx | None = None) -> list[Relation]:
    """``k/2`` pairs of degree-``d`` relations, the first ``j`` pairs chained."""
    field = field or FieldCtx.rationals()
    if k % 2:
        raise OddK(f"k must be even, got {k}")
    if not 0 <= 2 * j <= k:
        raise IndexOutOfRange(f"need 0 <= j <= k/2, got j={j}, k={k}")
    if d < 2:
        raise IndexOutOfRange(f"relation degree must be >= 2, got {d}")
    pairs = k // 2
    top = 4 * j - 1 if pairs == j else 6 * pairs - 2 * j - 1
    if top > n:
        raise IndexOutOfRange(f"configuration uses coordinate {top}, ambient has 0..{n}")
    field.require_nonzero(d=d, d_minus_1=d - 1)
    rels = []
    for i in range(1, pairs + 1):
        if i <= j:
            rels += chained_pair(n, d, 4 * i - 4, field)
        else:
            rels += separated_pair(n, d, 6 * i - 2 * j - 6, field)
    return rels


# -- mixed-degree witnesses ------------------------------------------------------

CHAINED = "ChainedBlock"
SEPARATED = "SeparatedBlock"


def mixed_qr(n: int, e: int, d1: int, d2: int) -> tuple[int, int]:
    if not 2 <= d1 <= d2:
        raise HypothesisViolated(f"need 2 <= d1 <= d2, got d1={d1}, d2={d2}")
    if n < 5:
        raise HypothesisViolated(f"need n >= 5, got {n}")
    if e < (n + 1) * (d1 + d2 + 2) - d1:
        raise HypothesisViolated(f"need e >= (n+1)(d1+d2+2) - d1 = {(n + 1) * (d1 + d2 + 2) - d1}")
    return divmod(2 * e - 2 - d1 - d2, n - 3)


def mixed_splitting(n: int, e: int, d1: int, d2: int) -> SplittingType:
    q, r = mixed_qr(n, e, d1, d2)
    return SplittingType((d1, d2) + (q,) * (n - 3 - r) + (q + 1,) * r, e)


def _mixed_sequence(n, e, d1, d2, variant):
    q, r = mixed_qr(n, e, d1, d2)
    gap = d2 - d1 + 1
    if variant == CHAINED:
        xs = iter(_x_values(q - d2 + d1, r, n))
        seq = [1, d1 - 1, gap]
    else:
        xs = iter([q - d1 + 1] + _x_values(q - d2 + d1, r, n))
        seq = [1, d1 - 1, next(xs), d1 - 1, gap]
    while len(seq) < n - 1:
        seq += [next(xs), gap]
    return seq[:n - 1]


def mixed_relations(n: int, d1: int, d2: int, variant: str, field: FieldCtx) -> list[Relation]:
    """The degree-``d1`` and degree-``d2`` relations displayed for each variant."""
    a1 = _place(n, d1, field, 0, (_mono(0, d1, field, d1 - 1), _mono(1, d1 - 1, field, -d1),
                                  _mono(d1, 0, field)))
    gap = d2 - d1 + 1
    if variant == CHAINED:
        a2 = _place(n, d2, field, 1, (_mono(0, d2, field, gap), _mono(d1 - 1, gap, field, -d2),
                                      _mono(d2, 0, field, d1 - 1)))
    elif variant == SEPARATED:
        a2 = _place(n, d2, field, 3, (_mono(0, d2, field, gap), _mono(d1 - 1, gap, field, -d2),
                                      _mono(d2, 0, field, d1 - 1)))
    else:
        raise HypothesisViolated(f"unknown variant {variant!r}")
    return [a1, a2]


def _sample_fiber(n, e, rels, spec, seed, field):
    """Random curve satisfying ``rels`` with the requested splitting (prime fields only)."""
    from .curve import is_nondegenerate
    from .linalg import nullspace_dense
    from .strata import fiber_system
    from .syzygy import normal_splitting

    if not field.is_prime:
        raise HypothesisViolated("sampling a fiber needs a prime field")
    M, ncols = fiber_system(rels, n, e)
    basis = nullspace_dense(M, ncols, field)
    rng = random.Random(seed)
    for _ in range(RESAMPLE_BUDGET):
        coeffs = [field.zero] * ncols
        for v in basis:
            c = field.random(rng)
            coeffs = [field.add(x, field.mul(c, y)) for x, y in zip(coeffs, v)]
        comps = tuple(HomPoly(e, tuple(coeffs[i * (e + 1):(i + 1) * (e + 1)]), field)
                      for i in range(n + 1))
        if all(c.is_zero() for c in comps):
            continue
        f = CurveMap(n, e, comps, field)
        if gcd_many(comps).degree or not is_nondegenerate(f) or not is_unramified(f):
            continue
        if normal_splitting(f) == spec:
            return f
    raise ResampleExhausted(f"no fiber point with splitting {list(spec.twists)} in {RESAMPLE_BUDGET} draws")


def witness_mixed(n: int, e: int, d1: int, d2: int, variant: str, seed=0,
                  field: FieldCtx | None = None):
    """Curve with twists ``(d1, d2, balanced rest)`` and its two low-degree relations.

    ``ChainedBlock`` puts the relations on overlapping coordinates ``0..2`` and
    ``1..3``; ``SeparatedBlock`` on disjoint triples ``0..2`` and ``3..5``.  When
    the gap pattern does not fit (the separated case needs more room than
    ``n = 5`` offers) a random point of the fiber over the two relations is used.
    """
    field = field or FieldCtx.prime()
    if variant not in (CHAINED, SEPARATED):
        raise HypothesisViolated(f"unknown variant {variant!r}")
    spec = mixed_splitting(n, e, d1, d2)
    field.require_nonzero(d1=d1, d2=d2, d1_minus_1=d1 - 1, gap=d2 - d1 + 1)
    rels = mixed_relations(n, d1, d2, variant, field)
    seq = _mixed_sequence(n, e, d1, d2, variant)
    try:
        ds = _check_against_spec(n, e, seq, spec, f"{variant} gaps")
    except HypothesisViolated:
        return _sample_fiber(n, e, rels, spec, seed, field), rels
    return from_delta_sequence(n, e, ds, seed=seed, field=field)[0], rels


def provenance(builder: str, **params) -> dict:
    return {"builder": builder, "params": params}


def random_curve(n: int, e: int, rng: random.Random, field: FieldCtx | None = None) -> CurveMap:
    """Curve with independent uniform coefficients (prime fields only)."""
    field = field or FieldCtx.prime()
    comps = tuple(random_hompoly(e, field, rng=rng) for _ in range(n + 1))
    return CurveMap(n, e, comps, field)
