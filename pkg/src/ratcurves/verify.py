"""The verification suite: every reproduced example and dimension formula as a check.

Each check returns a :class:`CheckResult` with expected and computed values.
The same functions back ``ratcurves verify-paper`` and the acceptance tests.
With ``corrupt=True`` every witness curve has one coefficient perturbed
before it is analyzed, so a correct build must report failures.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass

from .construct import (
    CHAINED,
    SEPARATED,
    b_spec_dk,
    bj_degree_d,
    bjk_conics,
    curve_with_splitting,
    delta_seq_conics,
    delta_seq_ddk,
    from_delta_sequence,
    mixed_splitting,
    monomial_curve,
    monomial_splitting,
    monomial_tangent,
    random_curve,
    witness_mixed,
)
from .curve import CurveMap, apply_ambient, apply_reparam, is_basepoint_free, is_nondegenerate, is_unramified
from .errors import PreconditionError, RatCurvesError
from .field import FieldCtx
from .linalg import det
from .poly import HomPoly
from .strata import (
    PlaneMeet,
    all_conics_codim,
    analyze_curve,
    bj_degree_d_conditions,
    bjk_fiber_formula,
    conic_tangency_pairs,
    dim_mor,
    dims_two_conics,
    expected_codim_conics,
    expected_codim_dk,
    fiber_dim,
    fiber_nullity,
    h1_end,
    negative_dim_threshold,
    p4_conics_dim,
    p4_expected_dim,
)
from .syzygy import Relation, dual_relation_check, minimal_generators, normal_splitting, tangent_splitting

SCHEMA_VERSION = 1

SCOPES = {
    1: "monomial",
    2: "sacchiero",
    3: "alzati-re",
    4: "p5",
    5: "fiber",
    6: "codim",
    7: "negative-dim",
    8: "ddk",
    9: "genericity",
    10: "mixed",
}


@dataclass
class CheckResult:
    id: int
    scope: str
    name: str
    expected: str
    computed: str
    passed: bool
    seconds: float = 0.0
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.id:>2} {self.scope:<13} {self.name}: expected {self.expected}; computed {self.computed}"

    def to_record(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "kind": "check",
            "id": self.id,
            "scope": self.scope,
            "name": self.name,
            "expected": self.expected,
            "computed": self.computed,
            "status": "PASS" if self.passed else "FAIL",
            "detail": self.detail,
        }


class Session:
    """Shared state for one run: field, seed, the corruption switch and the curve corpus."""

    def __init__(self, corrupt: bool = False, seed: int = 0):
        self.corrupt = corrupt
        self.seed = seed
        self.P = FieldCtx.prime()
        self.Q = FieldCtx.rationals()
        self.corpus: list[tuple[str, CurveMap]] = []

    def take(self, label: str, f: CurveMap, register: bool = True) -> CurveMap:
        """Apply the corruption switch; optionally keep the curve for the corpus sweeps."""
        if self.corrupt:
            f = corrupt_curve(f)
        if register:
            self.corpus.append((label, f))
        return f

    witness = take


def corrupt_curve(f: CurveMap) -> CurveMap:
    """Add the fixed form ``sum_m (m + 1) s^(e-m) t^m`` to the first component.

    Every coefficient of ``f_0`` moves, which pushes a special curve off its
    stratum.
    """
    F = f.field
    comps = list(f.components)
    comps[0] = comps[0] + HomPoly.from_coeffs([m + 1 for m in range(f.e + 1)], F)
    return CurveMap(f.n, f.e, tuple(comps), F)


def _twists(st) -> str:
    return "(" + ",".join(str(b) for b in st.twists) + ")"


# -- individual checks -----------------------------------------------------------

def monomial_sequences(nmax: int = 5, emax: int = 10):
    """All unramified exponent sequences ``e = k_0 > e-1 > ... > 1 > 0``."""
    for n in range(2, nmax + 1):
        for e in range(n, emax + 1):
            if n == 2:
                if e == 2:
                    yield (2, 1, 0)
                continue
            for mid in itertools.combinations(range(e - 2, 1, -1), n - 3):
                yield (e, e - 1) + mid + (1, 0)


def check_monomial(S: Session) -> CheckResult:
    bad = []
    count = 0
    for k in monomial_sequences():
        f = S.take(f"monomial{k}", monomial_curve(k, S.P), register=count % 25 == 0)
        count += 1
        try:
            ok = (normal_splitting(f) == monomial_splitting(k)
                  and tangent_splitting(f) == monomial_tangent(k))
        except RatCurvesError:
            ok = False
        if not ok:
            bad.append(k)
    return CheckResult(1, SCOPES[1], "monomial splitting and tangent formulas",
                       f"{count} sequences agree", f"{count - len(bad)} agree",
                       not bad and count > 0, detail=f"first mismatches: {bad[:3]}" if bad else "")


def sacchiero_cases(count: int = 100, seed: int = 0):
    """Random ``(n, e, b)`` with ``b_i >= 2`` ascending (last entry maximal) and even sum."""
    rng = random.Random(seed)
    cases = []
    while len(cases) < count:
        n = rng.randint(3, 8)
        b = sorted(rng.randint(2, 6) for _ in range(n - 1))
        if sum(b) % 2:
            continue
        cases.append((n, sum(b) // 2 + 1, tuple(b)))
    return cases


def check_sacchiero(S: Session) -> CheckResult:
    bad = []
    cases = sacchiero_cases(seed=S.seed)
    for idx, (n, e, b) in enumerate(cases):
        try:
            f = curve_with_splitting(b, seed=S.seed + idx, field=S.P)
            f = S.take(f"sacchiero{b}", f, register=idx % 20 == 0)
            ok = is_unramified(f) and is_nondegenerate(f) and normal_splitting(f).twists == b
        except RatCurvesError:
            ok = False
        if not ok:
            bad.append((n, e, b))
    return CheckResult(2, SCOPES[2], "construction round trip", f"{len(cases)} exact",
                       f"{len(cases) - len(bad)} exact", not bad,
                       detail=f"failures: {bad[:3]}" if bad else "")


def _conic_geometry(a):
    pairs = len(conic_tangency_pairs(a))
    kinds = {x for row in a.plane_matrix for x in row if x is not None}
    return pairs, kinds


def check_alzati_re(S: Session) -> CheckResult:
    target = b_spec_dk(8, 11, 2, 3)
    found = {}
    for j in (1, 2):
        f, _ = from_delta_sequence(8, 11, delta_seq_conics(8, 11, 3, j), field=S.Q)
        a = analyze_curve(S.witness(f"alzati-re j={j}", f))
        pairs, kinds = _conic_geometry(a)
        found[j] = (a.normal, pairs, kinds, a.unramified)
    ok = (all(v[0] == target and v[3] for v in found.values())
          and found[1][1] == 0 and found[1][2] == {PlaneMeet.DISJOINT}
          and found[2][1] == 1 and PlaneMeet.LINE in found[2][2])
    computed = "; ".join(f"j={j}: {_twists(v[0])} = {v[0].summands()}, {v[1]} tangent pairs, "
                         f"planes {sorted(k.value for k in v[2])}" for j, v in found.items())
    return CheckResult(3, SCOPES[3], "two witnesses with twists (2,2,2,3,3,4,4)",
                       "O(13)^3 + O(14)^2 + O(15)^2; 0 vs 1 tangent pairs; Disjoint vs Line",
                       computed, ok)


def check_p5(S: Session) -> CheckResult:
    target = b_spec_dk(5, 7, 2, 2)
    geo = {}
    for j, label in ((1, "G"), (2, "PT")):
        f, _ = from_delta_sequence(5, 7, delta_seq_conics(5, 7, 2, j), field=S.Q)
        a = analyze_curve(S.witness(f"p5 {label}", f))
        geo[label] = (a.normal, *_conic_geometry(a))
    h1 = h1_end(target)
    codim = expected_codim_dk(5, 7, 2, 2)
    dims = dims_two_conics(5, 7)
    ok = (target.twists == (2, 2, 4, 4)
          and all(v[0] == target for v in geo.values())
          and geo["G"][2] == {PlaneMeet.DISJOINT} and geo["PT"][1] == 1
          and h1 == codim == 4 and dims == (43, 43) and dims[0] == dim_mor(5, 7) - h1)
    computed = (f"G {_twists(geo['G'][0])}, PT {_twists(geo['PT'][0])}; h1={h1}, codim={codim}; "
                f"dims={dims}, dim Mor - h1 = {dim_mor(5, 7) - h1}")
    return CheckResult(4, SCOPES[4], "minimal reducible example", "(2,2,4,4) twice; 4 = 4; (43,43) = 47-4",
                       computed, ok)


def point_meeting_pairs(F: FieldCtx, n: int):
    """Conic pairs on coordinates ``0..2`` and ``2..4`` whose Wronskians share 0, 1, 2 factors.

    The first conic is ``(s^2, t^2, g3)`` with Wronskian ``4st``; the second
    conic's last two entries are chosen so their Wronskian has neither, one,
    or both of the factors ``s`` and ``t``.
    """
    def q(a, b, c):
        return HomPoly.from_coeffs([a, b, c], F)

    def rel(entries, start):
        out = [HomPoly.zero(2, F)] * (n + 1)
        for i, x in enumerate(entries):
            out[start + i] = x
        return Relation(2, tuple(out))

    first = rel([q(1, 0, 0), q(0, 0, 1), q(1, 1, 1)], 0)
    g4 = q(1, 3, -1)
    seconds = {
        0: (q(1, 1, 1), q(1, -1, 2)),
        1: (q(1, 2, 3), q(1, 2, 5)),
        2: (q(1, 0, 0), q(0, 0, 1)),
    }
    return {shared: (first, rel([g4, *pair], 2)) for shared, pair in seconds.items()}


def check_fibers(S: Session) -> CheckResult:
    F = S.Q
    bad = []
    rows = 0
    for k in (2, 3, 4):
        n = 3 * k - 1
        for j in range(1, k + 1):
            for e in (2 * k * n - 2 * n - 1, 2 * k * n - 2 * n + 5):
                rows += 1
                got = fiber_dim(bjk_conics(n, k, j, F), n, e)
                if got != bjk_fiber_formula(n, e, k, j):
                    bad.append(("conics", n, e, k, j))
    d = 3
    for k in (2, 4):
        for j in range(0, k // 2 + 1):
            n = 4 * j - 1 if 2 * j == k else 6 * (k // 2) - 2 * j - 1
            for e in (2 * n + 6, 41):
                rows += 1
                got = dim_mor(n, e) - fiber_dim(bj_degree_d(n, d, k, j, F), n, e)
                if got != bj_degree_d_conditions(e, d, k, j):
                    bad.append(("degree-d", n, e, k, j))
    # fixed tangent pair, and the pair meeting at a point (three cases)
    for e in (7, 12):
        n = 5
        rows += 2
        if fiber_dim(bjk_conics(n, 2, 2, F), n, e) != (e + 1) * (n + 1) - 3 * e - 7:
            bad.append(("tangent pair", n, e))
        for shared, pair in point_meeting_pairs(F, n).items():
            if fiber_dim(list(pair), n, e) != (e + 1) * (n + 1) - 4 * e - 9 + shared:
                bad.append(("point pair", n, e, shared))
        if fiber_nullity(bjk_conics(4, 2, 2, F), 4, e) != 2 * e - 1:
            bad.append(("P4 tangent pair", e))
        rows += 1
        if p4_expected_dim(e) != e + 23 or not p4_conics_dim(e) > p4_expected_dim(e):
            bad.append(("P4 excess dimension", e))
    return CheckResult(5, SCOPES[5], "fiber dimensions by nullspace",
                       f"{rows} closed forms", f"{rows - len(bad)} equal", not bad,
                       detail=f"mismatches: {bad[:4]}" if bad else "")


def codim_grid():
    for n in range(3, 13):
        for d in (2, 3, 4):
            for k in range(1, n - 1):
                for e in range(1, 61):
                    if 2 * e >= (d + 1) * (n - 1) - k + 2:
                        yield n, e, d, k


def check_codim(S: Session) -> CheckResult:
    bad = []
    count = 0
    for n, e, d, k in codim_grid():
        count += 1
        h1 = h1_end(b_spec_dk(n, e, d, k))
        if expected_codim_dk(n, e, d, k) != h1 or (d == 2 and expected_codim_conics(n, e, k) != h1):
            bad.append((n, e, d, k))
    return CheckResult(6, SCOPES[6], "closed-form codimension vs h1(End)", f"{count} grid points agree",
                       f"{count - len(bad)} agree", not bad,
                       detail=f"mismatches: {bad[:4]}" if bad else "")


def check_negative_dim(S: Session) -> CheckResult:
    n = 10
    e = negative_dim_threshold(n)
    spec = b_spec_dk(n, e, 2, n - 2)
    codim = h1_end(spec)
    f = S.witness(f"negative-dim e={e}", curve_with_splitting(spec.twists, seed=S.seed, field=S.P))
    got = normal_splitting(f)
    exp_dim = dim_mor(n, e) - codim
    ok = (got == spec and is_unramified(f) and is_nondegenerate(f) and exp_dim < 0
          and codim == all_conics_codim(n, e) and all_conics_codim(n, e - 1) < (e * (n + 1)))
    return CheckResult(7, SCOPES[7], f"nonempty stratum of negative expected dimension (n={n})",
                       f"e={e}, {_twists(spec)}, expected dim < 0",
                       f"e={e}, {_twists(got)}, expected dim {exp_dim}", ok)


DDK_SEQUENCE = (1, 2, 1, 5, 1, 2, 1, 4, 1, 2, 3, 2, 1, 4, 1, 4, 1, 4)


def check_ddk(S: Session) -> CheckResult:
    ds = delta_seq_ddk(19, 41, 3, 6, 2)
    spec = b_spec_dk(19, 41, 3, 6)
    f, _ = from_delta_sequence(19, 41, ds, field=S.P)
    got = normal_splitting(S.witness("ddk worked example", f))
    ok = tuple(ds) == DDK_SEQUENCE and got == spec and spec.twists == (3,) * 6 + (5,) * 10 + (6,) * 2
    return CheckResult(8, SCOPES[8], "degree-3 worked example (n=19, e=41, k=6, j=2)",
                       f"{','.join(map(str, DDK_SEQUENCE))} -> {_twists(spec)}",
                       f"{','.join(map(str, ds))} -> {_twists(got)}", ok)


GENERICITY_SIZES = ((3, 5), (4, 7), (5, 9))


def balanced_fraction(n: int, e: int, count: int, seed: int, F: FieldCtx):
    """Fraction of balanced splittings among unramified random curves, and the sample size."""
    rng = random.Random(seed)
    balanced = total = 0
    for _ in range(count):
        f = random_curve(n, e, rng, F)
        if not is_basepoint_free(f) or not is_unramified(f):
            continue
        total += 1
        balanced += normal_splitting(f).is_balanced()
    return (balanced / total if total else 0.0), total


def _random_invertible(size: int, rng: random.Random, F: FieldCtx):
    while True:
        M = [[F.random(rng) for _ in range(size)] for _ in range(size)]
        if det(M, F) != 0:
            return M


def _to_prime(f: CurveMap, F: FieldCtx) -> CurveMap:
    if f.field == F:
        return f
    return CurveMap(f.n, f.e, tuple(HomPoly.from_coeffs(c.coeffs, F) for c in f.components), F)


def check_genericity(S: Session, group_trials: int = 20) -> CheckResult:
    parts = []
    ok = True
    for n, e in GENERICITY_SIZES:
        frac, total = balanced_fraction(n, e, 200, S.seed + 1000 * n + e, S.P)
        parts.append(f"({n},{e}) {frac:.1%} of {total}")
        ok &= total >= 150 and frac >= 0.99
    # dual identities and group invariance on the witness corpus
    rng = random.Random(S.seed)
    dual_count = 0
    inv_bad = []
    twisted_cubic = monomial_curve((3, 2, 1, 0), S.Q)
    corpus = S.corpus or [("twisted cubic", twisted_cubic)]
    for label, f in corpus:
        try:
            gens = minimal_generators(f)
            dual_count += sum(dual_relation_check(f, g) for g in gens)
        except RatCurvesError as exc:
            inv_bad.append((label, type(exc).__name__))
            continue
        fp = _to_prime(f, S.P)
        base = normal_splitting(fp), tangent_splitting(fp)
        for _ in range(group_trials):
            g = apply_ambient(fp, _random_invertible(f.n + 1, rng, S.P))
            h = apply_reparam(fp, _random_invertible(2, rng, S.P))
            for moved in (g, h):
                if (normal_splitting(moved), tangent_splitting(moved)) != base:
                    inv_bad.append(label)
    parts.append(f"dual identities on {dual_count} generators")
    parts.append(f"group invariance on {len(corpus)} curves")
    ok &= not inv_bad and dual_count > 0
    return CheckResult(9, SCOPES[9], "genericity, dual identities, group invariance",
                       ">= 99% balanced; identities hold; splitting invariant",
                       "; ".join(parts), ok, detail=f"problems: {inv_bad[:4]}" if inv_bad else "")


def check_mixed(S: Session) -> CheckResult:
    n, d1, d2 = 5, 2, 3
    e = (n + 1) * (d1 + d2 + 2) - d1
    spec = mixed_splitting(n, e, d1, d2)
    dims = {}
    splits = {}
    for variant in (CHAINED, SEPARATED):
        f, rels = witness_mixed(n, e, d1, d2, variant, seed=S.seed, field=S.P)
        f = S.witness(f"mixed {variant}", f)
        splits[variant] = normal_splitting(f)
        dims[variant] = fiber_dim(rels, n, e)
    base = (e + 1) * (n + 1)
    ok = (all(s == spec for s in splits.values())
          and dims[SEPARATED] == base - 4 * e - d1 - d2 - 5
          and dims[CHAINED] == base - 3 * e - d2 - 5
          and dims[CHAINED] - dims[SEPARATED] == e + d1)
    return CheckResult(10, SCOPES[10], f"mixed degrees (n={n}, e={e}, d1={d1}, d2={d2})",
                       f"{_twists(spec)} twice; fibers {base - 3 * e - d2 - 5} vs {base - 4 * e - d1 - d2 - 5}",
                       f"{_twists(splits[CHAINED])}, {_twists(splits[SEPARATED])}; "
                       f"fibers {dims[CHAINED]} vs {dims[SEPARATED]} (difference {dims[CHAINED] - dims[SEPARATED]})",
                       ok)


CHECKS = {
    1: check_monomial,
    2: check_sacchiero,
    3: check_alzati_re,
    4: check_p5,
    5: check_fibers,
    6: check_codim,
    7: check_negative_dim,
    8: check_ddk,
    9: check_genericity,
    10: check_mixed,
}


def resolve_scope(scope: str) -> list[int]:
    if scope == "all":
        return sorted(CHECKS)
    ids = [i for i, name in SCOPES.items() if name == scope]
    if not ids:
        raise PreconditionError(f"unknown scope {scope!r}; choose 'all' or one of {', '.join(SCOPES.values())}")
    return ids


def run_check(cid: int, S: Session) -> CheckResult:
    start = time.perf_counter()
    try:
        res = CHECKS[cid](S)
    except RatCurvesError as exc:
        res = CheckResult(cid, SCOPES[cid], "check raised", "no error",
                          f"{type(exc).__name__}: {exc}", False)
    res.seconds = time.perf_counter() - start
    return res


def run_checks(scope: str = "all", corrupt: bool = False, seed: int = 0) -> list[CheckResult]:
    """Run the checks in ``scope``; genericity runs last so it sees every witness."""
    S = Session(corrupt=corrupt, seed=seed)
    return [run_check(cid, S) for cid in resolve_scope(scope)]
