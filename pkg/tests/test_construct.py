import pytest
from hypothesis import given
from hypothesis import strategies as st

from ratcurves.construct import (
    CHAINED,
    SEPARATED,
    DeltaSequence,
    b_spec_dk,
    bj_degree_d,
    bjk_conics,
    curve_with_splitting,
    delta_seq_conics,
    delta_seq_ddk,
    deltas_from_twists,
    from_delta_sequence,
    mixed_splitting,
    monomial_curve,
    monomial_splitting,
    sacchiero,
    sacchiero_relations,
    witness_mixed,
)
from ratcurves.curve import is_nondegenerate, is_unramified
from ratcurves.errors import (
    AssumptionViolated,
    BadCharacteristic,
    BadDelta,
    DegreeMismatch,
    DegreeTooSmall,
    HypothesisViolated,
    IndexOutOfRange,
    NotDecreasing,
    OddK,
    OrderingViolated,
    Ramified,
)
from ratcurves.field import FieldCtx
from ratcurves.syzygy import SplittingType, normal_splitting, verify_relation

Q = FieldCtx.rationals()
P = FieldCtx.prime()

twist_lists = st.lists(st.integers(2, 7), min_size=1, max_size=5).filter(lambda b: sum(b) % 2 == 0)


@given(twist_lists, st.integers(0, 1000))
def test_sorted_twists_round_trip(b, seed):
    f = curve_with_splitting(b, seed=seed)
    assert is_unramified(f) and is_nondegenerate(f)
    assert normal_splitting(f).twists == tuple(sorted(b))


@given(st.integers(3, 6), st.integers(0, 3), st.data())
def test_sacchiero_round_trip_with_slack(n, slack, data):
    # twists with gaps >= 1 whose degree exceeds the monomial minimum by `slack`
    deltas = [1] + data.draw(st.lists(st.integers(1, 3), min_size=n - 2, max_size=n - 2))
    ds = DeltaSequence(deltas)
    e = ds.c + slack
    b = ds.twists(e)
    if slack and b[-1] < max(b[:-1]) - 1:
        with pytest.raises(OrderingViolated):
            sacchiero(n, e, b)
        return
    f = sacchiero(n, e, b)
    assert normal_splitting(f) == SplittingType(b, e)
    assert all(verify_relation(f, r) for r in sacchiero_relations(n, b))


def test_rational_coefficients_are_deterministic():
    f = sacchiero(5, 9, [2, 4, 5, 5], field=Q)
    assert f == sacchiero(5, 9, [2, 4, 5, 5], seed=7, field=Q)
    assert normal_splitting(f).twists == (2, 4, 5, 5)


def test_seed_controls_prime_field_choice():
    assert sacchiero(4, 8, [3, 4, 7]) == sacchiero(4, 8, [3, 4, 7])
    assert sacchiero(4, 8, [3, 4, 7], seed=1) != sacchiero(4, 8, [3, 4, 7], seed=2)


def test_deltas_from_twists():
    assert deltas_from_twists([2, 4, 5, 5]) == [1, 1, 3, 2]


@pytest.mark.parametrize("args, exc", [
    ((4, 6, [3, 3, 3]), HypothesisViolated),
    ((4, 6, [1, 5, 4]), BadDelta),
    ((4, 5, [2, 6, 0]), DegreeTooSmall),
    ((3, 4, [6]), DegreeMismatch),
    ((4, 9, [2, 9, 5]), DegreeTooSmall),
    ((5, 12, [2, 6, 5, 9]), BadDelta),
    ((4, 9, [6, 6, 4]), OrderingViolated),
])
def test_sacchiero_preconditions(args, exc):
    with pytest.raises(exc):
        sacchiero(*args)


def test_small_characteristic_rejected():
    with pytest.raises(BadCharacteristic):
        sacchiero(3, 6, [5, 5], field=FieldCtx.prime(5))


def test_delta_sequence_invariants():
    with pytest.raises(BadDelta):
        DeltaSequence((2, 1))
    with pytest.raises(BadDelta):
        DeltaSequence((1, 0))
    ds = DeltaSequence((1, 2, 1))
    assert ds.n == 4 and ds.c == 5 and ds.twists(7) == [3, 3, 6]


def test_monomial_preconditions():
    with pytest.raises(NotDecreasing):
        monomial_curve((3, 3, 0))
    with pytest.raises(NotDecreasing):
        monomial_curve((3, 1))
    with pytest.raises(Ramified):
        monomial_splitting((4, 2, 1, 0))


def test_degree_three_worked_example():
    ds = delta_seq_ddk(19, 41, 3, 6, 2)
    assert list(ds) == [1, 2, 1, 5, 1, 2, 1, 4, 1, 2, 3, 2, 1, 4, 1, 4, 1, 4]
    assert SplittingType(ds.twists(41), 41) == b_spec_dk(19, 41, 3, 6)


def test_conic_chains_realize_the_same_splitting():
    spec = b_spec_dk(8, 11, 2, 3)
    assert spec.twists == (2, 2, 2, 3, 3, 4, 4)
    for j in (1, 2, 3):
        f, split = from_delta_sequence(8, 11, delta_seq_conics(8, 11, 3, j))
        assert split == spec == normal_splitting(f)


def test_gap_builders_reject_bad_parameters():
    with pytest.raises(HypothesisViolated):
        delta_seq_conics(8, 11, 3, 4)
    with pytest.raises(HypothesisViolated):
        delta_seq_ddk(19, 41, 3, 5, 2)
    with pytest.raises(AssumptionViolated):
        b_spec_dk(8, 5, 2, 3)


def test_relation_configurations():
    rels = bjk_conics(8, 3, 2)
    assert [next(i for i, x in enumerate(r.entries) if not x.is_zero()) for r in rels] == [0, 1, 4]
    assert len(bj_degree_d(9, 3, 4, 1)) == 4
    with pytest.raises(IndexOutOfRange):
        bjk_conics(4, 3, 1)
    with pytest.raises(OddK):
        bj_degree_d(7, 3, 3, 1)


@pytest.mark.parametrize("variant", [CHAINED, SEPARATED])
def test_mixed_witnesses(variant):
    n, e = 5, 40
    f, rels = witness_mixed(n, e, 2, 3, variant)
    assert normal_splitting(f) == mixed_splitting(n, e, 2, 3)
    assert all(verify_relation(f, r) for r in rels)
    with pytest.raises(HypothesisViolated):
        mixed_splitting(n, 30, 2, 3)
