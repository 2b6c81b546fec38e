from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import interval_sets
from limit_cheeger.intervals import (
    InputError,
    IntervalSet,
    StepFunction,
    common_refinement,
    doubling_preimage,
    normalize,
    parse_interval_set,
    set_algebra,
    translate_mod1,
)

F = Fraction


def test_normalize_merges_overlaps():
    assert normalize([(0.2, 0.5), (0.4, 0.7)]).parts == ((0.2, 0.7),)


def test_normalize_drops_degenerate():
    A = normalize([(0.3, 0.3)])
    assert A.is_empty() and A.measure == 0


def test_normalize_sorts():
    A = normalize([(0.5, 1.0), (0.0, 0.25)])
    assert A.parts == ((0.0, 0.25), (0.5, 1.0))
    assert A.measure == 0.75


def test_normalize_merges_touching():
    assert normalize([(F(0), F(1, 2)), (F(1, 2), F(1))]) == IntervalSet.full()


@pytest.mark.parametrize("bad", [[(-0.1, 0.5)], [(0.5, 1.2)], [(0.6, 0.2)], [(0.1,)]])
def test_normalize_rejects(bad):
    with pytest.raises(InputError):
        normalize(bad)


def test_complement_and_intersection():
    assert IntervalSet.interval(0, 0.5).complement().parts == ((0.5, F(1)),)
    I = IntervalSet.interval(0, 0.6).intersection(IntervalSet.interval(0.4, 1))
    assert I.parts == ((0.4, 0.6),)
    assert I.measure == pytest.approx(0.2, abs=1e-15)


def test_set_algebra_bundle():
    A = parse_interval_set("0:1/4,1/2:3/4")
    B = parse_interval_set("1/8:5/8")
    out = set_algebra(A, B)
    assert out["union"] == parse_interval_set("0:3/4")
    assert out["intersection"] == parse_interval_set("1/8:1/4,1/2:5/8")
    assert out["complement"] == parse_interval_set("1/4:1/2,3/4:1")
    assert out["measure"] == F(1, 2)


def test_parse_text_format():
    A = parse_interval_set("0:0.25,0.5:0.75")
    assert A.parts == ((F(0), F(1, 4)), (F(1, 2), F(3, 4)))
    assert A.to_text() == "0:1/4,1/2:3/4"
    assert parse_interval_set("") == IntervalSet.empty()
    with pytest.raises(InputError):
        parse_interval_set("0-0.5")
    with pytest.raises(InputError):
        parse_interval_set("0:abc")


def test_translate_wraps():
    A = translate_mod1(IntervalSet.interval(F(9, 10), 1), F(1, 5))
    assert A.parts == ((F(1, 10), F(1, 5)),)
    B = translate_mod1(IntervalSet.interval(F(1, 2), F(9, 10)), F(1, 5))
    assert B.parts == ((F(0), F(1, 10)), (F(7, 10), F(1)))


def test_translate_by_zero_is_identity():
    A = IntervalSet.interval(0, F(1, 2))
    assert translate_mod1(A, 0) == A
    assert translate_mod1(A, 1) == A


@given(interval_sets(), st.fractions(min_value=-2, max_value=2, max_denominator=97))
def test_translate_preserves_measure(A, t):
    B = translate_mod1(A, t)
    assert B.measure == A.measure
    assert translate_mod1(B, -t) == A


def test_doubling_preimage_examples():
    half = IntervalSet.interval(0, F(1, 2))
    assert doubling_preimage(half, 1).parts == ((0, F(1, 4)), (F(1, 2), F(3, 4)))
    assert doubling_preimage(half, 0) == half
    for n in range(1, 11):
        An = doubling_preimage(half, n)
        assert An.measure == F(1, 2)
        assert len(An) <= 2 ** n


@given(interval_sets(max_parts=3), st.integers(0, 4))
def test_doubling_preimage_measure(A, n):
    An = doubling_preimage(A, n)
    assert An.measure == A.measure
    # x in S^-n(A) iff 2^n x mod 1 in A, checked on a rational grid
    for k in range(0, 64):
        x = F(2 * k + 1, 128)
        assert (x in An) == (((2 ** n) * x) % 1 in A)


@given(interval_sets(), interval_sets())
def test_partition_identities(A, B):
    assert A.union(A.complement()) == IntervalSet.full()
    assert A.intersection(A.complement()).is_empty()
    assert A.union(B).measure + A.intersection(B).measure == A.measure + B.measure
    assert A.difference(B).measure == A.measure - A.intersection(B).measure


@settings(max_examples=50)
@given(interval_sets(), st.integers(1, 16))
def test_block_masses_sum_to_measure(A, m):
    cuts = [F(k, m) for k in range(m + 1)]
    assert sum(A.block_masses(cuts)) == A.measure


def test_measure_in_matches_intersection():
    A = parse_interval_set("0:1/3,1/2:1")
    assert A.measure_in(F(1, 4), F(3, 4)) == A.intersection(IntervalSet.interval(F(1, 4), F(3, 4))).measure


def test_step_function_refine_and_eval():
    f = StepFunction((0, F(1, 2), 1), (1, 3))
    g = f.refine((0, F(1, 4), F(1, 2), 1))
    assert g.values == (1, 1, 3)
    assert f(F(1, 2)) == 3 and f(F(1, 10)) == 1 and f(1) == 3
    with pytest.raises(InputError):
        f.refine((0, F(1, 3), 1))


@pytest.mark.parametrize("cuts,values", [((0, 1), (1, 2)), ((0, F(1, 2)), (1,)), ((0, F(1, 2), F(1, 2), 1), (1, 2, 3))])
def test_step_function_validation(cuts, values):
    with pytest.raises(InputError):
        StepFunction(cuts, values)


def test_common_refinement():
    assert common_refinement((0, F(1, 2), 1), (0, F(1, 3), 1)) == (0, F(1, 3), F(1, 2), 1)
