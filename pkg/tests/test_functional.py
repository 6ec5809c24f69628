from fractions import Fraction

import pytest

from monocone.functional import (
    Functional,
    SystemSet,
    mask_of,
    members_of,
    parse_label,
    subset_label,
)


def test_mask_round_trip():
    for m in range(1, 64):
        assert mask_of(members_of(m)) == m
        assert parse_label(subset_label(m)) == m
    assert subset_label(0b101) == "1,3"


def test_arithmetic_is_exact():
    a = Functional.from_terms(2, {(1,): Fraction(1, 3), (2,): 1})
    b = Functional.from_terms(2, {(1, 2): 1})
    c = a + b * 2 - a
    assert c == Functional.from_terms(2, {(1, 2): 2})
    assert (-c)[(1, 2)] == -2
    assert a.dot([3, 0, 0]) == 1


def test_rejects_floats_and_wrong_length():
    with pytest.raises((TypeError, ValueError)):
        Functional(2, (0.5, 0, 0))
    with pytest.raises(ValueError):
        Functional(2, (1, 0))


def test_pretty_and_json():
    i12 = Functional.from_terms(2, {(1,): 1, (2,): 1, (1, 2): -1})
    assert i12.pretty() == "S(1) + S(2) - S(12)"
    assert Functional.from_json(i12.to_json()) == i12
    assert i12.to_json() == {"n": 2, "coeffs": {"1": "1", "2": "1", "1,2": "-1"}}


def test_canonical_scaling():
    a = Functional.from_terms(2, {(1,): Fraction(2, 3), (1, 2): Fraction(-4, 3)})
    assert a.canonical() == (1, 0, -2)
    assert a.is_positive_multiple_of(a * 7)
    assert not a.is_positive_multiple_of(-a)


def test_system_set():
    s = SystemSet.of((1, 3), 3)
    assert 3 in s and 2 not in s and len(s) == 2
    with pytest.raises(ValueError):
        SystemSet.of((4,), 3)
