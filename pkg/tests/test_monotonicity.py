from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from monocone.catalog import mutual_information
from monocone.cone import contains, dd_convert, is_extremal, verify_dd_pair
from monocone.errors import NotAMonotone
from monocone.functional import Functional
from monocone.lattice import permute_functional
from monocone.monotonicity import (
    DecompositionCertificate,
    balance_defect,
    check_monotone,
    decompose_monotone,
    embed_symmetric,
    enumerate_monotone_rays,
    generator_set,
    is_balanced,
    is_monotone,
    lift_partial_trace,
    monotonicity_cone,
    single_system_facets,
    symmetric_facets,
    symmetric_generators,
    symmetrize,
)


@pytest.mark.parametrize("n,count", [(1, 0), (2, 1), (3, 4), (4, 18), (5, 166)])
def test_facet_counts(n, count):
    h = single_system_facets(1, n)
    assert len(h.inequalities) == count and len(h.equalities) == 1


def test_facets_are_lower_set_indicators():
    n = 3
    rows = set(single_system_facets(2, n).inequalities)
    want = {oracles.indicator(L, n) for L in oracles.lower_sets(2, n) if 0 < len(L) < 4}
    assert rows == want


def test_n2_facets_by_hand():
    # coordinates S(1), S(2), S(12): one facet a_1 >= 0, balance a_1 + a_12 = 0
    h = single_system_facets(1, 2)
    assert h.inequalities == ((1, 0, 0),)
    assert h.equalities == ((1, 0, 1),)


def test_n1_cone_is_zero():
    h = monotonicity_cone("all", 1)
    v = dd_convert(h)
    assert v.rays == () and v.lineality == ()
    assert not contains(h, (1,)) and contains(h, (0,))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_generators_form_dd_pair(n):
    for i in range(1, n + 1):
        g = generator_set(i, n)
        assert len(g.rays) == (n - 1) * 2 ** (n - 2)
        assert len(g.lineality) == 2 ** (n - 1) - 1
        assert verify_dd_pair(single_system_facets(i, n), g).passed


def test_mutual_information_is_the_only_n2_ray():
    res = enumerate_monotone_rays(2)
    assert res.vrep.rays == ((1, 1, -1),)
    assert res.rays[0] == mutual_information(1, 2, 2)


def test_n3_orbits():
    res = enumerate_monotone_rays(3, group=True)
    assert len(res.vrep.rays) == 7
    assert sorted(o.size for o in res.orbits) == [1, 3, 3]


def test_n4_ray_count_and_orbits():
    res = enumerate_monotone_rays(4, group=True)
    assert len(res.vrep.rays) == 60
    assert sum(o.size for o in res.orbits) == 60
    h = monotonicity_cone("all", 4)
    for r in res.vrep.rays:
        assert is_extremal(h, r)
        assert not any(balance_defect(Functional(4, r)))


def test_check_reports_lower_set_before_balance():
    alpha = Functional.from_terms(2, {(1, 2): 1})
    v = check_monotone(alpha, [1])[0]
    assert not v and v.lower_set is None and v.balance and v.value == 1
    beta = Functional.from_terms(2, {(1,): -1, (1, 2): 1})
    v = check_monotone(beta, [1])[0]
    assert not v and v.lower_set is not None and v.value == -1
    assert "VIOLATED" in v.describe()


def test_lift_partial_trace():
    i12 = mutual_information(1, 2, 2)
    lifted = lift_partial_trace(i12, 1)
    # the lift of I(1;2) at system 1 is I(2;3|1), nonnegative by SSA
    want = Functional.from_terms(3, {(1, 3): 1, (1,): -1, (1, 2, 3): -1, (1, 2): 1})
    assert lifted == want


def test_decomposition_certificate_round_trip():
    alpha = mutual_information(1, 2, 2)
    cert = decompose_monotone(alpha, 1)
    assert cert.verify(alpha)
    back = DecompositionCertificate.from_json(cert.to_json())
    assert back == cert and back.reconstruct() == alpha
    with pytest.raises(NotAMonotone):
        decompose_monotone(-alpha, 1)


@pytest.mark.parametrize("n", list(range(2, 11)))
def test_symmetric_cone(n):
    h = symmetric_facets(n)
    assert h.equalities[0] == tuple(comb(n - 1, j) for j in range(n))
    assert verify_dd_pair(h, symmetric_generators(n)).passed
    for r in symmetric_generators(n).rays:
        assert contains(h, r)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_symmetric_generators_are_monotone(n):
    for r in symmetric_generators(n).rays:
        f = embed_symmetric(r)
        assert is_monotone(f)
        assert symmetrize(f).a == tuple(r)


def test_symmetric_generator_entries():
    g = symmetric_generators(4).rays
    assert g[1] == (0, Fraction(1, 2), Fraction(-1, 2), 0)
    assert g[2] == (0, 0, Fraction(1, 3), -1)


coeff = st.integers(-3, 3)


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_scaling_and_relabeling_invariance(data):
    n = data.draw(st.integers(2, 4))
    alpha = Functional(n, tuple(data.draw(coeff) for _ in range((1 << n) - 1)))
    c = Fraction(data.draw(st.integers(1, 9)), data.draw(st.integers(1, 9)))
    assert [bool(v) for v in check_monotone(alpha * c)] == [bool(v) for v in check_monotone(alpha)]
    perm = data.draw(st.permutations(range(1, n + 1)))
    beta = permute_functional(alpha, perm)
    # the verdict for beta at perm(i) is the verdict for alpha at i
    for i in range(1, n + 1):
        assert bool(check_monotone(beta, [perm[i - 1]])[0]) == bool(check_monotone(alpha, [i])[0])


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_check_agrees_with_cone_membership_and_decomposition(data):
    n = data.draw(st.integers(2, 4))
    alpha = Functional(n, tuple(data.draw(coeff) for _ in range((1 << n) - 1)))
    i = data.draw(st.integers(1, n))
    ok = bool(check_monotone(alpha, [i])[0])
    assert ok == bool(contains(single_system_facets(i, n), alpha))
    if ok:
        assert decompose_monotone(alpha, i).verify(alpha)
    else:
        with pytest.raises(NotAMonotone):
            decompose_monotone(alpha, i)


def test_monotone_implies_balanced():
    for r in enumerate_monotone_rays(3).rays:
        assert is_balanced(r)


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_generator_combinations_are_monotone(data):
    n = data.draw(st.integers(2, 4))
    i = data.draw(st.integers(1, n))
    g = generator_set(i, n)
    x = [Fraction(0)] * ((1 << n) - 1)
    for r in g.rays:
        c = data.draw(st.integers(0, 3))
        x = [a + c * b for a, b in zip(x, r)]
    for l in g.lineality:
        c = data.draw(st.integers(-3, 3))
        x = [a + c * b for a, b in zip(x, l)]
    alpha = Functional(n, tuple(x))
    assert check_monotone(alpha, [i])[0]
    assert decompose_monotone(alpha, i).verify(alpha)
