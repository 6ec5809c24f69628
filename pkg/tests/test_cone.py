from fractions import Fraction

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

import oracles
from monocone.cone import (
    HRep,
    NonNegCombination,
    Separation,
    VRep,
    contains,
    dd_convert,
    dual_convert,
    equivalent,
    intersect,
    is_extremal,
    reconstruct,
    solve_nonneg_combination,
    verify_dd_pair,
)
from monocone.errors import DimensionMismatch, ResourceLimitExceeded
from monocone.linalg import integerize
from monocone.monotonicity import monotonicity_cone, single_system_facets


def test_quadrant():
    h = HRep(2, ((1, 0), (0, 1)))
    v = dd_convert(h)
    assert v.rays == ((0, 1), (1, 0))
    assert v.lineality == ()


def test_halfplane_has_lineality():
    v = dd_convert(HRep(2, ((1, 0),)))
    assert v.rays == ((1, 0),)
    assert len(v.lineality) == 1 and v.lineality[0][0] == 0


def test_equalities_only():
    v = dd_convert(HRep(3, (), ((1, 1, 1),)))
    assert v.rays == ()
    assert len(v.lineality) == 2


def test_zero_cone():
    v = dd_convert(HRep(2, ((1, 0), (-1, 0), (0, 1), (0, -1))))
    assert v.rays == () and v.lineality == ()
    h = dual_convert(v)
    assert h.inequalities == () and len(h.equalities) == 2


def test_square_pyramid():
    # cone over a square: 4 facets, 4 rays, not simplicial
    rows = ((1, 0, 1), (-1, 0, 1), (0, 1, 1), (0, -1, 1))
    v = dd_convert(HRep(3, rows))
    assert set(v.rays) == {(1, 1, 1), (1, -1, 1), (-1, 1, 1), (-1, -1, 1)}
    assert set(dual_convert(v).inequalities) == set(rows)


def test_contains_reports_first_violation():
    h = HRep(2, ((1, 0), (0, 1)), ((1, -1),))
    m = contains(h, (1, -1))
    assert not m and m.kind == "inequality" and m.index == 1 and m.value == -1
    m = contains(h, (2, 1))
    assert not m and m.kind == "equality" and m.value == 1
    assert contains(h, (3, 3))
    with pytest.raises(DimensionMismatch):
        contains(h, (1, 1, 1))


def test_is_extremal():
    h = HRep(3, ((1, 0, 0), (0, 1, 0), (0, 0, 1)))
    assert is_extremal(h, (0, 0, 5))
    assert not is_extremal(h, (1, 1, 0))
    with pytest.raises(ValueError):
        is_extremal(h, (-1, 0, 0))


def test_rejects_zero_rows():
    with pytest.raises(ValueError):
        HRep(2, ((0, 0),))


def test_max_rays_cap():
    h = HRep(3, ((1, 0, 0), (0, 1, 0), (0, 0, 1)))
    with pytest.raises(ResourceLimitExceeded):
        dd_convert(h, max_rays=2)


@pytest.mark.parametrize("n", [2, 3])
def test_monotonicity_cone_against_tight_subset_oracle(n):
    h = monotonicity_cone("all", n)
    assert set(dd_convert(h).rays) == oracles.extreme_rays(h.inequalities, h.equalities, h.dim)


@pytest.mark.parametrize("adjacency", ["algebraic", "combinatorial"])
@pytest.mark.parametrize("order", ["lexmin", "sparse", "given"])
def test_result_independent_of_order_and_adjacency(order, adjacency):
    h = monotonicity_cone("all", 3)
    ref = dd_convert(h)
    assert dd_convert(h, order=order, adjacency=adjacency) == ref


def test_explicit_order_and_jobs():
    h = monotonicity_cone("all", 4)
    ref = dd_convert(h)
    rev = list(range(len(h.inequalities)))[::-1]
    assert dd_convert(h, order=rev).rays == ref.rays
    assert dd_convert(h, jobs=2).rays == ref.rays
    with pytest.raises(ValueError):
        dd_convert(h, order=[0, 0])


def test_progress_callback_sees_every_step():
    h = monotonicity_cone("all", 3)
    seen = []
    dd_convert(h, progress=lambda s, t, r: seen.append((s, t)))
    assert seen and seen[-1][0] == seen[-1][1]


# random cones: generators drawn first, so the cone is known exactly

vec = st.lists(st.integers(-3, 3), min_size=3, max_size=3).filter(any)


@settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(st.lists(vec, min_size=1, max_size=6))
def test_round_trip_on_random_generated_cones(gens):
    v = VRep(3, tuple(gens))
    h = dual_convert(v)
    back = dd_convert(h)
    # every input generator lies in the cone, every output ray is extreme
    for g in gens:
        assert contains(h, g)
    for r in back.rays:
        assert is_extremal(h, r) or back.lineality
    assert verify_dd_pair(h, back).passed
    for g in gens:
        assert isinstance(solve_nonneg_combination(back, g), NonNegCombination)
    # redundant input generators are reported, never silently accepted
    if not back.lineality:
        prim = {integerize(g) for g in gens}
        assert verify_dd_pair(h, v).passed == (prim == set(back.rays))
    assert equivalent(h, dual_convert(back))


@settings(max_examples=40, deadline=None)
@given(st.lists(vec, min_size=1, max_size=5), vec)
def test_nonneg_combination_or_separation(gens, target):
    v = VRep(3, tuple(gens))
    res = solve_nonneg_combination(v, target)
    h = dual_convert(v)
    if isinstance(res, NonNegCombination):
        assert reconstruct(v, res) == tuple(Fraction(x) for x in target)
        assert contains(h, target)
    else:
        assert isinstance(res, Separation)
        assert not contains(h, target)


def test_verify_pair_flags_problems():
    h = HRep(2, ((1, 0), (0, 1)))
    assert verify_dd_pair(h, VRep(2, ((1, 0), (0, 1)))).passed
    rep = verify_dd_pair(h, VRep(2, ((1, 0),)))
    assert not rep.passed and rep.missing == [(0, 1)]
    rep = verify_dd_pair(h, VRep(2, ((1, 0), (0, 1), (1, 1))))
    assert not rep.passed and rep.extra == [(1, 1)]
    rep = verify_dd_pair(h, VRep(2, ((1, 0), (0, 1), (-1, 0))))
    assert not rep.passed and rep.violating
    assert rep.lines()[0] == "FAIL"


def test_intersect_single_system_cones():
    n = 3
    h = intersect(single_system_facets(1, n), single_system_facets(2, n))
    assert len(h.inequalities) == 8 and len(h.equalities) == 2
    red = intersect(single_system_facets(1, n), single_system_facets(2, n), reduce=True)
    assert equivalent(h, red)
    assert len(red.inequalities) <= len(h.inequalities)
