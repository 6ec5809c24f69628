"""Acceptance criteria, one test each.

Every test wraps its checks in ``criterion(...)`` so that a PASS or FAIL
line (with wall time) lands in the terminal summary. The n=5 enumeration is
marked ``slow``; deselect it with ``-m "not slow"`` for a quick run.
"""

import random
from fractions import Fraction

import pytest

import oracles
from acceptance_log import criterion
from monocone import cddio
from monocone.catalog import (
    conditional_mutual_information,
    dual_total_correlation3,
    mutual_information,
    u_monotone4,
    zhang_yeung4,
)
from monocone.cone import contains, dd_convert, is_extremal, verify_dd_pair
from monocone.functional import Functional
from monocone.lattice import enumerate_lower_sets
from monocone.monotonicity import (
    balance_defect,
    check_monotone,
    decompose_monotone,
    embed_symmetric,
    enumerate_monotone_rays,
    generator_set,
    lift_partial_trace,
    monotonicity_cone,
    single_system_facets,
    symmetric_facets,
    symmetric_generators,
)
from monocone.witness import (
    evaluate,
    facet_witness_distribution,
    shannon_entropy_vector,
    violation_certificate,
    violation_certificates,
)


def test_n2_single_ray():
    with criterion("n=2 uniqueness: one ray, equal to I(1;2)", 1):
        res = enumerate_monotone_rays(2)
        assert len(res.rays) == 1
        assert res.rays[0].is_positive_multiple_of(mutual_information(1, 2, 2))


def test_j_and_u_are_extremal_monotones():
    with criterion("n=3,4 membership: J and U satisfied for all systems and extremal", 10):
        for f in (dual_total_correlation3(), u_monotone4()):
            assert all(v.satisfied for v in check_monotone(f, "all"))
            assert is_extremal(monotonicity_cone("all", f.n), f)


def test_u_identities():
    with criterion("U identities hold coefficientwise"):
        cmi, mi = conditional_mutual_information, mutual_information
        u = u_monotone4()
        assert (u - (cmi(2, 3, (1,), 4) + mi(1, (3, 4), 4))).is_zero()
        assert (u - (cmi(1, 4, (3,), 4) + mi(3, (1, 2), 4))).is_zero()


def test_zhang_yeung_balanced_but_violated():
    with criterion("Zhang-Yeung: balanced, violated for every system, certificates verify", 10):
        zy = zhang_yeung4()
        assert balance_defect(zy) == (0, 0, 0, 0)
        verdicts = check_monotone(zy, "all")
        assert [v.satisfied for v in verdicts] == [False] * 4
        assert all(v.lower_set is not None for v in verdicts)
        cert = violation_certificate(zy)
        assert cert is not None and cert.verify() and cert.witness.atoms
        certs = violation_certificates(zy)
        assert [c.system for c in certs] == [1, 2, 3, 4]
        assert all(c.verify() for c in certs)


def test_single_system_dd_pairs():
    with criterion("DD pair: facets vs generators for n<=4; n=3 rays match brute force", 60):
        for n in (1, 2, 3, 4):
            for i in range(1, n + 1):
                rep = verify_dd_pair(single_system_facets(i, n), generator_set(i, n))
                assert rep.passed, (i, n, rep.lines())
        h = monotonicity_cone("all", 3)
        brute = oracles.extreme_rays(h.inequalities, h.equalities, h.dim)
        assert set(dd_convert(h).rays) == brute and len(brute) == 7


def test_lower_set_counts():
    with criterion("lower-set counts 3, 6, 20, 168 for n=2..5", 10):
        for n, want in zip((2, 3, 4, 5), (3, 6, 20, 168)):
            ours = enumerate_lower_sets(1, n)
            assert len(ours) == want
            brute = set(oracles.lower_sets(1, n))
            assert len(brute) == want
            assert {frozenset(frozenset(s.members) for s in L.sets) for L in ours} == brute


def test_symmetric_closed_form():
    with criterion("symmetric cone: DD output equals closed-form generators, n=2..10", 60):
        for n in range(2, 11):
            got = dd_convert(symmetric_facets(n))
            want = symmetric_generators(n)
            assert got.lineality == ()
            assert set(got.rays) == {oracles.primitive(r) for r in want.rays}
            if n <= 5:
                for r in want.rays:
                    assert all(v.satisfied for v in check_monotone(embed_symmetric(r), "all"))


def test_facet_witnesses():
    with criterion("facet witnesses: conditional pattern and lifted sums, n<=4", 60):
        rng = random.Random(7)
        for n in (2, 3, 4):
            for i in range(1, n + 1):
                for L in enumerate_lower_sets(i, n):
                    if L.is_empty() or L.is_full():
                        continue
                    d = facet_witness_distribution(L)
                    outcomes = [o for o, _ in d.atoms]
                    probs = [p for _, p in d.atoms]
                    ent = oracles.entropy_vector(outcomes, probs, n + 1)
                    for s in oracles.poset(i, n):
                        mask = sum(1 << (k - 1) for k in s)
                        want = 1 if mask in L.masks else 0
                        assert ent[s | {n + 1}] - ent[s] == want
                    h = shannon_entropy_vector(d)
                    for _ in range(3):
                        alpha = Functional(n, tuple(Fraction(rng.randint(-9, 9), rng.randint(1, 9))
                                                    for _ in range((1 << n) - 1)))
                        lifted = evaluate(lift_partial_trace(alpha, i), h)
                        assert lifted == sum(alpha.coeffs[m - 1] for m in L.masks)


@pytest.mark.slow
def test_n5_enumeration(tmp_path):
    with criterion("n=5 enumeration: balanced, extremal, decomposable, deterministic across jobs",
                   3600):
        res = enumerate_monotone_rays(5)
        rays = res.vrep.rays
        assert rays and res.vrep.lineality == ()
        h = monotonicity_cone("all", 5)
        for r in rays:
            f = Functional(5, r)
            assert not any(balance_defect(f))
            assert contains(h, r)
            assert is_extremal(h, r)
            for i in range(1, 6):
                assert decompose_monotone(f, i).verify(f)
        again = enumerate_monotone_rays(5, jobs=2)
        assert again.vrep == res.vrep
        path = tmp_path / "m5.ext"
        path.write_text(cddio.format_vrep(res.vrep))
        assert cddio.read(str(path)).rays == rays
        print(f"n=5: {len(rays)} extreme rays")


def test_n1_zero_cone():
    with criterion("n=1: the cone is the zero functional"):
        h = monotonicity_cone("all", 1)
        v = dd_convert(h)
        assert v.rays == () and v.lineality == ()
        assert contains(h, (0,)) and not contains(h, (1,)) and not contains(h, (-1,))
