import pytest

from monocone.catalog import (
    CATALOG,
    conditional_entropy,
    conditional_mutual_information,
    dual_total_correlation3,
    identify,
    lookup,
    mutual_information,
    u_monotone4,
    zhang_yeung4,
)
from monocone.functional import Functional
from monocone.lattice import permute_functional
from monocone.monotonicity import balance_defect, check_monotone


def F(n, terms):
    return Functional.from_terms(n, terms)


def test_conditional_entropy():
    assert conditional_entropy((1,), (2,), 2) == F(2, {(1, 2): 1, (2,): -1})
    assert conditional_entropy((1, 2), (), 2) == F(2, {(1, 2): 1})
    with pytest.raises(ValueError):
        conditional_entropy((1,), (1,), 2)


def test_cmi_pattern():
    assert conditional_mutual_information(1, 2, (3,), 3) == \
        F(3, {(1, 3): 1, (2, 3): 1, (3,): -1, (1, 2, 3): -1})
    with pytest.raises(ValueError):
        conditional_mutual_information(1, 1, (), 2)
    with pytest.raises(ValueError):
        conditional_mutual_information(1, 2, (4,), 3)


def test_hand_entered_coefficients():
    assert dual_total_correlation3() == F(3, {(1, 2): 1, (2, 3): 1, (1, 3): 1, (1, 2, 3): -2})
    assert u_monotone4() == F(4, {(1, 2): 1, (3, 4): 1, (1, 3): 1, (1, 2, 3): -1, (1, 3, 4): -1})


def test_u_has_two_expansions():
    cmi, mi = conditional_mutual_information, mutual_information
    u = u_monotone4()
    assert (u - (cmi(2, 3, (1,), 4) + mi(1, (3, 4), 4))).is_zero()
    assert (u - (cmi(1, 4, (3,), 4) + mi(3, (1, 2), 4))).is_zero()


def test_zhang_yeung_coefficients():
    # expanded by hand from the conditional mutual information terms
    want = F(4, {
        (1,): -2, (2,): -2, (3,): -1, (1, 2): 3, (1, 3): 3, (2, 3): 3,
        (1, 4): 1, (2, 4): 1, (3, 4): -1, (1, 2, 3): -4, (1, 2, 4): -1,
    })
    assert zhang_yeung4() == want
    assert not any(balance_defect(want))


def test_verdicts():
    for name in ("mutual-information", "dual-total-correlation", "u-monotone"):
        assert all(check_monotone(lookup(name))), name
    assert not any(check_monotone(zhang_yeung4()))


def test_identify_up_to_relabeling_and_scaling():
    u = permute_functional(u_monotone4(), (2, 4, 1, 3)) * 3
    assert identify(u) == ("u-monotone",)
    assert identify(F(4, {(1,): 1})) == ()


def test_lookup_errors():
    with pytest.raises(KeyError):
        lookup("nope")
    assert set(CATALOG) == {"mutual-information", "dual-total-correlation", "u-monotone",
                            "zhang-yeung"}
