from fractions import Fraction

import pytest

from primform.exact import ONE, ZERO, var
from primform.lgsystem import builtin
from primform.verifier import CONDITIONS, verify_primitive_form


def test_cp1_certificate():
    rep = verify_primitive_form(builtin("cp1"))
    assert [c.name for c in rep.conditions] == list(CONDITIONS)
    assert rep.all_hold
    assert rep.r == 0
    assert rep.N == [[ZERO, ZERO], [ZERO, ONE]]
    assert rep.condition("exponent_operator").detail["agrees_with_euler_spectrum"]


@pytest.mark.parametrize("n", range(1, 7))
def test_an_certificates(n):
    rep = verify_primitive_form(builtin(f"a{n}"))
    assert rep.all_hold
    assert rep.r == Fraction(1, n + 1)
    assert [rep.N[i][i] for i in range(n)] == [Fraction(k, n + 1) * ONE for k in range(1, n + 1)]


def test_bad_form_fails_homogeneity_with_witness():
    rep = verify_primitive_form(builtin("cp1"), zeta=ONE + var("z"))
    hom = rep.condition("homogeneity")
    assert not hom.holds
    assert "nabla_E zeta" in hom.witness
    assert rep.condition("invertibility").holds
    assert not rep.all_hold
    assert rep.as_dict()["passed"] == 1


def test_non_invertible_form():
    rep = verify_primitive_form(builtin("a2"), zeta=var("z"))
    assert not rep.condition("invertibility").holds


def test_report_is_plain_data():
    d = verify_primitive_form(builtin("a2")).as_dict()
    assert d["passed"] == 5 and d["r"] == "1/3"
    assert d["N"] == [["1/3", "0"], ["0", "2/3"]]
