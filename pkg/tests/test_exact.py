from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st

from oracles import critical_residue_sum, to_sympy
from primform.exact import (
    ONE,
    ZERO,
    AlgebraError,
    ExpansionError,
    LaurentPoly,
    QuadraticExtension,
    RatFunc,
    SingularSystemError,
    det,
    evaluate_at_root,
    exact_quotient,
    finite_residue,
    homogeneous_part,
    laurent_expand,
    poly_gcd,
    solve_over_units,
    solve_rational,
    total_residue,
    truncate_degree,
    var,
)
from strategies import laurent

x, y, z, q, E = var("x"), var("y"), var("z"), var("q"), var("E1")


@given(laurent(), laurent(), laurent())
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == ZERO
    assert a * ONE == a


@given(laurent(), laurent())
def test_theta_is_a_derivation(a, b):
    assert (a * b).theta("x") == a.theta("x") * b + a * b.theta("x")
    assert (a * b).diff("y") == a.diff("y") * b + a * b.diff("y")


@given(laurent())
def test_theta_matches_diff(a):
    assert a.theta("x") == x * a.diff("x")


@given(laurent(), laurent())
def test_against_sympy(a, b):
    assert sp.expand(to_sympy(a * b) - to_sympy(a) * to_sympy(b)) == 0


@given(laurent(("x", "y"), low=0, max_terms=3))
def test_subs_composes(a):
    assert a.subs({"x": x + y}).subs({"x": x - y}) == a


def test_units_and_inverse():
    m = LaurentPoly.monomial({"x": 2, "y": -1}, Fraction(3, 2))
    assert m.is_unit()
    assert m * m.inverse() == ONE
    with pytest.raises(AlgebraError):
        (x + 1).inverse()


def test_exponential_rule():
    p = var("t1") ** 2 * E
    rule = {"t1": ONE, "E1": E}
    assert p.derive(rule) == 2 * var("t1") * E + var("t1") ** 2 * E


def test_degree_helpers():
    p = x**3 * y + x * y + 1
    assert p.degree("x") == 3 and p.low_degree("x") == 0
    assert p.total_degree(["x", "y"]) == 4
    assert truncate_degree(p, ["x", "y"], 2) == x * y + 1
    assert homogeneous_part(p, ["x", "y"], 4) == x**3 * y


def test_printing_is_deterministic():
    p = 3 * x**-1 + Fraction(1, 2) * y**2 - x * y
    assert str(p) == str(LaurentPoly(dict(reversed(list(p.items())))))


def test_exact_quotient():
    a = (z**2 - q) * (z + 3)
    assert exact_quotient(a, z**2 - q, "z") == z + 3
    assert exact_quotient(a + 1, z**2 - q, "z") is None


def test_gcd_and_ratfunc():
    assert poly_gcd((z - 1) * (z + 2), (z - 1) * (z - 5), "z") == z - 1
    r = RatFunc((z - 1) * (z + 2), (z - 1) * (z - 5))
    assert r == RatFunc(z + 2, z - 5)
    assert RatFunc(z, z**2 - q) + RatFunc(ONE, z) == RatFunc(2 * z**2 - q, z**3 - q * z)
    assert RatFunc(ONE, z).theta("z") == RatFunc(-ONE, z)


def test_laurent_expand():
    r = RatFunc(ONE, 1 - z)
    assert laurent_expand(r, "z", "zero", 3) == {0: ONE, 1: ONE, 2: ONE, 3: ONE}
    assert laurent_expand(r, "z", "infinity", 3) == {-1: -ONE, -2: -ONE, -3: -ONE}
    with pytest.raises(ExpansionError):
        laurent_expand(RatFunc(ONE, z + q + 1), "z", "zero", 1)


Q = q * E
thetaF = z - Q * z**-1


def test_residue_examples():
    zi = z**-1
    assert total_residue(RatFunc(Q * zi * zi, thetaF), "z") == ONE
    assert total_residue(RatFunc(zi, thetaF), "z") == ZERO
    assert total_residue(RatFunc(Q * zi * zi, thetaF**2), "z") == ZERO
    assert finite_residue(RatFunc(ONE, z**2 - 1), "z") == ZERO
    assert finite_residue(RatFunc(z, 3 * z**2 - 1), "z") == Fraction(1, 3)


@given(st.lists(st.integers(-3, 3), min_size=1, max_size=4), st.integers(-2, 1))
def test_residue_against_root_extension(cs, low):
    g = sum((var("z", low + k) * c for k, c in enumerate(cs)), ZERO)
    s = QuadraticExtension.root(Q)
    # simple poles at z = +-s with residue g(z)/(z (1 + Q/z^2)) = g(z) / (2z)
    trace = (evaluate_at_root(g, "z", s) / s).a
    assert total_residue(RatFunc(g * z**-1, thetaF), "z") == trace


@given(st.lists(st.integers(-3, 3), min_size=1, max_size=4))
def test_residue_against_sympy(cs):
    g = sum((var("z", k - 1) * c for k, c in enumerate(cs)), ZERO)
    ours = total_residue(RatFunc(g * z**-1, thetaF**2), "z")
    expr = to_sympy(g * z**-1) / to_sympy(thetaF) ** 2
    assert sp.simplify(to_sympy(ours) - critical_residue_sum(expr)) == 0


def test_quadratic_extension():
    s = QuadraticExtension.root(Q)
    one = QuadraticExtension(ONE, ZERO, Q)
    assert s * s == QuadraticExtension(Q, ZERO, Q)
    assert s * s.inverse() == one
    assert (s**3) / s == s * s
    assert evaluate_at_root(z**2 + z**-1, "z", s) == s * s + s.inverse()


def test_linear_algebra():
    assert solve_rational([[1, 2], [3, 4]], [5, 6]) == [Fraction(-4), Fraction(9, 2)]
    with pytest.raises(SingularSystemError):
        solve_rational([[1, 1], [1, 1]], [0, 1])
    rows = [[ONE, ZERO], [z, q]]
    assert solve_over_units(rows, [ONE + z, q]) == [ONE, ONE]
    m = [[x, ONE, ZERO], [ONE, y, ONE], [ZERO, ONE, x]]
    d = det(m)
    assert sp.expand(to_sympy(d) - sp.Matrix([[to_sympy(e) for e in r] for r in m]).det()) == 0
