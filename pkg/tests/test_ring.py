from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st

from oracles import pairing_cp1, pairing_poly, to_sympy
from primform.exact import ZERO, var
from primform.lgsystem import builtin, parse_spec
from primform.ring import (
    RingError,
    build_milnor_ring,
    gram_matrix,
    k0_pairing,
    milnor_number_from_weights,
    normal_form,
    poincare_polynomial,
    ring_of,
    spectrum,
    standard_basis,
)

z, x, y = var("z"), var("x"), var("y")

E6 = {
    "kind": "polynomial",
    "variables": [{"name": "x", "weight": "1/3"}, {"name": "y", "weight": "1/4"}],
    "superpotential": [{"exponents": {"x": 3}}, {"exponents": {"y": 4}}],
}


@pytest.mark.parametrize("n", range(1, 7))
def test_an_ring(n):
    ring = build_milnor_ring(builtin(f"a{n}"))
    assert ring.mu == n
    assert list(ring.basis_polys) == [z**k for k in range(n)]
    assert ring.reduce(z**n) == ZERO
    assert milnor_number_from_weights(builtin(f"a{n}").weights) == n


def test_a2_pairing_matches_residue_oracle():
    ring = build_milnor_ring(builtin("a2"))
    G = gram_matrix(ring)
    Z = sp.Symbol("z")
    for i in range(2):
        for j in range(2):
            assert to_sympy(G[i][j]) == pairing_poly(Z**3, Z**i, Z**j)


def test_cp1_ring():
    ring = build_milnor_ring(builtin("cp1"))
    assert ring.mu == 2
    assert ring.normal_form(z**2) == [var("q"), ZERO]
    assert ring.normal_form(z**-1) == [ZERO, var("q").inverse()]
    G = gram_matrix(ring)
    Z, q = sp.Symbol("z"), sp.Symbol("q")
    for i in range(2):
        for j in range(2):
            assert to_sympy(G[i][j]) == pairing_cp1(Z + q / Z, Z**i, Z**j)


def test_two_variable_ring():
    lg = parse_spec(E6)
    ring = build_milnor_ring(lg)
    assert ring.mu == 6
    assert ring.reduce(x**2) == ZERO and ring.reduce(y**3) == ZERO
    G = gram_matrix(ring)
    assert G[0][5] == Fraction(1, 12)
    sp_ = spectrum(lg)
    assert sp_.exponent_duality
    assert poincare_polynomial(sp_)[1]


@given(st.lists(st.integers(-4, 4), min_size=1, max_size=9))
def test_normal_form_idempotent_and_linear(cs):
    ring = build_milnor_ring(builtin("a4"))
    g = sum((z**k * c for k, c in enumerate(cs)), ZERO)
    nf = ring.reduce(g)
    assert ring.reduce(nf) == nf
    assert ring.reduce(g * z) == ring.reduce(nf * z)
    assert normal_form(g, ring) == ring.normal_form(nf)


@pytest.mark.parametrize("name", ["a3", "cp1"])
def test_product_table_commutative_associative(name):
    ring = build_milnor_ring(builtin(name))
    b = ring.basis_polys
    for i in range(ring.mu):
        for j in range(ring.mu):
            assert ring.reduce(b[i] * b[j]) == ring.reduce(b[j] * b[i])
            for k in range(ring.mu):
                assert ring.reduce(ring.reduce(b[i] * b[j]) * b[k]) == ring.reduce(b[i] * ring.reduce(b[j] * b[k]))


def test_k0_is_frobenius():
    ring = build_milnor_ring(builtin("a4"))
    b = ring.basis_polys
    for i in range(4):
        for j in range(4):
            for k in range(4):
                assert k0_pairing(b[i] * b[j], b[k], ring) == k0_pairing(b[i], b[j] * b[k], ring)


def test_spectrum_an():
    for n in range(1, 7):
        sp_ = spectrum(builtin(f"a{n}"))
        assert sp_.exponents == tuple(Fraction(k, n + 1) for k in range(1, n + 1))
        assert sp_.exponent_duality
        assert poincare_polynomial(sp_)[1]
        assert sp_.c_hat == sp_.c_hat_formula


def test_non_isolated_rejected():
    with pytest.raises(RingError):
        ring_of("polynomial", ("x", "y"), (Fraction(1, 2), Fraction(1, 2)), x**2 * y)


def test_standard_basis_order():
    basis = standard_basis("polynomial", ("x", "y"), (Fraction(1, 3), Fraction(1, 4)), x**3 + y**4)
    assert [dict(m) for m in basis][:3] == [{}, {"y": 1}, {"x": 1}]
