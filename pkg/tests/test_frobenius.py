from fractions import Fraction

import pytest
import sympy as sp

from oracles import discriminant_poly, three_point_cp1, three_point_poly, to_sympy, wdvv
from primform.exact import ONE, ZERO, var
from primform.frobenius import FrobeniusError, build_frobenius, flat_coordinates
from primform.lgsystem import builtin

t0, t1, t2, E, q = var("t0"), var("t1"), var("t2"), var("E1"), var("q")
Q = q * E


@pytest.fixture(scope="module")
def cp1():
    return build_frobenius(builtin("cp1"))


@pytest.fixture(scope="module")
def a2():
    return build_frobenius(builtin("a2"))


@pytest.fixture(scope="module")
def a3():
    return build_frobenius(builtin("a3"))


def test_cp1_metric_and_products(cp1):
    assert cp1.eta == [[ZERO, ONE], [ONE, ZERO]]
    assert cp1.product(1, 1) == [Q, ZERO]
    assert cp1.product(0, 1) == [ZERO, ONE]
    assert cp1.t0_product(1) == [-2 * Q, ZERO]
    assert cp1.t0_product(0) == [ZERO, -2 * ONE]


def test_cp1_potential_euler_discriminant(cp1):
    assert cp1.potential == Fraction(1, 2) * t0**2 * t1 + Q
    assert cp1.euler == [t0, 2 * ONE]
    assert cp1.discriminant == t0**2 - 4 * Q
    assert cp1.euler_apply(cp1.discriminant) == 2 * cp1.discriminant
    rest = cp1.euler_apply(cp1.potential) - 2 * cp1.potential
    assert not rest.involves(["E1"]) and rest.total_degree(["t0", "t1"]) <= 2


def test_cp1_structure_against_residue_oracle(cp1):
    Z, q_, E1, T0 = sp.symbols("z q E1 t0")
    F = T0 + Z + q_ * E1 / Z
    images = [sp.Integer(1), q_ * E1 / Z]
    for i in range(2):
        for j in range(2):
            for k in range(2):
                assert sp.simplify(to_sympy(cp1.C(i, j, k)) - three_point_cp1(F, images[i], images[j], images[k])) == 0


def test_a2_values(a2):
    assert a2.eta == [[ZERO, Fraction(1, 3) * ONE], [Fraction(1, 3) * ONE, ZERO]]
    assert a2.potential == Fraction(1, 6) * t0**2 * t1 - Fraction(1, 216) * t1**4
    assert a2.discriminant == t0**2 + Fraction(4, 27) * t1**3
    assert a2.euler == [t0, Fraction(2, 3) * t1]
    assert a2.t0_product(0) == [ZERO, Fraction(-2, 3) * t1]
    assert a2.t0_product(1) == [Fraction(2, 9) * t1**2, ZERO]
    assert a2.r == Fraction(1, 3)


def test_a3_flat_coordinates_and_structure(a3):
    assert a3.change.mapping["a0"] == t0 + Fraction(1, 8) * t2**2
    F = to_sympy(a3.F)
    images = [sp.diff(F, sp.Symbol(n)) for n in a3.coords.names]
    for (i, j, k), c in a3.structure.items():
        assert sp.simplify(to_sympy(c) - three_point_poly(F, images[i], images[j], images[k])) == 0
    assert to_sympy(a3.discriminant) == sp.expand(discriminant_poly(F))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_euler_discriminant_homogeneity(n):
    fd = build_frobenius(builtin(f"a{n}"))
    assert fd.euler_apply(fd.discriminant) == n * fd.discriminant


def test_a1_discriminant():
    fd = build_frobenius(builtin("a1"))
    assert fd.discriminant == t0 and fd.mu == 1


@pytest.mark.parametrize("name", ["cp1", "a2", "a3", "a4", "a5", "a6"])
def test_frobenius_axioms(name):
    fd = build_frobenius(builtin(name))
    n = fd.mu
    assert fd.eta_is_flat()
    assert not fd.potentiality_violations()
    assert not fd.wdvv()
    for j in range(n):
        for k in range(n):
            assert fd.C(0, j, k) == fd.eta[j][k]
    for a in range(n):
        for b in range(n):
            ab = fd.product(a, b)
            for c in range(n):
                bc = fd.product(b, c)
                left = sum((ab[e] * fd.eta[e][c] for e in range(n)), ZERO)
                right = sum((fd.eta[a][e] * bc[e] for e in range(n)), ZERO)
                assert left == right


def test_wdvv_against_sympy(a3):
    names = a3.coords.names
    syms = [sp.Symbol(s) for s in names]
    eta_inv = [[to_sympy(e) for e in row] for row in a3.eta_inv]
    phi = to_sympy(a3.potential)
    assert wdvv(phi, names, eta_inv, lambda e, i: sp.diff(e, syms[i])) == []
    bad = phi + syms[1] ** 3 * syms[2] ** 3
    assert wdvv(bad, names, eta_inv, lambda e, i: sp.diff(e, syms[i]))


def test_wdvv_detector_fires(a3):
    assert a3.wdvv(a3.potential + t1**3 * t2**3)


def test_flat_solver_idempotent():
    lg = builtin("a4")
    fd = build_frobenius(lg)
    flat_lg = type(lg)(**{**lg.__dict__, "family": fd.F, "coordinates": fd.coords.names, "f": lg.f})
    assert flat_coordinates(flat_lg).is_identity()


def test_degenerate_metric_reported():
    fd = build_frobenius(builtin("a2"), zeta=ZERO, flatten=False)
    with pytest.raises(FrobeniusError):
        fd.eta
