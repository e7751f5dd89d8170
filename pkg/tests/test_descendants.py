from fractions import Fraction
from itertools import combinations_with_replacement

import pytest

from oracles import factorial_tower
from primform import aside
from primform.descendants import (
    Caps,
    CapsError,
    Gravity,
    apply_mirror_map,
    axiom_ledger,
    build_table,
    compare_free_energies,
    cp1_dimension,
    deformed_flat,
    descendant_correlator,
    generating_function,
    mirror_map,
    one_point_tower,
    slot_var,
    slots,
)
from primform.exact import ONE, ZERO, var
from primform.frobenius import build_frobenius
from primform.lgsystem import builtin

t0, t1, E, q = var("t0"), var("t1"), var("E1"), var("q")


@pytest.fixture(scope="module")
def fd():
    return build_frobenius(builtin("cp1"))


@pytest.fixture(scope="module")
def grav(fd):
    return Gravity(fd)


def test_seed_and_first_level(grav):
    assert grav.h(0, -1) == t1 and grav.h(1, -1) == t0
    assert grav.h(1, 0) == Fraction(1, 2) * t0**2 + q * E
    assert grav.h(0, 0) == t0 * t1


def test_recursion_holds_at_every_level(grav):
    d = grav.coords.d
    for l in range(2):
        for lev in range(4):
            h, prev = grav.h(l, lev), grav.h(l, lev - 1)
            for a in range(2):
                for b in range(2):
                    rhs = sum((grav._up[a, b, e] * d(prev, e) for e in range(2)), ZERO)
                    assert d(d(h, a), b) == rhs
            assert d(h, 0) == prev


def test_deformed_flat_wrapper(fd, grav):
    assert deformed_flat(fd, 1, 2) == grav.h(1, 2)


def test_correlator_examples(fd, grav):
    assert descendant_correlator(((0, 1), (0, 1), (0, 1)), 1, fd, gravity=grav) == 1
    assert grav.correlator(((2, 1),), 2) == Fraction(1, 4)
    assert grav.correlator(((0, 0), (0, 1), (0, 1)), 0) == 0
    assert grav.correlator(((0, 0), (0, 0), (0, 1)), 0) == 1
    assert grav.correlator(((0, 1), (0, 1), (0, 1)), 0) == 0


def test_caps_enforced(fd, grav):
    with pytest.raises(CapsError):
        descendant_correlator(((4, 1),), 1, fd, gravity=grav)
    with pytest.raises(CapsError):
        descendant_correlator(((0, 1),) * 6, 1, fd, gravity=grav)
    with pytest.raises(CapsError):
        descendant_correlator(((0, 1),) * 3, 4, fd, gravity=grav)


def test_a_side_examples():
    assert aside.correlator(((0, 1), (0, 1), (0, 1)), 1) == 1
    assert aside.correlator(((0, 1), (0, 1), (0, 1)), 0) == 0
    assert aside.correlator(((0, 1),) * 5, 1) == 1


def test_towers(grav):
    expected = factorial_tower(4)
    assert [str(v) for v in one_point_tower(grav, 4)] == [str(v) for v in expected]
    assert [aside.correlator(((2 * d - 2, 1),), d) for d in range(1, 5)] == one_point_tower(grav, 4)
    assert one_point_tower(Gravity(grav.fd), 6)[:4] == one_point_tower(grav, 4)


def test_pipelines_agree(grav):
    for n in range(1, 5):
        for ins in combinations_with_replacement(slots(2, 3), n):
            for beta in range(4):
                assert grav.correlator(ins, beta) == aside.correlator(ins, beta), (ins, beta)


def test_symmetry(grav):
    ins = ((1, 0), (0, 1), (2, 1), (0, 0))
    assert grav.correlator(ins, 2) == grav.correlator(tuple(reversed(ins)), 2)


def test_mirror_map_examples(grav):
    caps = Caps()
    mm = mirror_map(grav, caps)
    # top-level coordinates have nothing above them
    assert mm[slot_var((3, 0))] == var(slot_var((3, 0)))
    # only t^1_1 switched on: t~^0_0 picks up eps * q
    eps = {s: ZERO for s in mm}
    eps[slot_var((1, 1))] = ONE
    image = mm[slot_var((0, 0))].subs(eps)
    assert image.coeff("q", 1) == ONE


def test_mirror_map_is_affine(grav):
    caps = Caps(3, 2, 2)
    mm = mirror_map(grav, caps)
    names = set(mm)
    for form in mm.values():
        assert form.total_degree(names) <= 1


def test_comparison_small_and_default(grav):
    small = compare_free_energies(aside.correlator, grav, Caps(3, 0, 1))
    assert small.max_discrepancy == 0 and small.compared_terms > 0
    full = compare_free_energies(aside.correlator, grav, Caps())
    assert full.max_discrepancy == 0 and full.nonzero_terms == 0


def test_comparison_needs_the_mirror_map(grav):
    raw = compare_free_energies(aside.correlator, grav, Caps(), use_mirror_map=False)
    assert raw.nonzero_terms > 0


def test_corruption_is_detected(fd):
    bad = Gravity(fd, q * t1**3 * Fraction(1, 6))
    assert compare_free_energies(aside.correlator, bad, Caps(3, 0, 1)).max_discrepancy != 0


def test_generating_function_weights(grav):
    caps = Caps(3, 0, 1)
    gf = generating_function(aside.correlator, 2, caps)
    # <O0 O0 O1> = 1 appears as T0^2 T1 / 2
    assert gf.coeff_of({"T0_0": 2, "T1_0": 1}) == Fraction(1, 2)
    assert apply_mirror_map(gf, mirror_map(grav, caps), caps) == gf


def test_axioms_on_tables(grav):
    caps = Caps()
    for fn in (grav.correlator, aside.correlator):
        table = build_table(fn, 2, caps, dimension=cp1_dimension)
        ledger = axiom_ledger(table, fn, divisor=1, cup=aside.cup_with_point)
        for check in ledger.values():
            assert check.checked > 0 and not check.failures


def test_axiom_ledger_catches_a_wrong_value(grav):
    table = build_table(grav.correlator, 2, Caps(4, 1, 1), dimension=cp1_dimension)
    key = (((0, 0), (0, 1), (0, 1), (1, 1)), 1)
    table.entries[key] += 1
    ledger = axiom_ledger(table, grav.correlator, divisor=1, cup=aside.cup_with_point)
    assert ledger["string"].failures


def test_a3_descendants():
    g = Gravity(build_frobenius(builtin("a3")))
    table = build_table(g.correlator, 3, Caps(4, 2, 0))
    ledger = axiom_ledger(table, g.correlator)
    assert all(not c.failures for c in ledger.values())
    assert g.correlator(((0, 0), (0, 0), (0, 2)), 0) == g.eta[0][2]
