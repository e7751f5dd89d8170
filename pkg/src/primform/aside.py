"""Genus-0 descendant invariants of the projective line, computed directly.

Independent of any Frobenius potential: primaries come from the small quantum
ring H*(P^1) with p * p = q, descendants from the divisor equation (one or
two points) and the topological recursion relation. Classes are O_0 = 1 and
O_1 = p, the point class.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

# quantum product on the basis (1, p): p * p = q * 1
_PRODUCT = {(0, 0): {(0, 0): 1}, (0, 1): {(1, 0): 1}, (1, 0): {(1, 0): 1}, (1, 1): {(0, 1): 1}}  # (class, q power)
# Poincare pairing: <1, p> = 1
ETA_INV_PAIRS = ((0, 1), (1, 0))


def dimension_ok(ins, beta: int) -> bool:
    return sum(d + a for d, a in ins) == 2 * beta + len(ins) - 2


def _three_point(a: int, b: int, c: int, beta: int) -> Fraction:
    """<O_a O_b O_c>_beta = coefficient of q^beta in (O_a * O_b, O_c)."""
    total = Fraction(0)
    for (cls, power), coef in _PRODUCT[a, b].items():
        if power == beta and cls + c == 1:
            total += coef
    return total


def _primary(classes, beta: int) -> Fraction:
    n = len(classes)
    if n == 3:
        return _three_point(*classes, beta)
    # reduce with the fundamental class and divisor axioms
    if 0 in classes:
        return Fraction(0)
    if beta == 0:
        return Fraction(0)
    return beta * _primary(classes[1:], beta)


@lru_cache(maxsize=None)
def correlator(ins, beta: int) -> Fraction:
    """<sigma_d1(O_a1) ... sigma_dn(O_an)>_{0,beta} of P^1."""
    ins = tuple(sorted(ins))
    n = len(ins)
    if beta < 0 or n == 0 or any(d < 0 for d, _ in ins):
        return Fraction(0)
    if beta == 0 and n < 3:
        return Fraction(0)
    if not dimension_ok(ins, beta):
        return Fraction(0)
    if n < 3:
        # divisor equation read backwards: insert p and divide by beta
        total = correlator(ins + ((0, 1),), beta)
        for k, (d, a) in enumerate(ins):
            if d > 0 and a == 0:
                total -= correlator(ins[:k] + ((d - 1, 1),) + ins[k + 1:], beta)
        return total / beta
    desc = [k for k, (d, _) in enumerate(ins) if d > 0]
    if not desc:
        return _primary(tuple(a for _, a in ins), beta)
    k = desc[0]
    d, a = ins[k]
    others = ins[:k] + ins[k + 1:]
    X, Y, rest = others[0], others[1], others[2:]
    total = Fraction(0)
    for mask in range(1 << len(rest)):
        S1 = tuple(r for j, r in enumerate(rest) if mask >> j & 1)
        S2 = tuple(r for j, r in enumerate(rest) if not mask >> j & 1)
        for b1 in range(beta + 1):
            for e, f in ETA_INV_PAIRS:
                left = correlator(((d - 1, a),) + S1 + ((0, e),), b1)
                if left:
                    total += left * correlator(((0, f), X, Y) + S2, beta - b1)
    return total


def cup_with_point(a: int):
    """Classical p * O_a as a basis index, or None when it vanishes."""
    return 1 if a == 0 else None
