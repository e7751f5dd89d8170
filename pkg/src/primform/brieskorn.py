"""Localized one-variable calculus of cohomology classes phi * vol.

A class is stored as N / D^m where D is the critical generator of the
deformed superpotential: D = z dF/dz for Laurent systems (volume dz/z) and
D = dF/dz for polynomial ones (volume dz). Derivatives in the chart variable
are the matching operator d: theta = z d/dz, or d/dz.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .exact import (
    ONE,
    ZERO,
    AlgebraError,
    LaurentPoly,
    RatFunc,
    exact_quotient,
    finite_residue,
    laurent_expand,
    total_residue,
    var,
)


class LogObstruction(AlgebraError):
    """d^-1 of the class is not rational; ``residue`` is the obstructing coefficient."""

    def __init__(self, residue: LaurentPoly, degree: int):
        super().__init__(f"log obstruction: coefficient {residue} of z^{degree} cannot be integrated")
        self.residue = residue
        self.degree = degree


@dataclass(frozen=True)
class Calculus:
    """The data the connection needs: F(z, t) and how d/dt_i acts."""

    kind: str
    z: str
    F: LaurentPoly
    coordinates: tuple
    exponential: Mapping[str, str] = field(default_factory=dict)

    @property
    def volume(self) -> str:
        return "dz/z" if self.kind == "laurent" else "dz"

    def d(self, p: LaurentPoly) -> LaurentPoly:
        return p.theta(self.z) if self.kind == "laurent" else p.diff(self.z)

    @property
    def D(self) -> LaurentPoly:
        return self.d(self.F)

    @property
    def F0(self) -> LaurentPoly:
        return var(self.coordinates[0]) - self.F

    def derivation(self, i: int) -> dict:
        c = self.coordinates[i]
        rule = {c: ONE}
        if c in self.exponential:
            e = self.exponential[c]
            rule[e] = var(e)
        return rule

    def derive(self, p: LaurentPoly, i: int) -> LaurentPoly:
        return p.derive(self.derivation(i))

    def cls(self, num, order: int = 0) -> "BrieskornClass":
        return BrieskornClass(LaurentPoly.coerce(num), order, self)


class BrieskornClass:
    """Representative N / D^order of a class, with D the critical generator."""

    __slots__ = ("num", "order", "calc")

    def __init__(self, num: LaurentPoly, order: int, calc: Calculus):
        if order < 0:
            num, order = num * calc.D ** (-order), 0
        self.num = num
        self.order = order
        self.calc = calc

    def reduced(self) -> "BrieskornClass":
        num, m = self.num, self.order
        if num.is_zero():
            return BrieskornClass(ZERO, 0, self.calc)
        D = self.calc.D
        while m > 0:
            q = exact_quotient(num, D, self.calc.z)
            if q is None or (self.calc.kind == "polynomial" and q.low_degree(self.calc.z) < 0):
                break
            num, m = q, m - 1
        return BrieskornClass(num, m, self.calc)

    def at_order(self, m: int) -> LaurentPoly:
        if m < self.order:
            raise ValueError("cannot lower the pole order of a representative")
        return self.num * self.calc.D ** (m - self.order)

    def __add__(self, other: "BrieskornClass") -> "BrieskornClass":
        m = max(self.order, other.order)
        return BrieskornClass(self.at_order(m) + other.at_order(m), m, self.calc)

    def __neg__(self):
        return BrieskornClass(-self.num, self.order, self.calc)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, g) -> "BrieskornClass":
        """Multiply the representative by a function g (e.g. F^0 for t0 *)."""
        return BrieskornClass(self.num * g, self.order, self.calc)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __eq__(self, other):
        if not isinstance(other, BrieskornClass):
            return NotImplemented
        m = max(self.order, other.order)
        return self.at_order(m) == other.at_order(m)

    __hash__ = None

    def as_ratfunc(self) -> RatFunc:
        return RatFunc(self.num, self.calc.D**self.order)

    def __str__(self):
        r = self.reduced()
        vol = self.calc.volume
        if r.order == 0:
            return f"[({r.num}) {vol}]"
        D = self.calc.D
        den = f"({D})" if r.order == 1 else f"({D})^{r.order}"
        return f"[({r.num})/{den} {vol}]"

    __repr__ = __str__


# --------------------------------------------------------------------------
# the connection


def nabla(c: BrieskornClass, i: int) -> BrieskornClass:
    """Gauss-Manin derivative along d/dt_i.

    nabla_i [phi vol] = [(d_i phi) vol] - [d((d_i F) phi / D) vol].
    """
    calc = c.calc
    D = calc.D
    dD = calc.d(D)
    rule = calc.derivation(i)
    dF = calc.F.derive(rule)
    N, m = c.num, c.order
    dN = N.derive(rule)
    dDi = D.derive(rule)
    first = (dN * D - m * N * dDi) * D
    g = dF * N
    second = calc.d(g) * D - (m + 1) * g * dD
    return BrieskornClass(first - second, m + 2, calc).reduced()


def nabla_field(c: BrieskornClass, coeffs) -> BrieskornClass:
    """Derivative along sum_i coeffs[i] d/dt_i; t0 in coefficients acts as F^0."""
    calc = c.calc
    t0 = calc.coordinates[0]
    out = BrieskornClass(ZERO, 0, calc)
    for i, a in enumerate(coeffs):
        a = LaurentPoly.coerce(a)
        if a.is_zero():
            continue
        a = a.subs({t0: calc.F0}) if a.involves([t0]) else a
        out = out + nabla(c, i).scale(a)
    return out.reduced()


def nabla_E(c: BrieskornClass, euler) -> BrieskornClass:
    return nabla_field(c, euler)


def mul_function(c: BrieskornClass, g: LaurentPoly) -> BrieskornClass:
    """Multiplication by a function; t0 is replaced by F^0 on the critical set."""
    t0 = c.calc.coordinates[0]
    g = LaurentPoly.coerce(g)
    if g.involves([t0]):
        g = g.subs({t0: c.calc.F0})
    return c.scale(g)


def _integrate(N: LaurentPoly, k: int, calc: Calculus) -> LaurentPoly:
    """Solve d(P / D^k) = N / D^(k+1) for a Laurent polynomial P."""
    z = calc.z
    D = calc.D
    dD = calc.d(D)
    e = D.degree(z)
    lc = D.coeff(z, e)
    if not lc.is_unit():
        raise AlgebraError(f"leading coefficient {lc} of the critical generator is not a unit")
    lc_inv = lc.inverse()
    shift = 0 if calc.kind == "laurent" else 1
    # the lowest term of P survives in d(P D^-k) D^(k+1) unless its exponent is k*low(D)
    low = D.low_degree(z)
    j_min = min(N.low_degree(z) - low, k * low) - 1 if calc.kind == "laurent" else 0
    P = ZERO
    R = N
    while R:
        top = R.degree(z)
        j = top - e + shift
        mult = j - k * e
        if j < j_min or mult == 0:
            raise LogObstruction(R.coeff(z, top), top)
        c = R.coeff(z, top) * lc_inv * Fraction(1, mult)
        term = c * var(z, j)
        P = P + term
        R = R - (calc.d(term) * D - k * term * dD)
    return P


def _inverse_t0_free(c: BrieskornClass) -> BrieskornClass:
    """psi with -d(psi / D) = c, ignoring any t0 dependence of the coefficients."""
    calc = c.calc
    c = c.reduced()
    N, m = c.num, c.order
    if N.is_zero():
        return BrieskornClass(ZERO, 0, calc)
    if m == 0:
        N, m = N * calc.D, 1
    k = m - 1
    P = _integrate(N, k, calc)
    Dk = calc.D**k
    const = laurent_expand(RatFunc(P, Dk), calc.z, "infinity", 0).get(0, ZERO)
    if const:
        P = P - const * Dk
    return BrieskornClass(-P, k - 1, calc).reduced()


def nabla_delta0_inverse(c: BrieskornClass) -> BrieskornClass:
    """The class psi with nabla_0 psi = c, normalized at infinity.

    nabla_0 psi = d_t0 psi - d(psi / D); D is free of t0, so writing
    psi = sum t0^k psi_k the pieces are solved from the top power of t0 down:
    -d(psi_k / D) = c_k - (k + 1) psi_(k+1). Each -d^-1 is psi = -D * G with
    d(G) = the right side and the z^0 coefficient of G at infinity zero.
    """
    calc = c.calc
    t0 = calc.coordinates[0]
    c = c.reduced()
    pieces = c.num.coefficients(t0) if c.num else {}
    if not pieces:
        return BrieskornClass(ZERO, 0, calc)
    top = max(pieces)
    psi = BrieskornClass(ZERO, 0, calc)
    above = BrieskornClass(ZERO, 0, calc)
    for k in range(top, -1, -1):
        rhs = BrieskornClass(pieces.get(k, ZERO), c.order, calc) - above.scale(k + 1)
        part = _inverse_t0_free(rhs)
        psi = psi + part.scale(var(t0, k))
        above = part
    return psi.reduced()


# --------------------------------------------------------------------------
# residues and pairings


def class_residue(c: BrieskornClass) -> LaurentPoly:
    """Sum of residues of the representative over the critical points."""
    calc = c.calc
    r = c.as_ratfunc()
    if calc.kind == "laurent":
        return total_residue(r * RatFunc(var(calc.z, -1)), calc.z)
    return finite_residue(r, calc.z)


def k1_pairing(psis, i: int, j: int) -> LaurentPoly:
    """K1 on the classes nabla_i zeta^(-1), nabla_j zeta^(-1) (skew, zero diagonal).

    ``psis`` are the level -1 representatives; the value for i < j is
    (-1/2) times the residue of psi_i psi_j / D^2.
    """
    if i == j:
        return ZERO
    if i > j:
        return -k1_pairing(psis, j, i)
    a, b = psis[i], psis[j]
    prod = BrieskornClass(a.at_order(a.order) * b.num, a.order + b.order + 2, a.calc)
    return class_residue(prod) * Fraction(-1, 2)


def scalar_ratio(c: BrieskornClass, base: BrieskornClass):
    """Return s with c = s * base when s is free of the chart variable, else None."""
    if base.is_zero():
        return None
    m = max(c.order, base.order)
    num, den = c.at_order(m), base.at_order(m)
    if num.is_zero():
        return ZERO
    z = c.calc.z
    top = den.degree(z)
    lead = den.coeff(z, top)
    if not lead.is_unit():
        return None
    s = num.coeff(z, top) * lead.inverse()
    if s.involves([z]) or num != s * den:
        return None
    return s


def express_in_span(c: BrieskornClass, basis) -> list | None:
    """Coefficients m_k (free of z) with c = sum m_k basis_k, or None.

    Works on reduced representatives; pivots are taken on the top z-degree of
    each basis element after a triangular clean-up, so they must be units.
    """
    z = c.calc.z
    m = max([c.order] + [b.order for b in basis])
    target = c.at_order(m)
    vecs = [b.at_order(m) for b in basis]
    # echelon form: track combinations so the answer is in terms of the input basis
    rows = [(v, [ONE if a == i else ZERO for a in range(len(basis))]) for i, v in enumerate(vecs)]
    pivots = []
    for v, comb in rows:
        for pdeg, pv, pc in sorted(pivots, key=lambda p: -p[0]):
            coef = v.coeff(z, pdeg)
            if coef:
                f = coef * pv.coeff(z, pdeg).inverse()
                v = v - f * pv
                comb = [x - f * y for x, y in zip(comb, pc)]
        if v.is_zero():
            continue
        top = v.degree(z)
        if not v.coeff(z, top).is_unit():
            return None
        pivots.append((top, v, comb))
    coeffs = [ZERO] * len(basis)
    rest = target
    for pdeg, pv, pc in sorted(pivots, key=lambda p: -p[0]):
        coef = rest.coeff(z, pdeg)
        if coef.is_zero():
            continue
        f = coef * pv.coeff(z, pdeg).inverse()
        rest = rest - f * pv
        coeffs = [x + f * y for x, y in zip(coeffs, pc)]
    if not rest.is_zero() or any(x.involves([z]) for x in coeffs):
        return None
    return coeffs
