"""Milnor (Jacobian) rings, residue functionals, the K0 pairing and exponents."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from .exact import (
    ZERO,
    LaurentPoly,
    RatFunc,
    det,
    finite_residue,
    total_residue,
    var,
)
from .lgsystem import LGSystem


class RingError(ArithmeticError):
    """The quotient ring could not be built or is degenerate."""

    def __init__(self, reason: str, detail: str = ""):
        super().__init__(f"{reason}: {detail}" if detail else reason)
        self.reason = reason
        self.detail = detail


def _mono(p_exps: dict) -> LaurentPoly:
    return LaurentPoly.monomial(p_exps)


def _wdeg(m, weights: dict) -> Fraction:
    return sum((weights[v] * e for v, e in m), Fraction(0))


@dataclass(frozen=True)
class _PowerRule:
    """z_var^power is congruent to ``replacement`` (terms of lower order)."""

    var: str
    power: int
    replacement: LaurentPoly


class MilnorRing:
    """Quotient of the (Laurent) polynomial ring by the critical ideal.

    For the polynomial kind the ideal is generated by the partial derivatives;
    for the Laurent kind (one variable) by z * df/dz. ``function`` is the
    superpotential the ideal comes from; it may depend on deformation
    coordinates, in which case everything is relative over them.
    """

    def __init__(self, kind, variables, weights, function, generators, rules, basis, laurent_rule=None):
        self.kind = kind
        self.variables = tuple(variables)
        self.weights = dict(zip(variables, weights)) if weights else {}
        self.function = function
        self.generators = tuple(generators)
        self._rules = tuple(rules)
        self._laurent = laurent_rule
        self.basis = tuple(basis)
        self.basis_polys = tuple(_mono(dict(m)) for m in self.basis)
        self._index = {m: i for i, m in enumerate(self.basis)}
        self._table = None

    @property
    def mu(self) -> int:
        return len(self.basis)

    # reduction ----------------------------------------------------------
    def reduce(self, g: LaurentPoly) -> LaurentPoly:
        """Normal form as a polynomial supported on the basis monomials."""
        g = LaurentPoly.coerce(g)
        if self.kind == "laurent":
            return self._reduce_laurent(g)
        return self._reduce_poly(g)

    def _reduce_poly(self, g: LaurentPoly) -> LaurentPoly:
        names = set(self.variables)
        done = {}
        work = g
        while work:
            pending = ZERO
            for m, c in work.items():
                exps = {v: e for v, e in m if v in names}
                if any(e < 0 for e in exps.values()):
                    raise RingError("negative exponent", f"{_mono(exps)} in a polynomial ring")
                rule = next((r for r in self._rules if exps.get(r.var, 0) >= r.power), None)
                if rule is None:
                    done[m] = done.get(m, 0) + c
                    continue
                rest = dict(m)
                rest[rule.var] -= rule.power
                pending = pending + LaurentPoly({tuple(sorted((v, e) for v, e in rest.items() if e)): c}) * rule.replacement
            work = pending
        return LaurentPoly(done)

    def _reduce_laurent(self, g: LaurentPoly) -> LaurentPoly:
        z = self.variables[0]
        top, high_rule, low_rule = self._laurent
        out = ZERO
        work = g
        while work:
            pending = ZERO
            for k, c in work.coefficients(z).items():
                if 0 <= k < top:
                    out = out + c * var(z, k)
                elif k >= top:
                    pending = pending + c * var(z, k - top) * high_rule
                else:
                    pending = pending + c * var(z, k + 1) * low_rule
            work = pending
        return out

    def normal_form(self, g: LaurentPoly) -> list:
        """Coefficient vector of the normal form on the basis."""
        r = self.reduce(g)
        vec = [ZERO] * self.mu
        names = set(self.variables)
        for m, c in r.items():
            key = tuple((v, e) for v, e in m if v in names)
            rest = tuple((v, e) for v, e in m if v not in names)
            vec[self._index[key]] = vec[self._index[key]] + LaurentPoly({rest: c})
        return vec

    def from_vector(self, vec) -> LaurentPoly:
        return sum((c * b for c, b in zip(vec, self.basis_polys)), ZERO)

    def multiplication_matrix(self, g: LaurentPoly) -> list:
        """Rows are normal forms of g * basis_i."""
        return [self.normal_form(g * b) for b in self.basis_polys]

    def product_table(self) -> dict:
        if self._table is None:
            self._table = {
                (i, j): self.normal_form(self.basis_polys[i] * self.basis_polys[j])
                for i in range(self.mu)
                for j in range(i, self.mu)
            }
        return self._table

    def socle_index(self) -> int:
        """Position of the unique basis element of top weighted degree."""
        if self.kind == "laurent":
            return self.mu - 1
        degs = [_wdeg(m, self.weights) for m in self.basis]
        top = max(degs)
        hits = [i for i, d in enumerate(degs) if d == top]
        if len(hits) != 1:
            raise RingError("socle", "top weighted degree is not attained uniquely")
        return hits[0]

    def is_relative(self) -> bool:
        return self.function.involves(v for v in self.function.variables if v not in self.variables)


# --------------------------------------------------------------------------
# construction


def _sort_key(m, variables, weights):
    exps = dict(m)
    vec = tuple(exps.get(v, 0) for v in variables)
    w = _wdeg(m, weights) if weights else sum(vec)
    return (w, vec[::-1])


def _poly_rules(variables, weights, generators):
    wmap = dict(zip(variables, weights))
    names = set(variables)
    rules = []
    used = set()
    for g in generators:
        if g.is_zero():
            raise RingError("non-isolated singularity", "a partial derivative vanishes identically")

        def order(item):
            m = tuple((v, e) for v, e in item[0] if v in names)
            return (_wdeg(m, wmap), tuple(dict(m).get(v, 0) for v in variables))

        top_m, _ = max(g.items(), key=order)
        zpart = tuple((v, e) for v, e in top_m if v in names)
        lead = g.map_terms(lambda m, c: tuple((v, e) for v, e in m if v in names) == zpart)
        if len(zpart) != 1:
            raise RingError(
                "non-isolated singularity",
                f"leading monomial {_mono(dict(zpart))} of {g} is not a pure power",
            )
        (v, p), = zpart
        if v in used:
            raise RingError(
                "non-isolated singularity",
                f"two generators lead with a power of {v}; the rewrite would not terminate in bounded degree",
            )
        used.add(v)
        coeff = lead * LaurentPoly.var(v, -p)
        if not coeff.is_unit():
            raise RingError("unsupported", f"leading coefficient {coeff} is not a unit")
        replacement = -(g - lead) * coeff.inverse()
        rules.append(_PowerRule(v, p, replacement))
    if len(used) != len(variables):
        raise RingError("non-isolated singularity", "the critical ideal has infinite codimension")
    return rules


def _standard_monomials(variables, rules):
    bounds = {r.var: r.power for r in rules}
    monos = [()]
    for v in variables:
        monos = [m + ((v, e),) if e else m for m in monos for e in range(bounds[v])]
    return [tuple(sorted(m)) for m in monos]


def ring_of(kind, variables, weights, function) -> MilnorRing:
    """Milnor ring of ``function`` (which may depend on extra parameters)."""
    variables = tuple(variables)
    if kind == "laurent":
        (z,) = variables
        gen = function.theta(z)
        if gen.is_zero():
            raise RingError("degenerate", "z*df/dz vanishes")
        coefs = gen.coefficients(z)
        low, high = min(coefs), max(coefs)
        top = high - low
        if top == 0:
            raise RingError("degenerate", "z*df/dz has no roots")
        shifted = gen * var(z, -low)
        p0, pd = shifted.coeff(z, 0), shifted.coeff(z, top)
        for c, where in ((p0, "trailing"), (pd, "leading")):
            if not c.is_unit():
                raise RingError("unsupported", f"{where} coefficient {c} of z*df/dz is not a unit")
        rest_high = shifted - pd * var(z, top)
        high_rule = -rest_high * pd.inverse()
        rest_low = (shifted - p0) * var(z, -1)
        low_rule = -rest_low * p0.inverse()
        basis = [(((z, k),) if k else ()) for k in range(top)]
        return MilnorRing(kind, variables, (), function, [gen], [], basis, (top, high_rule, low_rule))
    if not weights or len(weights) != len(variables):
        raise RingError("unsupported", "polynomial kind needs one weight per variable")
    gens = [function.diff(v) for v in variables]
    rules = _poly_rules(variables, weights, gens)
    basis = _standard_monomials(variables, rules)
    wmap = dict(zip(variables, weights))
    basis.sort(key=lambda m: _sort_key(m, variables, wmap))
    return MilnorRing(kind, variables, weights, function, gens, rules, basis)


def build_milnor_ring(lg: LGSystem, deformed: bool = False) -> MilnorRing:
    return ring_of(lg.kind, lg.variables, lg.weights, lg.family if deformed else lg.f)


def standard_basis(kind, variables, weights, f) -> list:
    """Basis monomials (as exponent tuples) of the Milnor ring of ``f``."""
    return list(ring_of(kind, variables, weights, f).basis)


def normal_form(g: LaurentPoly, ring: MilnorRing) -> list:
    return ring.normal_form(g)


# --------------------------------------------------------------------------
# residues


def hessian(function: LaurentPoly, variables) -> LaurentPoly:
    return det([[function.diff(a).diff(b) for b in variables] for a in variables])


def residue_functional(g: LaurentPoly, ring: MilnorRing) -> LaurentPoly:
    """Grothendieck residue of g against the critical ideal.

    Normalized so that the residue of the Hessian determinant is mu. In one
    variable this is the total residue of g/f' (polynomial kind) or of
    g/(z f') * dz/z (Laurent kind); in several variables it is read off the
    socle coefficient of the normal form.
    """
    g = LaurentPoly.coerce(g)
    f = ring.function
    if ring.kind == "laurent":
        z = ring.variables[0]
        return total_residue(RatFunc(g * var(z, -1), f.theta(z)), z)
    if len(ring.variables) == 1:
        z = ring.variables[0]
        return finite_residue(RatFunc(g, f.diff(z)), z)
    if ring.is_relative():
        raise RingError("unsupported", "several-variable residues are only available at the origin")
    s = ring.socle_index()
    h = ring.normal_form(hessian(f, ring.variables))[s]
    if not h.is_unit():
        raise RingError("degenerate", "the Hessian does not generate the socle")
    scale = h.inverse() * ring.mu
    return ring.normal_form(g)[s] * scale


def k0_pairing(g1: LaurentPoly, g2: LaurentPoly, ring: MilnorRing) -> LaurentPoly:
    return residue_functional(LaurentPoly.coerce(g1) * g2, ring)


def gram_matrix(ring: MilnorRing, elements=None) -> list:
    """K0 pairing on ``elements`` (the ring basis by default); must be nondegenerate."""
    elements = list(ring.basis_polys if elements is None else elements)
    res = {}
    n = len(elements)
    for i in range(n):
        for j in range(i, n):
            res[i, j] = res[j, i] = k0_pairing(elements[i], elements[j], ring)
    gram = [[res[i, j] for j in range(n)] for i in range(n)]
    if det(gram).is_zero():
        raise RingError("degenerate pairing", "the K0 Gram matrix is singular")
    return gram


# --------------------------------------------------------------------------
# exponents


@dataclass(frozen=True)
class Spectrum:
    exponents: tuple
    shifted: tuple
    r: Fraction
    degrees: tuple
    c_hat: Fraction
    c_hat_formula: Fraction
    exponent_duality: bool

    def as_dict(self) -> dict:
        return {
            "exponents": [str(a) for a in self.exponents],
            "shifted_exponents": [str(a) for a in self.shifted],
            "r": str(self.r),
            "degrees": [str(a) for a in self.degrees],
            "c_hat": str(self.c_hat),
            "c_hat_from_r": str(self.c_hat_formula),
            "exponent_duality": self.exponent_duality,
        }


def monomial_exponent(m, weights: dict) -> Fraction:
    """alpha(prod z_i^a_i) = sum (a_i + 1) w_i."""
    exps = dict(m)
    return sum(((exps.get(v, 0) + 1) * w for v, w in weights.items()), Fraction(0))


def spectrum(lg: LGSystem, r=None, degrees=None) -> Spectrum:
    """Exponents, shifted exponents and coordinate degrees of ``lg``.

    For the polynomial kind the exponents come from the weights of the
    deformation monomials. Otherwise ``degrees`` (read off the Euler field)
    must be given, together with the minimal exponent ``r``.
    """
    n1 = len(lg.variables)
    if degrees is None:
        if lg.kind != "polynomial":
            raise RingError("unsupported", "laurent systems need degrees from the Euler field")
        weights = dict(zip(lg.variables, lg.weights))
        images = [lg.at_origin(g) for g in lg.deformation_images()]
        alphas = []
        for g in images:
            if not g.is_unit():
                raise RingError("unsupported", f"deformation image {g} is not a monomial")
            ((m, _),) = g.items()
            alphas.append(monomial_exponent(m, weights))
        r = alphas[0] if r is None else Fraction(r)
        shifted = [a - r for a in alphas]
        degrees = [1 - s for s in shifted]
    else:
        r = Fraction(0) if r is None else Fraction(r)
        degrees = [Fraction(d) for d in degrees]
        shifted = [1 - d for d in degrees]
        alphas = [s + r for s in shifted]
    c_hat = max(shifted)
    dual = Counter(alphas) == Counter(n1 - a for a in alphas)
    return Spectrum(
        exponents=tuple(alphas),
        shifted=tuple(shifted),
        r=r,
        degrees=tuple(degrees),
        c_hat=c_hat,
        c_hat_formula=n1 - 2 * r,
        exponent_duality=dual,
    )


def poincare_polynomial(sp: Spectrum) -> tuple:
    """chi as sorted (power, multiplicity) pairs, and the duality flag."""
    counts = Counter(sp.shifted)
    chi = sorted(counts.items())
    mirrored = Counter(sp.c_hat - q for q in sp.shifted)
    return chi, mirrored == counts


def milnor_number_from_weights(weights) -> Fraction:
    out = Fraction(1)
    for w in weights:
        out *= 1 / Fraction(w) - 1
    return out

