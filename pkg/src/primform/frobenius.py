"""Frobenius structure induced by a one-variable LG system and a form zeta."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations_with_replacement, product

from .brieskorn import Calculus, nabla_E, scalar_ratio
from .exact import (
    ONE,
    ZERO,
    LaurentPoly,
    SingularSystemError,
    det,
    homogeneous_part,
    solve_over_units,
    solve_rational,
    var,
)
from .lgsystem import LGSystem
from .ring import MilnorRing, RingError, k0_pairing, ring_of, spectrum


class FrobeniusError(ArithmeticError):
    """A step of the Frobenius construction failed; ``reason`` says which."""

    def __init__(self, reason: str, detail: str = "", order=None):
        msg = f"{reason}: {detail}" if detail else reason
        if order is not None:
            msg += f" (order {order})"
        super().__init__(msg)
        self.reason = reason
        self.detail = detail
        self.order = order


def flat_names(mu: int) -> tuple:
    return tuple(f"t{i}" for i in range(mu))


# --------------------------------------------------------------------------
# closed 1-forms and their potentials


def _antiderivative(p: LaurentPoly, coord: str, partner: str | None) -> LaurentPoly:
    """One antiderivative in ``coord``, where ``partner`` stands for exp(coord)."""
    out = ZERO
    for m, c in p.items():
        exps = dict(m)
        k = exps.pop(coord, 0)
        beta = exps.pop(partner, 0) if partner else 0
        if k < 0:
            raise FrobeniusError("integrability", f"negative power of {coord}")
        rest = LaurentPoly.monomial(exps, c)
        if beta == 0:
            out = out + rest * LaurentPoly.var(coord, k + 1) * Fraction(1, k + 1)
            continue
        # int t^k e^(beta t) dt = e^(beta t) sum_j (-1)^j k!/(k-j)! t^(k-j) / beta^(j+1)
        e = LaurentPoly.var(partner, beta)
        acc = ZERO
        falling = 1
        for j in range(k + 1):
            acc = acc + LaurentPoly.var(coord, k - j) * Fraction((-1) ** j * falling, beta ** (j + 1))
            falling *= k - j
        out = out + rest * e * acc
    return out


def _drop_constants(p: LaurentPoly, names) -> LaurentPoly:
    names = set(names)
    return p.map_terms(lambda m, c: any(v in names for v, _ in m))


class Coordinates:
    """Flat coordinate names, exponential partners and the derivations d/dt_i."""

    def __init__(self, names, exponential=None):
        self.names = tuple(names)
        self.exponential = dict(exponential or {})

    @property
    def all_symbols(self) -> tuple:
        return self.names + tuple(self.exponential.values())

    def rule(self, i: int) -> dict:
        c = self.names[i]
        r = {c: ONE}
        if c in self.exponential:
            r[self.exponential[c]] = var(self.exponential[c])
        return r

    def d(self, p: LaurentPoly, i: int) -> LaurentPoly:
        return p.derive(self.rule(i))

    def origin(self) -> dict:
        vals = {c: ZERO for c in self.names}
        vals.update({e: ONE for e in self.exponential.values()})
        return vals

    def potential(self, components) -> LaurentPoly:
        """g with d_i g = components[i]; raises if the form is not closed."""
        g = ZERO
        for i, c in enumerate(self.names):
            rest = components[i] - self.d(g, i)
            earlier = self.names[:i] + tuple(self.exponential.get(n) for n in self.names[:i] if n in self.exponential)
            if rest.involves(earlier):
                raise FrobeniusError("integrability", f"component {i} is not closed against earlier ones")
            g = g + _antiderivative(rest, c, self.exponential.get(c))
        for i in range(len(self.names)):
            if self.d(g, i) != components[i]:
                raise FrobeniusError("integrability", f"component {i} is not closed")
        return _drop_constants(g, self.all_symbols)


# --------------------------------------------------------------------------
# flat coordinates


@dataclass(frozen=True)
class FlatChange:
    """Raw deformation coordinates written as polynomials in flat ones."""

    names: tuple
    mapping: dict
    orders_solved: tuple = ()

    def is_identity(self) -> bool:
        return all(p == var(n) for n, p in zip(self.names, self.mapping.values())) and list(
            self.mapping
        ) == list(self.names)

    def as_dict(self) -> dict:
        return {raw: str(p) for raw, p in self.mapping.items()}


def _monomials_of_weight(names, weights, target, min_degree):
    """Monomials (exponent tuples) in ``names`` with the given weighted degree."""
    out = []
    pos = [(n, w) for n, w in zip(names, weights) if w > 0]

    def rec(i, remaining, acc):
        if remaining == 0:
            if sum(acc) >= min_degree:
                out.append(tuple(acc) + (0,) * (len(pos) - len(acc)))
            return
        if i == len(pos) or remaining < 0:
            return
        w = pos[i][1]
        e = 0
        while e * w <= remaining:
            rec(i + 1, remaining - e * w, acc + [e])
            e += 1

    rec(0, target, [])
    return [{n: e for (n, _), e in zip(pos, mono) if e} for mono in out]


def _eta_matrix(F: LaurentPoly, lg: LGSystem, coords: Coordinates, weight: LaurentPoly) -> list:
    ring = ring_of(lg.kind, lg.variables, lg.weights, F)
    images = [coords.d(F, i) for i in range(len(coords.names))]
    n = len(images)
    eta = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            eta[i][j] = eta[j][i] = k0_pairing(images[i] * weight, images[j] * weight, ring)
    return eta


def flat_coordinates(lg: LGSystem, weight: LaurentPoly = ONE) -> FlatChange:
    """Polynomial change a -> t making the residue metric constant.

    The normalization is a_k = t_k + (terms of polynomial degree >= 2 in
    t1..), weighted-homogeneous of the degree of a_k; corrections are found
    degree by degree from linear equations.
    """
    mu = len(lg.coordinates)
    names = flat_names(mu)
    if lg.kind == "laurent":
        coords = Coordinates(names, {names[i]: e for i, c in enumerate(lg.coordinates) for k, e in lg.exponential.items() if k == c})
        F = lg.family.subs({c: var(n) for c, n in zip(lg.coordinates, names) if c != n})
        eta = _eta_matrix(F, lg, coords, weight)
        if any(x.involves(coords.all_symbols) for row in eta for x in row):
            raise FrobeniusError("flat coordinates", "metric is not constant and no solver exists for laurent systems", order=1)
        return FlatChange(names, {c: var(n) for c, n in zip(lg.coordinates, names)})
    if len(lg.variables) != 1:
        raise FrobeniusError("unsupported", "the Frobenius layer handles one-variable systems")
    wz = lg.weights[0]
    images = [lg.at_origin(g) for g in lg.deformation_images()]
    degs = []
    for g in images:
        if not g.is_unit():
            raise FrobeniusError("unsupported", f"deformation image {g} is not a monomial")
        degs.append(1 - g.degree(lg.z) * wz)
    tprime = names[1:]
    coords = Coordinates(names)
    candidates = {}
    for k in range(mu):
        for mono in _monomials_of_weight(tprime, degs[1:], degs[k], 2):
            candidates.setdefault(sum(mono.values()), []).append((k, mono))
    mapping = {raw: var(n) for raw, n in zip(lg.coordinates, names)}
    solved = []
    for D in sorted(candidates):
        unknowns = []
        trial = dict(mapping)
        for idx, (k, mono) in enumerate(candidates[D]):
            u = f"_u{idx}"
            unknowns.append(u)
            raw = lg.coordinates[k]
            trial[raw] = trial[raw] + var(u) * LaurentPoly.monomial(mono)
        F = lg.family.subs(trial)
        eta = _eta_matrix(F, lg, coords, weight)
        rows, rhs = [], []
        for i in range(mu):
            for j in range(i, mu):
                part = homogeneous_part(eta[i][j], tprime, D - 1)
                eqs = {}
                for m, c in part.items():
                    upart = [(v, e) for v, e in m if v in unknowns]
                    tpart = tuple((v, e) for v, e in m if v not in unknowns)
                    row = eqs.setdefault(tpart, ([Fraction(0)] * len(unknowns), [Fraction(0)]))
                    if not upart:
                        row[1][0] -= c
                    elif len(upart) == 1 and upart[0][1] == 1:
                        row[0][unknowns.index(upart[0][0])] += c
                    else:
                        raise FrobeniusError("flat coordinates", "nonlinear equation", order=D)
                for coeffs, b in eqs.values():
                    rows.append(coeffs)
                    rhs.append(b[0])
        try:
            sol = solve_rational(rows, rhs) if rows else [Fraction(0)] * len(unknowns)
        except SingularSystemError:
            raise FrobeniusError("flat coordinates", "no polynomial correction makes the metric constant", order=D)
        values = {u: LaurentPoly.const(x) for u, x in zip(unknowns, sol)}
        mapping = {raw: p.subs(values) for raw, p in trial.items()}
        solved.append(D)
    F = lg.family.subs(mapping)
    eta = _eta_matrix(F, lg, coords, weight)
    if any(x.involves(names) for row in eta for x in row):
        raise FrobeniusError("flat coordinates", "metric still depends on the coordinates", order=max(solved, default=1) + 1)
    return FlatChange(names, mapping, tuple(solved))


# --------------------------------------------------------------------------
# the structure


def _constant_matrix_inverse(m) -> list:
    n = len(m)
    vals = [[x.constant_value() if x.is_constant() else None for x in row] for row in m]
    if any(v is None for row in vals for v in row):
        raise FrobeniusError("metric", "the metric has non-rational entries")
    inv = []
    for col in range(n):
        e = [Fraction(int(r == col)) for r in range(n)]
        inv.append(solve_rational(vals, e))
    # inv[col] is column col of the inverse
    return [[LaurentPoly.const(inv[j][i]) for j in range(n)] for i in range(n)]


def wdvv_residuals(potential: LaurentPoly, coords: Coordinates, eta_inv) -> dict:
    """Nonzero values of sum_ef Phi_abe eta^ef Phi_fcd - Phi_ace eta^ef Phi_fbd."""
    n = len(coords.names)
    d = coords.d
    third = {}
    for a, b, c in combinations_with_replacement(range(n), 3):
        third[a, b, c] = d(d(d(potential, a), b), c)

    def C(a, b, c):
        return third[tuple(sorted((a, b, c)))]

    up = {}
    for a, b, e in product(range(n), repeat=3):
        up[a, b, e] = sum((C(a, b, f) * eta_inv[f][e] for f in range(n) if eta_inv[f][e]), ZERO)
    out = {}
    for a, b, c, dd in product(range(n), repeat=4):
        val = sum((up[a, b, e] * C(e, c, dd) - up[a, c, e] * C(e, b, dd) for e in range(n)), ZERO)
        if val:
            out[a, b, c, dd] = val
    return out


@dataclass
class FrobeniusData:
    lg: LGSystem
    change: FlatChange
    coords: Coordinates
    F: LaurentPoly
    ring: MilnorRing
    zeta: LaurentPoly = ONE
    notes: list = field(default_factory=list)

    @property
    def mu(self) -> int:
        return len(self.coords.names)

    @cached_property
    def calculus(self) -> Calculus:
        return Calculus(self.lg.kind, self.lg.z, self.F, self.coords.names, self.coords.exponential)

    @cached_property
    def images(self) -> list:
        return [self.coords.d(self.F, i) for i in range(self.mu)]

    @cached_property
    def _image_rows(self) -> list:
        return [self.ring.normal_form(g) for g in self.images]

    def to_fields(self, g: LaurentPoly) -> list:
        """Coordinates of the class of g on the fields d/dt_i (via dF/dt_i)."""
        try:
            return solve_over_units(self._image_rows, self.ring.normal_form(g))
        except SingularSystemError as exc:
            raise FrobeniusError("deformation basis", str(exc))

    @cached_property
    def eta(self) -> list:
        w = self.zeta
        n = self.mu
        m = [[None] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                m[i][j] = m[j][i] = k0_pairing(self.images[i] * w, self.images[j] * w, self.ring)
        if det(m).is_zero():
            raise FrobeniusError("metric", "degenerate metric")
        return m

    @cached_property
    def eta_inv(self) -> list:
        return _constant_matrix_inverse(self.eta)

    def eta_is_flat(self) -> bool:
        return not any(x.involves(self.coords.all_symbols) for row in self.eta for x in row)

    def product(self, i: int, j: int) -> list:
        return self.to_fields(self.images[i] * self.images[j])

    def t0_product(self, j: int) -> list:
        return self.to_fields(self.calculus.F0 * self.images[j])

    @cached_property
    def structure(self) -> dict:
        """C_ijk = eta(d_i o d_j, d_k) for i <= j <= k."""
        out = {}
        for i, j in combinations_with_replacement(range(self.mu), 2):
            vec = self.product(i, j)
            for k in range(j, self.mu):
                out[i, j, k] = sum((vec[e] * self.eta[e][k] for e in range(self.mu)), ZERO)
        return out

    def C(self, i, j, k) -> LaurentPoly:
        return self.structure[tuple(sorted((i, j, k)))]

    def potentiality_violations(self) -> list:
        """Index tuples where d_l C_ijk is not symmetric in (l, i)."""
        bad = []
        for i, j, k in self.structure:
            for l in range(self.mu):
                if self.coords.d(self.C(i, j, k), l) != self.coords.d(self.C(l, j, k), i):
                    bad.append((l, i, j, k))
        return bad

    @cached_property
    def potential(self) -> LaurentPoly:
        n = self.mu
        c = self.coords
        V = {}
        for i, j in combinations_with_replacement(range(n), 2):
            V[i, j] = V[j, i] = c.potential([self.C(i, j, k) for k in range(n)])
        W = [c.potential([V[i, j] for j in range(n)]) for i in range(n)]
        phi = c.potential(W)
        partners = set(c.exponential.values())
        names = set(c.names)
        phi = phi.map_terms(
            lambda m, _: any(v in partners for v, _ in m) or sum(e for v, e in m if v in names) > 2
        )
        for key, val in self.structure.items():
            i, j, k = key
            if c.d(c.d(c.d(phi, i), j), k) != val:
                raise FrobeniusError("integrability", f"third derivative {key} of the potential differs from C")
        return phi

    @cached_property
    def euler(self) -> list:
        """E = t0 d0 - t0 o d0 as coefficients on d/dt_i."""
        vec = self.t0_product(0)
        out = [-x for x in vec]
        out[0] = out[0] + var(self.coords.names[0])
        return out

    @cached_property
    def degrees(self):
        """deg t_i read off E = sum (deg_i t_i + shift_i) d_i, or None."""
        degs = []
        syms = self.coords.all_symbols
        for i, e in enumerate(self.euler):
            t = self.coords.names[i]
            d = e.coeff(t, 1)
            if d.involves(syms) or not d.is_constant():
                return None
            rest = e - d * var(t)
            if rest.involves(syms):
                return None
            degs.append(d.constant_value())
        return tuple(degs)

    @cached_property
    def homogeneity(self):
        """(ratio, class) with nabla_E zeta = ratio * zeta, ratio None if not scalar."""
        z = self.calculus.cls(self.zeta)
        ne = nabla_E(z, self.euler)
        s = scalar_ratio(ne, z)
        if s is not None and (s.involves(self.coords.all_symbols) or not s.is_constant()):
            s = None
        return s, ne

    @cached_property
    def r(self) -> Fraction | None:
        s, _ = self.homogeneity
        return None if s is None else s.constant_value() + 1

    @cached_property
    def spectrum(self):
        if self.degrees is None:
            return None
        if self.lg.kind == "polynomial":
            return spectrum(self.lg, self.r)
        return spectrum(self.lg, self.r if self.r is not None else 0, self.degrees)

    @cached_property
    def N(self) -> list:
        sp = self.spectrum
        n = self.mu
        if sp is None:
            return None
        return [[LaurentPoly.const(sp.exponents[i]) if i == j else ZERO for j in range(n)] for i in range(n)]

    @cached_property
    def discriminant(self) -> LaurentPoly:
        return det(self.ring.multiplication_matrix(self.F))

    def euler_apply(self, p: LaurentPoly) -> LaurentPoly:
        return sum((e * self.coords.d(p, i) for i, e in enumerate(self.euler)), ZERO)

    def wdvv(self, potential: LaurentPoly | None = None) -> dict:
        return wdvv_residuals(self.potential if potential is None else potential, self.coords, self.eta_inv)


def build_frobenius(lg: LGSystem, zeta: LaurentPoly | None = None, flatten: bool = True) -> FrobeniusData:
    """Frobenius data of ``lg`` for the form ``zeta`` (default: the system's own).

    With ``flatten=False`` the raw deformation coordinates are only renamed,
    which is what a caller wants when the candidate form has no flat metric.
    """
    zeta = lg.primitive if zeta is None else zeta
    if len(lg.variables) != 1:
        raise FrobeniusError("unsupported", "the Frobenius layer handles one-variable systems")
    if flatten:
        change = flat_coordinates(lg, zeta)
    else:
        names = flat_names(len(lg.coordinates))
        change = FlatChange(names, {c: var(n) for c, n in zip(lg.coordinates, names)})
    names = change.names
    exp = {}
    for c, n in zip(lg.coordinates, names):
        if c in lg.exponential:
            exp[n] = lg.exponential[c]
    coords = Coordinates(names, exp)
    F = lg.family.subs(change.mapping) if not change.is_identity() else lg.family
    try:
        ring = ring_of(lg.kind, lg.variables, lg.weights, F)
    except RingError as exc:
        raise FrobeniusError("ring", str(exc))
    if ring.mu != len(names):
        raise FrobeniusError("deformation basis", f"{len(names)} coordinates for a ring of rank {ring.mu}")
    return FrobeniusData(lg, change, coords, F, ring, zeta)


# convenience wrappers named after the operations they perform


def residual_product(fd: FrobeniusData, i: int, j: int) -> list:
    return fd.product(i, j)


def t0_product(fd: FrobeniusData, j: int) -> list:
    return fd.t0_product(j)


def metric_eta(fd: FrobeniusData) -> list:
    return fd.eta


def euler_field(fd: FrobeniusData):
    return fd.euler, fd.N


def discriminant(fd: FrobeniusData) -> LaurentPoly:
    return fd.discriminant


def wdvv_check(fd: FrobeniusData, potential: LaurentPoly | None = None) -> dict:
    return fd.wdvv(potential)

