"""Landau-Ginzburg systems: superpotential, deformation family, builtins, spec files."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .exact import ONE, ZERO, LaurentPoly, var


class SpecError(ValueError):
    """A system description is malformed; ``where`` names the offending field."""

    def __init__(self, where: str, message: str):
        super().__init__(f"{where}: {message}")
        self.where = where


@dataclass(frozen=True)
class LGSystem:
    """A superpotential ``f`` together with a deformation family ``F(z, t)``.

    ``family`` is written in the deformation coordinates ``coordinates``;
    coordinate 0 is always the additive constant t0 (so dF/dt0 = 1).
    ``exponential`` maps a coordinate to the formal variable standing for its
    exponential, e.g. ``{"t1": "E1"}``, which is how q*exp(t1) stays exact.
    """

    name: str
    kind: str
    variables: tuple
    weights: tuple
    f: LaurentPoly
    family: LaurentPoly
    coordinates: tuple
    exponential: Mapping[str, str] = field(default_factory=dict)
    parameters: tuple = ()
    primitive: LaurentPoly = ONE
    volume: str = "dz"

    def __post_init__(self):
        if self.kind not in ("polynomial", "laurent"):
            raise SpecError("kind", f"unknown kind {self.kind!r}")
        if self.kind == "laurent" and len(self.variables) != 1:
            raise SpecError("variables", "laurent systems must have exactly one variable")
        if self.family.diff(self.coordinates[0]) != ONE:
            raise SpecError("deformation_basis", "dF/dt0 must equal 1")
        origin = self.at_origin(self.family)
        if origin != self.f:
            raise SpecError("deformation_basis", "F does not restrict to f at t = 0")

    @property
    def mu_hint(self) -> int:
        return len(self.coordinates)

    @property
    def one_variable(self) -> bool:
        return len(self.variables) == 1

    @property
    def z(self) -> str:
        return self.variables[0]

    def derivation(self, i: int) -> dict:
        """Rule for d/dt_i acting on coordinates and exponential partners."""
        c = self.coordinates[i]
        rule = {c: ONE}
        if c in self.exponential:
            e = self.exponential[c]
            rule[e] = var(e)
        return rule

    def at_origin(self, p: LaurentPoly) -> LaurentPoly:
        values = {c: ZERO for c in self.coordinates}
        for e in self.exponential.values():
            values[e] = ONE
        return p.subs(values)

    def deformation_images(self) -> list:
        return [self.family.derive(self.derivation(i)) for i in range(len(self.coordinates))]

    def f0(self) -> LaurentPoly:
        """F^0 = t0 - F."""
        return var(self.coordinates[0]) - self.family

    def is_quasi_homogeneous(self) -> bool:
        if self.kind != "polynomial":
            return False
        w = dict(zip(self.variables, self.weights))
        for m, _ in self.f.items():
            if sum(w.get(v, 0) * e for v, e in m) != 1:
                return False
        return True


# --------------------------------------------------------------------------
# builtins


def cp1() -> LGSystem:
    z, t0, q, e1 = var("z"), var("t0"), var("q"), var("E1")
    f = z + q * z**-1
    return LGSystem(
        name="cp1",
        kind="laurent",
        variables=("z",),
        weights=(),
        f=f,
        family=t0 + z + q * e1 * z**-1,
        coordinates=("t0", "t1"),
        exponential={"t1": "E1"},
        parameters=("q",),
        primitive=ONE,
        volume="dz/z",
    )


def a_n(n: int) -> LGSystem:
    """Miniversal unfolding z^(n+1) + a_{n-1} z^(n-1) + ... + a_1 z + a_0."""
    if n < 1:
        raise SpecError("name", "A_n needs n >= 1")
    z = var("z")
    f = z ** (n + 1)
    family = f + var("a0")
    for k in range(1, n):
        family = family + var(f"a{k}") * z**k
    return LGSystem(
        name=f"a{n}",
        kind="polynomial",
        variables=("z",),
        weights=(Fraction(1, n + 1),),
        f=f,
        family=family,
        coordinates=tuple(f"a{k}" for k in range(n)),
        primitive=ONE,
        volume="dz",
    )


BUILTINS = {"cp1": cp1, **{f"a{n}": (lambda n=n: a_n(n)) for n in range(1, 7)}}


def builtin(name: str) -> LGSystem:
    try:
        return BUILTINS[name]()
    except KeyError:
        raise SpecError("name", f"unknown builtin {name!r}; choose from {sorted(BUILTINS)}")


# --------------------------------------------------------------------------
# JSON spec files


def _coeff(s, where: str) -> Fraction:
    try:
        return Fraction(str(s))
    except (ValueError, ZeroDivisionError):
        raise SpecError(where, f"coefficient {s!r} is not an exact rational")


def _terms(items, declared: set, where: str, params: set) -> LaurentPoly:
    if not isinstance(items, list):
        raise SpecError(where, "expected a list of terms")
    total = ZERO
    for k, term in enumerate(items):
        here = f"{where}[{k}]"
        if not isinstance(term, dict):
            raise SpecError(here, "term must be an object")
        c = _coeff(term.get("coeff", "1"), here + ".coeff")
        exps = term.get("exponents", {})
        if not isinstance(exps, dict):
            raise SpecError(here + ".exponents", "expected an object")
        mono = {}
        for v, e in exps.items():
            if v not in declared:
                raise SpecError(here + ".exponents", f"undeclared variable {v!r}")
            if not isinstance(e, int):
                raise SpecError(here + ".exponents", f"exponent of {v} must be an integer")
            mono[v] = e
        for p in term.get("parameters", []):
            if not isinstance(p, str) or not p.isidentifier():
                raise SpecError(here + ".parameters", f"bad parameter name {p!r}")
            params.add(p)
            mono[p] = mono.get(p, 0) + 1
        total = total + LaurentPoly.monomial(mono, c)
    return total


def parse_spec(data: dict, name: str = "spec") -> LGSystem:
    """Build an LGSystem from the JSON structure described in the README."""
    if not isinstance(data, dict):
        raise SpecError("<root>", "expected a JSON object")
    kind = data.get("kind")
    if kind not in ("polynomial", "laurent"):
        raise SpecError("kind", "must be 'polynomial' or 'laurent'")
    raw_vars = data.get("variables")
    if not isinstance(raw_vars, list) or not raw_vars:
        raise SpecError("variables", "expected a non-empty list")
    names, weights = [], []
    for k, v in enumerate(raw_vars):
        if isinstance(v, str):
            v = {"name": v}
        if not isinstance(v, dict) or not str(v.get("name", "")).isidentifier():
            raise SpecError(f"variables[{k}]", "needs an identifier 'name'")
        names.append(v["name"])
        if kind == "polynomial":
            if "weight" not in v:
                raise SpecError(f"variables[{k}].weight", "polynomial kind needs weights")
            weights.append(_coeff(v["weight"], f"variables[{k}].weight"))
    declared = set(names)
    params: set = set()
    f = _terms(data.get("superpotential"), declared, "superpotential", params)
    if f.is_zero():
        raise SpecError("superpotential", "superpotential is zero")
    if params & declared:
        raise SpecError("superpotential", "parameter names clash with variables")

    basis = data.get("deformation_basis")
    if basis is None:
        from .ring import standard_basis

        basis = [{"monomial": dict(m)} for m in standard_basis(kind, tuple(names), tuple(weights), f)]
    exponential = {}
    prefix = "t" if kind == "laurent" else "a"
    family = f + var(f"{prefix}0")
    coords = [f"{prefix}0"]
    if not isinstance(basis, list) or not basis:
        raise SpecError("deformation_basis", "expected a non-empty list")
    for k, entry in enumerate(basis[1:], start=1):
        here = f"deformation_basis[{k}]"
        c = f"{prefix}{k}"
        coords.append(c)
        if isinstance(entry, dict) and "exponential" in entry:
            p = entry["exponential"]
            if p not in params:
                raise SpecError(here, f"{p!r} is not a superpotential parameter")
            e = f"E{k}"
            exponential[c] = e
            family = family.subs({p: var(p) * var(e)})
        elif isinstance(entry, dict) and "monomial" in entry:
            mono = entry["monomial"]
            if not isinstance(mono, dict) or any(v not in declared for v in mono):
                raise SpecError(here, "monomial must map declared variables to exponents")
            family = family + var(c) * LaurentPoly.monomial(mono)
        else:
            raise SpecError(here, "entry needs 'monomial' or 'exponential'")
    first = basis[0]
    if not (isinstance(first, dict) and first.get("monomial", None) == {}):
        raise SpecError("deformation_basis[0]", "first entry must be the constant monomial {}")

    prim = ONE
    volume = "dz/z" if kind == "laurent" else "dz"
    pf = data.get("primitive_form")
    if pf is not None:
        if not isinstance(pf, dict):
            raise SpecError("primitive_form", "expected an object")
        prim = _terms(pf.get("terms", []), declared, "primitive_form.terms", params)
        volume = pf.get("volume", volume)
        if volume not in ("dz/z", "dz"):
            raise SpecError("primitive_form.volume", "must be 'dz/z' or 'dz'")
        if len(names) == 1 and kind == "laurent" and volume == "dz":
            prim, volume = prim * var(names[0]), "dz/z"
        elif kind == "polynomial" and volume == "dz/z":
            raise SpecError("primitive_form.volume", "polynomial systems use the volume dz")
    lg = LGSystem(
        name=str(data.get("name", name)),
        kind=kind,
        variables=tuple(names),
        weights=tuple(weights),
        f=f,
        family=family,
        coordinates=tuple(coords),
        exponential=exponential,
        parameters=tuple(sorted(params)),
        primitive=prim,
        volume=volume,
    )
    if kind == "polynomial" and not lg.is_quasi_homogeneous():
        raise SpecError("superpotential", "not quasi-homogeneous for the given weights")
    return lg


def load_spec(path: str) -> LGSystem:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise SpecError(path, f"cannot read: {exc.strerror}")
    except json.JSONDecodeError as exc:
        raise SpecError(f"{path}:{exc.lineno}:{exc.colno}", exc.msg)
    return parse_spec(data, name=path)
