"""Check the five defining conditions of a primitive form for a one-variable system."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .brieskorn import (
    LogObstruction,
    express_in_span,
    k1_pairing,
    mul_function,
    nabla,
    nabla_delta0_inverse,
)
from .exact import ONE, ZERO, LaurentPoly, det
from .frobenius import FrobeniusData, FrobeniusError, build_frobenius
from .lgsystem import LGSystem
from .ring import build_milnor_ring

CONDITIONS = (
    "invertibility",
    "first_integrability",
    "homogeneity",
    "higher_orthogonality",
    "exponent_operator",
)


@dataclass
class Condition:
    name: str
    holds: bool
    witness: str | None = None
    detail: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {"holds": self.holds, "witness": self.witness, "detail": self.detail}


@dataclass
class VerificationReport:
    system: str
    zeta: str
    conditions: list
    r: Fraction | None
    N: list | None
    notes: list = field(default_factory=list)

    @property
    def all_hold(self) -> bool:
        return all(c.holds for c in self.conditions)

    def condition(self, name: str) -> Condition:
        return next(c for c in self.conditions if c.name == name)

    def as_dict(self) -> dict:
        return {
            "system": self.system,
            "zeta": self.zeta,
            "conditions": {c.name: c.as_dict() for c in self.conditions},
            "passed": sum(c.holds for c in self.conditions),
            "r": None if self.r is None else str(self.r),
            "N": None if self.N is None else [[str(x) for x in row] for row in self.N],
            "notes": list(self.notes),
        }


def _structure(lg: LGSystem, zeta: LaurentPoly, notes: list) -> FrobeniusData:
    try:
        fd = build_frobenius(lg, zeta)
        fd.eta
        return fd
    except FrobeniusError as exc:
        notes.append(f"no flat metric for this form ({exc}); raw deformation coordinates used")
        return build_frobenius(lg, zeta, flatten=False)


def _invertibility(lg: LGSystem, zeta: LaurentPoly) -> Condition:
    ring0 = build_milnor_ring(lg)
    phi = lg.at_origin(zeta)
    d = det(ring0.multiplication_matrix(phi))
    return Condition("invertibility", not d.is_zero(), None if d else "det = 0", {"determinant": str(d)})


def verify_primitive_form(lg: LGSystem, zeta: LaurentPoly | None = None) -> VerificationReport:
    zeta = lg.primitive if zeta is None else LaurentPoly.coerce(zeta)
    notes: list = []
    fd = _structure(lg, zeta, notes)
    calc = fd.calculus
    mu = fd.mu
    zc = calc.cls(zeta)
    conds = [_invertibility(lg, zeta)]

    level0 = [nabla(zc, i) for i in range(mu)]
    psis = None
    try:
        psis = [nabla_delta0_inverse(c) for c in level0]
    except LogObstruction as exc:
        conds.append(Condition("first_integrability", False, str(exc)))
    if psis is not None:
        values = {f"{i},{j}": k1_pairing(psis, i, j) for i in range(mu) for j in range(i + 1, mu)}
        bad = {k: str(v) for k, v in values.items() if v}
        conds.append(
            Condition(
                "first_integrability",
                not bad,
                None if not bad else "; ".join(f"K1({k}) = {v}" for k, v in bad.items()),
                {"K1": {k: str(v) for k, v in values.items()}, "level_minus_1": [str(p) for p in psis]},
            )
        )

    ratio, ne = fd.homogeneity
    r = None if ratio is None else ratio.constant_value() + 1
    conds.append(
        Condition(
            "homogeneity",
            ratio is not None,
            None if ratio is not None else f"nabla_E zeta = {ne} is not a constant multiple of zeta",
            {"nabla_E_zeta": str(ne), "r": None if r is None else str(r)},
        )
    )

    if psis is None:
        conds.append(Condition("higher_orthogonality", False, "level -1 classes unavailable"))
        conds.append(Condition("exponent_operator", False, "level -1 classes unavailable"))
        return VerificationReport(lg.name, f"{zeta} {calc.volume}", conds, r, None, notes)

    # condition 4: nabla_i nabla_j zeta^(-1) - nabla_{i o j} zeta lies in the span of the level -1 classes
    residuals = {}
    failures = []
    for i in range(mu):
        for j in range(i, mu):
            prod = fd.product(i, j)
            R = nabla(psis[j], i)
            for k, c in enumerate(prod):
                if c:
                    R = R - level0[k].scale(c)
            R = R.reduced()
            coeffs = express_in_span(R, psis)
            residuals[f"{i},{j}"] = {"residual": str(R), "coefficients": None if coeffs is None else [str(c) for c in coeffs]}
            if coeffs is None:
                failures.append(f"({i},{j}): {R}")
    conds.append(
        Condition(
            "higher_orthogonality",
            not failures,
            "; ".join(failures) or None,
            {"residuals": residuals},
        )
    )

    # condition 5: t0 nabla_i zeta - nabla_{t0 o d_i} zeta = nabla_{(N - 1) d_i} zeta^(-1)
    t0 = calc.coordinates[0]
    N = [[ZERO] * mu for _ in range(mu)]
    failures = []
    for i in range(mu):
        vec = fd.t0_product(i)
        R = mul_function(level0[i], LaurentPoly.var(t0))
        for k, c in enumerate(vec):
            if c:
                R = R - level0[k].scale(c)
        coeffs = express_in_span(R.reduced(), psis)
        if coeffs is None:
            failures.append(f"column {i}: {R.reduced()}")
            continue
        for k in range(mu):
            N[k][i] = coeffs[k] + (ONE if k == i else ZERO)
    syms = fd.coords.all_symbols
    if not failures:
        moving = [f"N[{a}][{b}] = {x}" for a, row in enumerate(N) for b, x in enumerate(row) if x.involves(syms)]
        failures.extend(moving)
    N_out = None if failures else N
    detail = {}
    if N_out is not None and fd.N is not None:
        detail["agrees_with_euler_spectrum"] = N_out == fd.N
    conds.append(Condition("exponent_operator", not failures, "; ".join(failures) or None, detail))
    return VerificationReport(lg.name, f"{zeta} {calc.volume}", conds, r, N_out, notes)
