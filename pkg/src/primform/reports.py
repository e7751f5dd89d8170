"""JSON-ready report sections and their plain-text rendering.

Every value is a string, bool, int, list or dict so that dumping with
sorted keys is stable under a load/dump round trip.
"""

from __future__ import annotations

import json
from fractions import Fraction

from . import aside
from .descendants import (
    AXIOM_NOTE,
    Caps,
    Gravity,
    axiom_ledger,
    build_table,
    compare_free_energies,
    cp1_dimension,
    one_point_tower,
)
from .exact import ZERO, var
from .frobenius import FrobeniusData
from .lgsystem import LGSystem
from .ring import (
    build_milnor_ring,
    gram_matrix,
    hessian,
    milnor_number_from_weights,
    poincare_polynomial,
    spectrum,
)
from .verifier import verify_primitive_form

POTENTIAL_NOTE = (
    "the potential is normalized so that its third derivatives equal "
    "C_ijk = eta(d_i o d_j, d_k); under this normalization the cubic term is "
    "(1/2) t0^2 t1 for cp1, and the form t0^2 t1 + q e^t1 is twice the cubic part"
)


def _s(x) -> str:
    return str(x)


def _matrix(m) -> list:
    return [[_s(x) for x in row] for row in m]


def _vec(v) -> list:
    return [_s(x) for x in v]


def _field(vec, names) -> str:
    parts = [f"({c})*d/d{n}" for c, n in zip(vec, names) if c]
    return " + ".join(parts) or "0"


def to_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def render(report: dict, prefix: str = "") -> list:
    """Flatten a report into 'path: value' lines."""
    lines = []
    if isinstance(report, dict):
        for k in sorted(report):
            lines.extend(render(report[k], f"{prefix}.{k}" if prefix else str(k)))
    elif isinstance(report, list) and report and any(isinstance(x, (dict, list)) for x in report):
        for i, x in enumerate(report):
            lines.extend(render(x, f"{prefix}[{i}]"))
    else:
        lines.append(f"{prefix}: {json.dumps(report, sort_keys=True)}")
    return lines


# --------------------------------------------------------------------------


def ring_section(lg: LGSystem) -> dict:
    ring = build_milnor_ring(lg)
    out = {
        "kind": lg.kind,
        "variables": list(lg.variables),
        "weights": _vec(lg.weights),
        "superpotential": _s(lg.f),
        "mu": ring.mu,
        "basis": [_s(b) for b in ring.basis_polys],
        "products": {f"{i}*{j}": _vec(v) for (i, j), v in sorted(ring.product_table().items())},
        "hessian": _s(ring.reduce(hessian(lg.f, lg.variables))),
        "pairing": _matrix(gram_matrix(ring)),
    }
    if lg.kind == "polynomial":
        sp = spectrum(lg)
        chi, dual = poincare_polynomial(sp)
        out["spectrum"] = sp.as_dict()
        out["poincare"] = {"terms": [[_s(p), m] for p, m in chi], "duality": dual}
        mu_w = milnor_number_from_weights(lg.weights)
        out["mu_from_weights"] = _s(mu_w)
        out["mu_matches_weights"] = mu_w == ring.mu
    return out


def frobenius_section(fd: FrobeniusData) -> dict:
    names = fd.coords.names
    n = fd.mu
    mu_delta = fd.discriminant * n
    out = {
        "coordinates": list(names),
        "flat_change": fd.change.as_dict(),
        "eta": _matrix(fd.eta),
        "eta_constant": fd.eta_is_flat(),
        "products": {f"{i}*{j}": _field(fd.product(i, j), names) for i in range(n) for j in range(i, n)},
        "t0_products": {str(j): _field(fd.t0_product(j), names) for j in range(n)},
        "structure_constants": {",".join(map(str, k)): _s(v) for k, v in sorted(fd.structure.items())},
        "potential": _s(fd.potential),
        "potential_note": POTENTIAL_NOTE if is_projective_line(fd) else POTENTIAL_NOTE.split(";")[0],
        "potentiality_violations": [list(v) for v in fd.potentiality_violations()],
        "euler": _field(fd.euler, names),
        "degrees": None if fd.degrees is None else _vec(fd.degrees),
        "discriminant": _s(fd.discriminant),
        "euler_discriminant": _s(fd.euler_apply(fd.discriminant)),
        "euler_discriminant_is_mu_times": fd.euler_apply(fd.discriminant) == mu_delta,
        "wdvv_residuals": {k: _s(v) for k, v in fd.wdvv().items()},
        "r": None if fd.r is None else _s(fd.r),
        "N": None if fd.N is None else _matrix(fd.N),
    }
    if fd.spectrum is not None:
        chi, dual = poincare_polynomial(fd.spectrum)
        out["spectrum"] = fd.spectrum.as_dict()
        out["poincare"] = {"terms": [[_s(p), m] for p, m in chi], "duality": dual}
    return out


def frobenius_ok(section: dict) -> bool:
    return (
        section["eta_constant"]
        and not section["potentiality_violations"]
        and section["euler_discriminant_is_mu_times"]
        and not section["wdvv_residuals"]
    )


def verification_section(lg: LGSystem):
    rep = verify_primitive_form(lg)
    return rep.as_dict(), rep.all_hold


# --------------------------------------------------------------------------


def is_projective_line(fd: FrobeniusData) -> bool:
    """The CP1 mirror shape: Laurent, rank 2, second coordinate exponentiated."""
    return fd.lg.kind == "laurent" and fd.mu == 2 and fd.coords.names[1] in fd.coords.exponential


def _tower_expected(top: int) -> list:
    out = []
    f = 1
    for d in range(1, top + 1):
        f *= d
        out.append(Fraction(1, f * f))
    return out


def correlator_section(fd: FrobeniusData, caps: Caps):
    """Correlator tables, axiom ledgers and, for cp1, the A-side and tower checks."""
    grav = Gravity(fd)
    is_cp1 = is_projective_line(fd)
    mu = fd.mu
    ok = True
    if is_cp1:
        b_table = build_table(grav.correlator, mu, caps, dimension=cp1_dimension)
    else:
        b_table = build_table(grav.correlator, mu, Caps(caps.insertions, caps.level, 0))
    b_axioms = axiom_ledger(
        b_table, grav.correlator, divisor=1 if is_cp1 else None, cup=aside.cup_with_point if is_cp1 else None
    )
    out = {
        "caps": {"insertions": caps.insertions, "level": caps.level, "degree": caps.degree},
        "axiom_note": AXIOM_NOTE,
        "b_side": {
            "entries": len(b_table.entries),
            "nonzero": b_table.as_list(),
            "axioms": {k: v.as_dict() for k, v in b_axioms.items()},
        },
    }
    ok &= all(not v.failures for v in b_axioms.values())
    if is_cp1:
        a_table = build_table(aside.correlator, mu, caps, dimension=cp1_dimension)
        a_axioms = axiom_ledger(a_table, aside.correlator, divisor=1, cup=aside.cup_with_point)
        mismatches = [
            f"{list(k[0])} beta={k[1]}: {v} != {b_table.entries[k]}"
            for k, v in sorted(a_table.entries.items())
            if v != b_table.entries[k]
        ]
        out["a_side"] = {
            "entries": len(a_table.entries),
            "nonzero": a_table.as_list(),
            "axioms": {k: v.as_dict() for k, v in a_axioms.items()},
        }
        out["agreement"] = {"compared": len(a_table.entries), "mismatches": mismatches}
        ok &= not mismatches and all(not v.failures for v in a_axioms.values())
        top = 4
        expected = _tower_expected(top)
        small = one_point_tower(Gravity(fd), top)
        large_caps = Caps(1, 2 * top + 2, top + 2)
        big = one_point_tower(Gravity(fd), top + 2)[:top]
        a_vals = [aside.correlator(((2 * d - 2, 1),), d) for d in range(1, top + 1)]
        tower_ok = small == big == a_vals == expected
        out["tower"] = {
            "expected": _vec(expected),
            "b_side": _vec(small),
            "b_side_larger_cap": _vec(big),
            "larger_cap": {"level": large_caps.level, "degree": large_caps.degree},
            "a_side": _vec(a_vals),
            "holds": tower_ok,
        }
        ok &= tower_ok
    return out, ok


def comparison_section(fd: FrobeniusData, caps: Caps, corrupt: bool = False, use_mirror_map: bool = True):
    shift = var("q") * var(fd.coords.names[1], 3) * Fraction(1, 6) if corrupt else ZERO
    grav = Gravity(fd, shift)
    cmp = compare_free_energies(aside.correlator, grav, caps, use_mirror_map=use_mirror_map)
    out = {
        "caps": {"insertions": caps.insertions, "level": caps.level, "degree": caps.degree},
        "mirror_map": use_mirror_map,
        "corrupted": corrupt,
        **cmp.as_dict(),
    }
    return out, cmp.max_discrepancy == 0

