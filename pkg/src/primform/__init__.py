"""Exact Landau-Ginzburg Frobenius structures, primitive-form checks and genus-0 descendants."""

from .exact import LaurentPoly, RatFunc, total_residue
from .frobenius import FrobeniusData, build_frobenius
from .lgsystem import LGSystem, builtin, load_spec, parse_spec
from .ring import MilnorRing, build_milnor_ring
from .verifier import VerificationReport, verify_primitive_form

__version__ = "0.1.0"

__all__ = [
    "FrobeniusData",
    "LGSystem",
    "LaurentPoly",
    "MilnorRing",
    "RatFunc",
    "VerificationReport",
    "build_frobenius",
    "build_milnor_ring",
    "builtin",
    "load_spec",
    "parse_spec",
    "total_residue",
    "verify_primitive_form",
]
