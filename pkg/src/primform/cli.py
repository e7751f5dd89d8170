"""Command-line entry point.

Exit status: 0 success, 1 a mathematical check failed (the report carries
the witnesses), 2 a bad spec file or bad arguments.
"""

from __future__ import annotations

import argparse
import sys

from . import reports
from .descendants import Caps, CapsError
from .frobenius import FrobeniusError, build_frobenius
from .lgsystem import BUILTINS, SpecError, builtin, load_spec
from .ring import RingError

COMMANDS = ("ring", "frobenius", "verify", "descendants", "mirror-compare")


class UsageError(Exception):
    pass


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="primform", description="Landau-Ginzburg Frobenius structures and primitive forms")
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        s = sub.add_parser(name)
        s.add_argument("system", nargs="?", help=f"builtin system: {', '.join(sorted(BUILTINS))}")
        s.add_argument("--spec", help="JSON spec file")
        s.add_argument("--max-insertions", type=int, default=Caps.insertions)
        s.add_argument("--max-level", type=int, default=Caps.level)
        s.add_argument("--max-degree", type=int, default=Caps.degree)
        s.add_argument("--json", metavar="OUT", help="write the report here")
        s.add_argument("--quiet", action="store_true", help="no table on stdout")
        if name == "mirror-compare":
            s.add_argument("--corrupt", action="store_true", help="perturb the B-side potential by q t1^3/6")
            s.add_argument("--no-mirror-map", action="store_true", help="compare without the coordinate change")
    return p


def _system(args):
    if (args.system is None) == (args.spec is None):
        raise UsageError("give exactly one of a builtin name or --spec FILE")
    return load_spec(args.spec) if args.spec else builtin(args.system)


def _caps(args) -> Caps:
    caps = Caps(args.max_insertions, args.max_level, args.max_degree)
    if caps.insertions < 1 or caps.level < 0 or caps.degree < 0:
        raise UsageError("caps must be non-negative (at least one insertion)")
    return caps


def _run(args) -> tuple[dict, bool]:
    lg = _system(args)
    report = {"system": lg.name}
    cmd = args.command
    if cmd == "ring":
        report["ring"] = reports.ring_section(lg)
        return report, True
    if cmd == "verify":
        report["verification"], ok = reports.verification_section(lg)
        return report, ok
    fd = build_frobenius(lg)
    if cmd == "frobenius":
        sec = reports.frobenius_section(fd)
        report["frobenius"] = sec
        return report, reports.frobenius_ok(sec)
    caps = _caps(args)
    if cmd == "descendants":
        report["correlators"], ok = reports.correlator_section(fd, caps)
        return report, ok
    if not reports.is_projective_line(fd):
        raise UsageError("mirror-compare needs the projective-line system (cp1)")
    report["comparison"], ok = reports.comparison_section(
        fd, caps, corrupt=args.corrupt, use_mirror_map=not args.no_mirror_map
    )
    return report, ok


def main(argv=None) -> int:
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        report, ok = _run(args)
    except (SpecError, UsageError, CapsError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (RingError, FrobeniusError) as exc:
        report, ok = {"error": str(exc)}, False
    report["passed"] = ok
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            fh.write(reports.to_json(report))
    if not args.quiet:
        print("\n".join(reports.render(report)))
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
