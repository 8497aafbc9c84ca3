"""Command line front end.

Subcommands generate polytopes, audit concentration bounds, build lift
towers, and wrap the polar/pyramid/join queries.  Polytope documents are
read from a file argument or stdin ("-"), so commands pipe:

    conevol gen --kind simplex --dim 2 | conevol audit

Exit codes: 0 success, 2 bad input (parse errors, caps, degeneracies),
3 theorem violation (a negative slack or broken internal cross-check:
always a bug, never a property of valid input), 4 polytope not centered
where a centered one is required (pass --recenter to translate).
"""
from __future__ import annotations

import argparse
import hashlib
import sys
from fractions import Fraction
from typing import Any

from . import __version__
from .concentration import (
    detect_join_structure,
    equality_case_classification,
    full_audit,
    join_detection_roundtrip,
)
from .cone_measure import cone_volume_measure
from .errors import GeometryError, NotCentered, TheoremViolation
from .generators import KINDS, GeneratorSpec, generate
from .jsonio import (
    dumps,
    equality_case_to_json,
    fraction_to_str,
    loads,
    measure_to_json,
    polytope_from_json,
    polytope_to_json,
    rational_json,
    report_to_json,
    tower_to_json,
    vector_to_json,
)
from .kernel import affine_hull
from .lifting import build_tower, tower_bound
from .polytope import (
    DEFAULT_DIM_CAP,
    Polytope,
    centroid,
    is_centered,
    is_pyramid,
    polar,
    pyramid_apexes,
    translate_to_centroid,
    volume,
)


def _add_common(sp: argparse.ArgumentParser) -> None:
    sp.add_argument(
        "--format", choices=("json", "text"), default="json", help="output format"
    )
    sp.add_argument(
        "--dim-cap",
        type=int,
        default=DEFAULT_DIM_CAP,
        help="refuse inputs above this dimension",
    )


def _add_file(sp: argparse.ArgumentParser) -> None:
    sp.add_argument(
        "file", nargs="?", default="-", help="polytope JSON path, - for stdin"
    )


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="conevol",
        description="exact cone-volume measures and concentration audits",
    )
    parser.add_argument(
        "--version", action="version", version=f"conevol {__version__}"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate a centered polytope")
    gen.add_argument("--kind", choices=KINDS, required=True)
    gen.add_argument("--dim", type=int, required=True)
    gen.add_argument("--points", type=int, default=None, help="vertex budget for seeded kinds")
    gen.add_argument("--seed", type=int, default=0)
    _add_common(gen)
    gen.set_defaults(func=cmd_gen)

    audit = sub.add_parser("audit", help="run the concentration audit")
    _add_file(audit)
    audit.add_argument(
        "--max-flat-dim",
        type=int,
        default=None,
        help="largest flat dimension to enumerate (default: dim - 1)",
    )
    family = audit.add_mutually_exclusive_group()
    family.add_argument(
        "--linear", dest="kinds", action="store_const", const=("linear",),
        help="linear bounds only",
    )
    family.add_argument(
        "--affine", dest="kinds", action="store_const", const=("affine",),
        help="affine bounds only",
    )
    family.add_argument(
        "--both", dest="kinds", action="store_const", const=("affine", "linear"),
        help="both families (default)",
    )
    audit.set_defaults(kinds=("affine", "linear"))
    audit.add_argument(
        "--recenter", action="store_true", help="translate to the centroid first"
    )
    _add_common(audit)
    audit.set_defaults(func=cmd_audit)

    lift = sub.add_parser("lift", help="build the pyramid-lift tower")
    _add_file(lift)
    lift.add_argument("--levels", type=int, default=1, help="number of lift levels")
    lift.add_argument(
        "--recenter", action="store_true", help="translate to the centroid first"
    )
    _add_common(lift)
    lift.set_defaults(func=cmd_lift)

    pol = sub.add_parser("polar", help="polar dual")
    _add_file(pol)
    _add_common(pol)
    pol.set_defaults(func=cmd_polar)

    isp = sub.add_parser("ispyramid", help="report apex/base structure")
    _add_file(isp)
    _add_common(isp)
    isp.set_defaults(func=cmd_ispyramid)

    jn = sub.add_parser("join", help="detect join structure")
    _add_file(jn)
    _add_common(jn)
    jn.set_defaults(func=cmd_join)
    return parser


def _read_raw(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    with open(path, "rb") as fh:
        return fh.read()


def _load_polytope(args: argparse.Namespace) -> tuple[Polytope, dict[str, Any]]:
    raw = _read_raw(args.file)
    doc = loads(raw)
    p = polytope_from_json(doc, dim_cap=args.dim_cap)
    echo: dict[str, Any] = {
        "source": "stdin" if args.file == "-" else args.file,
        "sha256": hashlib.sha256(raw).hexdigest(),
    }
    if isinstance(doc, dict) and isinstance(doc.get("generator"), dict):
        echo["generator"] = doc["generator"]
    return p, echo


def _require_centered_input(
    p: Polytope, args: argparse.Namespace, echo: dict[str, Any]
) -> Polytope:
    echo["recentered"] = False
    if is_centered(p):
        return p
    if not getattr(args, "recenter", False):
        raise NotCentered(
            "input polytope is not centered; pass --recenter to translate"
        )
    echo["recentered"] = True
    return translate_to_centroid(p)


def _polytope_summary(p: Polytope) -> dict[str, Any]:
    return {
        "dim": p.dim,
        "facet_count": p.facet_count,
        "vertex_count": len(p.vertices),
        "volume": rational_json(volume(p)),
        "centroid": vector_to_json(centroid(p)),
    }


def _summary_text(p: Polytope) -> str:
    return (
        f"dim {p.dim}, {p.facet_count} facets, {len(p.vertices)} vertices, "
        f"volume {volume(p)}"
    )


def cmd_gen(args: argparse.Namespace) -> tuple[str, int]:
    spec = GeneratorSpec(args.kind, args.dim, args.points, args.seed)
    p = generate(spec, dim_cap=args.dim_cap)
    echo = {"kind": spec.kind, "dim": spec.dim, "points": spec.points, "seed": spec.seed}
    if args.format == "text":
        return f"{spec.kind}: {_summary_text(p)}\n", 0
    return dumps(polytope_to_json(p, generator=echo)), 0


def cmd_audit(args: argparse.Namespace) -> tuple[str, int]:
    p, echo = _load_polytope(args)
    p = _require_centered_input(p, args, echo)
    reports = [
        r for r in full_audit(p, args.max_flat_dim) if r.kind in args.kinds
    ]
    cases = equality_case_classification(p)
    violated = any(r.slack < 0 for r in reports)
    code = 3 if violated else 0
    doc = {
        "tool": "conevol",
        "version": __version__,
        "input": echo,
        "seed": (echo.get("generator") or {}).get("seed"),
        "polytope": _polytope_summary(p),
        "cone_volume_measure": measure_to_json(cone_volume_measure(p)),
        "max_flat_dim": args.max_flat_dim if args.max_flat_dim is not None else p.dim - 1,
        "reports": [report_to_json(r) for r in reports],
        "equality_cases": [equality_case_to_json(c) for c in cases],
        "violations": sum(1 for r in reports if r.slack < 0),
    }
    if args.format == "text":
        lines = [f"polytope: {_summary_text(p)}"]
        m = cone_volume_measure(p)
        weights = " ".join(f"{i}:{w}" for i, (_, w) in enumerate(m.atoms))
        lines.append(f"cone weights: {weights}")
        for r in reports:
            members = ",".join(str(i) for i in sorted(r.member_indices))
            tag = " EQUALITY" if r.equality else ""
            wtn = " witness" if r.witness is not None else ""
            lines.append(
                f"{r.kind} d={r.flat_dim} members=[{members}] "
                f"lhs={r.lhs} rhs={r.rhs} slack={r.slack}{tag}{wtn}"
            )
        for c in cases:
            lines.append(
                f"equality case: {c.kind} facet={c.facet_index} apex={c.apex_index}"
            )
        if violated:
            lines.append("VIOLATION: negative slack found")
        return "\n".join(lines) + "\n", code
    return dumps(doc), code


def cmd_lift(args: argparse.Namespace) -> tuple[str, int]:
    p, echo = _load_polytope(args)
    p = _require_centered_input(p, args, echo)
    tower = build_tower(p, args.levels)
    bounds = []
    for i, a in enumerate(p.normals):
        flat = affine_hull([a])
        column = [tower_bound(p, flat, j) for j in range(1, args.levels + 1)]
        if any(x <= y for x, y in zip(column, column[1:])):
            raise TheoremViolation("tower bound column is not strictly decreasing")
        bounds.append(
            {
                "facet": i,
                "flat_dim": 0,
                "weight": fraction_to_str(cone_volume_measure(p).weight(i)),
                "levels": [fraction_to_str(x) for x in column],
                "monotone": True,
            }
        )
    doc = {
        "tool": "conevol",
        "version": __version__,
        "input": echo,
        "polytope": _polytope_summary(p),
        "tower": tower_to_json(tower),
        "singleton_bounds": bounds,
    }
    if args.format == "text":
        lines = [f"polytope: {_summary_text(p)}"]
        for lvl in tower.levels:
            flag = "verified" if lvl.verified else "trusted"
            lines.append(
                f"level {lvl.level}: dim {lvl.polytope.dim}, "
                f"{lvl.polytope.facet_count} facets, volume {lvl.volume} ({flag})"
            )
        for b in bounds:
            lines.append(
                f"facet {b['facet']}: weight {b['weight']} <= "
                + " > ".join(b["levels"])
            )
        return "\n".join(lines) + "\n", 0
    return dumps(doc), 0


def cmd_polar(args: argparse.Namespace) -> tuple[str, int]:
    p, _ = _load_polytope(args)
    q = polar(p)
    if args.format == "text":
        return f"polar: {_summary_text(q)}\n", 0
    return dumps(polytope_to_json(q)), 0


def cmd_ispyramid(args: argparse.Namespace) -> tuple[str, int]:
    p, echo = _load_polytope(args)
    found = is_pyramid(p)
    apexes = [
        {
            "vertex_index": vi,
            "base_facet": fi,
            "apex": vector_to_json(p.vertices[vi]),
        }
        for vi, fi in pyramid_apexes(p)
    ]
    doc = {
        "tool": "conevol",
        "version": __version__,
        "input": echo,
        "pyramid": found is not None,
        "apexes": apexes,
    }
    if args.format == "text":
        if found is None:
            return "not a pyramid\n", 0
        apex, base = found
        return (
            f"pyramid: apex ({', '.join(vector_to_json(apex))}) over facet {base}"
            f" ({len(apexes)} apex(es) total)\n"
        ), 0
    return dumps(doc), 0


def cmd_join(args: argparse.Namespace) -> tuple[str, int]:
    p, echo = _load_polytope(args)
    split = detect_join_structure(p)
    direct, via_polar = join_detection_roundtrip(p)
    sides = None
    if split is not None:
        index = {v: i for i, v in enumerate(p.vertices)}
        sides = [[index[v] for v in side.vertices] for side in split]
    doc = {
        "tool": "conevol",
        "version": __version__,
        "input": echo,
        "join": direct,
        "split": sides,
        "polar_roundtrip": via_polar,
        "agree": direct == via_polar,
    }
    if args.format == "text":
        if sides is None:
            return f"no join structure (polar agrees: {direct == via_polar})\n", 0
        return (
            f"join: vertices {sides[0]} * {sides[1]} "
            f"(polar agrees: {direct == via_polar})\n"
        ), 0
    return dumps(doc), 0


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        out, code = args.func(args)
    except NotCentered as exc:
        print(f"conevol: {exc}", file=sys.stderr)
        return 4
    except TheoremViolation as exc:
        print(f"conevol: theorem violation: {exc}", file=sys.stderr)
        return 3
    except (GeometryError, ValueError, OSError) as exc:
        print(f"conevol: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
