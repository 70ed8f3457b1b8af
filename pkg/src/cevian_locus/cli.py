"""Command-line interface: verification reports, curve arithmetic, locus tracing and figures.

Exit codes: 0 success, 2 bad input or violated precondition, 3 internal invariant failure.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import construct, locus, svg
from .errors import GeometryError, InternalInconsistency
from .field import Scalar, common_field, format_scalar, parse_scalar
from .projective import Homothety, HalfTurn, Identity, PPoint, Translation
from .triangle import CONDITION_LABELS, build_config, eta_checks, halfturn_report, invariant_checks

EXIT_OK, EXIT_INPUT, EXIT_INTERNAL = 0, 2, 3


class InputError(Exception):
    pass


# --- rendering --------------------------------------------------------------
def lit(s) -> str:
    return format_scalar(Scalar.of(s))


def point_lit(p: PPoint | None):
    return None if p is None else [lit(c) for c in p.coords]


def approx(s, digits: int = 20) -> str:
    return str(Scalar.of(s).to_decimal(digits))


def classification_json(cls) -> dict:
    if isinstance(cls, Identity):
        return {"kind": "Identity"}
    if isinstance(cls, Translation):
        return {"kind": "Translation", "direction": point_lit(cls.direction)}
    if isinstance(cls, HalfTurn):
        return {"kind": "HalfTurn", "ratio": "-1", "center": point_lit(cls.center)}
    if isinstance(cls, Homothety):
        return {"kind": "Homothety", "ratio": lit(cls.ratio), "center": point_lit(cls.center)}
    return {"kind": type(cls).__name__}


def checks_json(checks: dict[str, bool]) -> list[dict]:
    return [{"label": k, "value": bool(v)} for k, v in checks.items()]


def emit(report: dict, stream=None) -> None:
    stream = stream or sys.stdout
    stream.write(json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n")


# --- parsing ----------------------------------------------------------------
def parse_point(text: str, expect_field: int | None = None) -> PPoint:
    parts = [s.strip() for s in text.split(",")]
    if len(parts) != 3:
        raise InputError(f"expected three comma-separated coordinates, got {text!r}")
    vals = [parse_scalar(s) for s in parts]
    return _in_field(PPoint(vals), vals, expect_field)


def parse_pair(text: str, expect_field: int | None = None) -> tuple[Scalar, Scalar]:
    parts = [s.strip() for s in text.split(",")]
    if len(parts) != 2:
        raise InputError(f"expected two comma-separated values, got {text!r}")
    u, v = (parse_scalar(s) for s in parts)
    _in_field(None, [u, v], expect_field)
    return u, v


def _in_field(p, vals, expect_field):
    d = common_field(vals)
    if expect_field is not None and d not in (0, expect_field):
        raise InputError(f"coordinates live in Q(sqrt({d})), not Q(sqrt({expect_field}))")
    return p


# --- commands ---------------------------------------------------------------
def cmd_verify(args) -> tuple[dict, int]:
    p = parse_point(args.point, args.sqrt)
    cfg = build_config(p)
    rep = halfturn_report(cfg)
    inv = invariant_checks(cfg)
    try:
        eta = eta_checks(cfg)
    except GeometryError as exc:
        eta = {f"unavailable: {exc}": True}
    out = {
        "command": "verify",
        "input": {"P": point_lit(p), "field": cfg.field},
        "classification": classification_json(rep.classification),
        "conditions": [
            {"key": k, "label": CONDITION_LABELS[k], "value": v} for k, v in rep.conditions.items()
        ],
        "half_turn": rep.is_half_turn,
        "equivalence_holds": rep.equivalence_holds,
        "extras": checks_json(rep.extras),
        "ratios": {k: lit(v) for k, v in rep.ratios.items()},
        "caveats": list(rep.caveats),
        "invariants": checks_json(inv),
        "involution": checks_json(eta),
        "points": {
            name: point_lit(getattr(cfg, attr))
            for name, attr in (
                ("P'", "P_prime"), ("Q", "Q"), ("Q'", "Q_prime"), ("O", "O"), ("O'", "O_prime"),
                ("H", "H"), ("H'", "H_prime"), ("S", "S"), ("Z", "Z"), ("V", "V"),
            )
        },
    }
    if args.approx:
        out["approx"] = {
            k: [approx(c) for c in v.coords] for k, v in (("P", p), ("S", cfg.S), ("Z", cfg.Z)) if v is not None
        }
    ok = all(inv.values()) and all(eta.values()) and (rep.equivalence_holds or rep.caveats)
    return out, EXIT_OK if ok else EXIT_INTERNAL


def _curve_point(text, expect_field=None) -> PPoint:
    p = parse_point(text, expect_field)
    ok, res = locus.member(p)
    if not ok:
        raise InputError(f"{text} is not on the curve (residual {lit(res)})")
    return p


def cmd_curve(args) -> tuple[dict, int]:
    out: dict = {"command": f"curve {args.sub}"}
    code = EXIT_OK
    if args.sub == "member":
        p = parse_point(args.point)
        ok, res = locus.member(p)
        out.update(input={"P": point_lit(p)}, member=ok, residual=lit(res))
    elif args.sub == "add":
        p, q = _curve_point(args.point), _curve_point(args.q)
        s = locus.add(p, q)
        out.update(input={"P": point_lit(p), "Q": point_lit(q)}, sum=point_lit(s), member=locus.on_curve(s))
    elif args.sub == "order":
        p = _curve_point(args.point)
        o = locus.order_of(p, args.bound)
        out.update(input={"P": point_lit(p)}, bound=args.bound)
        out["order"] = o if isinstance(o, int) else f"not torsion up to {o.bound}"
    elif args.sub == "torsion":
        table = locus.torsion_table()
        out["table"] = [
            {"name": name, "point": point_lit(locus.RATIONAL_POINTS[name]), "order": o}
            for name, o in table.items()
        ]
        out["base_point"] = point_lit(locus.IDENTITY)
    elif args.sub == "j":
        out.update(
            j=lit(locus.j_invariant()),
            discriminant=lit(locus.discriminant()),
            model="v^2 = (u+1)(u^2+4)",
        )
    elif args.sub == "map":
        if (args.uv is None) == (args.point is None):
            raise InputError("curve map needs exactly one of --uv or -p")
        if args.uv is not None:
            u, v = parse_pair(args.uv)
            if locus.weierstrass_residual(u, v):
                raise InputError(f"({args.uv}) is not on v^2 = (u+1)(u^2+4)")
            p = locus.uv_to_curve(u, v)
            back = locus.curve_to_uv(p)
            out.update(
                input={"uv": [lit(u), lit(v)]},
                curve_point=point_lit(p),
                on_curve=locus.on_curve(p),
                round_trip=back == (u, v),
            )
        else:
            p = _curve_point(args.point)
            u, v = locus.curve_to_uv(p)
            out.update(
                input={"P": point_lit(p)},
                uv=[lit(u), lit(v)],
                on_weierstrass=not locus.weierstrass_residual(u, v),
                round_trip=locus.uv_to_curve(u, v) == p,
            )
        if not out["round_trip"]:
            code = EXIT_INTERNAL
    return out, code


def sample_record(s: construct.LocusSample, classify: bool) -> dict:
    checks = construct.verify_sample(s, classify=classify)
    rec = {
        "t": str(s.t),
        "d": s.d,
        "triangle": [point_lit(v) for v in s.triangle],
        "P": point_lit(s.P),
        "P_prime": point_lit(s.P_prime),
        "member": all(locus.on_curve(p) for p in s.points()),
        "checks": checks_json(checks),
    }
    if s.both_orientations:
        rec["P_swapped"] = point_lit(s.P_swapped)
        rec["P_prime_swapped"] = point_lit(s.P_prime_swapped)
    return rec


def cmd_trace(args) -> tuple[dict, int]:
    if args.n < 1:
        raise InputError("-n must be at least 1")
    samples = construct.sample_locus(args.n, args.orientation)
    records = [sample_record(s, not args.no_classify) for s in samples]
    lines = "".join(json.dumps(r, sort_keys=True) + "\n" for r in records)
    if args.output:
        Path(args.output).write_text(lines)
    if args.svg:
        Path(args.svg).write_text(svg.locus_svg(samples))
    failed = [r["t"] for r in records if not all(c["value"] for c in r["checks"])]
    out = {
        "command": "trace",
        "input": {"n": args.n, "orientation": args.orientation},
        "samples": len(records),
        "all_members": all(r["member"] for r in records),
        "distinct_points": len({tuple(r["P"]) for r in records}) == len(records),
        "failed_parameters": failed,
        "output": args.output,
        "svg": args.svg,
    }
    if not args.output:
        out["records"] = records
    return out, EXIT_OK if not failed and out["distinct_points"] else EXIT_INTERNAL


def cmd_scene(args) -> tuple[dict, int]:
    sc = construct.SCENE
    checks = construct.scene_checks(sc)
    if args.svg:
        Path(args.svg).write_text(svg.scene_svg(sc))
    out = {
        "command": "scene",
        "marked_points": {k: point_lit(v) for k, v in sc.marked_points().items()},
        "checks": checks_json(checks),
        "ratios": {"ZG/GV": "5/4", "ZG/GS": "2"},
        "arc": {"from": str(construct.ARC_START), "to": str(construct.ARC_END),
                "excluded": sorted(str(t) for t in construct.MARKED_PARAMS)},
        "svg": args.svg,
    }
    return out, EXIT_OK if all(checks.values()) else EXIT_INTERNAL


# --- entry point ------------------------------------------------------------
def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cevian-locus", description=__doc__.splitlines()[0])
    ap.add_argument("--timing", action="store_true", help="include elapsed seconds in the report")
    sub = ap.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="half-turn report for a point P")
    v.add_argument("-p", "--point", required=True, help='barycentric literal, e.g. "-4+1*sqrt(19),-1,3"')
    v.add_argument("--sqrt", type=int, default=None, help="expected field Q(sqrt(d)) of the coordinates")
    v.add_argument("--approx", action="store_true", help="add decimal approximations")
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("curve", help="arithmetic on the cubic")
    c.add_argument("sub", choices=["member", "add", "order", "torsion", "j", "map"])
    c.add_argument("-p", "--point")
    c.add_argument("-q")
    c.add_argument("--uv")
    c.add_argument("--bound", type=int, default=20)
    c.set_defaults(func=cmd_curve)

    t = sub.add_parser("trace", help="sample the locus through the circle construction")
    t.add_argument("-n", type=int, default=20)
    t.add_argument("-o", "--output", help="JSON Lines file for the samples")
    t.add_argument("--svg", help="write a figure of the curve and samples")
    t.add_argument("--orientation", choices=["both", "primary"], default="both")
    t.add_argument("--no-classify", action="store_true", help="skip the half-turn classification")
    t.set_defaults(func=cmd_trace)

    s = sub.add_parser("scene", help="the square-on-circle scene and its checks")
    s.add_argument("--svg")
    s.set_defaults(func=cmd_scene)
    return ap


def _needs(args, *names):
    for n in names:
        if getattr(args, n, None) is None:
            raise InputError(f"missing --{n}")


VALUE_OPTIONS = {"-p", "--point", "-q", "--uv"}


def attach_negative_values(argv: list[str]) -> list[str]:
    """Rewrite ``-p -4+...`` as ``-p=-4+...`` so argparse does not read the value as a flag."""
    out, i = [], 0
    while i < len(argv):
        a = argv[i]
        if a in VALUE_OPTIONS and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{a}={argv[i + 1]}")
            i += 2
        else:
            out.append(a)
            i += 1
    return out


def main(argv=None, stream=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(attach_negative_values(argv))
    start = time.perf_counter()
    try:
        if args.command == "curve":
            need = {"member": ("point",), "add": ("point", "q"), "order": ("point",)}
            _needs(args, *need.get(args.sub, ()))
        report, code = args.func(args)
    except (InputError, GeometryError) as exc:
        report = {"command": args.command, "error": {"type": type(exc).__name__, "message": str(exc)}}
        if hasattr(exc, "flag"):
            report["error"]["flag"] = exc.flag
        code = EXIT_INPUT
    except (InternalInconsistency, AssertionError) as exc:
        report = {"command": args.command, "error": {"type": type(exc).__name__, "message": str(exc)}}
        code = EXIT_INTERNAL
    if args.timing:
        report["seconds"] = round(time.perf_counter() - start, 3)
    report["exit_code"] = code
    emit(report, stream)
    return code


if __name__ == "__main__":
    sys.exit(main())
