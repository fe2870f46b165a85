"""Command-line surface.

Complex literals use the "a+bi" grammar: both parts optional, "i" alone
means 1i, e.g. "1", "2i", "-1+0.5i", "1-i".  Projective points are entered
as a comma pair "z0,z1".  Everything prints JSON (CSV for tables, SVG for
figures, selected with --format) to stdout or --out.
"""

from __future__ import annotations

import argparse
import cmath
import json
import math
import random
import sys

from . import __version__
from .ksequence import a_seq, ratio_limits
from .atlas import QuotientPoint, phi_k, psi_k, psi_k_inv
from .projective import ProjPoint, chart_solve, chi, classify, fiber
from .stability import StabilityRecord, construct, validate
from .lifting import (
    LiftError,
    LiftOptions,
    PathSample,
    circle_path,
    lift_quotient,
    lift_total,
    monodromy,
    puncture_start,
)
from .render import RenderSpec, render


def parse_complex(text: str) -> complex:
    """Parse the "a+bi" grammar; raises ValueError on junk."""
    s = text.strip().replace(" ", "")
    if not s:
        raise ValueError("empty complex literal")
    s = s.replace("i", "j")
    # bare trailing sign before j, as in "1+j"
    s = s.replace("+j", "+1j").replace("-j", "-1j")
    if s == "j":
        s = "1j"
    try:
        return complex(s)
    except ValueError:
        raise ValueError(f"cannot parse complex literal {text!r}")


def parse_point(text: str) -> ProjPoint:
    parts = text.split(",")
    if len(parts) != 2:
        raise ValueError(f"projective point needs two comma-separated coordinates, got {text!r}")
    return ProjPoint(parse_complex(parts[0]), parse_complex(parts[1]))


def _positive_n(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"n must be an integer, got {text!r}")
    if n < 1:
        raise argparse.ArgumentTypeError(f"n must be >= 1, got {n}")
    return n


def _emit(args, payload: str) -> None:
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)


def _emit_json(args, data) -> None:
    _emit(args, json.dumps(data, indent=2) + "\n")


def cmd_seq(args) -> int:
    rows = []
    for k in range(args.kmax + 1):
        ak = a_seq(args.n, k)
        ratio = None
        if ak != 0:
            ratio = a_seq(args.n, k + 1) / ak
        rows.append({"k": k, "a_k": ak, "ratio": ratio})
    limits = None
    if args.n > 2:
        limits = list(ratio_limits(args.n))
    if args.format == "csv":
        lines = ["k,a_k,ratio"]
        for r in rows:
            lines.append(f"{r['k']},{r['a_k']},{'' if r['ratio'] is None else repr(r['ratio'])}")
        _emit(args, "\n".join(lines) + "\n")
    else:
        _emit_json(args, {"n": args.n, "rows": rows, "ratio_limits": limits})
    return 0


def cmd_classify(args) -> int:
    p = ProjPoint(parse_complex(args.z0), parse_complex(args.z1))
    verdict = classify(args.n, p, args.tol)
    _emit_json(
        args,
        {
            "point": [[p.z0.real, p.z0.imag], [p.z1.real, p.z1.imag]],
            "kind": verdict.kind.value,
            "detail": verdict.detail,
            "removed": verdict.removed,
        },
    )
    return 0


def cmd_chart_map(args) -> int:
    z = parse_complex(args.z)
    w = parse_complex(args.w)
    z2, w2 = phi_k(args.n, args.k, z, w)
    _emit_json(args, {"z": [z2.real, z2.imag], "w": [w2.real, w2.imag]})
    return 0


def cmd_quotient_map(args) -> int:
    w = parse_complex(args.w)
    f = psi_k_inv if args.inverse else psi_k
    w2 = f(args.n, args.k, w)
    _emit_json(args, {"w": [w2.real, w2.imag]})
    return 0


def cmd_chi(args) -> int:
    p = chi(args.n, args.k, parse_complex(args.w))
    _emit_json(args, {"point": [[p.z0.real, p.z0.imag], [p.z1.real, p.z1.imag]]})
    return 0


def cmd_fiber(args) -> int:
    p = ProjPoint(parse_complex(args.z0), parse_complex(args.z1))
    pts = fiber(args.n, p, args.im_max, args.k_max)
    _emit_json(
        args,
        {"count": len(pts), "points": [{"k": q.k, "w": [q.w.real, q.w.imag]} for q in pts]},
    )
    return 0


def cmd_construct(args) -> int:
    rec = construct(args.n, parse_complex(args.z0), parse_complex(args.z1))
    _emit_json(args, rec.to_json())
    return 0


def cmd_validate(args) -> int:
    if args.record == "-":
        data = json.load(sys.stdin)
    else:
        with open(args.record) as fh:
            data = json.load(fh)
    rec = StabilityRecord.from_json(data)
    report = validate(rec)
    _emit_json(args, report.to_json())
    return 0 if report.ok else 1


def _load_path_file(path: str) -> PathSample:
    pts = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#") or line.startswith("re0"):
                continue
            vals = [float(v) for v in line.split(",")]
            if len(vals) != 4:
                raise ValueError(f"path rows need re0,im0,re1,im1, got {line!r}")
            pts.append(ProjPoint(complex(vals[0], vals[1]), complex(vals[2], vals[3])))
    if not pts:
        raise ValueError(f"path file {path} holds no points")
    return PathSample(tuple(pts), closed=pts[0].isclose(pts[-1], 1e-12))


def _default_start(n: int, p0: ProjPoint, center: ProjPoint | None) -> QuotientPoint:
    """Wrapping-sheet start for a removed center, chart-0 lift otherwise."""
    if center is not None:
        verdict = classify(n, center)
        if verdict.removed and verdict.kind.value == "ExceptionalRay":
            return puncture_start(n, verdict.detail, p0, branch=1)
        if verdict.removed:
            raise ValueError(
                "loops around band or fixed points need an explicit --start"
            )
    u = chart_solve(n, 0, p0)
    w = cmath.log(u)
    if w.imag <= 0.0:
        w += 2j * math.pi
    return QuotientPoint(n, 0, w)


def _parse_start(n: int, text: str) -> QuotientPoint:
    parts = text.split(",")
    if len(parts) != 3:
        raise ValueError(f"--start needs k,re,im; got {text!r}")
    return QuotientPoint(n, int(parts[0]), complex(float(parts[1]), float(parts[2])))


def cmd_lift(args) -> int:
    opts = LiftOptions(tol=args.tol)
    if args.loop_around:
        center = parse_point(args.loop_around)
        if args.start:
            start = _parse_start(args.n, args.start)
        else:
            loop = circle_path(center, args.radius, args.samples)
            start = _default_start(args.n, loop.points[0], center)
        result = monodromy(args.n, center, args.radius, start, args.samples, opts)
        data = result.to_json()
        if args.trace:
            data["report"] = result.report.to_json()
        _emit_json(args, data)
        return 0
    if not args.path_file:
        raise ValueError("lift needs --path-file or --loop-around")
    path = _load_path_file(args.path_file)
    start = (
        _parse_start(args.n, args.start)
        if args.start
        else _default_start(args.n, path.points[0], None)
    )
    if args.total:
        z = parse_complex(args.z) if args.z else complex(0.0)
        report = lift_total(args.n, path, (start.k, z, start.w), opts)
    else:
        report = lift_quotient(args.n, path, start, opts)
    _emit_json(args, report.to_json())
    return 0


def cmd_monodromy(args) -> int:
    center = parse_point(args.center)
    if args.start:
        start = _parse_start(args.n, args.start)
    else:
        loop = circle_path(center, args.radius, args.samples)
        start = _default_start(args.n, loop.points[0], center)
    result = monodromy(
        args.n, center, args.radius, start, args.samples, LiftOptions(tol=args.tol)
    )
    data = result.to_json()
    if args.trace:
        data["report"] = result.report.to_json()
    _emit_json(args, data)
    return 0


def cmd_render(args) -> int:
    try:
        re_s, im_s = (int(v) for v in args.grid.split("x"))
    except ValueError:
        raise ValueError(f"--grid needs the form RExIM, got {args.grid!r}")
    spec = RenderSpec(
        n=args.n,
        figure=args.figure,
        charts=args.charts,
        grid=(re_s, im_s),
        out=args.out,
        fmt=args.format or "svg",
    )
    _emit(args, render(spec))
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-n", "--n", type=_positive_n, default=2, help="quiver arrow count, n >= 1")
    common.add_argument("--tol", type=float, default=1e-9, help="numerical tolerance")
    common.add_argument(
        "--format",
        choices=("json", "csv", "svg"),
        default=None,
        help="output format (default json; svg for render)",
    )
    common.add_argument("--out", help="write output to this path instead of stdout")
    common.add_argument("--seed", type=int, help="seed for any randomized sampling")

    parser = argparse.ArgumentParser(
        prog="kronstab",
        description="Chart atlas of stability conditions on the n-Kronecker quiver.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("seq", parents=[common], help="integer sequence a_k and ratios")
    p.add_argument("-k", "--kmax", type=int, default=10)
    p.set_defaults(func=cmd_seq)

    p = sub.add_parser("classify", parents=[common], help="removed-set verdict for [z0:z1]")
    p.add_argument("z0")
    p.add_argument("z1")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("chart-map", parents=[common], help="transition map chart k -> chart 0")
    p.add_argument("-k", type=int, required=True)
    p.add_argument("z")
    p.add_argument("w")
    p.set_defaults(func=cmd_chart_map)

    p = sub.add_parser("quotient-map", parents=[common], help="strip map of chart k (or inverse)")
    p.add_argument("-k", type=int, required=True)
    p.add_argument("w")
    p.add_argument("--inverse", action="store_true")
    p.set_defaults(func=cmd_quotient_map)

    p = sub.add_parser("chi", parents=[common], help="CP^1 image of a chart coordinate")
    p.add_argument("-k", type=int, required=True)
    p.add_argument("w")
    p.set_defaults(func=cmd_chi)

    p = sub.add_parser("fiber", parents=[common], help="chart preimages of a Regular point")
    p.add_argument("z0")
    p.add_argument("z1")
    p.add_argument("--im-max", type=float, default=2 * math.pi)
    p.add_argument("--k-max", type=int, default=5)
    p.set_defaults(func=cmd_fiber)

    p = sub.add_parser("construct", parents=[common], help="stability condition from (Z(S_0), Z(S_1))")
    p.add_argument("z0")
    p.add_argument("z1")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("validate", parents=[common], help="check a stability record JSON")
    p.add_argument("record", help="path to record JSON, or - for stdin")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("lift", parents=[common], help="lift a CP^1 path or loop through chi")
    p.add_argument("--path-file", help="CSV with rows re0,im0,re1,im1")
    p.add_argument("--loop-around", help="projective point z0,z1 to loop around")
    p.add_argument("--radius", type=float, default=0.1)
    p.add_argument("--samples", type=int, default=512)
    p.add_argument("--start", help="starting lift as k,re,im")
    p.add_argument("--total", action="store_true", help="track the total-space coordinate z too")
    p.add_argument("-z", help="total-space z at the start (with --total)")
    p.add_argument("--trace", action="store_true", help="include the full lifted trace")
    p.set_defaults(func=cmd_lift)

    p = sub.add_parser("monodromy", parents=[common], help="one loop around a point, report closure")
    p.add_argument("center", help="projective point z0,z1")
    p.add_argument("--radius", type=float, default=0.1)
    p.add_argument("--samples", type=int, default=512)
    p.add_argument("--start", help="starting lift as k,re,im")
    p.add_argument("--trace", action="store_true")
    p.set_defaults(func=cmd_monodromy)

    p = sub.add_parser("render", parents=[common], help="figure reproduction (cn, psi, chi)")
    p.add_argument("--figure", choices=("cn", "psi", "chi"), default="cn")
    p.add_argument("--charts", type=int, default=3)
    p.add_argument("--grid", default="7x40", help="grid sample counts, RExIM")
    p.set_defaults(func=cmd_render)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "seed", None) is not None:
        random.seed(args.seed)
    try:
        return args.func(args)
    except (ValueError, ZeroDivisionError, LiftError, OSError, AssertionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
