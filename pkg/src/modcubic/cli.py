"""Command-line entry point: ``modcubic <command> [options]``.

Exit codes: 0 success, 1 usage error, 2 invalid mathematical input, 3 I/O error.
"""

import argparse
import csv
import io
import json
import sys
from dataclasses import asdict
from typing import List, Optional

from . import charsum, scan
from .cubic import (
    GeneralCubic,
    ReducedCubic,
    brute_detect_in_box,
    brute_min_box_side,
    detect_in_box,
    difference_rhs,
    min_box_side,
    normalize,
    pair_condition,
    symbol_factors,
)
from .modarith import DomainError, UsageError, check_modulus
from .rng import Stream, FAMILY_STREAM

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_IO = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}\n{self.format_usage()}")


def _witness_dict(w) -> Optional[dict]:
    if w is None:
        return None
    return {
        "x1": w.p1.x, "y1": w.p1.y, "x2": w.p2.x, "y2": w.p2.y,
        "u": w.u, "v_signed": w.v_signed,
        "anchor_x": w.anchor_x, "anchor_y": w.anchor_y, "side": w.side,
    }


def _witness_text(w) -> str:
    if w is None:
        return "none"
    return (
        f"points ({w.p1.x}, {w.p1.y}) and ({w.p2.x}, {w.p2.y}); u={w.u} v={w.v_signed}; "
        f"box X={w.anchor_x} Y={w.anchor_y} H={w.side}"
    )


def cmd_normalize(args) -> dict:
    g = GeneralCubic(args.p, args.a, args.b, args.c, args.d)
    red, tr = normalize(g)
    return {"p": red.p, "a": red.a, "c": red.c, "dx": tr.dx, "dy": tr.dy}


def cmd_condition(args) -> dict:
    cur = ReducedCubic(args.p, args.a, args.c)
    if args.u % cur.p == 0:
        raise DomainError("u must be nonzero mod p")
    s3, sa, su, sf = symbol_factors(cur, args.u, args.v)
    return {
        "p": cur.p, "a": cur.a, "c": cur.c, "u": args.u % cur.p, "v": args.v % cur.p,
        "value": pair_condition(cur, args.u, args.v),
        "difference_rhs": difference_rhs(cur, args.u, args.v),
        "symbols": {"minus3": s3, "a": sa, "u": su, "cubic": sf},
    }


def cmd_detect(args) -> dict:
    cur = ReducedCubic(args.p, args.a, args.c)
    w = (brute_detect_in_box if args.brute else detect_in_box)(cur, args.H)
    return {"p": cur.p, "a": cur.a, "c": cur.c, "H": args.H, "found": w is not None, "witness": _witness_dict(w)}


def cmd_minbox(args) -> dict:
    cur = ReducedCubic(args.p, args.a, args.c)
    if args.brute:
        h = brute_min_box_side(cur)
        w = brute_detect_in_box(cur, h)
    else:
        h, w = min_box_side(cur)
    return {"p": cur.p, "a": cur.a, "c": cur.c, "h_min": h, "method": "brute" if args.brute else "criterion",
            "witness": _witness_dict(w)}


def cmd_charsum(args) -> dict:
    p = check_modulus(args.p)
    if not 1 <= args.H <= p:
        raise UsageError("--H must lie in [1, p]")
    if args.family == "curve":
        cur = ReducedCubic(p, args.a, args.c)
        fam = charsum.curve_value_family(cur, args.H, args.count)
    else:
        J = args.count or charsum.default_family_size(p, args.H)
        stream = Stream(args.seed, p, FAMILY_STREAM)
        fam = charsum.SpacedFamily(p, args.H, tuple(charsum.random_spaced_points(p, args.H, J, stream.randint)))
    return charsum.moment_report(fam, args.r, args.eps, family=args.family).as_dict()


def cmd_pv(args) -> dict:
    p = check_modulus(args.p)
    m = charsum.polya_vinogradov_max(p)
    budget = charsum.polya_vinogradov_budget(p)
    return {"p": p, "max_interval_sum": m, "budget": budget, "within_budget": m <= budget}


def _fit_dict(fit) -> Optional[dict]:
    return None if fit is None else asdict(fit)


def cmd_scan(args) -> dict:
    cfg = scan.ScanConfig(
        prime_lo=args.pmin, prime_hi=args.pmax, primes_per_decade=args.per_decade,
        primes=args.primes, curves_per_prime=args.curves, seed=args.seed,
        workers=args.threads, output=args.out, timing=args.timing,
    )
    records, summary = scan.run_minbox_scan(cfg)
    return {
        "out": args.out,
        "records": len(records),
        "per_prime": [asdict(s) for s in summary],
        "fit": _fit_dict(scan.fit_summary(summary)),
    }


def cmd_fit(args) -> dict:
    summary = scan.summarize(scan.read_records(args.inp))
    fit = scan.fit_summary(summary)
    if fit is None:
        raise UsageError(f"{args.inp}: need records for at least two distinct primes")
    return {"per_prime": [asdict(s) for s in summary], "fit": asdict(fit)}


def _human(cmd: str, out: dict) -> str:
    if cmd == "condition":
        s = out["symbols"]
        return (
            f"(-3/p)={s['minus3']} (a/p)={s['a']} (u/p)={s['u']} "
            f"((a u^3 + 4 c u - 4 v)/p)={s['cubic']}\n"
            f"condition = {out['value']}\ndifference_rhs = {out['difference_rhs']}"
        )
    if cmd == "detect":
        return _witness_text(out["witness"]) if out["found"] else "none"
    if cmd == "minbox":
        return f"h_min = {out['h_min']}\n{_witness_text(out['witness'])}"
    if cmd in ("scan", "fit"):
        lines = [f"{s['p']}\th_worst={s['h_worst']}\tcurves={s['curves']}" for s in out["per_prime"]]
        fit = out["fit"]
        if fit is None:
            lines.append("fit: undefined (fewer than two primes)")
        else:
            lines.append(
                f"fit: slope={fit['slope']:.6f} intercept={fit['intercept']:.6f} "
                f"r_squared={fit['r_squared']:.6f} n_points={fit['n_points']}"
            )
        return "\n".join(lines)
    return "\n".join(f"{k} = {v}" for k, v in out.items())


def _flatten(out: dict) -> dict:
    flat = {}
    for k, v in out.items():
        if isinstance(v, dict):
            for kk, vv in v.items():
                flat[f"{k}_{kk}"] = vv
        elif isinstance(v, list):
            flat[k] = json.dumps(v)
        else:
            flat[k] = v
    return flat


def _render(cmd: str, out: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(out)
    if fmt == "csv":
        if cmd in ("scan", "fit"):
            rows = out["per_prime"]
            header = ["p", "h_worst", "curves"]
        else:
            rows = [_flatten(out)]
            header = list(rows[0])
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=header, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
        return buf.getvalue().rstrip("\n")
    return _human(cmd, out)


def build_parser() -> argparse.ArgumentParser:
    fmt = _Parser(add_help=False)
    fmt.add_argument("--format", choices=["human", "json", "csv"], default=argparse.SUPPRESS)

    parser = _Parser(prog="modcubic", parents=[fmt], description="Two points of a modular cubic in a small box.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    def curve_args(sp, with_c=True):
        sp.add_argument("--p", type=int, required=True)
        sp.add_argument("--a", type=int, required=True)
        if with_c:
            sp.add_argument("--c", type=int, default=0)

    sp = sub.add_parser("normalize", parents=[fmt], help="reduce a general cubic")
    curve_args(sp, with_c=False)
    for name in ("b", "c", "d"):
        sp.add_argument(f"--{name}", type=int, default=0)
    sp.set_defaults(func=cmd_normalize)

    sp = sub.add_parser("condition", parents=[fmt], help="pair criterion for offsets (u, v)")
    curve_args(sp)
    sp.add_argument("--u", type=int, required=True)
    sp.add_argument("--v", type=int, required=True)
    sp.set_defaults(func=cmd_condition)

    sp = sub.add_parser("detect", parents=[fmt], help="two curve points in some HxH box?")
    curve_args(sp)
    sp.add_argument("--H", type=int, required=True)
    sp.add_argument("--brute", action="store_true")
    sp.set_defaults(func=cmd_detect)

    sp = sub.add_parser("minbox", parents=[fmt], help="minimal box side")
    curve_args(sp)
    sp.add_argument("--brute", action="store_true")
    sp.set_defaults(func=cmd_minbox)

    sp = sub.add_parser("charsum", parents=[fmt], help="moment of a spaced family")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--H", type=int, required=True)
    sp.add_argument("--r", type=int, default=3)
    sp.add_argument("--eps", type=float, default=0.1)
    sp.add_argument("--family", choices=["random", "curve"], default="random")
    sp.add_argument("--count", type=int, default=None)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--a", type=int, default=1)
    sp.add_argument("--c", type=int, default=0)
    sp.set_defaults(func=cmd_charsum)

    sp = sub.add_parser("pv", parents=[fmt], help="largest interval sum of the Legendre symbol")
    sp.add_argument("--p", type=int, required=True)
    sp.set_defaults(func=cmd_pv)

    sp = sub.add_parser("scan", parents=[fmt], help="minimal box sides across primes")
    sp.add_argument("--pmin", type=int, default=1000)
    sp.add_argument("--pmax", type=int, default=10**6)
    sp.add_argument("--per-decade", type=int, default=14)
    sp.add_argument("--primes", type=int, nargs="+", default=None)
    sp.add_argument("--curves", type=int, default=50)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--threads", type=int, default=scan.default_workers())
    sp.add_argument("--timing", action="store_true", help="record per-curve microseconds (breaks byte-reproducibility)")
    sp.add_argument("--out", required=True)
    sp.set_defaults(func=cmd_scan)

    sp = sub.add_parser("fit", parents=[fmt], help="fit the growth exponent of a records file")
    sp.add_argument("--in", dest="inp", required=True)
    sp.set_defaults(func=cmd_fit)
    return parser


def run(argv: List[str], stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        out = args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_USAGE
    except DomainError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_DOMAIN
    except OSError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_IO
    except SystemExit as exc:  # --help
        return EXIT_OK if not exc.code else EXIT_USAGE
    print(_render(args.command, out, getattr(args, "format", "human")), file=stdout)
    return EXIT_OK


def main() -> None:
    sys.exit(run(sys.argv[1:]))
