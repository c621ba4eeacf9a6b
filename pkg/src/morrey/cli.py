"""Command-line front end.

Examples::

    morrey norm discrete --p 1 --q 2 --d 1 --input x.json --exact
    morrey norm continuous --p 1 --q 2 --mode local --fn f.json
    morrey constants eval --functional nj --space discrete --p 1 --q 2 --x a.json --y b.json
    morrey constants search --functional dw --space discrete --p 1 --q 2 --budget 10000 --seed 7
    morrey reproduce thm2 --p 1 --q 2 --d 3 --exact --format json

Exit codes: 0 success, 2 bad input or precondition, 3 divergent or unbounded
norm, 4 envelope violation, 5 reproduction check failure.
"""
from __future__ import annotations

import argparse
import sys
import time
from fractions import Fraction

from . import serialize
from .constants import (
    FUNCTIONALS,
    Continuous1DSpace,
    DiscreteSpace,
    LocalRadialSpace,
    assert_envelopes,
    evaluate,
    search_lower_bound,
)
from .errors import Divergent, MorreyError, Unbounded
from .lattice import discrete_norm
from .params import MorreyParams, format_scalar
from .radial import OptimizerConfig, global_norm_1d, local_norm_radial
from .reproduce import (
    NORM_TOL,
    THM1_R_GRID,
    reproduce_dw_curve,
    reproduce_local_remark,
    reproduce_thm1,
    reproduce_thm2,
)
from .witnesses import DW_R_GRID

EXIT_INPUT = 2
EXIT_DIVERGENT = 3
EXIT_ENVELOPE = 4
EXIT_CHECKS = 5


def _number(text: str):
    try:
        v = Fraction(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if v.denominator == 1:
        return int(v)
    return float(v)


def _r_list(text: str):
    try:
        rs = [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad r list: {text!r}")
    if not rs:
        raise argparse.ArgumentTypeError("empty r list")
    return rs


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("human", "json", "csv"), default="human")
    exps = argparse.ArgumentParser(add_help=False)
    exps.add_argument("--p", type=_number, required=True)
    exps.add_argument("--q", type=_number, required=True)

    parser = argparse.ArgumentParser(prog="morrey", description="Morrey norms and geometric constants.")
    top = parser.add_subparsers(dest="command", required=True)

    norm = top.add_parser("norm", help="evaluate a norm").add_subparsers(dest="kind", required=True)
    nd = norm.add_parser("discrete", parents=[common, exps])
    nd.add_argument("--d", type=int, default=1)
    nd.add_argument("--input", required=True)
    nd.add_argument("--exact", action="store_true")
    nc = norm.add_parser("continuous", parents=[common, exps])
    nc.add_argument("--mode", choices=("global1d", "local"), default="global1d")
    nc.add_argument("--fn", required=True)
    nc.add_argument("--tol", type=float, default=1e-8)

    const = top.add_parser("constants", help="geometric functionals").add_subparsers(dest="action", required=True)
    ce = const.add_parser("eval", parents=[common, exps])
    ce.add_argument("--functional", choices=FUNCTIONALS, required=True)
    ce.add_argument("--space", choices=("discrete", "continuous", "local"), default="discrete")
    ce.add_argument("--d", type=int, default=1)
    ce.add_argument("--x", required=True)
    ce.add_argument("--y", required=True)
    ce.add_argument("--exact", action="store_true")
    ce.add_argument("--tol", type=float, default=1e-8)
    cs = const.add_parser("search", parents=[common, exps])
    cs.add_argument("--functional", choices=FUNCTIONALS, required=True)
    cs.add_argument("--space", choices=("discrete",), default="discrete")
    cs.add_argument("--d", type=int, default=1)
    cs.add_argument("--budget", type=int, default=10_000)
    cs.add_argument("--seed", type=int, default=0)

    rep = top.add_parser("reproduce", help="witness reproduction reports").add_subparsers(dest="target", required=True)
    r1 = rep.add_parser("thm1", parents=[common, exps])
    r1.add_argument("--tol", type=float, default=NORM_TOL)
    r1.add_argument("--r", type=_r_list, default=list(THM1_R_GRID))
    r1.add_argument("--seed", type=int, default=0)
    r2 = rep.add_parser("thm2", parents=[common, exps])
    r2.add_argument("--d", type=int, default=1)
    r2.add_argument("--exact", action="store_true")
    r2.add_argument("--n", type=int, default=None)
    r2.add_argument("--r", type=_r_list, default=list(DW_R_GRID))
    rc = rep.add_parser("dw-curve", parents=[common, exps])
    rc.add_argument("--space", choices=("discrete", "continuous"), required=True)
    rc.add_argument("--d", type=int, default=1)
    rc.add_argument("--r", type=_r_list, default=list(DW_R_GRID))
    rc.add_argument("--exact", action="store_true")
    rl = rep.add_parser("local-remark", parents=[common, exps])
    rl.add_argument("--d", type=int, default=1)
    rl.add_argument("--r", type=_r_list, default=list(THM1_R_GRID))
    return parser


def _cmd_norm(args):
    if args.kind == "discrete":
        params = MorreyParams(args.p, args.q, args.d)
        x = serialize.sequence_from_json(serialize.load_json(args.input), exact=args.exact)
        res = discrete_norm(x, params, exact=args.exact)
        payload = {
            "schema": "1",
            "kind": "discrete",
            "params": params.as_dict(),
            "exact": args.exact,
            "value": res.value,
            "exact_value": format_scalar(res.exact) if res.exact is not None else None,
            "window": res.window.as_dict() if res.window else None,
        }
        return payload, 0
    f = serialize.fn_from_json(serialize.load_json(args.fn))
    params = MorreyParams(args.p, args.q, f.d)
    if args.mode == "global1d":
        est = global_norm_1d(f, params, OptimizerConfig(tol=args.tol))
    else:
        est = local_norm_radial(f, params)
    return {"schema": "1", "kind": "continuous", "mode": args.mode, "params": params.as_dict(), **est.as_dict()}, 0


def _space(args):
    if args.space == "discrete":
        return DiscreteSpace(MorreyParams(args.p, args.q, args.d), exact=getattr(args, "exact", False))
    if args.space == "continuous":
        return Continuous1DSpace(MorreyParams(args.p, args.q, 1), OptimizerConfig(tol=args.tol))
    return LocalRadialSpace(MorreyParams(args.p, args.q, args.d))


def _cmd_constants(args):
    space = _space(args)
    if args.action == "eval":
        exact = getattr(args, "exact", False)
        x = serialize.vector_from_json(serialize.load_json(args.x), exact=exact)
        y = serialize.vector_from_json(serialize.load_json(args.y), exact=exact)
        report = evaluate(args.functional, x, y, space)
    else:
        report = search_lower_bound(space, args.functional, args.budget, args.seed)
    ok = assert_envelopes(report, space)
    payload = {**report.to_json(), "space": space.describe(), "envelope_ok": ok}
    return payload, 0 if ok else EXIT_ENVELOPE


def _cmd_reproduce(args):
    if not args.p < args.q:
        raise MorreyError(f"the witness constructions need p < q, got p={args.p}, q={args.q}")
    if args.target == "thm1":
        report = reproduce_thm1(args.p, args.q, tol=args.tol, rs=args.r, seed=args.seed)
    elif args.target == "thm2":
        report = reproduce_thm2(MorreyParams(args.p, args.q, args.d), exact=args.exact, rs=args.r, n=args.n)
    elif args.target == "dw-curve":
        report = reproduce_dw_curve(args.space, MorreyParams(args.p, args.q, args.d), rs=args.r, exact=args.exact)
    else:
        report = reproduce_local_remark(MorreyParams(args.p, args.q, args.d), rs=args.r)
    return report.to_json(), 0 if report.passed else EXIT_CHECKS


def _human(payload: dict) -> str:
    if "checks" in payload:
        lines = [f"{payload['theorem']}  params={payload['params']}  settings={payload['settings']}"]
        lines += [f"  note: {n}" for n in payload["notes"]]
        for c in payload["checks"]:
            tag = ("PASS" if c["passed"] else "FAIL") if c["gate"] else "INFO"
            shown = c["exact_value"] if c["exact_value"] is not None else c["value"]
            lines.append(f"  [{tag}] {c['name']}: {shown} (expected {c['expected']}, tol {c['tolerance']:g})")
        lines.append("ALL PASS" if payload["passed"] else "FAILED")
        return "\n".join(lines)
    if "functional" in payload:
        lines = [f"{payload['functional']} = {payload['exact'] or payload['value']}  (tolerance {payload['tolerance']:g})"]
        lines += [f"  {k} = {v}" for k, v in payload["trace"].items()]
        lines.append(f"  envelope {'ok' if payload['envelope_ok'] else 'VIOLATED'}")
        return "\n".join(lines)
    shown = payload.get("exact_value") or payload["value"]
    where = payload.get("window") or payload.get("witness")
    extra = f"  tolerance {payload['tolerance']:g}" if "tolerance" in payload else ""
    limit = f"  (limit {payload['limit']})" if payload.get("limit") else ""
    return f"norm = {shown}\n  maximizer: {where}{limit}{extra}"


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    start = time.perf_counter()
    handler = {"norm": _cmd_norm, "constants": _cmd_constants, "reproduce": _cmd_reproduce}[args.command]
    try:
        payload, code = handler(args)
    except (Divergent, Unbounded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DIVERGENT
    except MorreyError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.format == "json":
        print(serialize.dumps(payload))
    elif args.format == "csv":
        sys.stdout.write(serialize.to_csv(payload))
    else:
        print(_human(payload))
        print(f"({time.perf_counter() - start:.2f} s)")
    return code


if __name__ == "__main__":
    sys.exit(main())
