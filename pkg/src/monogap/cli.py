"""``monogap`` command line.

Exit codes:

* 0  success (certify: Member; transport: identity holds; --verify: report checks out)
* 1  transport identity fails, or a report fails re-verification
* 2  bad arguments or unparsable input
* 3  certify: order excluded
* 4  certify: undecided (Unknown)
* 5  mclass: premise violated
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from .gap_classifier import Status, classify, classify_order
from .hadamard_transport import affine_transport_loewner
from .hankel_moments import moment_flags
from .mclass_cert import PRESETS, PremiseError, build_certificate, preset_inputs
from .mono_sampler import DEFAULT_TOL, falsify_monotone
from .ratpoly import RatPoly, format_rat, standard_gap_poly
from .realroots import Interval
from . import report as rp

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_EXCLUDED, EXIT_UNKNOWN, EXIT_PREMISE = 0, 1, 2, 3, 4, 5


class UsageError(Exception):
    pass


def _poly(text: str) -> RatPoly:
    try:
        return RatPoly.parse(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _rat(text: str, what: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"bad rational for {what}: {text!r}") from None


def _rat_list(text: str, what: str) -> list[Fraction]:
    return [_rat(x.strip(), what) for x in text.split(",") if x.strip()]


def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError("missing " + ", ".join("--" + m.replace("_", "-") for m in missing))


# -- commands: each returns (inputs, results, exit code, text lines) ------

def cmd_certify(args):
    _need(args, "poly", "n")
    f = _poly(args.poly)
    hint = None if args.alpha_hint is None else _rat(args.alpha_hint, "--alpha-hint")
    rec = classify_order(f, args.n, hint)
    res = {"order": rp.order_status_json(rec)}
    lines = [f"f = {f}", f"n = {args.n}: {rec.status.value}"]
    if rec.status is Status.MEMBER:
        if rec.alpha is None:
            lines.append("alpha unbounded (nondecreasing affine)")
        else:
            lines.append(f"alpha >= {format_rat(rec.alpha)} (~{float(rec.alpha):.6g})")
        code = EXIT_OK
    else:
        code = EXIT_EXCLUDED if rec.status.excluded else EXIT_UNKNOWN
    if rec.note:
        lines.append(rec.note)
    inputs = {"poly": f.to_text(), "n": args.n, "alpha_hint": None if hint is None else format_rat(hint)}
    return inputs, res, code, lines


def cmd_gaps(args):
    if args.preset:
        f = standard_gap_poly(PRESETS[args.preset]["n"])
    else:
        _need(args, "poly")
        f = _poly(args.poly)
    try:
        v = classify(f, args.nmax)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    res = {"per_n": [rp.order_status_json(r) for r in v.per_n],
           "gap": None if v.gap is None else {"n": v.gap[0], "alpha": rp.rat(v.gap[1])}}
    lines = [f"f = {f}"]
    for r in v.per_n:
        extra = "" if r.alpha is None else f"  alpha >= {float(r.alpha):.6g}"
        lines.append(f"  n={r.n}: {r.status.value}{extra}")
    if v.gap is None:
        lines.append("no gap located")
    else:
        a = "unbounded" if v.gap[1] is None else f"{float(v.gap[1]):.6g}"
        lines.append(f"gap at n={v.gap[0]} (alpha >= {a})")
    return {"poly": f.to_text(), "nmax": len(v.per_n)}, res, EXIT_OK, lines


def cmd_mclass(args):
    if args.preset:
        f, n, a, p, nodes = preset_inputs(args.preset)
    else:
        _need(args, "poly", "n", "a", "p", "nodes")
        f, n, a = _poly(args.poly), args.n, _rat(args.a, "--a")
        p, nodes = _poly(args.p), _rat_list(args.nodes, "--nodes")
    inputs = {"preset": args.preset, "poly": f.to_text(), "n": n, "a": format_rat(a),
              "p": p.to_text(), "nodes": [format_rat(x) for x in nodes]}
    try:
        cert = build_certificate(f, n, a, p, nodes)
    except PremiseError as exc:
        return inputs, {"error": str(exc)}, EXIT_PREMISE, [f"premise violated: {exc}"]
    res = rp.mclass_json(cert)
    lines = [f"f = {f}, n = {n}, a = {format_rat(a)}", f"p = {p}",
             f"sum a_k f(l_k) = {format_rat(cert.sum_value)} (~{float(cert.sum_value):.6g})"]
    if not cert.premise.all_ok:
        lines.append("premise flags failed: " + ", ".join(cert.premise.failures()))
        return inputs, res, EXIT_PREMISE, lines
    lines.append("f is NOT in M_n([0, a])" if cert.falsifies else "no conclusion (sum >= 0)")
    return inputs, res, EXIT_OK, lines


def cmd_moments(args):
    _need(args, "poly", "n")
    f = _poly(args.poly)
    rep = moment_flags(f, args.n)
    lines = [f"b = [{', '.join(format_rat(x) for x in rep.b)}]",
             f"PD={rep.pd} PSD={rep.psd} hankel_rank={rep.hankel_rank} rank={rep.matrix_rank}",
             *rep.claims]
    return {"poly": f.to_text(), "n": args.n}, rp.moments_json(rep), EXIT_OK, lines


def cmd_falsify(args):
    _need(args, "poly", "n", "interval")
    f = _poly(args.poly)
    ends = _rat_list(args.interval, "--interval")
    if len(ends) != 2 or ends[0] >= ends[1]:
        raise UsageError("--interval needs lo,hi with lo < hi")
    I = Interval.closed(*ends)
    rep = falsify_monotone(f, args.n, I, args.trials, args.seed, args.tol)
    lines = [f"{rep.trials} trials on {I}, seed {rep.seed}"]
    if rep.found:
        lines.append(f"violation at trial {rep.trial}: lambda_min = {rep.counterexample[2]:.6g}")
    else:
        lines.append("no violation found")
    inputs = {"poly": f.to_text(), "n": args.n, "interval": [format_rat(x) for x in ends],
              "trials": args.trials, "seed": args.seed, "tol": args.tol}
    return inputs, rp.sampler_json(rep), EXIT_OK, lines


def cmd_transport(args):
    _need(args, "poly", "n", "slope")
    f = _poly(args.poly)
    s, c, t0 = _rat(args.slope, "--slope"), _rat(args.shift, "--shift"), _rat(args.t0, "--t0")
    if s == 0:
        raise UsageError("--slope must be nonzero")
    holds = affine_transport_loewner(f, args.n, s, c, t0)
    inputs = {"poly": f.to_text(), "n": args.n, "slope": format_rat(s),
              "shift": format_rat(c), "t0": format_rat(t0)}
    lines = [f"M_n(f o g; t0) == M_n(f; g(t0)) o (s^(i+j-1)): {holds}"]
    return inputs, {"holds": holds}, EXIT_OK if holds else EXIT_FAIL, lines


COMMANDS = {
    "certify": cmd_certify,
    "gaps": cmd_gaps,
    "mclass": cmd_mclass,
    "moments": cmd_moments,
    "falsify": cmd_falsify,
    "transport": cmd_transport,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="monogap", description="Exact tests for matrix monotonicity of polynomials.")
    ap.add_argument("--json", action="store_true", help="emit a JSON report")
    ap.add_argument("--verify", metavar="FILE", help="re-verify a saved JSON report")
    sub = ap.add_subparsers(dest="command")

    def poly_cmd(name, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--poly", help='coefficients low to high, e.g. "0,1,0,1/3"')
        p.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
        return p

    p = poly_cmd("certify", "certify or exclude order n")
    p.add_argument("--n", type=int)
    p.add_argument("--alpha-hint")
    p = poly_cmd("gaps", "classify orders 1..nmax and locate the gap")
    p.add_argument("--nmax", type=int)
    p.add_argument("--preset", choices=sorted(PRESETS), help="use g_n from a preset")
    p = poly_cmd("mclass", "partial-fraction certificate against M_n([0, a])")
    p.add_argument("--preset", choices=sorted(PRESETS))
    p.add_argument("--n", type=int)
    p.add_argument("--a")
    p.add_argument("--p", help="test polynomial p, same text format")
    p.add_argument("--nodes", help="comma-separated nodes")
    p = poly_cmd("moments", "Hankel moment flags at the origin")
    p.add_argument("--n", type=int)
    p = poly_cmd("falsify", "random search for order violations")
    p.add_argument("--n", type=int)
    p.add_argument("--interval", help="lo,hi")
    p.add_argument("--trials", type=int, default=10**4)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p = poly_cmd("transport", "check the affine Loewner transport identity")
    p.add_argument("--n", type=int)
    p.add_argument("--slope")
    p.add_argument("--shift", default="0")
    p.add_argument("--t0", default="0")
    return ap


def _verify_file(path: str, as_json: bool) -> int:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        print(f"monogap: cannot read report: {exc}", file=sys.stderr)
        return EXIT_USAGE
    ok, problems = rp.verify_report(data)
    if as_json:
        print(json.dumps({"verified": ok, "problems": problems}, indent=2))
    else:
        print("report verified" if ok else "report FAILED verification")
        for msg in problems:
            print("  " + msg)
    return EXIT_OK if ok else EXIT_FAIL


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.verify:
        return _verify_file(args.verify, args.json)
    if args.command is None:
        ap.print_help(sys.stderr)
        return EXIT_USAGE
    start = time.perf_counter()
    try:
        inputs, results, code, lines = COMMANDS[args.command](args)
    except (UsageError, ValueError) as exc:
        print(f"monogap {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    elapsed = time.perf_counter() - start
    if args.json:
        print(json.dumps(rp.make_report(args.command, inputs, results, elapsed), indent=2))
    else:
        print("\n".join(lines))
    return code


if __name__ == "__main__":
    sys.exit(main())
