"""Command-line experiment runner.

Every subcommand calls one library operation and serialises its result:
CSV for tables, JSON for reports.  Rationals are always printed as p/q.

Exit codes: 0 ok, 1 a check failed, 2 usage or parse error, 3 budget exceeded.
"""

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction

from . import acceptance
from .curves import (
    AdversarialParams,
    CurveSpec,
    WitnessMap,
    adversarial_collapse_check,
    cdim_witness_check,
    exp_graph_check,
    xs_dimension,
)
from .detmethod import (
    build_matrix,
    certify_bounds,
    degree_budget,
    det_fraction_free,
    graph_function,
    kernel_hypersurface,
    sample_fiber,
    seeded_rng,
    verify_vanishing,
)
from .errors import BudgetExceeded, CdimError, ParseError
from .groebner import IdealBasis, a_estimate, buchberger, hilbert_fn
from .monomials import dm_parameters, enumerate_grevlex, ve_ratio_table, ve_table_csv
from .polys import MultiPoly
from .series import LaurentPoly

EXIT_OK, EXIT_CHECK, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _int_range(text):
    """'1..5' or '3' -> list of ints."""
    text = str(text)
    if ".." in text:
        lo, hi = text.split("..", 1)
        return list(range(int(lo), int(hi) + 1))
    return [int(text)]


def _int_list(text):
    if isinstance(text, (list, tuple)):
        return [int(v) for v in text]
    return [int(v) for v in str(text).split(",") if v.strip()]


def _curve(args):
    if isinstance(args.curve, dict):
        return CurveSpec.from_dict(args.curve)
    if args.curve == "exp":
        return CurveSpec.exp_graph()
    return CurveSpec.algebraic(MultiPoly.parse(args.curve, ("x", "y")))


def _csv(header, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([str(v) if isinstance(v, Fraction) else v for v in r])
    return buf.getvalue()


def _json(obj):
    return json.dumps(obj, indent=2, sort_keys=True, default=str) + "\n"


# ---------------------------------------------------------------------------
# subcommands: each returns (text, extension, ok)


def cmd_params(args):
    if args.d_max < 1:
        raise UsageError("--d-max must be >= 1")
    dm_parameters(args.n, args.m, 1)
    return ve_table_csv(ve_ratio_table(args.n, args.m, args.d_max)), "csv", True


def cmd_hilbert(args):
    names = tuple(v.strip() for v in args.vars.split(","))
    gens = [MultiPoly.parse(g, names) for g in args.gens.split(";") if g.strip()]
    gb = buchberger(IdealBasis.of(gens), budget=args.budget)
    n = len(names)
    rows = []
    for r in range(args.r_min, args.r_max + 1):
        rec = hilbert_fn(gb, r, n)
        ratios = [a_estimate(gb, i, r, n) if r >= 1 and rec.H else "" for i in range(n)]
        rows.append([r, rec.H] + list(rec.sigma) + ratios)
    header = ["r", "H"] + [f"sigma_{v}" for v in names] + [f"a_{v}" for v in names]
    return _csv(header, rows), "csv", True


def cmd_detmethod(args):
    curve = _curve(args)
    g = graph_function(curve, args.exp_terms)
    rng = seeded_rng(args.seed)
    p = dm_parameters(2, 1, args.d)
    exps = enumerate_grevlex(2, args.d)
    trials = []
    ok = True
    for k in range(args.trials):
        center, pts = sample_fiber(g, p.mu, args.rho, rng, u_degree=args.u_degree)
        M = build_matrix(pts, exps)
        rep = det_fraction_free(M, args.rho, p.e)
        verdict = certify_bounds(rep, args.rho, p.e, degree_budget=degree_budget(pts, exps))
        entry = {
            "trial": k,
            "center": str(center),
            "points": [[str(x), str(y)] for x, y in pts],
            "det": rep.to_dict(),
            "verdict": verdict.to_dict(),
        }
        if verdict.verdict == "forced_zero":
            H = kernel_hypersurface(M)
            entry["hypersurface"] = H.to_dict()
            entry["vanishes"] = verify_vanishing(H, pts)
            ok = ok and entry["vanishes"]
        ok = ok and rep.lower_bound_ok and verdict.verdict != "violation"
        trials.append(entry)
    report = {
        "curve": curve.to_dict(),
        "parameters": {"n": 2, "m": 1, "d": p.d, "mu": p.mu, "r": p.r, "V": p.V, "e": p.e},
        "rho": args.rho,
        "seed": args.seed,
        "trials": trials,
    }
    return _json(report), "json", ok


def cmd_xsdim(args):
    curve = _curve(args)
    rows = []
    for s in _int_range(args.s):
        try:
            rows.append([s, xs_dimension(curve, s, budget=args.budget)])
        except BudgetExceeded:
            rows.append([s, "budget_exceeded"])
    return _csv(["s", "dim"], rows), "csv", True


def _witness_map(args):
    if args.map == "x":
        return WitnessMap.projection(0)
    if args.map == "y":
        return WitnessMap.projection(1)
    comps = [c for c in args.map.split(";") if c.strip()]
    return WitnessMap(tuple(MultiPoly.parse(c, ("x", "y")) for c in comps))


def cmd_cdim(args):
    curve = _curve(args)
    wmap = _witness_map(args)
    out = []
    for s in _int_range(args.s):
        e = args.e if args.e is not None else -(-s // max(curve.poly.total_degree(), 1))
        rep = cdim_witness_check(curve, s, wmap, e, probes=args.probes, seed=args.seed,
                                 budget=args.budget)
        out.append(rep.to_dict())
    return _json(out), "json", True


def cmd_adversarial(args):
    params = AdversarialParams(_int_list(args.N), _int_list(args.F),
                               args.truncation or len(_int_list(args.N)))
    reports = []
    ok = True
    for e in _int_range(args.e):
        rep = adversarial_collapse_check(params, args.index, args.s, e)
        reports.append(rep.to_dict())
        if rep.precondition_ok:
            ok = ok and rep.collapsed
    return _json({"N": list(params.N_seq), "F": list(params.F_vals),
                  "truncation": params.truncation, "reports": reports}), "json", ok


def cmd_expgraph(args):
    samples = [LaurentPoly.parse(x) for x in args.samples.split(";") if x.strip()]
    scalings = [Fraction(v) for v in args.scalings.split(",") if v.strip()] if args.scalings else []
    rep = exp_graph_check(args.s, args.prec, samples, scalings)
    ok = all(c.get("scaling_commutes", True) for c in rep.certificates)
    return _json(rep.to_dict()), "json", ok


def cmd_verify(args):
    results = acceptance.run_all(strict=args.strict, stream=sys.stderr if args.out else sys.stdout)
    rows = [[r.number, r.name, "pass" if r.passed else "fail", r.detail] for r in results]
    ok = all(r.passed for r in results) and len(results) == len(acceptance.CRITERIA)
    return _csv(["criterion", "name", "status", "detail"], rows), "csv", ok


# ---------------------------------------------------------------------------
# parser


def build_parser():
    parser = argparse.ArgumentParser(prog="cdimkit", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON file with option defaults")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", help="directory for the report file (default: stdout)")
    common.add_argument("--strict", action="store_true", help="stop at the first failure")
    common.add_argument("--budget", type=int, default=100_000, help="Buchberger pair budget")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("params", parents=[common], help="V/e table of determinant-method parameters")
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--d-max", type=int, default=10)
    p.set_defaults(func=cmd_params)

    p = sub.add_parser("hilbert", parents=[common], help="Hilbert function and a-ratios of an ideal")
    p.add_argument("--gens", required=False, default="x^2", help="generators separated by ';'")
    p.add_argument("--vars", default="x,y,z")
    p.add_argument("--r-min", type=int, default=0)
    p.add_argument("--r-max", type=int, default=8)
    p.set_defaults(func=cmd_hilbert)

    p = sub.add_parser("detmethod", parents=[common], help="determinants at sampled fibre points")
    p.add_argument("--curve", default="y - x^2", help="'c*y - g(x)' or 'exp'")
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--rho", type=int, default=1)
    p.add_argument("--trials", type=int, default=5)
    p.add_argument("--u-degree", type=int, default=0)
    p.add_argument("--exp-terms", type=int, default=6)
    p.set_defaults(func=cmd_detmethod)

    p = sub.add_parser("xsdim", parents=[common], help="dimension of X_s over a range of s")
    p.add_argument("--curve", default="y - x^2")
    p.add_argument("--s", default="1..5", help="s or lo..hi")
    p.set_defaults(func=cmd_xsdim)

    p = sub.add_parser("cdim", parents=[common], help="counting-dimension witness checks")
    p.add_argument("--curve", default="y - x^2")
    p.add_argument("--s", default="1..4")
    p.add_argument("--e", type=int, default=None, help="default: ceil(s / deg F)")
    p.add_argument("--map", default="x", help="'x', 'y' or components separated by ';'")
    p.add_argument("--probes", type=int, default=2)
    p.set_defaults(func=cmd_cdim)

    p = sub.add_parser("adversarial", parents=[common], help="collapse checks for the adversarial series")
    p.add_argument("--N", default="1,7")
    p.add_argument("--F", default="2,3")
    p.add_argument("--truncation", type=int, default=None)
    p.add_argument("--index", type=int, default=1)
    p.add_argument("--s", type=int, default=None, help="default: smallest admissible height")
    p.add_argument("--e", default="1..7")
    p.set_defaults(func=cmd_adversarial)

    p = sub.add_parser("expgraph", parents=[common], help="tail certificates for exp at polynomial points")
    p.add_argument("--s", type=int, default=3)
    p.add_argument("--prec", type=int, default=8)
    p.add_argument("--samples", default="t", help="polynomials in t separated by ';'")
    p.add_argument("--scalings", default="", help="comma-separated nonzero scale factors")
    p.set_defaults(func=cmd_expgraph)

    p = sub.add_parser("verify", parents=[common], help="run the acceptance battery")
    p.set_defaults(func=cmd_verify)
    return parser


def _apply_config(parser, argv):
    """Re-parse with defaults taken from a --config JSON file, if any."""
    args = parser.parse_args(argv)
    if not args.config:
        return args
    with open(args.config) as fh:
        cfg = json.load(fh)
    params = dict(cfg.get("params", {}))
    for key in ("seed", "out", "strict"):
        if key in cfg:
            params[key] = cfg[key]
    if cfg.get("subcommand", args.command) != args.command:
        raise UsageError(f"config is for {cfg['subcommand']!r}, not {args.command!r}")
    sub = parser._subparsers._group_actions[0].choices[args.command]
    known = {a.dest for a in sub._actions}
    unknown = set(params) - known
    if unknown:
        raise UsageError(f"unknown config keys: {sorted(unknown)}")
    sub.set_defaults(**{k.replace("-", "_"): v for k, v in params.items()})
    return parser.parse_args(argv)


def _error(exc, code):
    payload = exc.to_dict() if isinstance(exc, CdimError) else {"error": "usage", "message": str(exc)}
    print(json.dumps(payload, sort_keys=True), file=sys.stderr)
    return code


def main(argv=None):
    parser = build_parser()
    try:
        args = _apply_config(parser, argv)
        text, ext, ok = args.func(args)
    except BudgetExceeded as exc:
        return _error(exc, EXIT_BUDGET)
    except (ParseError, UsageError, OSError, json.JSONDecodeError) as exc:
        return _error(exc, EXIT_USAGE)
    except CdimError as exc:
        code = EXIT_USAGE if isinstance(exc, ValueError) and exc.code in (
            "arity_mismatch", "invalid_arity", "unsupported_map") else EXIT_CHECK
        return _error(exc, code)
    except ValueError as exc:
        return _error(exc, EXIT_USAGE)
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        path = os.path.join(args.out, f"{args.command}.{ext}")
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK if ok else EXIT_CHECK


if __name__ == "__main__":
    sys.exit(main())
