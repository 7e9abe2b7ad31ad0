"""Command line front end.

Subcommands: `weights` dumps the quadrature weights as CSV, `stability`
writes symbol samples as CSV and a JSON verdict to stdout, `solve` runs one
configuration from a JSON file and writes the final-time solution, and
`converge` runs a refinement study and writes its JSON report.  All CSV
floats carry 17 significant digits so they parse back bit-identically.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys

from .harness import ExperimentConfig, example1_problem, run_convergence_study
from .stability import ContourSpec, boundary_locus, sector_check_tau8
from .timestepper import ConfigurationError, solve_corrected, solve_standard
from .weights import SchemeParams, weights_explicit

_FMT = "%.17g"


def _fmt(x: float) -> str:
    return _FMT % x


def cmd_weights(args) -> int:
    params = SchemeParams(k=args.k, alpha=args.alpha)
    seq = weights_explicit(params, args.terms)
    with open(args.out, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["j", "omega"])
        for j, w in enumerate(seq.omegas):
            writer.writerow([j, _fmt(w)])
    return 0


def cmd_stability(args) -> int:
    params = SchemeParams(k=args.k, alpha=args.alpha)
    if args.method == "locus":
        report = boundary_locus(params, n_phi=args.samples, truncation_M=args.trunc)
    else:
        contour = ContourSpec(theta=0.55 * math.pi, kappa=0.5, tau=0.1,
                              n_ray=max(2, args.samples // 3),
                              n_arc=max(3, args.samples // 3))
        report = sector_check_tau8(params, contour)
    with open(args.out, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["re_point", "im_point", "re_value", "im_value", "arg"])
        for point, value, arg in report.samples:
            writer.writerow([_fmt(point.real), _fmt(point.imag),
                             _fmt(value.real), _fmt(value.imag), _fmt(arg)])
    summary = {
        "k": params.k,
        "alpha": params.alpha,
        "method": report.method,
        "theta0_estimate": report.theta0_estimate,
        "contained": report.contained,
        "samples": len(report.samples),
    }
    if report.truncation is not None:
        summary["truncation"] = report.truncation
        summary["tail_bound"] = report.tail_bound
    json.dump(summary, sys.stdout)
    sys.stdout.write("\n")
    return 0


def cmd_solve(args) -> int:
    with open(args.config) as fh:
        cfg = json.load(fh)
    problem_name = cfg.get("problem", "example1")
    if problem_name != "example1":
        raise ConfigurationError(f"unknown problem {problem_name!r}")
    scheme = cfg.get("scheme", "corrected")
    if scheme not in ("standard", "corrected"):
        raise ConfigurationError(f"unknown scheme {scheme!r}")
    problem = example1_problem(
        alpha=float(cfg["alpha"]),
        k=int(cfg["k"]),
        P=int(cfg["nodes"]),
        N=int(cfg["N"]),
        T=float(cfg.get("T", 1.0)),
    )
    solve = solve_corrected if scheme == "corrected" else solve_standard
    history = solve(problem)
    x = problem.operator.grid.interior
    with open(args.out, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["x", "u"])
        for xi, ui in zip(x, history.u_final):
            writer.writerow([_fmt(xi), _fmt(ui)])
    return 0


def cmd_converge(args) -> int:
    n_list = tuple(int(s) for s in args.n_list.split(","))
    norm = {"cc": "clenshaw_curtis", "rms": "rms"}[args.norm]
    cfg = ExperimentConfig(k=args.k, alpha=args.alpha, N_list=n_list,
                           P=args.nodes, scheme=args.scheme, norm=norm)
    report = run_convergence_study(cfg)
    payload = {
        "k": cfg.k,
        "alpha": cfg.alpha,
        "scheme": cfg.scheme,
        "norm": cfg.norm,
        "nodes": cfg.P,
        "N_list": list(cfg.N_list),
        "errors": list(report.diff_norms),
        "rates": [r if math.isfinite(r) else None for r in report.rates],
        "floor_flags": list(report.floor_flags),
        "theoretical_order": report.theoretical_order,
    }
    with open(args.out, "w") as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")
    json.dump({"mean_rate": report.mean_rate, "final_rate": report.final_rate},
              sys.stdout)
    sys.stdout.write("\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lksub",
        description="High-order convolution-quadrature subdiffusion toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("weights", help="dump quadrature weights to CSV")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--terms", type=int, default=100)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_weights)

    p = sub.add_parser("stability", help="sector containment check")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--method", choices=["locus", "tau8"], default="locus")
    p.add_argument("--samples", type=int, default=64)
    p.add_argument("--trunc", type=int, default=200000)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_stability)

    p = sub.add_parser("solve", help="run one configuration from JSON")
    p.add_argument("--config", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("converge", help="refinement study")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--scheme", choices=["standard", "corrected"], default="corrected")
    p.add_argument("--n-list", required=True)
    p.add_argument("--nodes", type=int, default=64)
    p.add_argument("--norm", choices=["cc", "rms"], default="cc")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_converge)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
