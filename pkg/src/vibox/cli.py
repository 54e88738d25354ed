"""Command-line surface: solve, certify, report, list.

Reports are emitted to stdout as JSON with sorted keys so that identical
configurations produce byte-identical output; timing and diagnostics go to
stderr.  Problem arguments name either a builtin registry id or a problem
file (see problem_io for the file schema).
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from .certificates import (BudgetError, CertificateReport, boundary_sample_set, draw_samples,
                           block_pfunction_search, growth_l0lp_fit, hessian_block_convexity,
                           maximal_rank_tsearch, p_upsilon_check, pl_condition_check,
                           pmatrix_minors, principal_submatrix_sigma_sweep,
                           uniform_pfunction_search, uniform_pmatrix_sampled)
from .model import VIProblem, jacobian
from .normal_map import coercivity_probe
from .problem_io import ProblemFileError, load_problem
from .registry import REGISTRY, get_problem
from .solver import SolveConfig, multistart, solve

ALL_CONDITIONS = ("pmatrix", "uniform-pmatrix", "sigma-sweep", "pfunction",
                  "block-pfunction", "growth", "upsilon", "maximal-rank", "coercivity",
                  "pl", "block-convexity")
GAME_ONLY = ("upsilon", "pl", "block-convexity")

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NOT_SOLVED = 2
EXIT_FAIL = 2
EXIT_INCONCLUSIVE = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def resolve_problem(name):
    if name in REGISTRY:
        return get_problem(name), f"builtin:{name}"
    if Path(name).exists():
        return load_problem(name), str(name)
    raise KeyError(f"unknown problem id or file: {name!r}")


def _pmatrix_condition(p: VIProblem, seed, samples, radius) -> CertificateReport:
    """Exact minors test of the Jacobian at sampled points of K."""
    ss = draw_samples(p.set, samples, seed, radius)
    min_margin = np.inf
    for x in ss.points:
        rep = pmatrix_minors(jacobian(p, x))
        if rep.verdict == "fail":
            witness = dict(rep.witness, point=x.tolist())
            return CertificateReport("pmatrix", "fail", rep.margin, witness, seed,
                                     {"samples": ss.count}, rep.notes)
        min_margin = min(min_margin, rep.margin)
    return CertificateReport("pmatrix", "pass", float(min_margin), None, seed,
                             {"samples": ss.count},
                             "Jacobian is a P-matrix at every sample; sampled "
                             "surrogate, not a proof")


def _coercivity_condition(p: VIProblem, seed) -> CertificateReport:
    probe = coercivity_probe(p, seed=seed)
    slopes = [r.slope for r in probe.rays if r.slope is not None]
    margin = float(min(slopes)) if slopes else None
    budget = {"rays": len(probe.rays), "steps": len(probe.rays[0].radii)}
    if probe.verdict == "violation-witness":
        bad = next(r for r in probe.rays if r.verdict == "violation-witness")
        witness = {"direction": bad.direction.tolist(),
                   "norms": bad.norms.tolist(), "radii": bad.radii.tolist()}
        return CertificateReport("coercivity", "fail", margin, witness, seed, budget,
                                 "residual norm fails to grow along a ray")
    if probe.verdict == "coercive-evidence":
        return CertificateReport("coercivity", "pass", margin, None, seed, budget,
                                 "all rays show growing residual norms; sampled "
                                 "evidence, not a proof")
    return CertificateReport("coercivity", "inconclusive", margin, None, seed, budget,
                             "slopes below the evidence threshold on some ray")


def certify_problem(p: VIProblem, conditions=None, seed=42, samples=30, radius=10.0,
                    tol=1e-8):
    """Run the requested checkers; returns (reports, skipped) in request order."""
    conditions = list(conditions) if conditions else list(ALL_CONDITIONS)
    unknown = [c for c in conditions if c not in ALL_CONDITIONS]
    if unknown:
        raise KeyError(f"unknown condition ids: {unknown}")
    g = p.game
    reports, skipped = [], []
    for cond in conditions:
        if cond in GAME_ONLY and g is None:
            skipped.append(cond)
            continue
        try:
            if cond == "pmatrix":
                reports.append(_pmatrix_condition(p, seed, samples, radius))
            elif cond == "uniform-pmatrix":
                ss = draw_samples(p.set, samples, seed, radius)
                reports.append(uniform_pmatrix_sampled(p, ss))
            elif cond == "sigma-sweep":
                ss = draw_samples(p.set, samples, seed, radius)
                reports.append(principal_submatrix_sigma_sweep(p, ss))
            elif cond == "pfunction":
                reports.append(uniform_pfunction_search(
                    p, pairs=max(100, 4 * samples), seed=seed, radius=radius))
            elif cond == "block-pfunction":
                reports.append(block_pfunction_search(
                    p, pairs=max(100, 4 * samples), seed=seed, radius=radius))
            elif cond == "growth":
                reports.append(growth_l0lp_fit(
                    p, pairs=max(100, 4 * samples), seed=seed, radius=radius))
            elif cond == "upsilon":
                reports.append(p_upsilon_check(g))
            elif cond == "maximal-rank":
                bs = boundary_sample_set(p.set, samples, seed, radius)
                reports.append(maximal_rank_tsearch(p, bs, tol=tol))
            elif cond == "coercivity":
                reports.append(_coercivity_condition(p, seed))
            elif cond == "pl":
                res = solve(p, SolveConfig())
                if not res.solved:
                    reports.append(CertificateReport(
                        "pl", "inconclusive", None, None, seed, {},
                        "no stationary candidate: solver did not converge"))
                else:
                    reports.append(pl_condition_check(g, res.x, seed=seed))
            elif cond == "block-convexity":
                reports.append(hessian_block_convexity(g))
        except BudgetError as e:
            reports.append(CertificateReport(cond, "inconclusive", None, None, seed, {},
                                             f"budget exceeded: {e}"))
    return reports, skipped


def _emit(doc):
    print(json.dumps(doc, indent=2, sort_keys=True))


def _report_skeleton(command, problem_id, provenance, config):
    return {
        "artifact": {"name": "vibox", "version": __version__},
        "command": command,
        "problem": {"id": problem_id, "provenance": provenance},
        "config": config,
    }


def cmd_solve(args) -> int:
    try:
        p, provenance = resolve_problem(args.problem)
    except (KeyError, ProblemFileError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    t0 = time.perf_counter()
    cfg = SolveConfig(tol=args.tol)
    results = multistart(p, cfg, starts=args.starts, seed=args.seed, radius=args.radius)
    elapsed = time.perf_counter() - t0
    doc = _report_skeleton("solve", args.problem, provenance,
                           {"seed": args.seed, "starts": args.starts, "tol": args.tol,
                            "radius": args.radius})
    doc["results"] = []
    for res in results:
        rec = {"status": res.status, "x": res.x.tolist(), "v": res.v.tolist(),
               "residual": res.residual, "classification": res.classification,
               "iterations": res.iterations, "steps": list(res.steps)}
        if args.trace:
            rec["trace"] = list(res.trace)
        doc["results"].append(rec)
    _emit(doc)
    print(f"solved {args.problem} in {elapsed:.3f}s", file=sys.stderr)
    return EXIT_OK if any(r.solved for r in results) else EXIT_NOT_SOLVED


def cmd_certify(args) -> int:
    try:
        p, provenance = resolve_problem(args.problem)
        conditions = args.conditions.split(",") if args.conditions else None
        reports, skipped = certify_problem(p, conditions, seed=args.seed,
                                           samples=args.samples, radius=args.radius,
                                           tol=args.tol)
    except (KeyError, ProblemFileError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    t0 = time.perf_counter()
    doc = _report_skeleton("certify", args.problem, provenance,
                           {"seed": args.seed, "samples": args.samples,
                            "radius": args.radius, "tol": args.tol,
                            "conditions": args.conditions or "all"})
    doc["certificates"] = [r.to_dict() for r in reports]
    doc["skipped"] = skipped
    _emit(doc)
    print(f"certified {args.problem} in {time.perf_counter() - t0:.3f}s", file=sys.stderr)
    verdicts = [r.verdict for r in reports]
    if "fail" in verdicts:
        return EXIT_FAIL
    if "inconclusive" in verdicts:
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def cmd_report(args) -> int:
    rows = []
    for path in args.files:
        try:
            with open(path) as fh:
                doc = json.load(fh)
            pid = doc["problem"]["id"]
            for cert in doc.get("certificates", []):
                rows.append((pid, cert["condition"], cert["verdict"], cert["margin"]))
        except (OSError, json.JSONDecodeError, KeyError, TypeError) as e:
            print(f"warning: skipping {path}: {e}", file=sys.stderr)
    rows.sort(key=lambda r: (r[0], r[1]))
    header = ("problem", "condition", "verdict", "margin")
    if args.format == "delimited":
        print("\t".join(header))
        for row in rows:
            print("\t".join("" if v is None else str(v) for v in row))
    else:
        widths = [max(len(str(h)), *(len(str(r[i])) for r in rows)) if rows else len(h)
                  for i, h in enumerate(header)]
        print("  ".join(h.ljust(w) for h, w in zip(header, widths)))
        for row in rows:
            print("  ".join(str("" if v is None else v).ljust(w)
                            for v, w in zip(row, widths)))
    return EXIT_OK


def cmd_list(args) -> int:
    for pid in sorted(REGISTRY):
        entry = REGISTRY[pid]
        kind = "game" if entry.build().game is not None else "vi"
        print(f"{pid}\t{kind}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="vibox", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--seed", type=int, default=42)
        sp.add_argument("--radius", type=float, default=10.0,
                        help="sampling radius for unbounded coordinates")

    sp = sub.add_parser("solve", help="solve a VI or game problem")
    sp.add_argument("problem")
    common(sp)
    sp.add_argument("--starts", type=int, default=8)
    sp.add_argument("--tol", type=float, default=1e-10)
    sp.add_argument("--trace", action="store_true", help="include residual traces")
    sp.set_defaults(fn=cmd_solve)

    sp = sub.add_parser("certify", help="run existence-condition checkers")
    sp.add_argument("problem")
    common(sp)
    sp.add_argument("--samples", type=int, default=30)
    sp.add_argument("--tol", type=float, default=1e-8)
    sp.add_argument("--conditions", help="comma-separated condition ids (default: all)")
    sp.set_defaults(fn=cmd_certify)

    sp = sub.add_parser("report", help="merge run reports into a comparison table")
    sp.add_argument("files", nargs="*")
    sp.add_argument("--format", choices=("text", "delimited"), default="text")
    sp.set_defaults(fn=cmd_report)

    sp = sub.add_parser("list", help="list builtin problems")
    sp.set_defaults(fn=cmd_list)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    return args.fn(args)


if __name__ == "__main__":
    raise SystemExit(main())
