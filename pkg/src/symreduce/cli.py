"""Command-line interface.

Subcommands: decompose, sparsity, reduce, check-nonneg, check-empty.  Input
is an inline expression (with --nvars), a file in the constraint format, or
'-' for standard input.  Reports are JSON by default (schema shipped in
docs/report-schema.json, version echoed in every report) or a short text
summary with --format text.

Exit codes: 0 success, 1 the queried property was refuted (a witness or
counterexample was found), 2 input error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from fractions import Fraction
from typing import Optional

from . import __version__
from .parsing import InputSystem, ParseError, parse_expression, parse_inline_constraints, parse_system_text
from .polynomial import Poly
from .powersums import NotSymmetricError, corollary_split, to_power_sums, weighted_degree
from .reduction import Partition, ReductionPlan, Relation, plan_degree_principle, plan_half_degree, plan_jsparse
from .search import (
    SearchConfig,
    SearchReport,
    VERDICT_WITNESS,
    check_feasible,
    minimize_reduced,
    oracle_min,
)
from .sparsity import gradient_support_probe, support

SCHEMA_VERSION = "1.0"

MODES = ("decompose", "sparsity", "reduce", "check-nonneg", "check-empty")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="symreduce",
        description="Symmetry reductions for polynomial nonnegativity and feasibility.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("input", help="expression, input file, or '-' for stdin")
    common.add_argument("--nvars", type=int, help="variable count for inline expressions")
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--box", type=float, default=2.0, help="search box radius")
    common.add_argument("--grid", type=int, default=33, help="grid points per axis")
    common.add_argument("--starts", type=int, default=64, help="descent starts per cell")
    common.add_argument("--seed", type=int, default=0, help="random seed")
    common.add_argument("--tol", type=float, default=1e-8, help="feasibility tolerance")
    common.add_argument(
        "--bound-override",
        type=int,
        default=None,
        help="expert: replace the derived test-set bound (recorded in the report)",
    )
    sub = parser.add_subparsers(dest="mode", required=True)

    sub.add_parser("decompose", parents=[common], help="power-sum form and split")
    p_sparse = sub.add_parser("sparsity", parents=[common], help="power-sum support")
    p_sparse.add_argument("--trials", type=int, default=8, help="gradient probe trials")
    p_reduce = sub.add_parser("reduce", parents=[common], help="build a reduction plan")
    p_reduce.add_argument(
        "--mode",
        dest="principle",
        choices=("degree", "half", "jsparse"),
        default="degree",
        help="which reduction to apply",
    )
    p_reduce.add_argument(
        "--half-mode",
        choices=("nonneg_global", "nonneg_orthant", "variety"),
        default="nonneg_global",
    )
    p_nonneg = sub.add_parser(
        "check-nonneg", parents=[common], help="search for negativity counterexamples"
    )
    p_nonneg.add_argument(
        "--orthant", action="store_true", help="check on the nonnegative orthant only"
    )
    p_nonneg.add_argument(
        "--skip-oracle", action="store_true", help="skip the full-space validation run"
    )
    p_empty = sub.add_parser(
        "check-empty", parents=[common], help="search for feasibility witnesses"
    )
    p_empty.add_argument(
        "--mode",
        dest="principle",
        choices=("degree", "jsparse"),
        default="degree",
        help="which reduction to apply",
    )
    return parser


def _config_from_args(args) -> SearchConfig:
    return SearchConfig(
        box_radius=args.box,
        grid_points_per_axis=args.grid,
        multistart_count=args.starts,
        feasibility_tolerance=args.tol,
        random_seed=args.seed,
    )


def _read_input(args) -> InputSystem:
    mode = args.mode
    raw = args.input
    if raw == "-":
        return parse_system_text(sys.stdin.read(), mode=mode)
    if os.path.exists(raw):
        with open(raw, "r", encoding="utf-8") as handle:
            return parse_system_text(handle.read(), mode=mode)
    if args.nvars is None:
        raise ValueError("inline expressions need --nvars")
    if mode == "check-empty" or (
        mode == "reduce" and args.principle in ("degree", "jsparse")
    ):
        system = parse_inline_constraints(raw, args.nvars)
    else:
        poly = parse_expression(raw, args.nvars)
        system = InputSystem(
            nvars=args.nvars,
            constraints=(),
            constraint_texts=(),
            objective=poly,
            objective_text=raw.strip(),
        )
    return InputSystem(
        nvars=system.nvars,
        constraints=system.constraints,
        constraint_texts=system.constraint_texts,
        objective=system.objective,
        objective_text=system.objective_text,
        mode=mode,
    )


def _single_poly(system: InputSystem, mode: str) -> Poly:
    if system.objective is not None:
        return system.objective
    raise ValueError(
        f"{mode} needs a single polynomial: pass an inline expression or an "
        "'objective:' line in the input file"
    )


def _input_hash(system: InputSystem) -> str:
    digest = hashlib.sha256(
        (system.mode + "\n" + system.canonical_text()).encode("utf-8")
    ).hexdigest()
    return f"sha256:{digest}"


def _profile_dict(report: SearchReport) -> Optional[dict]:
    if report.profile is None:
        return None
    return {
        "distinct": report.profile.distinct_count,
        "distinct_positive": report.profile.distinct_positive_count,
        "tolerance": report.profile.tolerance,
    }


def _search_dict(report: SearchReport) -> dict:
    return {
        "verdict": report.verdict,
        "value": report.value,
        "witness": list(report.witness) if report.witness is not None else None,
        "witness_cell": report.witness_cell.describe() if report.witness_cell else None,
        "cells_examined": report.cells_examined,
        "profile": _profile_dict(report),
        "proved_infeasible": report.proved_infeasible,
        "note": report.note,
    }


def _plan_dict(plan: ReductionPlan, include_instances: bool = False) -> dict:
    out = {
        "theorem": plan.theorem_tag,
        "bound": plan.bound,
        "orthant_restricted": plan.orthant_restricted,
        "cell_count": len(plan.cells),
        "cells": [cell.describe() for cell in plan.cells],
        "notes": list(plan.notes),
    }
    if include_instances:
        instances = []
        for cell in plan.cells:
            entry = {
                "cell": cell.describe(),
                "zero_block": cell.zero_block,
                "constraints": [
                    {
                        "poly": inst.reduced.to_text(var="t"),
                        "relation": inst.relation.value if inst.relation else None,
                    }
                    for inst in plan.instances_for(cell)
                ],
            }
            instances.append(entry)
        out["instances"] = instances
    return out


def _base_report(system: InputSystem, cfg: SearchConfig) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "tool": {"name": "symreduce", "version": __version__},
        "mode": system.mode,
        "nvars": system.nvars,
        "input_hash": _input_hash(system),
        "config": {
            "box_radius": cfg.box_radius,
            "grid_points_per_axis": cfg.grid_points_per_axis,
            "multistart_count": cfg.multistart_count,
            "descent_max_iters": cfg.descent_max_iters,
            "feasibility_tolerance": cfg.feasibility_tolerance,
            "random_seed": cfg.random_seed,
        },
    }


def _decomposition_dict(f: Poly) -> dict:
    rep = to_power_sums(f)
    split = corollary_split(f)
    return {
        "power_sum_form": rep.g.to_text(var="p"),
        "weighted_degree": None if rep.g.is_zero else int(weighted_degree(rep.g)),
        "support": list(support(f).indices),
        "corollary": {
            "k": split.k,
            "dprime": split.dprime,
            "g0": split.g0.to_text(var="p"),
            "tail": [gj.to_text(var="p") for gj in split.tail],
        },
    }


def _run_decompose(args, system: InputSystem, cfg: SearchConfig, report: dict) -> int:
    f = _single_poly(system, "decompose")
    report["symmetric"] = True
    report["decomposition"] = _decomposition_dict(f)
    report["verdict"] = "decomposed"
    return 0


def _run_sparsity(args, system: InputSystem, cfg: SearchConfig, report: dict) -> int:
    f = _single_poly(system, "sparsity")
    exact = support(f)
    probe = gradient_support_probe(f, args.trials, seed=cfg.random_seed)
    report["symmetric"] = True
    report["sparsity"] = {
        "support": list(exact.indices),
        "probe_support": list(probe.support.indices),
        "agrees": probe.support == exact,
        "trials": args.trials,
        "witnesses": {
            str(index): [str(v) for v in point]
            for index, point in sorted(probe.witnesses.items())
        },
    }
    report["verdict"] = "support-computed"
    return 0


def _run_reduce(args, system: InputSystem, cfg: SearchConfig, report: dict) -> int:
    if args.principle == "half":
        f = _single_poly(system, "reduce --mode half")
        plan = plan_half_degree(f, args.half_mode, bound_override=args.bound_override)
    else:
        if not system.constraints:
            raise ValueError("reduce needs constraints (expr followed by =0, >=0, >0 or !=0)")
        if args.principle == "degree":
            plan = plan_degree_principle(
                system.constraints, bound_override=args.bound_override
            )
        else:
            indices = sorted(
                set().union(*(support(p).indices for p, _ in system.constraints))
            )
            plan = plan_jsparse(
                system.constraints, indices, bound_override=args.bound_override
            )
            report["jsparse_support"] = indices
    report["plan"] = _plan_dict(plan, include_instances=True)
    report["verdict"] = "plan-built"
    return 0


def _run_check_nonneg(args, system: InputSystem, cfg: SearchConfig, report: dict) -> int:
    f = _single_poly(system, "check-nonneg")
    mode = "nonneg_orthant" if args.orthant else "nonneg_global"
    plan = plan_half_degree(f, mode, bound_override=args.bound_override)
    search = minimize_reduced(plan, f, cfg)
    threshold = 100.0 * cfg.feasibility_tolerance
    report["symmetric"] = True
    report["decomposition"] = _decomposition_dict(f)
    report["plan"] = _plan_dict(plan)
    report["search"] = _search_dict(search)
    negative = search.value is not None and search.value < -threshold
    oracle_negative = False
    if not args.skip_oracle:
        if args.orthant:
            # x_i = y_i^2 turns the orthant question into a full-space one
            target = Poly(f.nvars, {tuple(2 * e for e in exps): c for exps, c in f.terms()})
        else:
            target = f
        estimate = oracle_min(target, cfg)
        oracle_negative = estimate < -threshold
        report["oracle"] = {
            "min_estimate": estimate,
            "agrees_with_reduction": oracle_negative == negative,
        }
    if negative or oracle_negative:
        report["verdict"] = "counterexample-found"
        return 1
    report["verdict"] = "no-counterexample"
    return 0


def _run_check_empty(args, system: InputSystem, cfg: SearchConfig, report: dict) -> int:
    if not system.constraints:
        raise ValueError("check-empty needs constraints (expr followed by =0, >=0, >0 or !=0)")
    if args.principle == "jsparse":
        indices = sorted(
            set().union(*(support(p).indices for p, _ in system.constraints))
        )
        plan = plan_jsparse(system.constraints, indices, bound_override=args.bound_override)
        report["jsparse_support"] = indices
    else:
        plan = plan_degree_principle(system.constraints, bound_override=args.bound_override)
    search = check_feasible(plan, cfg)
    report["plan"] = _plan_dict(plan)
    report["search"] = _search_dict(search)
    if search.verdict == VERDICT_WITNESS:
        report["verdict"] = "witness-found"
        return 1
    report["verdict"] = "proved-infeasible" if search.proved_infeasible else "no-witness-found"
    return 0


_RUNNERS = {
    "decompose": _run_decompose,
    "sparsity": _run_sparsity,
    "reduce": _run_reduce,
    "check-nonneg": _run_check_nonneg,
    "check-empty": _run_check_empty,
}


def _emit(report: dict, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(report, indent=2))
        return
    lines = [
        f"symreduce {report['tool']['version']} | mode {report['mode']} | "
        f"nvars {report.get('nvars', '?')}"
    ]
    if "error" in report:
        lines.append(f"error: {report['error']['message']}")
    if "decomposition" in report:
        dec = report["decomposition"]
        lines.append(f"power-sum form: {dec['power_sum_form']}")
        lines.append(f"support: {dec['support']}")
    if "sparsity" in report:
        sp = report["sparsity"]
        lines.append(f"support: {sp['support']} (probe {sp['probe_support']}, agrees {sp['agrees']})")
    if "plan" in report:
        plan = report["plan"]
        lines.append(
            f"plan: {plan['theorem']}, bound {plan['bound']}, {plan['cell_count']} cells"
        )
    if "search" in report:
        search = report["search"]
        lines.append(f"search: {search['verdict']}"
                     + (f", value {search['value']}" if search["value"] is not None else ""))
        if search["witness"] is not None:
            lines.append(f"witness: {search['witness']} in cell {search['witness_cell']}")
        if search["note"]:
            lines.append(f"note: {search['note']}")
    if "oracle" in report:
        lines.append(f"oracle min estimate: {report['oracle']['min_estimate']}")
    lines.append(f"verdict: {report.get('verdict', 'error')} (exit {report['exit_code']})")
    print("\n".join(lines))


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code if isinstance(exc.code, int) else 2
        return code
    started = time.perf_counter()
    try:
        cfg = _config_from_args(args)
    except ValueError as exc:
        print(json.dumps({"error": {"type": "config", "message": str(exc)}}, indent=2))
        return 2
    report: dict = {}
    try:
        system = _read_input(args)
        report = _base_report(system, cfg)
        exit_code = _RUNNERS[args.mode](args, system, cfg, report)
    except NotSymmetricError as exc:
        report.setdefault("mode", args.mode)
        report.setdefault("schema_version", SCHEMA_VERSION)
        report.setdefault("tool", {"name": "symreduce", "version": __version__})
        report["symmetric"] = False
        report["error"] = {
            "type": "not-symmetric",
            "message": str(exc),
            "witness_permutation": list(exc.permutation),
            "monomial": list(exc.monomial),
        }
        report["verdict"] = "input-error"
        exit_code = 2
    except (ParseError, ValueError, OSError) as exc:
        report.setdefault("mode", getattr(args, "mode", ""))
        report.setdefault("schema_version", SCHEMA_VERSION)
        report.setdefault("tool", {"name": "symreduce", "version": __version__})
        error: dict = {"type": type(exc).__name__, "message": str(exc)}
        if isinstance(exc, ParseError):
            error["line"] = exc.line
            error["column"] = exc.column
        report["error"] = error
        report["verdict"] = "input-error"
        exit_code = 2
    report["timing_seconds"] = round(time.perf_counter() - started, 6)
    report["exit_code"] = exit_code
    _emit(report, getattr(args, "format", "json"))
    return exit_code


#: alias for embedders: run(argv) returns the exit code
run = main


def console_main() -> None:
    sys.exit(main())
