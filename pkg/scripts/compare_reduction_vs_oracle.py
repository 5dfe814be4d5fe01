"""Compare reduced searches against the brute-force oracle on random inputs.

Draws fresh seeded instances (reusing the test corpus generators), runs the
reduction-side search and the full-space oracle on each, and prints one line
per instance plus a summary.  Useful for poking at the reduction with more
or larger instances than the acceptance suite runs.

Usage:
    python3 scripts/compare_reduction_vs_oracle.py --kind minimize --count 20
    python3 scripts/compare_reduction_vs_oracle.py --kind feasible --seed 7
    python3 scripts/compare_reduction_vs_oracle.py --kind even
"""

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))

from corpus import even_system_corpus, half_degree_corpus, system_corpus
from symreduce.reduction import plan_degree_principle, plan_half_degree, plan_jsparse
from symreduce.search import (
    SearchConfig,
    VERDICT_WITNESS,
    check_feasible,
    minimize_reduced,
    oracle_feasible,
    oracle_min,
)
from symreduce.sparsity import support


def run_minimize(count: int, seed: int, cfg: SearchConfig) -> int:
    bad = 0
    worst_gap = 0.0
    for i, f in enumerate(half_degree_corpus(count=count, seed=seed)):
        plan = plan_half_degree(f, "nonneg_global")
        red = minimize_reduced(plan, f, cfg)
        ora = oracle_min(f, cfg)
        gap = ora - red.value
        worst_gap = max(worst_gap, abs(gap))
        sound = red.value <= ora + 1e-9
        flag = "" if sound else "  <-- reduced above oracle"
        print(
            f"[{i:3d}] n={f.nvars} reduced={red.value:+.6e} "
            f"oracle={ora:+.6e} gap={gap:+.2e}{flag}"
        )
        if not sound:
            bad += 1
    print(f"\n{count - bad}/{count} sound, largest |gap| {worst_gap:.2e}")
    return bad


def run_feasible(count: int, seed: int, cfg: SearchConfig) -> int:
    bad = 0
    feasible = 0
    for i, system in enumerate(system_corpus(count=count, seed=seed)):
        point = oracle_feasible(system, cfg)
        report = check_feasible(plan_degree_principle(system), cfg)
        if point is None:
            status = "oracle-empty"
        else:
            feasible += 1
            if report.verdict == VERDICT_WITNESS:
                status = "transferred"
            else:
                status = "MISSED"
                bad += 1
        nvars = system[0][0].nvars
        print(f"[{i:3d}] n={nvars} m={len(system)} {status}  plan={report.verdict}")
    print(f"\n{feasible - bad}/{feasible} oracle-feasible systems transferred")
    return bad


def run_even(count: int, seed: int, cfg: SearchConfig) -> int:
    bad = 0
    feasible = 0
    for i, system in enumerate(even_system_corpus(count=count, seed=seed)):
        J = tuple(sorted(set().union(*(support(p).indices for p, _ in system))))
        point = oracle_feasible(system, cfg)
        report = check_feasible(plan_jsparse(system, J), cfg)
        if point is None:
            status = "oracle-empty"
        else:
            feasible += 1
            if report.verdict == VERDICT_WITNESS:
                pos = report.profile.distinct_positive_count
                status = f"transferred (distinct positives {pos})"
            else:
                status = "MISSED"
                bad += 1
        nvars = system[0][0].nvars
        print(f"[{i:3d}] n={nvars} J={list(J)} {status}")
    print(f"\n{feasible - bad}/{feasible} oracle-feasible systems transferred")
    return bad


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument(
        "--kind",
        choices=("minimize", "feasible", "even"),
        default="minimize",
        help="minimize: half-degree min vs oracle_min; "
        "feasible: degree-principle systems vs oracle_feasible; "
        "even: p2/p4 systems on orthant cells",
    )
    ap.add_argument("--count", type=int, default=20)
    ap.add_argument("--seed", type=int, default=20240603)
    ap.add_argument("--box", type=float, default=2.0)
    args = ap.parse_args()

    cfg = SearchConfig(box_radius=args.box)
    runner = {"minimize": run_minimize, "feasible": run_feasible, "even": run_even}
    bad = runner[args.kind](args.count, args.seed, cfg)
    return 1 if bad else 0


if __name__ == "__main__":
    raise SystemExit(main())
