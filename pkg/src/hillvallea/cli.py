"""Command-line harness: `list` the catalog, `run` seeded benchmark
campaigns to CSV, and `score` stored run reports offline.
"""

from __future__ import annotations

import argparse
import csv
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from . import benchmarks
from .benchmarks import UnavailableProblem, get_problem
from .orchestrator import RunReport, run_hillvallea
from .scoring import DEFAULT_EPSILON, Score, aggregate, score

CSV_HEADER = ["problem", "seed", "evals", "peaks_found", "peak_ratio",
              "static_f1", "f1_harmonic"]


@dataclass
class CampaignConfig:
    problem_ids: list[int]
    runs: int = 50
    base_seed: int = 0
    epsilon: float = DEFAULT_EPSILON
    out_path: str = "results.csv"
    jobs: int = 1
    reports_dir: str | None = None

    def __post_init__(self):
        if self.runs < 1:
            raise ValueError("runs must be >= 1")
        if self.epsilon < DEFAULT_EPSILON:
            raise ValueError(f"epsilon must be >= {DEFAULT_EPSILON}")


def parse_problem_ids(text: str) -> list[int]:
    """Parse '1-5,7,10' style problem selections."""
    ids: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if "-" in part:
            lo, hi = part.split("-", 1)
            ids.extend(range(int(lo), int(hi) + 1))
        else:
            ids.append(int(part))
    return sorted(set(ids))


def _single_run(problem_id: int, seed: int, epsilon: float) -> tuple[RunReport, Score]:
    spec = get_problem(problem_id)
    report = run_hillvallea(spec, seed)
    return report, score(report.solutions, spec, epsilon, report.evaluations)


def _run_args(args) -> tuple[int, int, float]:
    return args


def cmd_list(problem_ids: list[int] | None = None, out=None) -> int:
    out = out if out is not None else sys.stdout
    for entry in benchmarks.catalog():
        if problem_ids and entry.id not in problem_ids:
            continue
        status = "available" if entry.available else "unavailable"
        print(f"{entry.id:3d}  {entry.name:<26s} d={entry.dimension:<3d} "
              f"gopt={entry.num_global_optima:<4d} budget={entry.budget:<7d} "
              f"{status}", file=out)
    return 0


def cmd_run(config: CampaignConfig, out=None) -> int:
    out = out if out is not None else sys.stdout
    for pid in config.problem_ids:
        try:
            get_problem(pid)
        except (UnavailableProblem, ValueError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 1

    tasks = [(pid, config.base_seed + i, config.epsilon)
             for pid in config.problem_ids for i in range(config.runs)]
    if config.jobs > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            results = list(pool.map(_single_run_star, tasks))
    else:
        results = [_single_run(*t) for t in tasks]

    by_key = {(r.problem_id, r.seed): (r, s) for r, s in results}
    rows = []
    per_problem: dict[int, list[Score]] = {pid: [] for pid in config.problem_ids}
    for pid, seed, _ in sorted(tasks):
        report, sc = by_key[(pid, seed)]
        per_problem[pid].append(sc)
        rows.append([pid, seed, report.evaluations, sc.peaks_found,
                     repr(sc.peak_ratio), repr(sc.static_f1), repr(sc.f1_harmonic)])
        if config.reports_dir:
            rdir = Path(config.reports_dir)
            rdir.mkdir(parents=True, exist_ok=True)
            (rdir / f"problem{pid:02d}_seed{seed}.txt").write_text(report.serialize())
    for pid in config.problem_ids:
        agg = aggregate(per_problem[pid])
        rows.append([pid, "mean", repr(agg.mean_evaluations),
                     repr(agg.mean_peak_ratio * get_problem(pid).num_global_optima),
                     repr(agg.mean_peak_ratio), repr(agg.mean_static_f1),
                     repr(agg.mean_f1_harmonic)])

    try:
        with open(config.out_path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(CSV_HEADER)
            writer.writerows(rows)
    except OSError as exc:
        print(f"error: cannot write {config.out_path}: {exc}", file=sys.stderr)
        return 1
    for pid in config.problem_ids:
        agg = aggregate(per_problem[pid])
        print(f"problem {pid}: mean PR = {agg.mean_peak_ratio:.4f}, "
              f"mean static F1 = {agg.mean_static_f1:.4f} over {agg.runs} runs",
              file=out)
    return 0


def _single_run_star(task):
    return _single_run(*task)


def cmd_score(report_path: str, problem_id: int,
              epsilon: float = DEFAULT_EPSILON, out=None) -> int:
    out = out if out is not None else sys.stdout
    try:
        report = RunReport.parse(Path(report_path).read_text())
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if report.problem_id != problem_id:
        print(f"error: report is for problem {report.problem_id}, "
              f"not {problem_id}", file=sys.stderr)
        return 1
    spec = get_problem(problem_id)
    sc = score(report.solutions, spec, epsilon, report.evaluations)
    print(f"peak_ratio = {sc.peak_ratio}", file=out)
    print(f"static_f1 = {sc.static_f1}", file=out)
    print(f"f1_harmonic = {sc.f1_harmonic}", file=out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hillvallea",
        description="Multimodal optimization benchmark harness")
    sub = parser.add_subparsers(dest="command", required=True)

    p_list = sub.add_parser("list", help="list the benchmark catalog")
    p_list.add_argument("--problems", type=parse_problem_ids, default=None)

    p_run = sub.add_parser("run", help="run a seeded benchmark campaign")
    p_run.add_argument("--problems", type=parse_problem_ids, required=True)
    p_run.add_argument("--runs", type=int, default=50)
    p_run.add_argument("--seed", type=int, default=0)
    p_run.add_argument("--epsilon", type=float, default=DEFAULT_EPSILON)
    p_run.add_argument("--out", default="results.csv")
    p_run.add_argument("--jobs", type=int, default=1)
    p_run.add_argument("--reports-dir", default=None)

    p_score = sub.add_parser("score", help="score a stored run report")
    p_score.add_argument("report")
    p_score.add_argument("--problem", type=int, required=True)
    p_score.add_argument("--epsilon", type=float, default=DEFAULT_EPSILON)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "list":
        return cmd_list(args.problems)
    if args.command == "run":
        try:
            config = CampaignConfig(
                problem_ids=args.problems, runs=args.runs, base_seed=args.seed,
                epsilon=args.epsilon, out_path=args.out, jobs=args.jobs,
                reports_dir=args.reports_dir)
        except ValueError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 1
        return cmd_run(config)
    if args.command == "score":
        return cmd_score(args.report, args.problem, args.epsilon)
    return 2


if __name__ == "__main__":
    sys.exit(main())
