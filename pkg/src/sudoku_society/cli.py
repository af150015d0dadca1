"""Command-line interface: puzzle generation, tournament batches, and reports.

Exit codes are stable for scripting: 0 success, 1 usage or configuration
error, 2 runtime failure.
"""

from __future__ import annotations

import argparse
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .config import ConfigError, RunConfig, apply_overrides, read_config_file, write_config_file
from .grid import GridError, count_solutions, generate_puzzle, is_consistent, write_grid_file
from .logio import LogFormatError, read_tournament_log, write_tournament_log
from .metrics import (
    BadSkillCode,
    EmptyInput,
    IoFailure,
    ShapeMismatch,
    build_report,
    top_skills,
    write_tables,
)
from .tournament import BadRange, run_tournament

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_RUNTIME = 2


class BadArgs(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # exit 1 on usage errors instead of argparse's 2
        raise BadArgs(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="sudoku-society", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="write one generated puzzle to a file")
    gen.add_argument("--clues", type=int, required=True, help="initial filled cells, 17..81")
    gen.add_argument("--seed", type=int, required=True)
    gen.add_argument("--out", required=True, help="destination grid file")
    gen.set_defaults(func=cmd_generate)

    run = sub.add_parser("run", help="run one tournament per seed and write logs")
    run.add_argument("--config", help="key=value config file (defaults fill unset keys)")
    run.add_argument("--out", help="output directory (overrides out_dir)")
    run.add_argument("--seeds", help="comma-separated seed list override")
    run.add_argument(
        "--set",
        action="append",
        default=[],
        metavar="KEY=VALUE",
        help="override any config key; repeatable",
    )
    run.add_argument("--workers", type=int, default=1, help="parallel seed workers")
    run.set_defaults(func=cmd_run)

    rep = sub.add_parser("report", help="aggregate run logs into CSV tables and figures")
    rep.add_argument("--runs", required=True, help="directory containing seed-*/tournament.log")
    rep.add_argument("--out", required=True, help="directory for CSVs and figures")
    rep.add_argument(
        "--skill",
        type=int,
        help="skill code for the usage-by-memory table (default: top effective skill)",
    )
    rep.add_argument(
        "--all-agents",
        action="store_true",
        help="credit effectiveness across all agents weighted by score",
    )
    rep.add_argument("--no-figures", action="store_true", help="write CSVs only")
    rep.set_defaults(func=cmd_report)

    return parser


def cmd_generate(args) -> int:
    if not 17 <= args.clues <= 81:
        raise BadArgs(f"--clues must be in [17, 81], got {args.clues}")
    puzzle = generate_puzzle(args.clues, args.seed)
    write_grid_file(args.out, puzzle, comment=f"clues={args.clues} seed={args.seed}")
    solutions = count_solutions(puzzle, cap=2)
    print(f"wrote {args.out} ({puzzle.filled_count} clues)")
    print(f"consistent: {'yes' if is_consistent(puzzle) else 'no'}")
    print(f"solutions (capped at 2): {solutions}")
    return EXIT_OK


def _resolve_run_config(args) -> RunConfig:
    config = read_config_file(args.config) if args.config else RunConfig()
    overrides: dict[str, str] = {}
    for item in args.set:
        if "=" not in item:
            raise BadArgs(f"--set expects KEY=VALUE, got {item!r}")
        key, _, value = item.partition("=")
        overrides[key.strip()] = value
    if args.seeds:
        overrides["seeds"] = args.seeds
    if args.out:
        overrides["out_dir"] = args.out
    config = apply_overrides(config, overrides)
    config.validate()
    return config


def _run_one_seed(config: RunConfig, seed: int) -> str:
    log = run_tournament(config, seed)
    seed_dir = Path(config.out_dir) / "runs" / f"seed-{seed}"
    seed_dir.mkdir(parents=True, exist_ok=True)
    write_tournament_log(log, seed_dir / "tournament.log")
    write_config_file(seed_dir / "config.txt", config)
    return str(seed_dir)


def cmd_run(args) -> int:
    config = _resolve_run_config(args)
    if args.workers < 1:
        raise BadArgs("--workers must be >= 1")
    if args.workers > 1 and len(config.seeds) > 1:
        with ProcessPoolExecutor(max_workers=args.workers) as pool:
            seed_dirs = list(pool.map(_run_one_seed, [config] * len(config.seeds), config.seeds))
    else:
        seed_dirs = [_run_one_seed(config, seed) for seed in config.seeds]
    for seed, seed_dir in zip(config.seeds, seed_dirs):
        print(f"seed {seed}: {seed_dir}/tournament.log")
    print(f"completed {len(config.seeds)} tournament(s) in {config.out_dir}")
    return EXIT_OK


def cmd_report(args) -> int:
    runs_dir = Path(args.runs)
    log_paths = sorted(runs_dir.glob("*/tournament.log"))
    if not log_paths:
        raise EmptyInput(
            f"no tournament.log found under {runs_dir}; run `sudoku-society run` first"
        )
    logs = [read_tournament_log(path) for path in log_paths]
    tables = build_report(
        logs,
        usage_skill=args.skill,
        effectiveness_all_agents=args.all_agents,
    )
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = write_tables(tables, out_dir)
    if not args.no_figures:
        from .figures import render_all

        written += render_all(tables, out_dir)

    print(f"aggregated {len(logs)} log(s)")
    print("top popularity:")
    for code, name, count in top_skills(tables.popularity.counts):
        print(f"  {name} (code {code}): {count}")
    print("top effectiveness:")
    for code, name, mass in top_skills(tables.effectiveness.mass):
        print(f"  {name} (code {code}): {mass:.6g}")
    for path in written:
        print(f"wrote {path}")
    return EXIT_OK


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except BadArgs as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (BadArgs, ConfigError, BadRange, BadSkillCode, EmptyInput, ShapeMismatch) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (IoFailure, OSError, GridError, LogFormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
