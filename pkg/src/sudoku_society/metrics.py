"""Aggregation of tournament logs into the four analysis tables and their CSV
files: skill popularity, skill effectiveness, usage of one skill across memory
sizes, and the per-agent score matrix. CSV layouts are documented in FORMATS.md.
"""

from __future__ import annotations

import csv
import statistics
from dataclasses import dataclass
from pathlib import Path

from .agent import SKILL_BY_CODE, SKILLS
from .logio import config_mapping
from .tournament import TournamentLog


class EmptyInput(ValueError):
    pass


class ShapeMismatch(ValueError):
    pass


class BadSkillCode(ValueError):
    pass


class IoFailure(RuntimeError):
    pass


@dataclass(frozen=True)
class SkillUsageTable:
    """How often each skill was loaded, overall and per round."""

    round_count: int
    counts: dict[int, int]
    per_round: dict[int, dict[int, int]]


@dataclass(frozen=True)
class EffectivenessTable:
    """Score mass each skill collected from per-game top scorers that loaded it."""

    mass: dict[int, float]


@dataclass(frozen=True)
class UsageByMemoryTable:
    """Games in which the agent with each awareness-memory size loaded one skill."""

    skill_code: int
    counts: dict[int, int]


@dataclass(frozen=True)
class ScoreMatrix:
    """Final-replay score per agent and round, averaged across seeds."""

    mc_values: tuple[int, ...]
    clue_counts: tuple[int, ...]
    mean: dict[int, tuple[float, ...]]
    std: dict[int, tuple[float, ...]]


@dataclass(frozen=True)
class ReportTables:
    popularity: SkillUsageTable
    effectiveness: EffectivenessTable
    usage_by_memory: UsageByMemoryTable
    score_matrix: ScoreMatrix


def _require_logs(logs) -> None:
    if not logs:
        raise EmptyInput("no tournament logs to aggregate")


def check_same_shape(logs: list[TournamentLog]) -> None:
    """All logs must share the society shape and round schedule."""
    _require_logs(logs)
    reference = config_mapping(logs[0].config)
    for log in logs[1:]:
        candidate = config_mapping(log.config)
        for key in ("total_memory", "mc_min", "mc_max", "mc_step", "rounds"):
            if candidate[key] != reference[key]:
                raise ShapeMismatch(
                    f"logs disagree on {key}: {reference[key]!r} vs {candidate[key]!r}"
                )


def _games(logs):
    for log in logs:
        for rnd in log.rounds:
            for replay in rnd.replays:
                yield rnd.round_no, replay


def skill_popularity(logs: list[TournamentLog]) -> SkillUsageTable:
    """Count every loading event (agent x replay) across all seeds and rounds."""
    check_same_shape(logs)
    round_count = len(logs[0].config.rounds)
    counts = {skill.code: 0 for skill in SKILLS}
    per_round = {skill.code: {r: 0 for r in range(1, round_count + 1)} for skill in SKILLS}
    for round_no, replay in _games(logs):
        for game in replay.games:
            for code in game.skills:
                counts[code] += 1
                per_round[code][round_no] += 1
    return SkillUsageTable(round_count=round_count, counts=counts, per_round=per_round)


def skill_effectiveness(logs: list[TournamentLog], all_agents: bool = False) -> EffectivenessTable:
    """Per game, credit each loaded skill with the scores behind it.

    By default only the game's top scorers contribute (their score added to
    every skill they had loaded); ``all_agents`` switches to attribution over
    every agent weighted by its score.
    """
    check_same_shape(logs)
    mass = {skill.code: 0.0 for skill in SKILLS}
    for _, replay in _games(logs):
        top = replay.best_score
        for game in replay.games:
            if all_agents or game.score == top:
                for code in game.skills:
                    mass[code] += game.score
    return EffectivenessTable(mass=mass)


def skill_usage_by_memory(logs: list[TournamentLog], skill_code: int) -> UsageByMemoryTable:
    """Per awareness-memory size, how many games loaded the designated skill."""
    if skill_code not in SKILL_BY_CODE:
        raise BadSkillCode(f"skill code must be 1..10, got {skill_code!r}")
    check_same_shape(logs)
    config = logs[0].config
    counts = {mc: 0 for mc in range(config.mc_min, config.mc_max + 1, config.mc_step)}
    for _, replay in _games(logs):
        for game in replay.games:
            if skill_code in game.skills:
                counts[game.mc] += 1
    return UsageByMemoryTable(skill_code=skill_code, counts=counts)


def most_effective_skill(table: EffectivenessTable) -> int:
    """The effectiveness argmax; ties broken by the lower skill code."""
    return max(sorted(table.mass), key=lambda code: (table.mass[code], -code))


def score_matrix(logs: list[TournamentLog]) -> ScoreMatrix:
    """Mean and population standard deviation of final-replay scores across seeds."""
    check_same_shape(logs)
    config = logs[0].config
    mc_values = tuple(range(config.mc_min, config.mc_max + 1, config.mc_step))
    samples: dict[int, list[list[float]]] = {mc: [[] for _ in config.rounds] for mc in mc_values}
    for log in logs:
        if len(log.rounds) != len(config.rounds):
            raise ShapeMismatch(
                f"log for seed {log.seed} has {len(log.rounds)} rounds, expected {len(config.rounds)}"
            )
        for round_idx, rnd in enumerate(log.rounds):
            final = rnd.replays[-1]
            for game in final.games:
                samples[game.mc][round_idx].append(game.score)
    mean = {
        mc: tuple(statistics.fmean(values) for values in per_round)
        for mc, per_round in samples.items()
    }
    std = {
        mc: tuple(statistics.pstdev(values) for values in per_round)
        for mc, per_round in samples.items()
    }
    return ScoreMatrix(
        mc_values=mc_values,
        clue_counts=tuple(config.rounds),
        mean=mean,
        std=std,
    )


def build_report(
    logs: list[TournamentLog],
    *,
    usage_skill: int | None = None,
    effectiveness_all_agents: bool = False,
) -> ReportTables:
    """Compute all four tables; the usage table defaults to the top effective skill."""
    popularity = skill_popularity(logs)
    effectiveness = skill_effectiveness(logs, all_agents=effectiveness_all_agents)
    chosen = usage_skill if usage_skill is not None else most_effective_skill(effectiveness)
    return ReportTables(
        popularity=popularity,
        effectiveness=effectiveness,
        usage_by_memory=skill_usage_by_memory(logs, chosen),
        score_matrix=score_matrix(logs),
    )


def _format_number(value) -> str:
    if isinstance(value, int):
        return str(value)
    return format(value, ".12g")


def _write_csv(path: Path, header: list[str], rows: list[list]) -> None:
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(header)
            for row in rows:
                writer.writerow([_format_number(item) if isinstance(item, (int, float)) else item for item in row])
    except OSError as exc:
        raise IoFailure(f"cannot write {path}: {exc}") from exc


def write_tables(tables: ReportTables, out_dir) -> list[Path]:
    """Emit the four CSVs into an existing directory; byte-deterministic."""
    out = Path(out_dir)
    if not out.is_dir():
        raise IoFailure(f"output directory does not exist: {out}")

    popularity_path = out / "popularity.csv"
    round_headers = [f"round_{r}" for r in range(1, tables.popularity.round_count + 1)]
    _write_csv(
        popularity_path,
        ["skill_code", "skill_name", "count", *round_headers],
        [
            [
                code,
                SKILL_BY_CODE[code].name,
                tables.popularity.counts[code],
                *[
                    tables.popularity.per_round[code][r]
                    for r in range(1, tables.popularity.round_count + 1)
                ],
            ]
            for code in sorted(tables.popularity.counts)
        ],
    )

    effectiveness_path = out / "effectiveness.csv"
    _write_csv(
        effectiveness_path,
        ["skill_code", "skill_name", "mass"],
        [
            [code, SKILL_BY_CODE[code].name, tables.effectiveness.mass[code]]
            for code in sorted(tables.effectiveness.mass)
        ],
    )

    usage_path = out / "usage_by_memory.csv"
    _write_csv(
        usage_path,
        ["mc", "count"],
        [[mc, tables.usage_by_memory.counts[mc]] for mc in sorted(tables.usage_by_memory.counts)],
    )

    matrix = tables.score_matrix
    matrix_path = out / "score_matrix.csv"
    header = ["mc"]
    for round_no in range(1, len(matrix.clue_counts) + 1):
        header.extend([f"round{round_no}_mean", f"round{round_no}_std"])
    rows = []
    for mc in matrix.mc_values:
        row: list = [mc]
        for mean, std in zip(matrix.mean[mc], matrix.std[mc]):
            row.extend([mean, std])
        rows.append(row)
    _write_csv(matrix_path, header, rows)

    return [popularity_path, effectiveness_path, usage_path, matrix_path]


def top_skills(counts: dict[int, float], n: int = 3) -> list[tuple[int, str, float]]:
    """The ``n`` highest-valued skills as (code, name, value), ties to lower code."""
    ranked = sorted(counts, key=lambda code: (-counts[code], code))
    return [(code, SKILL_BY_CODE[code].name, counts[code]) for code in ranked[:n]]
