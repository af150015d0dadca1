"""Line-delimited JSON persistence for tournament logs.

One ``game`` record per replay per agent, framed by a ``tournament`` header
and one ``round`` record per round. Records are serialized with sorted keys
and compact separators, so identical logs produce byte-identical files.
The field-by-field layout is documented in FORMATS.md.
"""

from __future__ import annotations

import json
from collections import defaultdict

from .config import RunConfig
from .tournament import GameRecord, ReplayRecord, RoundLog, TournamentLog

LOG_VERSION = 1

_CONFIG_KEYS = (
    "total_memory",
    "mc_min",
    "mc_max",
    "mc_step",
    "rounds",
    "max_steps",
    "epsilon",
    "stagnation_window",
    "max_replays",
    "store_empty_scans",
)


class LogFormatError(ValueError):
    pass


def config_mapping(config: RunConfig) -> dict:
    """The tournament-shaping subset of the config, as JSON-ready values."""
    mapping = {}
    for key in _CONFIG_KEYS:
        value = getattr(config, key)
        mapping[key] = list(value) if isinstance(value, tuple) else value
    return mapping


def config_from_mapping(mapping: dict) -> RunConfig:
    kwargs = {}
    for key in _CONFIG_KEYS:
        if key not in mapping:
            raise LogFormatError(f"log config missing key {key!r}")
        value = mapping[key]
        kwargs[key] = tuple(value) if isinstance(value, list) else value
    return RunConfig(**kwargs)


def _record(payload: dict) -> str:
    return json.dumps(payload, sort_keys=True, separators=(",", ":"))


def dump_tournament_log(log: TournamentLog) -> str:
    lines = [
        _record(
            {
                "record": "tournament",
                "version": LOG_VERSION,
                "seed": log.seed,
                "config": config_mapping(log.config),
            }
        )
    ]
    for rnd in log.rounds:
        lines.append(
            _record(
                {
                    "record": "round",
                    "round": rnd.round_no,
                    "clue_count": rnd.clue_count,
                    "puzzle": rnd.puzzle,
                    "terminated_by": rnd.terminated_by,
                    "replay_count": len(rnd.replays),
                }
            )
        )
        for replay_no, replay in enumerate(rnd.replays, start=1):
            for game in replay.games:
                lines.append(
                    _record(
                        {
                            "record": "game",
                            "round": rnd.round_no,
                            "replay": replay_no,
                            "agent": game.agent,
                            "mc": game.mc,
                            "ms": game.ms,
                            "skills": list(game.skills),
                            "f": game.dof_total,
                            "score": game.score,
                            "partner": game.partner,
                            "partner_fitness": game.partner_fitness,
                            "passes": game.passes,
                            "fills": [list(fill) for fill in game.fills],
                        }
                    )
                )
    return "\n".join(lines) + "\n"


def write_tournament_log(log: TournamentLog, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(dump_tournament_log(log))


def load_tournament_log(text: str) -> TournamentLog:
    records = [json.loads(line) for line in text.splitlines() if line.strip()]
    if not records or records[0].get("record") != "tournament":
        raise LogFormatError("missing tournament header record")
    header = records[0]
    if header.get("version") != LOG_VERSION:
        raise LogFormatError(f"unsupported log version {header.get('version')!r}")
    config = config_from_mapping(header.get("config", {}))

    round_meta: dict[int, dict] = {}
    games: dict[int, dict[int, list[GameRecord]]] = defaultdict(lambda: defaultdict(list))
    for rec in records[1:]:
        kind = rec.get("record")
        if kind == "round":
            round_meta[rec["round"]] = rec
        elif kind == "game":
            games[rec["round"]][rec["replay"]].append(
                GameRecord(
                    agent=rec["agent"],
                    mc=rec["mc"],
                    ms=rec["ms"],
                    skills=tuple(rec["skills"]),
                    dof_total=rec["f"],
                    score=rec["score"],
                    partner=rec["partner"],
                    partner_fitness=rec["partner_fitness"],
                    passes=rec["passes"],
                    fills=tuple(tuple(fill) for fill in rec["fills"]),
                )
            )
        else:
            raise LogFormatError(f"unknown record type {kind!r}")

    rounds = []
    for round_no in sorted(round_meta):
        meta = round_meta[round_no]
        replays = tuple(
            ReplayRecord(tuple(games[round_no][replay_no]))
            for replay_no in sorted(games[round_no])
        )
        if len(replays) != meta["replay_count"]:
            raise LogFormatError(f"round {round_no}: replay count mismatch")
        rounds.append(
            RoundLog(
                round_no=round_no,
                clue_count=meta["clue_count"],
                puzzle=meta["puzzle"],
                replays=replays,
                terminated_by=meta["terminated_by"],
            )
        )
    return TournamentLog(seed=header["seed"], config=config, rounds=tuple(rounds))


def read_tournament_log(path) -> TournamentLog:
    with open(path, "r", encoding="utf-8") as fh:
        return load_tournament_log(fh.read())
