"""Society construction, game scoring, social learning, and the round and
tournament drivers that replay each puzzle until someone completes it or
improvement stalls.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .agent import AgentProfile, SkillSelector, play_game
from .config import RunConfig
from .grid import Grid, generate_puzzle, read_grid_file, serialize_grid
from .rng import derive_seed, substream

COMPLETED = "completed"
STAGNATED = "stagnated"
REPLAY_CAP = "replay_cap"


class BadRange(ValueError):
    pass


class EmptySociety(ValueError):
    pass


@dataclass(frozen=True)
class Society:
    """Fixed memory profiles plus each agent's current skill-selection weights."""

    profiles: tuple[AgentProfile, ...]
    selectors: tuple[SkillSelector, ...]

    def __post_init__(self) -> None:
        if not self.profiles:
            raise EmptySociety("a society needs at least one agent")
        if len(self.profiles) != len(self.selectors):
            raise ValueError("profiles and selectors must align")
        if len({p.total_mem for p in self.profiles}) != 1:
            raise ValueError("all agents must share the same total memory")

    @property
    def size(self) -> int:
        return len(self.profiles)

    @property
    def total_memory(self) -> int:
        return self.profiles[0].total_mem

    @property
    def mc_values(self) -> tuple[int, ...]:
        return tuple(p.sa_mem for p in self.profiles)

    @property
    def mc_min(self) -> int:
        return min(self.mc_values)

    @property
    def mc_max(self) -> int:
        return max(self.mc_values)


def build_society(config: RunConfig, seed: int) -> Society:
    """The agent lineup: awareness memory stepping up, skill memory stepping down,
    and ten uniform random selector weights per agent from a per-agent stream."""
    if config.mc_min < 1 or config.mc_step < 1 or config.mc_max <= config.mc_min:
        raise BadRange("memory bounds must satisfy 1 <= mc_min < mc_max with step >= 1")
    if (config.mc_max - config.mc_min) % config.mc_step != 0:
        raise BadRange("mc_step must divide mc_max - mc_min evenly")
    if config.mc_max >= config.total_memory:
        raise BadRange("total_memory must exceed mc_max")
    profiles = []
    selectors = []
    for agent_id, sa_mem in enumerate(range(config.mc_min, config.mc_max + 1, config.mc_step)):
        profiles.append(AgentProfile(agent_id, config.total_memory - sa_mem, sa_mem))
        stream = substream(seed, "society", agent_id)
        selectors.append(SkillSelector(tuple(stream.random() for _ in range(10))))
    return Society(tuple(profiles), tuple(selectors))


def score_society(dof_totals) -> list[float]:
    """Score each agent as 1 - f / f_max; everyone scores 1 when all finished."""
    if not dof_totals:
        raise EmptySociety("cannot score an empty society")
    worst = max(dof_totals)
    if worst == 0:
        return [1.0 for _ in dof_totals]
    return [1.0 - f / worst for f in dof_totals]


def memory_similarity(i: int, j: int, society: Society) -> float:
    """Closeness of two agents' awareness-memory sizes on a 0..1 scale (1 = same).

    When every agent has the same awareness memory the spread is zero and all
    pairs count as fully similar.
    """
    spread = society.mc_max - society.mc_min
    if spread == 0:
        return 1.0
    mc = society.mc_values
    return 1.0 - abs(mc[i] - mc[j]) / spread


def fitness(score_j: float, similarity_ij: float) -> float:
    """How fit agent j is to teach agent i: the partner's score scaled by similarity."""
    return score_j * similarity_ij


def select_partner(i: int, scores, society: Society) -> tuple[int | None, float]:
    """The best learning partner for agent ``i``, or None to keep its own ways.

    The winner maximizes fitness, ties going to the more similar memory and
    then the lower agent id. Self fitness equals the agent's own score and is
    the bar: a partner is returned only if someone strictly beats it.
    """
    best_j = i
    best_f = fitness(scores[i], 1.0)
    best_d = 1.0
    for j in range(society.size):
        if j == i:
            continue
        d = memory_similarity(i, j, society)
        f = fitness(scores[j], d)
        if f > best_f or (f == best_f and (d > best_d or (d == best_d and j < best_j))):
            best_j, best_f, best_d = j, f, d
    if best_j == i:
        return None, best_f
    return best_j, best_f


def learn_step(society: Society, scores) -> tuple[Society, list[tuple[int, int, float]]]:
    """One synchronous imitation step.

    Every agent picks its partner against the pre-update selectors, then blends
    its weights toward the partner's: v <- (1 - F) * v + F * v_partner. Returns
    the updated society and the (learner, partner, fitness) events; memory
    profiles never change.
    """
    if len(scores) != society.size:
        raise ValueError("scores must cover every agent")
    events: list[tuple[int, int, float]] = []
    new_selectors = list(society.selectors)
    for i in range(society.size):
        partner, fit = select_partner(i, scores, society)
        if partner is None:
            continue
        own = society.selectors[i].weights
        other = society.selectors[partner].weights
        new_selectors[i] = SkillSelector(
            tuple((1.0 - fit) * a + fit * b for a, b in zip(own, other))
        )
        events.append((i, partner, fit))
    return Society(society.profiles, tuple(new_selectors)), events


@dataclass(frozen=True)
class GameRecord:
    """Per-agent slice of one replay, as persisted in the tournament log."""

    agent: int
    mc: int
    ms: int
    skills: tuple[int, ...]
    dof_total: int
    score: float
    partner: int | None
    partner_fitness: float | None
    passes: int
    fills: tuple[tuple[int, int, int, int], ...]  # (pass, row, col, digit)


@dataclass(frozen=True)
class ReplayRecord:
    games: tuple[GameRecord, ...]

    @property
    def best_score(self) -> float:
        return max(game.score for game in self.games)

    @property
    def learning_events(self) -> list[tuple[int, int, float]]:
        return [
            (game.agent, game.partner, game.partner_fitness)
            for game in self.games
            if game.partner is not None
        ]


@dataclass(frozen=True)
class RoundLog:
    round_no: int
    clue_count: int
    puzzle: str
    replays: tuple[ReplayRecord, ...]
    terminated_by: str


@dataclass(frozen=True)
class TournamentLog:
    seed: int
    config: RunConfig
    rounds: tuple[RoundLog, ...]


def run_round(
    society: Society,
    puzzle: Grid,
    config: RunConfig,
    *,
    round_no: int = 1,
    game_trace: Callable[[str], None] | None = None,
) -> tuple[RoundLog, Society]:
    """Replay one puzzle with learning between attempts until it is beaten,
    the best score stalls for ``stagnation_window`` replays, or ``max_replays``.

    Every replay reloads skills from the current selectors and starts with an
    empty awareness queue; selectors keep learning even on the final replay.
    Returns the round log plus the society carrying the updated selectors.
    """
    replays: list[ReplayRecord] = []
    terminated = REPLAY_CAP
    best_seen = float("-inf")
    stale = 0
    for _ in range(config.max_replays):
        outcomes = [
            play_game(
                profile,
                selector,
                puzzle,
                config.max_steps,
                store_empty_scans=config.store_empty_scans,
                trace=game_trace,
            )
            for profile, selector in zip(society.profiles, society.selectors)
        ]
        dof_totals = [outcome.dof.total for outcome in outcomes]
        scores = score_society(dof_totals)
        society, events = learn_step(society, scores)
        partner_of = {learner: (partner, fit) for learner, partner, fit in events}
        record = ReplayRecord(
            tuple(
                GameRecord(
                    agent=profile.id,
                    mc=profile.sa_mem,
                    ms=profile.skill_mem,
                    skills=outcome.loaded_skills,
                    dof_total=outcome.dof.total,
                    score=score,
                    partner=partner_of.get(profile.id, (None, None))[0],
                    partner_fitness=partner_of.get(profile.id, (None, None))[1],
                    passes=outcome.passes_used,
                    fills=tuple((p, at[0], at[1], d) for p, at, d in outcome.fills),
                )
                for profile, outcome, score in zip(society.profiles, outcomes, scores)
            )
        )
        replays.append(record)
        if any(total == 0 for total in dof_totals):
            terminated = COMPLETED
            break
        if record.best_score > best_seen + config.epsilon:
            best_seen = record.best_score
            stale = 0
        else:
            stale += 1
            if stale >= config.stagnation_window:
                terminated = STAGNATED
                break
    return (
        RoundLog(
            round_no=round_no,
            clue_count=puzzle.filled_count,
            puzzle=serialize_grid(puzzle),
            replays=tuple(replays),
            terminated_by=terminated,
        ),
        society,
    )


def run_tournament(
    config: RunConfig,
    seed: int,
    *,
    game_trace: Callable[[str], None] | None = None,
) -> TournamentLog:
    """Run the full round schedule; the log is fully determined by (config, seed).

    Selectors persist across rounds, so learning is cumulative. Round puzzles
    come from fixture files when configured, otherwise from the generator on a
    per-round stream derived from the seed.
    """
    society = build_society(config, seed)
    rounds: list[RoundLog] = []
    for round_no, clue_count in enumerate(config.rounds, start=1):
        if config.fixtures:
            puzzle = read_grid_file(config.fixtures[round_no - 1])
        else:
            puzzle = generate_puzzle(clue_count, derive_seed(seed, "puzzle", round_no))
        round_log, society = run_round(
            society, puzzle, config, round_no=round_no, game_trace=game_trace
        )
        rounds.append(round_log)
    return TournamentLog(seed=seed, config=config, rounds=tuple(rounds))
