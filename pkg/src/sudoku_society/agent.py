"""The bounded-memory player: scanning skills, weight-driven skill loading,
a FIFO situation-awareness queue, and full game play over a puzzle.

An agent's working memory is a fixed number of units split between skill
storage (one unit per cell of each loaded scanning pattern) and the awareness
queue (one slot per remembered observation). Play repeatedly visits empty
cells, scans the loaded windows, and commits a digit whenever the remembered
digits around a cell leave exactly one possibility.
"""

from __future__ import annotations

from collections import OrderedDict
from dataclasses import dataclass
from typing import Callable

from .grid import (
    DIGITS,
    EMPTY,
    Coord,
    DofReport,
    Grid,
    InconsistentGrid,
    PEER_INDEX,
    is_consistent,
)

ROW = "ROW"
COL = "COL"
BOX = "BOX"


class ZeroCapacity(ValueError):
    pass


@dataclass(frozen=True)
class Skill:
    """A named scanning pattern; storing it costs one memory unit per scanned cell."""

    code: int
    kind: str
    span: int

    @property
    def cost(self) -> int:
        return self.span

    @property
    def name(self) -> str:
        return f"{self.kind}{self.span}"


SKILLS: tuple[Skill, ...] = (
    Skill(1, ROW, 3),
    Skill(2, ROW, 5),
    Skill(3, ROW, 7),
    Skill(4, ROW, 9),
    Skill(5, COL, 3),
    Skill(6, COL, 5),
    Skill(7, COL, 7),
    Skill(8, COL, 9),
    Skill(9, BOX, 5),
    Skill(10, BOX, 9),
)

SKILL_BY_CODE: dict[int, Skill] = {skill.code: skill for skill in SKILLS}


@dataclass(frozen=True)
class SkillSelector:
    """The ten skill-selection weights, index ``code - 1``, each in [0, 1]."""

    weights: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.weights) != len(SKILLS):
            raise ValueError(f"expected {len(SKILLS)} weights, got {len(self.weights)}")
        for w in self.weights:
            if not 0.0 <= w <= 1.0:
                raise ValueError(f"weight out of [0, 1]: {w!r}")

    def weight(self, code: int) -> float:
        return self.weights[code - 1]


@dataclass(frozen=True)
class AgentProfile:
    """An agent's fixed memory split: ``skill_mem`` + ``sa_mem`` never changes."""

    id: int
    skill_mem: int
    sa_mem: int

    @property
    def total_mem(self) -> int:
        return self.skill_mem + self.sa_mem


@dataclass(frozen=True)
class Observation:
    """One remembered scan result: the digit seen at a cell.

    Digit 0 marks a cell that was scanned while empty; such entries are only
    recorded when empty scans are configured to occupy memory.
    """

    at: Coord
    digit: int


class SAMemory:
    """Bounded FIFO of scan observations with refresh-on-duplicate coordinates.

    Pushing a coordinate already present moves it to the newest slot instead
    of storing a duplicate; pushing beyond capacity evicts the oldest entry.
    At most one entry per cell, length never exceeds capacity.
    """

    def __init__(self, capacity: int, trace: Callable[[str], None] | None = None):
        if capacity < 0:
            raise ValueError("capacity must be >= 0")
        self.capacity = capacity
        self._entries: OrderedDict[int, int] = OrderedDict()
        self._trace = trace

    def __len__(self) -> int:
        return len(self._entries)

    def push(self, obs: Observation) -> None:
        self._push(9 * obs.at[0] + obs.at[1], obs.digit)

    def _push(self, idx: int, digit: int) -> None:
        if self.capacity == 0:
            raise ZeroCapacity("cannot store observations in a zero-size queue")
        entries = self._entries
        evicted = -1
        if idx in entries:
            entries.move_to_end(idx)
            entries[idx] = digit
        else:
            if len(entries) >= self.capacity:
                evicted, _ = entries.popitem(last=False)
            entries[idx] = digit
        if self._trace is not None:
            suffix = f" evicted={evicted // 9},{evicted % 9}" if evicted >= 0 else ""
            self._trace(
                f"event=push at={idx // 9},{idx % 9} digit={digit}"
                f" qlen={len(entries)} cap={self.capacity}{suffix}"
            )

    def observations(self) -> list[Observation]:
        """Queue contents, oldest first."""
        return [Observation(divmod(idx, 9), digit) for idx, digit in self._entries.items()]

    def visible_candidates(self, target: Coord) -> set[int]:
        """Digits still possible at ``target`` given remembered peer digits.

        Observations at non-peer cells (and scanned-empty markers) eliminate
        nothing, so this is always a superset of the full-knowledge candidates.
        """
        peer_cells = PEER_INDEX[9 * target[0] + target[1]]
        seen = {d for idx, d in self._entries.items() if d and idx in peer_cells}
        return set(DIGITS - seen)


def load_skills(selector: SkillSelector, skill_mem: int) -> list[Skill]:
    """Greedily load skills by descending weight (ties to the lower code).

    A skill too large for the remaining capacity is skipped and the scan
    continues with the next one; the returned order is the loading order.
    """
    if skill_mem < 0:
        raise ValueError("skill_mem must be >= 0")
    remaining = skill_mem
    loaded: list[Skill] = []
    for skill in sorted(SKILLS, key=lambda s: (-selector.weight(s.code), s.code)):
        if skill.cost <= remaining:
            loaded.append(skill)
            remaining -= skill.cost
    return loaded


def scan_window(skill: Skill, target: Coord) -> list[Coord]:
    """Cells covered by applying ``skill`` at ``target``, in scan order.

    Line windows are centered on the target and clamped to the grid edge; box
    windows take the first ``span`` cells of the target's box in reading
    order. The (empty) target cell itself may be included.
    """
    row, col = target
    span = skill.span
    if skill.kind == ROW:
        start = min(max(col - span // 2, 0), 9 - span)
        return [(row, start + k) for k in range(span)]
    if skill.kind == COL:
        start = min(max(row - span // 2, 0), 9 - span)
        return [(start + k, col) for k in range(span)]
    box_row, box_col = 3 * (row // 3), 3 * (col // 3)
    cells = [(box_row + i, box_col + j) for i in range(3) for j in range(3)]
    return cells[:span]


def _build_window_table() -> dict[int, tuple[tuple[int, ...], ...]]:
    table: dict[int, tuple[tuple[int, ...], ...]] = {}
    for skill in SKILLS:
        per_cell = []
        for idx in range(81):
            window = scan_window(skill, divmod(idx, 9))
            per_cell.append(tuple(9 * r + c for r, c in window))
        table[skill.code] = tuple(per_cell)
    return table


_WINDOW_TABLE = _build_window_table()


@dataclass(frozen=True)
class GameOutcome:
    """Everything one game produced, scored through the agent's own awareness."""

    final_grid: Grid
    dof: DofReport
    loaded_skills: tuple[int, ...]
    fills: tuple[tuple[int, Coord, int], ...]
    passes_used: int


def play_game(
    profile: AgentProfile,
    selector: SkillSelector,
    puzzle: Grid,
    max_steps: int = 10,
    *,
    store_empty_scans: bool = False,
    trace: Callable[[str], None] | None = None,
) -> GameOutcome:
    """Play one game with bounded memory and return the outcome.

    Each pass visits the currently-empty cells in row-major order, scans every
    loaded window (pushing results into the awareness queue), and fills a cell
    immediately when its remembered candidates are a singleton, so the fill is
    visible to later cells and passes. Play stops at a zero-fill pass or after
    ``max_steps`` passes; a final no-fill evaluation of the same scan procedure
    yields the per-cell degrees of freedom. Pure in all inputs.
    """
    if max_steps < 1:
        raise ValueError("max_steps must be >= 1")
    if not is_consistent(puzzle):
        raise InconsistentGrid("puzzle has a duplicate digit among peers")
    loaded = load_skills(selector, profile.skill_mem)
    memory = SAMemory(profile.sa_mem, trace=trace)
    window_tables = [_WINDOW_TABLE[skill.code] for skill in loaded]
    work = list(puzzle.cells)
    if trace is not None:
        codes = ",".join(str(skill.code) for skill in loaded)
        trace(
            f"event=game agent={profile.id} ms={profile.skill_mem}"
            f" mc={profile.sa_mem} skills={codes}"
        )

    def scan(idx: int) -> set[int]:
        for table in window_tables:
            for j in table[idx]:
                value = work[j]
                if value != EMPTY:
                    memory._push(j, value)
                elif store_empty_scans:
                    memory._push(j, 0)
        cands = memory.visible_candidates(divmod(idx, 9))
        if trace is not None:
            digits = ",".join(str(d) for d in sorted(cands))
            trace(f"event=cands cell={idx // 9},{idx % 9} n={len(cands)} digits={digits}")
        return cands

    fills: list[tuple[int, Coord, int]] = []
    passes_used = 0
    for pass_no in range(1, max_steps + 1):
        empties = [i for i, v in enumerate(work) if v == EMPTY]
        if not empties:
            break
        passes_used = pass_no
        if trace is not None:
            trace(f"event=pass n={pass_no}")
        before = len(fills)
        memory_before = tuple(memory._entries.items())
        for idx in empties:
            cands = scan(idx)
            if len(cands) == 1:
                digit = next(iter(cands))
                work[idx] = digit
                fills.append((pass_no, divmod(idx, 9), digit))
                if trace is not None:
                    trace(f"event=fill cell={idx // 9},{idx % 9} digit={digit} pass={pass_no}")
        # A zero-fill pass is only a fixpoint if it also left the queue exactly
        # as it started; otherwise the reshuffled memory can unlock fills later.
        if len(fills) == before and tuple(memory._entries.items()) == memory_before:
            break

    if trace is not None:
        trace("event=eval")
    per_cell: dict[Coord, int] = {}
    for idx, value in enumerate(work):
        if value == EMPTY:
            per_cell[divmod(idx, 9)] = len(scan(idx))
    return GameOutcome(
        final_grid=Grid(tuple(work)),
        dof=DofReport(per_cell, sum(per_cell.values())),
        loaded_skills=tuple(skill.code for skill in loaded),
        fills=tuple(fills),
        passes_used=passes_used,
    )
