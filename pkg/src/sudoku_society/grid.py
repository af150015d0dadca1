"""Sudoku board core: parsing, peer geometry, a full-knowledge single-candidate
solver, and a seeded puzzle generator.

Cells are addressed by ``(row, col)`` pairs in ``[0, 8]`` and stored row-major.
Empty cells are 0 internally and ``'.'`` in the 81-character text format.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

Coord = tuple[int, int]

EMPTY = 0
DIGITS = frozenset(range(1, 10))


class GridError(ValueError):
    """Base class for grid parsing and validation failures."""


class WrongLength(GridError):
    pass


class BadChar(GridError):
    pass


class InconsistentGrid(GridError):
    pass


class CellFilled(GridError):
    pass


class ContradictionFound(GridError):
    """An empty cell has no remaining candidate: the grid cannot be completed."""


def box_index(row: int, col: int) -> int:
    return 3 * (row // 3) + col // 3


def _build_peer_index() -> tuple[frozenset[int], ...]:
    table = []
    for r in range(9):
        for c in range(9):
            cells = {9 * r + k for k in range(9)}
            cells |= {9 * k + c for k in range(9)}
            br, bc = 3 * (r // 3), 3 * (c // 3)
            cells |= {9 * (br + i) + bc + j for i in range(3) for j in range(3)}
            cells.discard(9 * r + c)
            table.append(frozenset(cells))
    return tuple(table)


#: For each cell index, the indices of the 20 cells sharing its row, column or box.
PEER_INDEX: tuple[frozenset[int], ...] = _build_peer_index()


def peers(coord: Coord) -> frozenset[Coord]:
    """The 20 distinct cells sharing ``coord``'s row, column or box."""
    row, col = coord
    if not (0 <= row <= 8 and 0 <= col <= 8):
        raise ValueError(f"coordinate out of range: {coord!r}")
    return frozenset(divmod(i, 9) for i in PEER_INDEX[9 * row + col])


@dataclass(frozen=True)
class Grid:
    """An immutable 9x9 board; ``cells[9*r + c]`` is a digit 1-9 or 0 when empty."""

    cells: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.cells) != 81:
            raise WrongLength(f"expected 81 cells, got {len(self.cells)}")
        for value in self.cells:
            if value != EMPTY and value not in DIGITS:
                raise BadChar(f"cell value out of range: {value!r}")

    @staticmethod
    def blank() -> "Grid":
        return Grid((EMPTY,) * 81)

    def get(self, coord: Coord) -> int:
        return self.cells[9 * coord[0] + coord[1]]

    def with_value(self, coord: Coord, digit: int) -> "Grid":
        cells = list(self.cells)
        cells[9 * coord[0] + coord[1]] = digit
        return Grid(tuple(cells))

    @property
    def filled_count(self) -> int:
        return sum(1 for v in self.cells if v != EMPTY)

    @property
    def is_complete(self) -> bool:
        return EMPTY not in self.cells

    def empty_cells(self) -> list[Coord]:
        return [divmod(i, 9) for i, v in enumerate(self.cells) if v == EMPTY]


@dataclass(frozen=True)
class DofReport:
    """Degrees of freedom of every empty cell and their sum (0 iff complete)."""

    per_cell: dict[Coord, int]
    total: int


def is_consistent(grid: Grid) -> bool:
    """True when no two equal digits share a row, column or box."""
    cells = grid.cells
    for i, value in enumerate(cells):
        if value == EMPTY:
            continue
        for j in PEER_INDEX[i]:
            if cells[j] == value:
                return False
    return True


def parse_grid(text: str, force: bool = False) -> Grid:
    """Parse an 81-character board, '.' for empty, whitespace ignored.

    ``force`` loads a grid with peer conflicts anyway (testing hook); the
    round-trip with :func:`serialize_grid` holds either way.
    """
    payload = "".join(text.split())
    if len(payload) != 81:
        raise WrongLength(f"expected 81 payload characters, got {len(payload)}")
    cells = []
    for position, char in enumerate(payload):
        if char == ".":
            cells.append(EMPTY)
        elif "1" <= char <= "9":
            cells.append(int(char))
        else:
            raise BadChar(f"invalid character {char!r} at position {position}")
    grid = Grid(tuple(cells))
    if not force and not is_consistent(grid):
        raise InconsistentGrid("duplicate digit among row/column/box peers")
    return grid


def serialize_grid(grid: Grid) -> str:
    return "".join("." if v == EMPTY else str(v) for v in grid.cells)


def read_grid_file(path, force: bool = False) -> Grid:
    """Load a one-grid fixture file; lines starting with '#' are ignored."""
    with open(path, "r", encoding="utf-8") as fh:
        payload = "".join(line for line in fh if not line.lstrip().startswith("#"))
    return parse_grid(payload, force=force)


def write_grid_file(path, grid: Grid, comment: str | None = None) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        if comment:
            fh.write(f"# {comment}\n")
        fh.write(serialize_grid(grid) + "\n")


def _candidates_at(cells, idx: int) -> set[int]:
    seen = {cells[j] for j in PEER_INDEX[idx]}
    return set(DIGITS - seen)


def candidates_unbounded(grid: Grid, coord: Coord) -> set[int]:
    """Candidates left at an empty cell given every filled peer (full knowledge)."""
    idx = 9 * coord[0] + coord[1]
    if grid.cells[idx] != EMPTY:
        raise CellFilled(f"cell {coord!r} already holds {grid.cells[idx]}")
    return _candidates_at(grid.cells, idx)


def solve_naked_singles(grid: Grid, max_steps: int = 10) -> tuple[Grid, DofReport]:
    """Fill single-candidate cells in row-major passes until fixpoint or ``max_steps``.

    Fills made early in a pass are visible to later cells of the same pass.
    The report is computed on the final grid with full-knowledge candidates.
    """
    if max_steps < 1:
        raise ValueError("max_steps must be >= 1")
    if not is_consistent(grid):
        raise InconsistentGrid("input grid has a duplicate digit among peers")
    work = list(grid.cells)
    for _ in range(max_steps):
        empties = [i for i, v in enumerate(work) if v == EMPTY]
        if not empties:
            break
        fills = 0
        for idx in empties:
            cands = _candidates_at(work, idx)
            if not cands:
                raise ContradictionFound(f"no candidate left for cell {divmod(idx, 9)!r}")
            if len(cands) == 1:
                work[idx] = next(iter(cands))
                fills += 1
        if fills == 0:
            break
    per_cell: dict[Coord, int] = {}
    for idx, value in enumerate(work):
        if value == EMPTY:
            cands = _candidates_at(work, idx)
            if not cands:
                raise ContradictionFound(f"no candidate left for cell {divmod(idx, 9)!r}")
            per_cell[divmod(idx, 9)] = len(cands)
    return Grid(tuple(work)), DofReport(per_cell, sum(per_cell.values()))


def _fill_complete(cells: list[int], rng: random.Random) -> bool:
    try:
        idx = cells.index(EMPTY)
    except ValueError:
        return True
    digits = sorted(_candidates_at(cells, idx))
    rng.shuffle(digits)
    for digit in digits:
        cells[idx] = digit
        if _fill_complete(cells, rng):
            return True
    cells[idx] = EMPTY
    return False


def generate_puzzle(clue_count: int, seed: int) -> Grid:
    """A consistent, solvable puzzle with exactly ``clue_count`` clues, fixed per seed.

    A complete solution is built by seeded backtracking with per-cell shuffled
    digit order, then cells are blanked in a seeded random permutation until
    ``clue_count`` remain. Solution uniqueness is not enforced; difficulty is
    the clue count alone.
    """
    if not 17 <= clue_count <= 81:
        raise ValueError(f"clue_count must be in [17, 81], got {clue_count}")
    rng = random.Random(seed)
    cells = [EMPTY] * 81
    _fill_complete(cells, rng)
    order = list(range(81))
    rng.shuffle(order)
    for idx in order[: 81 - clue_count]:
        cells[idx] = EMPTY
    return Grid(tuple(cells))


def count_solutions(grid: Grid, cap: int = 2) -> int:
    """Count completions by backtracking, stopping early once ``cap`` are found."""
    if cap < 1:
        raise ValueError("cap must be >= 1")
    if not is_consistent(grid):
        raise InconsistentGrid("input grid has a duplicate digit among peers")
    work = list(grid.cells)
    found = 0

    def recurse() -> None:
        nonlocal found
        best_idx = -1
        best: set[int] | None = None
        for idx, value in enumerate(work):
            if value != EMPTY:
                continue
            cands = _candidates_at(work, idx)
            if best is None or len(cands) < len(best):
                best_idx, best = idx, cands
                if len(cands) <= 1:
                    break
        if best is None:
            found += 1
            return
        for digit in sorted(best):
            work[best_idx] = digit
            recurse()
            work[best_idx] = EMPTY
            if found >= cap:
                return

    recurse()
    return min(found, cap)
