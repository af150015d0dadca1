"""A deterministic, seedable simulator of a society of Sudoku-playing agents
whose fixed working memory is split between loaded scanning skills and a FIFO
situation-awareness queue, plus the social-learning tournament built on it.
"""

from .agent import (
    AgentProfile,
    GameOutcome,
    Observation,
    SAMemory,
    SKILL_BY_CODE,
    SKILLS,
    Skill,
    SkillSelector,
    ZeroCapacity,
    load_skills,
    play_game,
    scan_window,
)
from .config import ConfigError, RunConfig, parse_config, read_config_file, to_text
from .grid import (
    BadChar,
    CellFilled,
    ContradictionFound,
    Coord,
    DIGITS,
    DofReport,
    EMPTY,
    Grid,
    GridError,
    InconsistentGrid,
    WrongLength,
    box_index,
    candidates_unbounded,
    count_solutions,
    generate_puzzle,
    is_consistent,
    parse_grid,
    peers,
    read_grid_file,
    serialize_grid,
    solve_naked_singles,
    write_grid_file,
)
from .logio import dump_tournament_log, read_tournament_log, write_tournament_log
from .metrics import (
    BadSkillCode,
    EmptyInput,
    IoFailure,
    ReportTables,
    ShapeMismatch,
    build_report,
    most_effective_skill,
    score_matrix,
    skill_effectiveness,
    skill_popularity,
    skill_usage_by_memory,
    write_tables,
)
from .rng import derive_seed, substream
from .tournament import (
    BadRange,
    COMPLETED,
    EmptySociety,
    GameRecord,
    REPLAY_CAP,
    ReplayRecord,
    RoundLog,
    STAGNATED,
    Society,
    TournamentLog,
    build_society,
    fitness,
    learn_step,
    memory_similarity,
    run_round,
    run_tournament,
    score_society,
    select_partner,
)

__version__ = "0.1.0"
