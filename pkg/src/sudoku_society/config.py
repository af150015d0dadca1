"""Flat key=value run configuration, defaulting to the standard experiment:
19 agents sharing 54 memory units, nine rounds of decreasing clue counts,
ten seeds.
"""

from __future__ import annotations

from dataclasses import dataclass, fields, replace

DEFAULT_ROUNDS: tuple[int, ...] = (76, 74, 71, 67, 62, 56, 49, 41, 32)
DEFAULT_SEEDS: tuple[int, ...] = tuple(range(1, 11))


class ConfigError(ValueError):
    """A configuration key is unknown, malformed, or violates an invariant."""

    def __init__(self, key: str, message: str):
        super().__init__(f"{key}: {message}")
        self.key = key


@dataclass(frozen=True)
class RunConfig:
    total_memory: int = 54
    mc_min: int = 9
    mc_max: int = 45
    mc_step: int = 2
    rounds: tuple[int, ...] = DEFAULT_ROUNDS
    max_steps: int = 10
    epsilon: float = 1e-9
    stagnation_window: int = 5
    max_replays: int = 50
    store_empty_scans: bool = False
    seeds: tuple[int, ...] = DEFAULT_SEEDS
    out_dir: str = "out"
    fixtures: tuple[str, ...] = ()

    @property
    def agent_count(self) -> int:
        return (self.mc_max - self.mc_min) // self.mc_step + 1

    def validate(self) -> None:
        if self.total_memory < 1:
            raise ConfigError("total_memory", "must be >= 1")
        if self.mc_min < 1:
            raise ConfigError("mc_min", "must be >= 1")
        if self.mc_step < 1:
            raise ConfigError("mc_step", "must be >= 1")
        if self.mc_max <= self.mc_min:
            raise ConfigError("mc_max", "must exceed mc_min")
        if (self.mc_max - self.mc_min) % self.mc_step != 0:
            raise ConfigError("mc_step", "must divide mc_max - mc_min evenly")
        if self.mc_max >= self.total_memory:
            raise ConfigError("mc_max", "must be below total_memory")
        if not self.rounds:
            raise ConfigError("rounds", "must list at least one clue count")
        for clue_count in self.rounds:
            if not 17 <= clue_count <= 81:
                raise ConfigError("rounds", f"clue count {clue_count} outside [17, 81]")
        if self.max_steps < 1:
            raise ConfigError("max_steps", "must be >= 1")
        if self.epsilon < 0:
            raise ConfigError("epsilon", "must be >= 0")
        if self.stagnation_window < 1:
            raise ConfigError("stagnation_window", "must be >= 1")
        if self.max_replays < 1:
            raise ConfigError("max_replays", "must be >= 1")
        if not self.seeds:
            raise ConfigError("seeds", "must list at least one seed")
        if self.fixtures and len(self.fixtures) != len(self.rounds):
            raise ConfigError("fixtures", "must list one puzzle path per round")


_INT_LIST_KEYS = {"rounds", "seeds"}
_STR_LIST_KEYS = {"fixtures"}
_INT_KEYS = {
    "total_memory",
    "mc_min",
    "mc_max",
    "mc_step",
    "max_steps",
    "stagnation_window",
    "max_replays",
}
_FLOAT_KEYS = {"epsilon"}
_BOOL_KEYS = {"store_empty_scans"}
_STR_KEYS = {"out_dir"}
_ALL_KEYS = _INT_LIST_KEYS | _STR_LIST_KEYS | _INT_KEYS | _FLOAT_KEYS | _BOOL_KEYS | _STR_KEYS


def parse_value(key: str, raw: str):
    """Convert one configuration value from its key=value text form."""
    raw = raw.strip()
    try:
        if key in _INT_KEYS:
            return int(raw)
        if key in _FLOAT_KEYS:
            return float(raw)
        if key in _BOOL_KEYS:
            if raw.lower() in ("true", "1", "yes"):
                return True
            if raw.lower() in ("false", "0", "no"):
                return False
            raise ValueError(raw)
        if key in _INT_LIST_KEYS:
            return tuple(int(part) for part in raw.split(",") if part.strip())
        if key in _STR_LIST_KEYS:
            return tuple(part.strip() for part in raw.split(",") if part.strip())
        if key in _STR_KEYS:
            return raw
    except ValueError as exc:
        raise ConfigError(key, f"cannot parse value {raw!r}") from exc
    raise ConfigError(key, "unknown configuration key")


def apply_overrides(config: RunConfig, overrides: dict[str, str]) -> RunConfig:
    updates = {}
    for key, raw in overrides.items():
        if key not in _ALL_KEYS:
            raise ConfigError(key, "unknown configuration key")
        updates[key] = parse_value(key, raw)
    return replace(config, **updates)


def parse_config(text: str, base: RunConfig | None = None) -> RunConfig:
    """Parse key=value lines ('#' comments and blank lines ignored) over ``base``."""
    overrides: dict[str, str] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if "=" not in stripped:
            raise ConfigError(f"line {lineno}", f"expected key=value, got {stripped!r}")
        key, _, raw = stripped.partition("=")
        overrides[key.strip()] = raw
    return apply_overrides(base or RunConfig(), overrides)


def read_config_file(path, base: RunConfig | None = None) -> RunConfig:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_config(fh.read(), base=base)


def to_text(config: RunConfig) -> str:
    """Canonical snapshot of every key; parsing it back reproduces ``config``."""
    lines = []
    for field in fields(RunConfig):
        value = getattr(config, field.name)
        if isinstance(value, tuple):
            rendered = ",".join(str(item) for item in value)
        elif isinstance(value, bool):
            rendered = "true" if value else "false"
        else:
            rendered = repr(value) if isinstance(value, float) else str(value)
        lines.append(f"{field.name}={rendered}")
    return "\n".join(lines) + "\n"


def write_config_file(path, config: RunConfig) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(to_text(config))
