from pathlib import Path

import pytest

from sudoku_society import parse_grid, read_grid_file
from sudoku_society.cli import main

TINY_CONFIG = """
# fast settings for tests
rounds=78,76
seeds=1,2
max_replays=4
stagnation_window=2
"""


def write_tiny_config(tmp_path: Path) -> Path:
    path = tmp_path / "run.cfg"
    path.write_text(TINY_CONFIG, encoding="utf-8")
    return path


def run_cli(*argv: str) -> int:
    return main(list(argv))


def test_generate_writes_requested_clues(tmp_path, capsys):
    out = tmp_path / "p.txt"
    assert run_cli("generate", "--clues", "32", "--seed", "7", "--out", str(out)) == 0
    grid = read_grid_file(out)
    assert grid.filled_count == 32
    printed = capsys.readouterr().out
    assert "32 clues" in printed
    assert "consistent: yes" in printed
    assert "solutions (capped at 2):" in printed


def test_generate_complete_grid(tmp_path):
    out = tmp_path / "full.txt"
    assert run_cli("generate", "--clues", "81", "--seed", "1", "--out", str(out)) == 0
    assert read_grid_file(out).is_complete


def test_generate_rejects_low_clue_count(tmp_path, capsys):
    out = tmp_path / "p.txt"
    assert run_cli("generate", "--clues", "5", "--seed", "1", "--out", str(out)) == 1
    assert "17" in capsys.readouterr().err
    assert not out.exists()


def test_generate_is_idempotent(tmp_path):
    first = tmp_path / "a.txt"
    second = tmp_path / "b.txt"
    run_cli("generate", "--clues", "41", "--seed", "3", "--out", str(first))
    run_cli("generate", "--clues", "41", "--seed", "3", "--out", str(second))
    assert first.read_bytes() == second.read_bytes()


def test_run_writes_logs_and_snapshots(tmp_path, capsys):
    config = write_tiny_config(tmp_path)
    out = tmp_path / "out"
    assert run_cli("run", "--config", str(config), "--out", str(out)) == 0
    for seed in (1, 2):
        seed_dir = out / "runs" / f"seed-{seed}"
        assert (seed_dir / "tournament.log").is_file()
        assert (seed_dir / "config.txt").is_file()
    snapshot = (out / "runs" / "seed-1" / "config.txt").read_text()
    assert "rounds=78,76" in snapshot
    assert "total_memory=54" in snapshot
    assert "completed 2 tournament(s)" in capsys.readouterr().out


def test_run_is_reproducible(tmp_path):
    config = write_tiny_config(tmp_path)
    first = tmp_path / "one"
    second = tmp_path / "two"
    run_cli("run", "--config", str(config), "--seeds", "42", "--out", str(first))
    run_cli("run", "--config", str(config), "--seeds", "42", "--out", str(second))
    a = (first / "runs" / "seed-42" / "tournament.log").read_bytes()
    b = (second / "runs" / "seed-42" / "tournament.log").read_bytes()
    assert a == b


def test_run_rejects_invalid_memory_bounds(tmp_path, capsys):
    config = tmp_path / "bad.cfg"
    config.write_text("mc_max=60\n", encoding="utf-8")
    assert run_cli("run", "--config", str(config), "--out", str(tmp_path / "o")) == 1
    assert "mc_max" in capsys.readouterr().err


def test_run_rejects_unknown_key(tmp_path, capsys):
    assert (
        run_cli(
            "run",
            "--set",
            "mystery=1",
            "--out",
            str(tmp_path / "o"),
        )
        == 1
    )
    assert "mystery" in capsys.readouterr().err


def test_snapshot_alone_reproduces_run(tmp_path):
    config = write_tiny_config(tmp_path)
    first = tmp_path / "one"
    run_cli("run", "--config", str(config), "--seeds", "7", "--out", str(first))
    snapshot = first / "runs" / "seed-7" / "config.txt"

    second = tmp_path / "two"
    assert run_cli("run", "--config", str(snapshot), "--out", str(second)) == 0
    a = (first / "runs" / "seed-7" / "tournament.log").read_bytes()
    b = (second / "runs" / "seed-7" / "tournament.log").read_bytes()
    assert a == b


@pytest.fixture(scope="module")
def tiny_run_dir(tmp_path_factory) -> Path:
    root = tmp_path_factory.mktemp("tiny-run")
    config = write_tiny_config(root)
    assert run_cli("run", "--config", str(config), "--out", str(root / "out")) == 0
    return root / "out"


def test_report_emits_tables_and_figures(tiny_run_dir, tmp_path, capsys):
    report_dir = tmp_path / "report"
    assert (
        run_cli("report", "--runs", str(tiny_run_dir / "runs"), "--out", str(report_dir)) == 0
    )
    for name in ("popularity", "effectiveness", "usage_by_memory", "score_matrix"):
        csv_path = report_dir / f"{name}.csv"
        assert csv_path.is_file() and csv_path.stat().st_size > 0
        assert (report_dir / f"{name}.png").is_file()
    printed = capsys.readouterr().out
    assert "top popularity:" in printed
    assert "top effectiveness:" in printed


def test_report_can_skip_figures(tiny_run_dir, tmp_path):
    report_dir = tmp_path / "report"
    assert (
        run_cli(
            "report",
            "--runs",
            str(tiny_run_dir / "runs"),
            "--out",
            str(report_dir),
            "--no-figures",
        )
        == 0
    )
    assert not list(report_dir.glob("*.png"))
    assert len(list(report_dir.glob("*.csv"))) == 4


def test_report_respects_skill_override(tiny_run_dir, tmp_path):
    report_dir = tmp_path / "report"
    assert (
        run_cli(
            "report",
            "--runs",
            str(tiny_run_dir / "runs"),
            "--out",
            str(report_dir),
            "--skill",
            "8",
            "--no-figures",
        )
        == 0
    )
    header, *rows = (report_dir / "usage_by_memory.csv").read_text().splitlines()
    assert header == "mc,count"
    assert len(rows) == 19


def test_report_rejects_empty_directory(tmp_path, capsys):
    empty = tmp_path / "nothing"
    empty.mkdir()
    assert run_cli("report", "--runs", str(empty), "--out", str(tmp_path / "r")) == 1
    assert "no tournament.log" in capsys.readouterr().err


def test_report_rejects_mixed_configs(tiny_run_dir, tmp_path, capsys):
    mixed = tmp_path / "mixed"
    mixed.mkdir()
    (mixed / "seed-1").mkdir()
    (mixed / "seed-1" / "tournament.log").write_bytes(
        (tiny_run_dir / "runs" / "seed-1" / "tournament.log").read_bytes()
    )
    other_cfg = tmp_path / "other.cfg"
    other_cfg.write_text("rounds=78,76\nmc_max=41\nmax_replays=2\n", encoding="utf-8")
    assert run_cli("run", "--config", str(other_cfg), "--seeds", "1", "--out", str(tmp_path / "other")) == 0
    (mixed / "seed-9").mkdir()
    (mixed / "seed-9" / "tournament.log").write_bytes(
        (tmp_path / "other" / "runs" / "seed-1" / "tournament.log").read_bytes()
    )
    assert run_cli("report", "--runs", str(mixed), "--out", str(tmp_path / "r")) == 1
    assert "mc_max" in capsys.readouterr().err


def test_fixture_round_override(tmp_path):
    fixture = tmp_path / "round.txt"
    run_cli("generate", "--clues", "81", "--seed", "9", "--out", str(fixture))
    out = tmp_path / "out"
    assert (
        run_cli(
            "run",
            "--set",
            "rounds=81",
            "--set",
            f"fixtures={fixture}",
            "--seeds",
            "1",
            "--out",
            str(out),
        )
        == 0
    )
    log_text = (out / "runs" / "seed-1" / "tournament.log").read_text()
    assert parse_grid(fixture.read_text().splitlines()[-1]).is_complete
    assert '"terminated_by":"completed"' in log_text


def test_help_exits_zero(capsys):
    assert run_cli("--help") == 0
    assert "generate" in capsys.readouterr().out
