"""Command-line front end.

Batch commands operate directly on event-log files; `serve` starts the HTTP
service. Exit codes: 0 success, 1 domain error (message on stderr), 2 usage.
"""

from __future__ import annotations

import csv
import functools
import io
import json
import os
import sys
from pathlib import Path

import click

from .core import (
    GameResult,
    TournamentError,
    append_records,
    config_from_dict,
    parse_roster,
    read_events,
    read_roster,
    replay,
    substream,
)
from .core.state import TournamentState
from .engine import (
    complete_tier,
    create_tournament,
    enter_result,
    forfeit as forfeit_op,
    pairings_view,
    standings_csv,
)
from .scheduling import round_robin, schedule_to_csv
from . import analyze as analyze_mod
from . import simulate as simulate_mod

PAIRINGS_HEADER = ["tier", "group", "round", "ref", "white", "black", "bye"]

RESULT_TOKENS = [r.value for r in GameResult]


def domain_errors(fn):
    """Map engine and parse failures to exit 1 with the message on stderr."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except TournamentError as exc:
            click.echo(f"{exc.code}: {exc}", err=True)
            for key, value in sorted(exc.details.items()):
                if isinstance(value, (list, tuple)):
                    for item in value:
                        click.echo(f"  {key}: {item}", err=True)
                else:
                    click.echo(f"  {key}: {value}", err=True)
            sys.exit(1)
        except ValueError as exc:
            click.echo(str(exc), err=True)
            sys.exit(1)

    return wrapper


def load_config(path: Path):
    return config_from_dict(json.loads(path.read_text(encoding="utf-8")))


def pairings_sheet(state: TournamentState) -> str:
    """Current tier's published schedule, boards and byes, as CSV."""
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(PAIRINGS_HEADER)
    rows = [
        (b.tier, b.group_id, b.round, b.ref, b.white_id, b.black_id, "")
        for b in pairings_view(state)
    ]
    for group in state.current_groups():
        for rnd in group.rounds:
            if rnd.bye is not None:
                rows.append((group.tier, group.group_id, rnd.round, "", "", "", rnd.bye))
    for row in sorted(rows, key=lambda r: (r[1], r[2], r[3])):
        writer.writerow(row)
    return buf.getvalue()


def load_state(log_path: Path) -> TournamentState:
    return replay(read_events(log_path))


in_file = click.Path(exists=True, dir_okay=False, path_type=Path)


@click.group()
def main() -> None:
    """Run and study tiered tournaments."""


@main.command()
@click.option("--config", "config_path", required=True, type=in_file, help="Config JSON.")
@click.option("--roster", "roster_path", required=True, type=in_file, help="Roster CSV.")
@click.option(
    "--out",
    "out_path",
    required=True,
    type=click.Path(dir_okay=False, path_type=Path),
    help="Event log to create.",
)
@domain_errors
def new(config_path: Path, roster_path: Path, out_path: Path) -> None:
    """Create a tournament log and print the tier-1 pairings."""
    if out_path.exists():
        raise ValueError(f"refusing to overwrite existing log {out_path}")
    progress = create_tournament(load_config(config_path), read_roster(roster_path))
    append_records(out_path, progress.new_records)
    click.echo(pairings_sheet(progress.state), nl=False)


@main.command()
@click.option("--log", "log_path", required=True, type=in_file)
@domain_errors
def pair(log_path: Path) -> None:
    """Print the current tier's pairings (CSV, with colors and byes)."""
    click.echo(pairings_sheet(load_state(log_path)), nl=False)


@main.command()
@click.option("--log", "log_path", required=True, type=in_file)
@click.option("--game", "game_ref", required=True)
@click.option("--result", "token", required=True, type=click.Choice(RESULT_TOKENS))
@click.option("--moves", required=True, type=click.IntRange(min=1))
@domain_errors
def result(log_path: Path, game_ref: str, token: str, moves: int) -> None:
    """Append one game result to the log."""
    progress = enter_result(load_state(log_path), game_ref, GameResult.from_token(token), moves)
    append_records(log_path, progress.new_records)


@main.command()
@click.option("--log", "log_path", required=True, type=in_file)
@click.option("--player", "player_id", required=True)
@click.option("--reason", default="")
@domain_errors
def forfeit(log_path: Path, player_id: str, reason: str) -> None:
    """Withdraw a player; their open games score as losses."""
    progress = forfeit_op(load_state(log_path), player_id, reason)
    append_records(log_path, progress.new_records)


@main.command("complete-tier")
@click.option("--log", "log_path", required=True, type=in_file)
@click.option(
    "--accept-ties",
    is_flag=True,
    help="In interactive mode, confirm any random tie-break instead of stopping.",
)
@domain_errors
def complete_tier_cmd(log_path: Path, accept_ties: bool) -> None:
    """Score the current tier, promote, and print its final standings."""
    state = load_state(log_path)
    tier = state.current_tier
    progress = complete_tier(state, confirm_random=accept_ties)
    append_records(log_path, progress.new_records)
    for standing in progress.state.standings_history[tier]:
        click.echo(f"tier {tier} group {standing.group_id}")
        click.echo(standings_csv(standing.rows), nl=False)
    promoted = progress.state.promoted_history.get(tier, ())
    if promoted:
        click.echo("promoted: " + ",".join(promoted))
    if progress.state.winner is not None:
        click.echo(f"winner: {progress.state.winner}")


@main.command()
@click.option("--config", "config_path", required=True, type=in_file)
@click.option("--roster", "roster_path", required=True, type=in_file)
@click.option("--reps", required=True, type=click.IntRange(min=1))
@click.option("--seed", required=True, type=int)
@click.option("--draw-base", type=click.FloatRange(0.0, 1.0), default=0.5, show_default=True)
@click.option(
    "--baseline",
    type=click.Choice(sorted(simulate_mod.BASELINE_FORMATS)),
    default=None,
    help="Simulate a comparison format instead of the tier format.",
)
@domain_errors
def simulate(
    config_path: Path,
    roster_path: Path,
    reps: int,
    seed: int,
    draw_base: float,
    baseline: str | None,
) -> None:
    """Monte Carlo winner/game-count report, as CSV."""
    roster = read_roster(roster_path)
    model = simulate_mod.GameModel(draw_base=draw_base)
    if baseline is None:
        report = simulate_mod.run_replications(load_config(config_path), roster, model, reps, seed)
    else:
        report = simulate_mod.run_baseline(baseline, roster, model, reps, seed)
    click.echo(simulate_mod.report_csv(report), nl=False)


@main.command()
@click.option("--games", "games_path", required=True, type=in_file, help="Archive games CSV.")
@click.option("--roster", "roster_path", required=True, type=in_file)
@click.option("--config", "config_path", required=True, type=in_file)
@click.option("--seed", required=True, type=int)
@domain_errors
def analyze(games_path: Path, roster_path: Path, config_path: Path, seed: int) -> None:
    """Replay the tier format over archived games and print the tier report."""
    db = analyze_mod.ingest_games(games_path)
    for rejection in db.rejections:
        click.echo(f"rejected line {rejection.line}: {rejection.reason}", err=True)
    report = analyze_mod.replay_historical(
        db, read_roster(roster_path), load_config(config_path), substream(seed, "replay")
    )
    click.echo(analyze_mod.report_text(report), nl=False)


@main.command()
@click.option("--group", "group_path", required=True, type=in_file, help="Player ids, one per line or roster CSV.")
@click.option("--seed", required=True, type=int)
@domain_errors
def schedule(group_path: Path, seed: int) -> None:
    """Emit a color-balanced round-robin schedule for one group."""
    text = group_path.read_text(encoding="utf-8")
    first = text.splitlines()[0].strip() if text.strip() else ""
    if first == "id,name,elo":
        ids = [p.id for p in parse_roster(text)]
    else:
        ids = [line.split(",")[0].strip() for line in text.splitlines() if line.strip()]
    rounds = round_robin(ids, substream(seed, "schedule"))
    click.echo(schedule_to_csv(rounds), nl=False)


@main.command()
@click.option(
    "--log-dir",
    type=click.Path(file_okay=False, path_type=Path),
    default=Path("./tournament-logs"),
    show_default=True,
)
@click.option("--port", type=int, default=8000, show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option(
    "--console-dir",
    type=click.Path(file_okay=False, path_type=Path),
    default=None,
    help="Static console bundle to serve at /console (default: frontend/dist when present).",
)
def serve(log_dir: Path, port: int, host: str, console_dir: Path | None) -> None:
    """Run the HTTP service (MTT_LOG_DIR overrides --log-dir)."""
    import uvicorn

    from .service import create_app

    env_dir = os.environ.get("MTT_LOG_DIR")
    effective = Path(env_dir) if env_dir else log_dir
    if console_dir is None:
        bundled = Path("frontend/dist")
        console_dir = bundled if bundled.is_dir() else None
    app = create_app(log_dir=effective, console_dir=console_dir)
    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    main()
