"""Monte Carlo evaluation of the tiered format under an Elo-driven game model.

Replications run through the live engine, event by event, so a simulated
tournament is exactly a fast-forwarded real one; its log replays to the
same winner. Two baseline formats (single all-play-all, seeded knockout)
produce the same report shape for side-by-side comparison.

Every replication draws from its own named substream of the master seed,
so reports are reproducible and independent of execution order.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import Sequence

from .core.errors import RosterSizeUnsupported
from .core.events import LogRecord
from .core.rng import substream
from .core.state import PHASE_COMPLETE, TournamentState
from .core.types import GameRecord, GameResult, Player, TournamentConfig
from .engine import (
    complete_tier,
    create_tournament,
    enter_result,
    fixed_clock,
    pairings_view,
)
from .scheduling import RoundPairing, round_robin, validate_schedule
from .scoring import rank_group, score_lines

# simulated logs carry a fixed stamp; only event order matters
_CLOCK = fixed_clock()

REPORT_HEADER = ["player", "win_freq", "mean_games", "mean_color_diff"]


@dataclass(frozen=True)
class GameModel:
    """Outcome probabilities for one game from the two ratings.

    draw_base caps the draw probability; it is clamped per pair so the Elo
    expected score survives exactly. white_bonus is added to White's rating
    before the expectation (0 keeps the model colorless).
    """

    draw_base: float = 0.5
    white_bonus: int = 0

    def __post_init__(self):
        if not 0.0 <= self.draw_base <= 1.0:
            raise ValueError(f"draw_base must be in [0,1], got {self.draw_base}")


def expected_score(elo_a: int | float, elo_b: int | float) -> float:
    """Standard Elo expectation for A against B."""
    return 1.0 / (1.0 + 10.0 ** ((elo_b - elo_a) / 400.0))


def game_distribution(
    elo_white: int | float, elo_black: int | float, model: GameModel
) -> tuple[float, float, float]:
    """(pWhiteWin, pDraw, pBlackWin), summing to 1.

    The draw share is taken symmetrically from both sides, clamped so
    neither win probability goes negative: pWin + pDraw/2 equals the raw
    expected score on each side.
    """
    e = expected_score(elo_white + model.white_bonus, elo_black)
    p_draw = min(model.draw_base, 2.0 * e, 2.0 * (1.0 - e))
    return (e - p_draw / 2.0, p_draw, 1.0 - e - p_draw / 2.0)


def sample_result(elo_white, elo_black, model: GameModel, rng) -> GameResult:
    p_white, p_draw, _ = game_distribution(elo_white, elo_black, model)
    u = rng.random()
    if u < p_white:
        return GameResult.WHITE_WIN
    if u < p_white + p_draw:
        return GameResult.DRAW
    return GameResult.BLACK_WIN


def _sample_moves(result: GameResult, rng) -> int:
    # decisive games tend to be shorter than draws; exact shape is cosmetic
    if result is GameResult.DRAW:
        return rng.randint(30, 90)
    return rng.randint(20, 70)


def simulate_tournament(
    config: TournamentConfig, roster: Sequence[Player], model: GameModel, rng
) -> tuple[TournamentState, tuple[LogRecord, ...]]:
    """Run one full tournament through the engine, sampling every result."""
    progress = create_tournament(config, roster, _CLOCK)
    state = progress.state
    records = list(progress.new_records)
    elo = {p.id: p.elo for p in roster}
    while state.phase != PHASE_COMPLETE:
        for board in pairings_view(state):
            if board.result is not None:
                continue
            result = sample_result(elo[board.white_id], elo[board.black_id], model, rng)
            step = enter_result(state, board.ref, result, _sample_moves(result, rng), _CLOCK)
            state = step.state
            records += step.new_records
        step = complete_tier(state, _CLOCK, confirm_random=True)
        state = step.state
        records += step.new_records
    return state, tuple(records)


# --- reports -----------------------------------------------------------------------


@dataclass(frozen=True)
class PlayerStat:
    player_id: str
    win_freq: float
    mean_games: float
    mean_color_diff: float


@dataclass(frozen=True)
class SimReport:
    format_name: str  # "tiers", "roundRobinAll", or "seededKnockout"
    replications: int
    seed: int
    draw_base: float
    players: tuple[PlayerStat, ...]  # win frequency descending, then id
    top_elo_id: str
    top_elo_win_freq: float
    mean_breaks: float


class _Tally:
    """Deterministic fold over replications, ordered by replication index."""

    def __init__(self, roster: Sequence[Player]):
        self.roster = list(roster)
        self.wins = {p.id: 0 for p in roster}
        self.games = {p.id: 0 for p in roster}
        self.color_diff = {p.id: 0 for p in roster}
        self.breaks = 0
        self.n = 0

    def add(self, winner: str, games: dict, color_diff: dict, breaks: int) -> None:
        self.wins[winner] += 1
        for pid in self.games:
            self.games[pid] += games.get(pid, 0)
            self.color_diff[pid] += color_diff.get(pid, 0)
        self.breaks += breaks
        self.n += 1

    def report(self, format_name: str, seed: int, model: GameModel) -> SimReport:
        n = self.n
        stats = [
            PlayerStat(
                player_id=p.id,
                win_freq=self.wins[p.id] / n,
                mean_games=self.games[p.id] / n,
                mean_color_diff=self.color_diff[p.id] / n,
            )
            for p in self.roster
        ]
        stats.sort(key=lambda s: (-s.win_freq, s.player_id))
        top = max(self.roster, key=lambda p: (p.elo, p.id))
        return SimReport(
            format_name=format_name,
            replications=n,
            seed=seed,
            draw_base=model.draw_base,
            players=tuple(stats),
            top_elo_id=top.id,
            top_elo_win_freq=self.wins[top.id] / n,
            mean_breaks=self.breaks / n,
        )


def _color_tally(games: Sequence[GameRecord]) -> tuple[dict, dict]:
    played: dict[str, int] = {}
    diff: dict[str, int] = {}
    for g in games:
        played[g.white_id] = played.get(g.white_id, 0) + 1
        played[g.black_id] = played.get(g.black_id, 0) + 1
        diff[g.white_id] = diff.get(g.white_id, 0) + 1
        diff[g.black_id] = diff.get(g.black_id, 0) - 1
    return played, diff


def _state_metrics(state: TournamentState) -> tuple[dict, dict, int]:
    games = [g for group in state.groups.values() for g in group.games()]
    played, diff = _color_tally(games)
    breaks = 0
    for group in state.groups.values():
        rounds = [
            RoundPairing(
                round=r.round,
                boards=tuple((b.white_id, b.black_id) for b in r.boards),
                bye=r.bye,
            )
            for r in group.rounds
        ]
        breaks += validate_schedule(rounds).total_breaks
    return played, diff, breaks


def run_replications(
    config: TournamentConfig,
    roster: Sequence[Player],
    model: GameModel,
    n: int,
    seed: int,
) -> SimReport:
    """n independent tournaments; aggregation is a fold over rep index."""
    if n < 1:
        raise ValueError("replication count must be >= 1")
    tally = _Tally(roster)
    for i in range(n):
        state, _ = simulate_tournament(config, roster, model, substream(seed, "rep", i))
        assert state.winner is not None
        played, diff, breaks = _state_metrics(state)
        tally.add(state.winner, played, diff, breaks)
    return tally.report("tiers", seed, model)


# --- baselines ---------------------------------------------------------------------


def _run_round_robin_all(roster, model, rng) -> tuple[str, dict, dict, int]:
    ids = [p.id for p in roster]
    elo = {p.id: p.elo for p in roster}
    schedule = round_robin(ids, rng)
    games = []
    for rnd in schedule:
        for white, black in rnd.boards:
            result = sample_result(elo[white], elo[black], model, rng)
            games.append(
                GameRecord(
                    white_id=white,
                    black_id=black,
                    result=result,
                    move_count=_sample_moves(result, rng),
                    round=rnd.round,
                )
            )
    standing = rank_group(score_lines(games, ids), games, rng)
    winner = standing.rows[0].player_id
    played, diff = _color_tally(games)
    return winner, played, diff, validate_schedule(schedule).total_breaks


def _bracket_order(size: int) -> list[int]:
    """Seed positions for round 1 so that 1 meets 2 only in the final."""
    order = [0]
    width = 1
    while width < size:
        width *= 2
        order = [s for seed in order for s in (seed, width - 1 - seed)]
    return order


def _run_knockout(roster, model, rng) -> tuple[str, dict, dict, int]:
    elo = {p.id: p.elo for p in roster}
    seeds = sorted(roster, key=lambda p: (-p.elo, p.id))
    field = [seeds[k].id for k in _bracket_order(len(seeds))]

    games: list[GameRecord] = []
    colors: dict[str, list[str]] = {p.id: [] for p in roster}
    rnd = 0
    while len(field) > 1:
        rnd += 1
        survivors = []
        for a, b in zip(field[0::2], field[1::2]):
            white, black = a, b  # higher seed starts with White, replays swap
            while True:
                result = sample_result(elo[white], elo[black], model, rng)
                games.append(
                    GameRecord(
                        white_id=white,
                        black_id=black,
                        result=result,
                        move_count=_sample_moves(result, rng),
                        round=rnd,
                    )
                )
                colors[white].append("w")
                colors[black].append("b")
                if result is not GameResult.DRAW:
                    break
                white, black = black, white
            survivors.append(white if result is GameResult.WHITE_WIN else black)
        field = survivors

    played, diff = _color_tally(games)
    breaks = sum(
        sum(1 for x, y in zip(seq, seq[1:]) if x == y) for seq in colors.values()
    )
    return field[0], played, diff, breaks


BASELINE_FORMATS = ("roundRobinAll", "seededKnockout")


def run_baseline(
    format_name: str,
    roster: Sequence[Player],
    model: GameModel,
    n: int,
    seed: int,
) -> SimReport:
    if format_name not in BASELINE_FORMATS:
        raise ValueError(f"unknown baseline format {format_name!r}")
    if n < 1:
        raise ValueError("replication count must be >= 1")
    if format_name == "seededKnockout":
        size = len(roster)
        if size < 2 or size & (size - 1):
            raise RosterSizeUnsupported(
                f"knockout needs a power-of-two roster, got {size} players",
                size=size,
            )
    run = _run_round_robin_all if format_name == "roundRobinAll" else _run_knockout
    tally = _Tally(roster)
    for i in range(n):
        winner, played, diff, breaks = run(roster, model, substream(seed, "rep", i))
        tally.add(winner, played, diff, breaks)
    return tally.report(format_name, seed, model)


# --- export ------------------------------------------------------------------------


def report_csv(report: SimReport) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(REPORT_HEADER)
    for s in report.players:
        writer.writerow(
            [s.player_id, f"{s.win_freq:.6f}", f"{s.mean_games:.4f}", f"{s.mean_color_diff:.4f}"]
        )
    return buf.getvalue()


def report_text(report: SimReport) -> str:
    lines = [
        f"format: {report.format_name}",
        f"replications: {report.replications}  seed: {report.seed}  drawBase: {report.draw_base}",
        f"top-rated player: {report.top_elo_id}  win frequency: {report.top_elo_win_freq:.4f}",
        f"mean color breaks per tournament: {report.mean_breaks:.3f}",
        "",
        f"{'player':<20} {'win_freq':>9} {'mean_games':>11} {'color_diff':>11}",
    ]
    for s in report.players:
        lines.append(
            f"{s.player_id:<20} {s.win_freq:>9.4f} {s.mean_games:>11.2f} {s.mean_color_diff:>11.3f}"
        )
    return "\n".join(lines) + "\n"
