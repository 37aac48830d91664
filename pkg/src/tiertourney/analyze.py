"""Historical head-to-head analysis.

Ingests an archive of games, builds a pair-indexed database, and replays
the tier format over it: members are scored by their mean pairwise score
against every current tier co-member (unplayed pairs contribute zero), the
top scorers move up, and the final tier's leader takes the tournament.

Also includes the extra-White report: what fraction of the top finishers
received more White games than Black.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import IO, Iterable, Sequence

from .core.errors import MissingColorCounts, MissingHeader, UnknownPlayer
from .core.types import GameResult, Player, TournamentConfig, validate_config
from .scoring import (
    ScoreLine,
    compare_tied,
    head_to_head_blocked,
    mean_pairwise_ts,
)
from .tiering import assign_tiers

GAMES_HEADER = ["white", "black", "result", "moves", "date"]
REPORT_HEADER = ["tier", "rank", "player", "mean_ts"]


@dataclass(frozen=True)
class GameRow:
    """One accepted historical game. moves/date are optional archive fields."""

    white_id: str
    black_id: str
    result: GameResult
    moves: int | None = None
    date: str | None = None

    # duck-compatible with GameRecord for the pair-scoring helpers
    def winner_id(self) -> str | None:
        if self.result is GameResult.WHITE_WIN:
            return self.white_id
        if self.result is GameResult.BLACK_WIN:
            return self.black_id
        return None

    def loser_id(self) -> str | None:
        if self.result is GameResult.WHITE_WIN:
            return self.black_id
        if self.result is GameResult.BLACK_WIN:
            return self.white_id
        return None


@dataclass(frozen=True)
class Rejection:
    line: int  # 1-based physical line in the input
    reason: str  # MissingField | SelfPlay | UnknownResultToken | BadMoveCount
    row: str


class HeadToHeadDb:
    """Pair-indexed store of historical games.

    games_between(a, b) returns the same games in the same stored order for
    either argument order, with White/Black roles preserved.
    """

    def __init__(self, rows: Iterable[GameRow], rejections: Iterable[Rejection] = ()):
        self.rows: tuple[GameRow, ...] = tuple(rows)
        self.rejections: tuple[Rejection, ...] = tuple(rejections)
        self._by_pair: dict[frozenset[str], list[GameRow]] = {}
        for row in self.rows:
            self._by_pair.setdefault(frozenset((row.white_id, row.black_id)), []).append(row)

    def games_between(self, a_id: str, b_id: str) -> list[GameRow]:
        return list(self._by_pair.get(frozenset((a_id, b_id)), ()))

    def ids(self) -> frozenset[str]:
        return frozenset(pid for row in self.rows for pid in (row.white_id, row.black_id))

    def __len__(self) -> int:
        return len(self.rows)


def ingest_games(source: str | Path | IO[str]) -> HeadToHeadDb:
    """Parse a games CSV; malformed rows are collected, never dropped silently.

    The file must start with the exact header `white,black,result,moves,date`.
    """
    if hasattr(source, "read"):
        return _ingest(source)  # type: ignore[arg-type]
    with open(source, newline="") as handle:
        return _ingest(handle)


def _ingest(handle: IO[str]) -> HeadToHeadDb:
    reader = csv.reader(handle)
    try:
        header = next(reader)
    except StopIteration:
        raise MissingHeader("games file is empty; expected header " + ",".join(GAMES_HEADER))
    if [h.strip() for h in header] != GAMES_HEADER:
        raise MissingHeader(
            f"expected header {','.join(GAMES_HEADER)!r}, got {','.join(header)!r}"
        )

    rows: list[GameRow] = []
    rejections: list[Rejection] = []

    def reject(line_no: int, reason: str, cells: list[str]) -> None:
        rejections.append(Rejection(line=line_no, reason=reason, row=",".join(cells)))

    for line_no, cells in enumerate(reader, start=2):
        if not cells:
            continue
        padded = cells + [""] * (len(GAMES_HEADER) - len(cells))
        white, black, token, moves_raw, date = (c.strip() for c in padded[:5])
        if not white or not black or not token:
            reject(line_no, "MissingField", cells)
            continue
        if white == black:
            reject(line_no, "SelfPlay", cells)
            continue
        try:
            result = GameResult.from_token(token)
        except ValueError:
            reject(line_no, "UnknownResultToken", cells)
            continue
        moves: int | None = None
        if moves_raw:
            try:
                moves = int(moves_raw)
            except ValueError:
                reject(line_no, "BadMoveCount", cells)
                continue
            if moves < 1:
                reject(line_no, "BadMoveCount", cells)
                continue
        rows.append(
            GameRow(white_id=white, black_id=black, result=result, moves=moves, date=date or None)
        )
    return HeadToHeadDb(rows, rejections)


def pair_record(db: HeadToHeadDb, a_id: str, b_id: str) -> tuple[int, int, int, int]:
    """(winsA, winsB, draws, games) between two players."""
    wins_a = wins_b = draws = 0
    for g in db.games_between(a_id, b_id):
        if g.result is GameResult.DRAW:
            draws += 1
        elif g.winner_id() == a_id:
            wins_a += 1
        else:
            wins_b += 1
    return (wins_a, wins_b, draws, wins_a + wins_b + draws)


def crosstable(
    db: HeadToHeadDb, players: Sequence[str]
) -> dict[tuple[str, str], tuple[int, int, int, int]]:
    """Aggregate record for every ordered pair of the given players."""
    if len(set(players)) != len(players):
        raise ValueError("crosstable players must be distinct")
    table: dict[tuple[str, str], tuple[int, int, int, int]] = {}
    for a in players:
        for b in players:
            if a != b:
                table[(a, b)] = pair_record(db, a, b)
    return table


# --- tier replay -------------------------------------------------------------------


@dataclass(frozen=True)
class TierRow:
    rank: int
    player_id: str
    mean_ts: Fraction
    rule: str  # "score" or the tie-break rule separating this row from the one above


@dataclass(frozen=True)
class TierTable:
    tier: int
    rows: tuple[TierRow, ...]
    promoted: tuple[str, ...]
    pair_games: dict[tuple[str, str], int]  # unordered pairs keyed (min, max)
    mean_games_per_matchup: Fraction


@dataclass(frozen=True)
class HistoricalTierReport:
    tiers: tuple[TierTable, ...]
    winner: str


def _member_line(pid: str, others: Sequence[str], db: HeadToHeadDb) -> ScoreLine:
    """Aggregate W/L/D against co-members.

    Wins without a recorded move count enter as 0, which the rule (iii)
    mean skips; a moveless archive therefore falls through to the random
    rule, never to a fabricated move number.
    """
    wins = losses = draws = 0
    moves: list[int] = []
    for other in others:
        for g in db.games_between(pid, other):
            if g.result is GameResult.DRAW:
                draws += 1
            elif g.winner_id() == pid:
                wins += 1
                moves.append(g.moves if g.moves is not None else 0)
            else:
                losses += 1
    return ScoreLine(player_id=pid, wins=wins, losses=losses, draws=draws, moves_to_win=tuple(moves))


def _rank_members(members: Sequence[str], db: HeadToHeadDb, rng) -> list[TierRow]:
    others = {pid: [m for m in members if m != pid] for pid in members}
    means = {pid: mean_pairwise_ts(pid, others[pid], db) for pid in members}

    clusters: dict[Fraction, list[str]] = {}
    for pid in members:
        clusters.setdefault(means[pid], []).append(pid)

    ordered: list[str] = []
    meta: dict[str, tuple[set, dict]] = {}
    for value in sorted(clusters, reverse=True):
        tied = sorted(clusters[value])
        if len(tied) == 1:
            ordered.append(tied[0])
            meta[tied[0]] = (set(), {tied[0]: 0})
            continue
        pool = [g for i, a in enumerate(tied) for b in tied[i + 1:] for g in db.games_between(a, b)]
        blocked = head_to_head_blocked(tied, pool)
        shuffled = tied[:]
        rng.shuffle(shuffled)
        priority = {pid: k for k, pid in enumerate(shuffled)}
        lines = {pid: _member_line(pid, others[pid], db) for pid in tied}

        block = tied[:]
        # insertion sort via the pairwise comparator, as in group ranking
        result: list[str] = []
        for pid in block:
            lo = 0
            while lo < len(result) and compare_tied(
                lines[result[lo]], lines[pid], db.games_between(result[lo], pid), blocked, priority
            )[0] < 0:
                lo += 1
            result.insert(lo, pid)
        for pid in result:
            ordered.append(pid)
            meta[pid] = (blocked, priority)

    rows: list[TierRow] = []
    for k, pid in enumerate(ordered):
        rule = "score"
        if k and means[ordered[k - 1]] == means[pid]:
            prev = ordered[k - 1]
            blocked, priority = meta[pid]
            _, rule = compare_tied(
                _member_line(prev, others[prev], db),
                _member_line(pid, others[pid], db),
                db.games_between(prev, pid),
                blocked,
                priority,
            )
        rows.append(TierRow(rank=k + 1, player_id=pid, mean_ts=means[pid], rule=rule))
    return rows


def replay_historical(
    db: HeadToHeadDb,
    roster: Sequence[Player],
    config: TournamentConfig,
    rng,
) -> HistoricalTierReport:
    """Run the tier format over archive data instead of live games."""
    validate_config(config, list(roster))
    known = db.ids()
    for player in roster:
        if player.id not in known:
            raise UnknownPlayer(f"{player.id} has no games in the database")

    assignment = assign_tiers(roster, config, rng)
    promoted_in: tuple[str, ...] = ()
    tables: list[TierTable] = []
    for tier_no in range(1, config.tier_count + 1):
        members = tuple(assignment.tiers[tier_no]) + promoted_in
        rows = _rank_members(members, db, rng)

        pair_games: dict[tuple[str, str], int] = {}
        for i, a in enumerate(sorted(members)):
            for b in sorted(members)[i + 1:]:
                pair_games[(a, b)] = len(db.games_between(a, b))
        matchups = len(pair_games)
        mean_games = Fraction(sum(pair_games.values()), matchups) if matchups else Fraction(0)

        count = config.tiers[tier_no - 1].promote_count
        promoted = tuple(row.player_id for row in rows[:count])
        tables.append(
            TierTable(
                tier=tier_no,
                rows=tuple(rows),
                promoted=promoted,
                pair_games=pair_games,
                mean_games_per_matchup=mean_games,
            )
        )
        promoted_in = promoted

    winner = tables[-1].rows[0].player_id
    return HistoricalTierReport(tiers=tuple(tables), winner=winner)


# --- color bias --------------------------------------------------------------------


@dataclass(frozen=True)
class ColorBiasReport:
    fraction: Fraction  # of the top k with more Whites than Blacks
    flagged: tuple[str, ...]
    k: int


def color_bias_report(
    standings: Sequence[str],
    color_counts: dict[str, tuple[int, int]],
    k: int,
) -> ColorBiasReport:
    """Fraction of the top k finishers who received extra White games."""
    if not 1 <= k <= len(standings):
        raise ValueError(f"k must be in [1, {len(standings)}], got {k}")
    flagged = []
    for pid in standings[:k]:
        if pid not in color_counts:
            raise MissingColorCounts(f"no color counts for {pid}")
        white, black = color_counts[pid]
        if white > black:
            flagged.append(pid)
    return ColorBiasReport(fraction=Fraction(len(flagged), k), flagged=tuple(flagged), k=k)


# --- export ------------------------------------------------------------------------


def report_csv(report: HistoricalTierReport) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(REPORT_HEADER)
    for table in report.tiers:
        for row in table.rows:
            writer.writerow([table.tier, row.rank, row.player_id, f"{float(row.mean_ts):.4f}"])
    return buf.getvalue()


def report_text(report: HistoricalTierReport) -> str:
    lines: list[str] = []
    for table in report.tiers:
        lines.append(f"Tier {table.tier}  (mean games per matchup: {float(table.mean_games_per_matchup):.1f})")
        for row in table.rows:
            marks = ""
            if row.player_id in table.promoted:
                marks = "  ^promoted"
            elif table.tier == report.tiers[-1].tier and row.rank == 1:
                marks = "  *winner"
            lines.append(f"  {row.rank:>2}. {row.player_id:<20} {float(row.mean_ts):+.3f}{marks}")
        lines.append("")
    lines.append(f"winner: {report.winner}")
    return "\n".join(lines) + "\n"
