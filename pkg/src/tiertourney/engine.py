"""Tournament orchestration: tier formation, result intake, promotion.

Every operation takes the current state and returns the new state together
with the log records it produced; callers own persistence. All randomness
flows from the config seed through named substreams, one per decision
point, so a tournament is a pure function of (config, roster, results).

Timestamps come from an injectable clock. The default is wall time; tests
and the simulator pass a fixed clock so logs compare byte for byte.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from datetime import datetime, timezone
from typing import Callable, Sequence

from .core.errors import (
    AlreadyReported,
    IncompleteResults,
    NotActive,
    PendingRandomTieBreak,
    TierClosed,
    UnknownGame,
    UnknownPlayer,
)
from .core.events import (
    Event,
    GroupSpec,
    GroupStanding,
    GroupsFormed,
    LogRecord,
    PairingsPublished,
    PlayerForfeited,
    PromotionsApplied,
    PublishedBoard,
    PublishedRound,
    ResultEntered,
    StandingRow,
    TieResolvedRandomly,
    TierCompleted,
    TierStarted,
    TournamentCompleted,
    TournamentCreated,
)
from .core.rng import substream
from .core.state import (
    PHASE_PLAYING,
    GroupState,
    TournamentState,
    apply_event,
)
from .core.types import (
    DEFAULT_MAX_GROUP_SIZE,
    GameResult,
    Player,
    TieBreakMode,
    TournamentConfig,
    validate_config,
)
from .scheduling import round_robin
from .scoring import RankedStanding, ScoreLine, compare_tied, rank_group, score_lines
from .tiering import assign_tiers, split_tier

Clock = Callable[[], str]

STANDINGS_HEADER = ["rank", "player", "ts_num", "ts_den", "wins", "losses", "draws", "tiebreak_rule"]


def system_clock() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds").replace("+00:00", "Z")


def fixed_clock(stamp: str = "1970-01-01T00:00:00Z") -> Clock:
    return lambda: stamp


@dataclass(frozen=True)
class Progress:
    """Result of one engine operation: new state plus the records to persist."""

    state: TournamentState
    new_records: tuple[LogRecord, ...]


class _Emitter:
    def __init__(self, state: TournamentState, clock: Clock):
        self.state = state
        self.clock = clock
        self.records: list[LogRecord] = []

    def emit(self, event: Event) -> None:
        record = LogRecord(seq=self.state.applied, ts=self.clock(), event=event)
        self.state = apply_event(self.state, event)
        self.records.append(record)

    def progress(self) -> Progress:
        return Progress(state=self.state, new_records=tuple(self.records))


def _players_by_id(state: TournamentState) -> dict[str, Player]:
    return {p.id: p for p in state.roster}


def _start_tier(em: _Emitter, tier: int, members: Sequence[str]) -> None:
    state = em.state
    assert state.config is not None
    em.emit(TierStarted(tier=tier, members=tuple(members)))

    lookup = _players_by_id(state)
    players = [lookup[m] for m in members]
    max_size = state.config.tiers[tier - 1].max_group_size or DEFAULT_MAX_GROUP_SIZE
    split = split_tier(players, max_size, substream(state.config.seed, "split", tier))

    specs = []
    for k, (group, ties) in enumerate(zip(split.groups, split.tie_counts), start=1):
        group_id = f"t{tier}-g{k}"
        if ties > 1:
            em.emit(
                TieResolvedRandomly(
                    context=f"subset-split/{group_id}",
                    players=tuple(p.id for p in group),
                )
            )
        specs.append(GroupSpec(group_id=group_id, members=tuple(p.id for p in group)))
    em.emit(GroupsFormed(tier=tier, groups=tuple(specs)))

    for spec in specs:
        pairings = round_robin(
            list(spec.members), substream(state.config.seed, "rr", tier, spec.group_id)
        )
        rounds = []
        for rnd in pairings:
            boards = tuple(
                PublishedBoard(
                    ref=f"{spec.group_id}-r{rnd.round}-b{b}", white_id=white, black_id=black
                )
                for b, (white, black) in enumerate(rnd.boards, start=1)
            )
            rounds.append(PublishedRound(round=rnd.round, boards=boards, bye=rnd.bye))
        em.emit(PairingsPublished(tier=tier, group_id=spec.group_id, rounds=tuple(rounds)))


def create_tournament(
    config: TournamentConfig, roster: Sequence[Player], clock: Clock | None = None
) -> Progress:
    """Validate, seed the tiers, and open tier 1 with published pairings."""
    validate_config(config, roster)
    em = _Emitter(TournamentState(), clock or system_clock)
    em.emit(TournamentCreated(config=config, roster=tuple(roster)))

    assignment = assign_tiers(roster, config, substream(config.seed, "tiers"))
    for block in assignment.random_ties:
        em.emit(TieResolvedRandomly(context="tier-assignment", players=block))
    _start_tier(em, 1, assignment.tiers[1])
    return em.progress()


def enter_result(
    state: TournamentState,
    game_ref: str,
    result: GameResult,
    moves: int,
    clock: Clock | None = None,
) -> Progress:
    located = state.boards.get(game_ref)
    if located is None:
        raise UnknownGame(game_ref)
    group_id = located[0]
    group = state.groups[group_id]
    if group.tier != state.current_tier or state.phase != PHASE_PLAYING:
        raise TierClosed(f"tier {group.tier} is not accepting results")
    if game_ref in group.results:
        raise AlreadyReported(game_ref)
    if moves < 1:
        raise ValueError("move count must be at least 1")

    em = _Emitter(state, clock or system_clock)
    em.emit(ResultEntered(game_ref=game_ref, result=result, moves=moves))
    return em.progress()


def forfeit(
    state: TournamentState, player_id: str, reason: str, clock: Clock | None = None
) -> Progress:
    if _players_by_id(state).get(player_id) is None:
        raise UnknownPlayer(player_id)
    active = state.tier_members.get(state.current_tier, ())
    if state.phase != PHASE_PLAYING or player_id not in active or player_id in state.forfeited:
        raise NotActive(f"{player_id} is not active in the current tier")

    em = _Emitter(state, clock or system_clock)
    em.emit(PlayerForfeited(player_id=player_id, reason=reason))
    return em.progress()


# --- tier completion --------------------------------------------------------------


def _standing_rows(standing: RankedStanding) -> tuple[StandingRow, ...]:
    return tuple(
        StandingRow(
            rank=k,
            player_id=row.player_id,
            ts_num=row.score.num,
            ts_den=row.score.den,
            wins=row.line.wins,
            losses=row.line.losses,
            draws=row.line.draws,
            rule=row.rule,
        )
        for k, row in enumerate(standing.rows, start=1)
    )


def _pick_eligible(ordered: Sequence[str], banned: frozenset[str], count: int) -> list[str]:
    """Best `count` ids skipping banned ones; falls back to banned ids only
    when the eligible pool runs dry, keeping the next tier's size intact."""
    chosen = [pid for pid in ordered if pid not in banned][:count]
    if len(chosen) < count:
        refill = [pid for pid in ordered if pid in banned]
        chosen += refill[: count - len(chosen)]
    return chosen


def _merged_order(
    candidates: list[tuple[str, ScoreLine]],
    group_games: dict[str, list],
    rng,
) -> tuple[list[tuple[str, ScoreLine]], list[tuple[str, str]], list[str]]:
    """Rank candidates drawn from several groups. Head-to-head applies only
    within a shared group; across groups the cascade starts at rule (ii).
    Returns the order, the adjacent pairs the random rule decided, and the
    rule separating each row from the one above ("score" for the first)."""
    ids = sorted(line.player_id for _, line in candidates)
    shuffled = ids[:]
    rng.shuffle(shuffled)
    priority = {pid: k for k, pid in enumerate(shuffled)}

    def cmp(a: tuple[str, ScoreLine], b: tuple[str, ScoreLine]) -> tuple[int, str]:
        ga, la = a
        gb, lb = b
        if la.score() != lb.score():
            return (-1 if la.score() > lb.score() else 1, "score")
        games = group_games[ga] if ga == gb else []
        return compare_tied(la, lb, games, set(), priority)

    ordered = sorted(candidates, key=lambda c: c[1].player_id)
    # insertion sort with the pairwise comparator keeps it deterministic
    result: list[tuple[str, ScoreLine]] = []
    for item in ordered:
        lo = 0
        while lo < len(result) and cmp(result[lo], item)[0] < 0:
            lo += 1
        result.insert(lo, item)

    random_pairs = []
    rules = ["score"]
    for above, below in zip(result, result[1:]):
        _, rule = cmp(above, below)
        rules.append(rule)
        if rule == "iv":
            random_pairs.append((above[1].player_id, below[1].player_id))
    return result, random_pairs, rules


def complete_tier(
    state: TournamentState, clock: Clock | None = None, confirm_random: bool = False
) -> Progress:
    """Score the active tier, promote, and open the next tier (or finish).

    In interactive mode, a random tie-break that decides promotion or the
    title suspends the operation with PendingRandomTieBreak until called
    again with confirm_random=True. Nothing is appended on suspension.
    """
    assert state.config is not None
    if state.phase != PHASE_PLAYING:
        raise TierClosed(f"no tier is in play (phase {state.phase})")
    missing = [ref for g in state.current_groups() for ref in g.pending_refs()]
    if missing:
        raise IncompleteResults(f"{len(missing)} games unreported", missing=sorted(missing))

    config = state.config
    tier = state.current_tier
    tier_cfg = config.tiers[tier - 1]
    final = tier == len(config.tiers)

    em = _Emitter(state, clock or system_clock)
    groups = state.current_groups()

    standings: list[GroupStanding] = []
    ranked: dict[str, RankedStanding] = {}
    boundary_random: list[tuple[str, str]] = []
    for group in groups:
        standing = rank_group(
            score_lines(group.games(), group.members),
            group.games(),
            substream(config.seed, "rank", tier, group.group_id),
        )
        ranked[group.group_id] = standing
        standings.append(
            GroupStanding(group_id=group.group_id, rows=_standing_rows(standing))
        )

    group_games = {g.group_id: g.games() for g in groups}
    promoted: list[str] = []
    merge_random: list[tuple[str, str]] = []

    if not final:
        count = tier_cfg.promote_count
        if len(groups) == 1:
            order = [r.player_id for r in ranked[groups[0].group_id].rows]
            promoted = _pick_eligible(order, state.forfeited, count)
            cut = set(promoted)
            for pair in ranked[groups[0].group_id].random_pairs:
                if (pair[0] in cut) != (pair[1] in cut):
                    boundary_random.append(pair)
        elif count == len(groups):
            for group in groups:
                order = [r.player_id for r in ranked[group.group_id].rows]
                winner = _pick_eligible(order, state.forfeited, 1)
                promoted += winner
                for pair in ranked[group.group_id].random_pairs:
                    if (pair[0] in winner) != (pair[1] in winner):
                        boundary_random.append(pair)
        else:
            # mixed shape: cap candidates per group, then merge-rank them
            cap = -(-count // len(groups))  # ceil
            candidates = []
            for group in groups:
                for row in ranked[group.group_id].rows[:cap]:
                    candidates.append((group.group_id, row.line))
            order_pairs, merge_random, _ = _merged_order(
                candidates, group_games, substream(config.seed, "promote", tier)
            )
            order = [line.player_id for _, line in order_pairs]
            promoted = _pick_eligible(order, state.forfeited, count)
            cut = set(promoted)
            for pair in merge_random:
                if (pair[0] in cut) != (pair[1] in cut):
                    boundary_random.append(pair)

    winner: str | None = None
    final_rows: tuple[StandingRow, ...] = ()
    if final:
        if len(groups) == 1:
            standing = ranked[groups[0].group_id]
            final_rows = _standing_rows(standing)
            winner = final_rows[0].player_id
            for pair in standing.random_pairs:
                if winner in pair:
                    boundary_random.append(pair)
        else:
            candidates = [
                (g.group_id, row.line) for g in groups for row in ranked[g.group_id].rows
            ]
            order_pairs, merge_random, rules = _merged_order(
                candidates, group_games, substream(config.seed, "promote", tier)
            )
            final_rows = tuple(
                StandingRow(
                    rank=k,
                    player_id=line.player_id,
                    ts_num=line.score().num,
                    ts_den=line.score().den,
                    wins=line.wins,
                    losses=line.losses,
                    draws=line.draws,
                    rule=rule,
                )
                for k, ((_, line), rule) in enumerate(zip(order_pairs, rules), start=1)
            )
            winner = final_rows[0].player_id
            for pair in merge_random:
                if winner in pair:
                    boundary_random.append(pair)

    if (
        config.tie_break_mode is TieBreakMode.INTERACTIVE
        and boundary_random
        and not confirm_random
    ):
        tied = sorted({pid for pair in boundary_random for pid in pair})
        raise PendingRandomTieBreak(
            "a random tie-break decides promotion; confirm to proceed",
            tiedPlayers=tied,
        )

    for group in groups:
        for pair in ranked[group.group_id].random_pairs:
            em.emit(
                TieResolvedRandomly(
                    context=f"standings/{group.group_id}", players=pair
                )
            )
    for pair in merge_random:
        em.emit(TieResolvedRandomly(context=f"promotion/t{tier}", players=pair))

    em.emit(TierCompleted(tier=tier, standings=tuple(standings), promoted=tuple(promoted)))

    if final:
        assert winner is not None
        em.emit(TournamentCompleted(winner=winner, standing=final_rows))
    else:
        em.emit(PromotionsApplied(from_tier=tier, to_tier=tier + 1, players=tuple(promoted)))
        assignment = assign_tiers(state.roster, config, substream(config.seed, "tiers"))
        next_members = tuple(assignment.tiers[tier + 1]) + tuple(promoted)
        _start_tier(em, tier + 1, next_members)
    return em.progress()


# --- views ---------------------------------------------------------------------


def games_played(state: TournamentState) -> dict[str, int]:
    counts: dict[str, int] = {p.id: 0 for p in state.roster}
    for group in state.groups.values():
        for game in group.games():
            counts[game.white_id] += 1
            counts[game.black_id] += 1
    return counts


def pending_games(state: TournamentState) -> list[str]:
    return sorted(ref for g in state.current_groups() for ref in g.pending_refs())


@dataclass(frozen=True)
class BoardView:
    tier: int
    group_id: str
    round: int
    ref: str
    white_id: str
    black_id: str
    result: str | None  # token once reported


def pairings_view(state: TournamentState, round_no: int | None = None) -> list[BoardView]:
    """Current tier's published boards, optionally one round."""
    out: list[BoardView] = []
    for group in state.current_groups():
        for rnd in group.rounds:
            if round_no is not None and rnd.round != round_no:
                continue
            for board in rnd.boards:
                played = group.results.get(board.ref)
                out.append(
                    BoardView(
                        tier=group.tier,
                        group_id=group.group_id,
                        round=rnd.round,
                        ref=board.ref,
                        white_id=board.white_id,
                        black_id=board.black_id,
                        result=played.result.value if played else None,
                    )
                )
    return out


def byes_view(state: TournamentState, round_no: int | None = None) -> list[tuple[str, int, str]]:
    out = []
    for group in state.current_groups():
        for rnd in group.rounds:
            if rnd.bye and (round_no is None or rnd.round == round_no):
                out.append((group.group_id, rnd.round, rnd.bye))
    return out


def provisional_standings(group: GroupState) -> tuple[StandingRow, ...]:
    """Live view of a group mid-play. Players without a finished game sit at
    the bottom with a 0/0 score; ties are ordered by id, marked "-", and
    never consume the seeded stream (the real cascade runs at completion)."""
    played = [m for m in group.members if any(
        m in (g.white_id, g.black_id) for g in group.games()
    )]
    rows: list[StandingRow] = []
    if played:
        lines = {ln.player_id: ln for ln in score_lines(group.games(), played)}
        def sort_key(pid: str):
            ln = lines[pid]
            mean = ln.mean_moves_to_win()
            return (-ln.score().as_fraction(), -ln.wins, mean, pid)
        ordered = sorted(played, key=sort_key)
        prev: ScoreLine | None = None
        for pid in ordered:
            ln = lines[pid]
            rule = "score"
            if prev is not None and prev.score() == ln.score():
                if prev.wins != ln.wins:
                    rule = "ii"
                elif prev.mean_moves_to_win() != ln.mean_moves_to_win():
                    rule = "iii"
                else:
                    rule = "-"
            rows.append(
                StandingRow(
                    rank=len(rows) + 1,
                    player_id=pid,
                    ts_num=ln.score().num,
                    ts_den=ln.score().den,
                    wins=ln.wins,
                    losses=ln.losses,
                    draws=ln.draws,
                    rule=rule,
                )
            )
            prev = ln
    for pid in sorted(set(group.members) - set(played)):
        rows.append(
            StandingRow(
                rank=len(rows) + 1, player_id=pid,
                ts_num=0, ts_den=0, wins=0, losses=0, draws=0, rule="-",
            )
        )
    return tuple(rows)


def current_standings(state: TournamentState) -> dict[str, tuple[StandingRow, ...]]:
    """group id -> rows. Final rows for completed tiers come from the log;
    the active tier gets the provisional view."""
    out: dict[str, tuple[StandingRow, ...]] = {}
    for tier, groups in state.standings_history.items():
        for standing in groups:
            out[standing.group_id] = standing.rows
    if state.phase == PHASE_PLAYING:
        for group in state.current_groups():
            out[group.group_id] = provisional_standings(group)
    return out


def standings_csv(rows: Sequence[StandingRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(STANDINGS_HEADER)
    for row in rows:
        writer.writerow(
            [row.rank, row.player_id, row.ts_num, row.ts_den,
             row.wins, row.losses, row.draws, row.rule]
        )
    return buf.getvalue()
