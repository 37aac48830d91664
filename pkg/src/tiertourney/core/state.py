"""Tournament state, rebuilt from the event log.

apply_event is a pure function: it returns a new state and never mutates
its argument. Everything a state contains is derived from the event
sequence alone, so replaying a log always lands on the same state.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from .errors import IllegalTransition
from .events import (
    Event,
    GroupStanding,
    GroupsFormed,
    PairingsPublished,
    PlayerForfeited,
    PromotionsApplied,
    PublishedRound,
    ResultEntered,
    StandingRow,
    TieResolvedRandomly,
    TierCompleted,
    TierStarted,
    TournamentCompleted,
    TournamentCreated,
)
from .types import GameRecord, GameResult, Player, TournamentConfig

# Phase machine:
#   new -> starting -> forming -> pairing -> playing -> tier_done
#   tier_done -> starting (next tier) | complete (final tier)
PHASE_NEW = "new"
PHASE_STARTING = "starting"
PHASE_FORMING = "forming"
PHASE_PAIRING = "pairing"
PHASE_PLAYING = "playing"
PHASE_TIER_DONE = "tier_done"
PHASE_COMPLETE = "complete"


@dataclass(frozen=True)
class GroupState:
    """One mini-tournament: members, published rounds, entered results."""

    group_id: str
    tier: int
    members: tuple[str, ...]
    rounds: tuple[PublishedRound, ...] = ()
    results: dict[str, GameRecord] = field(default_factory=dict)

    def board_refs(self) -> list[str]:
        return [b.ref for r in self.rounds for b in r.boards]

    def pending_refs(self) -> list[str]:
        return [ref for ref in self.board_refs() if ref not in self.results]

    def games(self) -> list[GameRecord]:
        """Completed games in board order."""
        return [self.results[ref] for ref in self.board_refs() if ref in self.results]


@dataclass(frozen=True)
class TournamentState:
    config: TournamentConfig | None = None
    roster: tuple[Player, ...] = ()
    phase: str = PHASE_NEW
    current_tier: int = 0
    tier_members: dict[int, tuple[str, ...]] = field(default_factory=dict)
    tier_groups: dict[int, tuple[str, ...]] = field(default_factory=dict)
    groups: dict[str, GroupState] = field(default_factory=dict)
    # game ref -> (group_id, round, white, black), across all tiers
    boards: dict[str, tuple[str, int, str, str]] = field(default_factory=dict)
    forfeited: frozenset[str] = frozenset()
    standings_history: dict[int, tuple[GroupStanding, ...]] = field(default_factory=dict)
    promoted_history: dict[int, tuple[str, ...]] = field(default_factory=dict)
    random_ties: tuple[TieResolvedRandomly, ...] = ()
    winner: str | None = None
    final_standing: tuple[StandingRow, ...] = ()
    applied: int = 0

    # -- lookups ------------------------------------------------------------

    def player(self, player_id: str) -> Player | None:
        for p in self.roster:
            if p.id == player_id:
                return p
        return None

    def current_groups(self) -> list[GroupState]:
        return [self.groups[gid] for gid in self.tier_groups.get(self.current_tier, ())]

    def group_of(self, player_id: str) -> GroupState | None:
        for g in self.current_groups():
            if player_id in g.members:
                return g
        return None

    def pending_count(self) -> int:
        return sum(len(g.pending_refs()) for g in self.current_groups())

    # -- transitions ----------------------------------------------------------

    def apply(self, event: Event) -> TournamentState:
        return apply_event(self, event)


def _require(ok: bool, precondition: str) -> None:
    if not ok:
        raise IllegalTransition(precondition)


def _forfeit_games(state: TournamentState, player_id: str) -> dict[str, GameRecord]:
    """Score every pending board involving the player as a loss for them."""
    scored: dict[str, GameRecord] = {}
    for gid in state.tier_groups.get(state.current_tier, ()):
        group = state.groups[gid]
        if player_id not in group.members:
            continue
        for rnd in group.rounds:
            for board in rnd.boards:
                if board.ref in group.results or player_id not in (board.white_id, board.black_id):
                    continue
                result = GameResult.BLACK_WIN if board.white_id == player_id else GameResult.WHITE_WIN
                scored[board.ref] = GameRecord(
                    white_id=board.white_id,
                    black_id=board.black_id,
                    result=result,
                    move_count=0,
                    round=rnd.round,
                    group_id=gid,
                    forfeit=True,
                )
    return scored


def apply_event(state: TournamentState, event: Event) -> TournamentState:
    """Pure transition: returns the successor state or raises IllegalTransition."""

    if isinstance(event, TournamentCreated):
        _require(state.phase == PHASE_NEW, "TournamentCreated only on a fresh state")
        return replace(
            state,
            config=event.config,
            roster=event.roster,
            phase=PHASE_STARTING,
            applied=state.applied + 1,
        )

    _require(state.config is not None, "first event must be TournamentCreated")

    if isinstance(event, TieResolvedRandomly):
        _require(
            state.phase in (PHASE_STARTING, PHASE_FORMING, PHASE_PLAYING),
            "random tie-break outside an active phase",
        )
        return replace(
            state,
            random_ties=state.random_ties + (event,),
            applied=state.applied + 1,
        )

    if isinstance(event, TierStarted):
        _require(state.phase == PHASE_STARTING, "TierStarted only after creation or promotions")
        _require(event.tier == state.current_tier + 1, "tiers start in ascending order")
        members = dict(state.tier_members)
        members[event.tier] = event.members
        return replace(
            state,
            current_tier=event.tier,
            tier_members=members,
            phase=PHASE_FORMING,
            applied=state.applied + 1,
        )

    if isinstance(event, GroupsFormed):
        _require(state.phase == PHASE_FORMING, "GroupsFormed only after TierStarted")
        _require(event.tier == state.current_tier, "GroupsFormed tier mismatch")
        formed = sorted(pid for g in event.groups for pid in g.members)
        _require(
            formed == sorted(state.tier_members[event.tier]),
            "groups must partition the tier members",
        )
        groups = dict(state.groups)
        for spec in event.groups:
            _require(spec.group_id not in groups, "duplicate group id")
            groups[spec.group_id] = GroupState(
                group_id=spec.group_id, tier=event.tier, members=spec.members
            )
        tier_groups = dict(state.tier_groups)
        tier_groups[event.tier] = tuple(g.group_id for g in event.groups)
        return replace(
            state,
            groups=groups,
            tier_groups=tier_groups,
            phase=PHASE_PAIRING,
            applied=state.applied + 1,
        )

    if isinstance(event, PairingsPublished):
        _require(state.phase == PHASE_PAIRING, "PairingsPublished only after GroupsFormed")
        group = state.groups.get(event.group_id)
        _require(group is not None and group.tier == state.current_tier, "unknown group")
        assert group is not None
        _require(not group.rounds, "pairings already published for this group")
        boards = dict(state.boards)
        for rnd in event.rounds:
            for board in rnd.boards:
                _require(board.ref not in boards, "duplicate game ref")
                boards[board.ref] = (event.group_id, rnd.round, board.white_id, board.black_id)
        groups = dict(state.groups)
        groups[event.group_id] = replace(group, rounds=event.rounds)
        done = all(groups[gid].rounds for gid in state.tier_groups[state.current_tier])
        return replace(
            state,
            groups=groups,
            boards=boards,
            phase=PHASE_PLAYING if done else PHASE_PAIRING,
            applied=state.applied + 1,
        )

    if isinstance(event, ResultEntered):
        _require(state.phase == PHASE_PLAYING, "results only while a tier is in play")
        located = state.boards.get(event.game_ref)
        _require(located is not None, "unknown game ref")
        assert located is not None
        group_id, round_no, white, black = located
        group = state.groups[group_id]
        _require(group.tier == state.current_tier, "game belongs to a closed tier")
        _require(event.game_ref not in group.results, "result already recorded")
        record = GameRecord(
            white_id=white,
            black_id=black,
            result=event.result,
            move_count=event.moves,
            round=round_no,
            group_id=group_id,
        )
        groups = dict(state.groups)
        groups[group_id] = replace(group, results={**group.results, event.game_ref: record})
        return replace(state, groups=groups, applied=state.applied + 1)

    if isinstance(event, PlayerForfeited):
        _require(state.phase == PHASE_PLAYING, "forfeits only while a tier is in play")
        _require(event.player_id not in state.forfeited, "player already forfeited")
        _require(
            event.player_id in state.tier_members.get(state.current_tier, ()),
            "player not active in the current tier",
        )
        scored = _forfeit_games(state, event.player_id)
        groups = dict(state.groups)
        for ref, record in scored.items():
            group = groups[record.group_id]
            groups[record.group_id] = replace(group, results={**group.results, ref: record})
        return replace(
            state,
            groups=groups,
            forfeited=state.forfeited | {event.player_id},
            applied=state.applied + 1,
        )

    if isinstance(event, TierCompleted):
        _require(state.phase == PHASE_PLAYING, "TierCompleted only while a tier is in play")
        _require(event.tier == state.current_tier, "TierCompleted tier mismatch")
        _require(state.pending_count() == 0, "all games must be reported or forfeited")
        standings = dict(state.standings_history)
        standings[event.tier] = event.standings
        promoted = dict(state.promoted_history)
        promoted[event.tier] = event.promoted
        return replace(
            state,
            standings_history=standings,
            promoted_history=promoted,
            phase=PHASE_TIER_DONE,
            applied=state.applied + 1,
        )

    if isinstance(event, PromotionsApplied):
        _require(state.phase == PHASE_TIER_DONE, "promotions only after TierCompleted")
        _require(event.from_tier == state.current_tier, "PromotionsApplied tier mismatch")
        _require(event.to_tier == state.current_tier + 1, "promotions move up exactly one tier")
        return replace(state, phase=PHASE_STARTING, applied=state.applied + 1)

    if isinstance(event, TournamentCompleted):
        _require(state.phase == PHASE_TIER_DONE, "completion only after the final TierCompleted")
        assert state.config is not None
        _require(
            state.current_tier == len(state.config.tiers),
            "completion only after the last tier",
        )
        return replace(
            state,
            winner=event.winner,
            final_standing=event.standing,
            phase=PHASE_COMPLETE,
            applied=state.applied + 1,
        )

    raise IllegalTransition(f"unrecognized event {type(event).__name__}")


def replay(events: list[Event] | tuple[Event, ...]) -> TournamentState:
    state = TournamentState()
    for event in events:
        state = apply_event(state, event)
    return state
