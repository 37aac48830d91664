"""Tournament events and their wire format.

A tournament is persisted as an append-only sequence of records, one JSON
object per line:

    {"v": 1, "seq": 0, "ts": "...", "type": "TournamentCreated", "data": {...}}

Records are self-describing and schema-versioned; every piece of computed
state (group compositions, published pairings, standings, promotions) is
embedded in the event that produced it, so replaying a log never re-runs
any randomness.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Union

from .errors import CorruptLine, VersionMismatch
from .types import (
    GameResult,
    Player,
    TieBreakMode,
    TierConfig,
    TournamentConfig,
)

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class GroupSpec:
    group_id: str
    members: tuple[str, ...]


@dataclass(frozen=True)
class PublishedBoard:
    ref: str
    white_id: str
    black_id: str


@dataclass(frozen=True)
class PublishedRound:
    round: int
    boards: tuple[PublishedBoard, ...]
    bye: str | None = None


@dataclass(frozen=True)
class StandingRow:
    """One line of a ranked standing, exactly as exported to CSV."""

    rank: int
    player_id: str
    ts_num: int
    ts_den: int
    wins: int
    losses: int
    draws: int
    rule: str  # "score" or the tie-break rule that separated this row from the one above


@dataclass(frozen=True)
class GroupStanding:
    group_id: str
    rows: tuple[StandingRow, ...]


# --- event payloads ------------------------------------------------------------


@dataclass(frozen=True)
class TournamentCreated:
    config: TournamentConfig
    roster: tuple[Player, ...]


@dataclass(frozen=True)
class TierStarted:
    tier: int
    members: tuple[str, ...]


@dataclass(frozen=True)
class GroupsFormed:
    tier: int
    groups: tuple[GroupSpec, ...]


@dataclass(frozen=True)
class PairingsPublished:
    tier: int
    group_id: str
    rounds: tuple[PublishedRound, ...]


@dataclass(frozen=True)
class ResultEntered:
    game_ref: str
    result: GameResult
    moves: int


@dataclass(frozen=True)
class PlayerForfeited:
    player_id: str
    reason: str


@dataclass(frozen=True)
class TieResolvedRandomly:
    context: str
    players: tuple[str, ...]


@dataclass(frozen=True)
class TierCompleted:
    tier: int
    standings: tuple[GroupStanding, ...]
    promoted: tuple[str, ...]


@dataclass(frozen=True)
class PromotionsApplied:
    from_tier: int
    to_tier: int
    players: tuple[str, ...]


@dataclass(frozen=True)
class TournamentCompleted:
    winner: str
    standing: tuple[StandingRow, ...]


Event = Union[
    TournamentCreated,
    TierStarted,
    GroupsFormed,
    PairingsPublished,
    ResultEntered,
    PlayerForfeited,
    TieResolvedRandomly,
    TierCompleted,
    PromotionsApplied,
    TournamentCompleted,
]


@dataclass(frozen=True)
class LogRecord:
    """Envelope stored in the log: sequence number, timestamp, event."""

    seq: int
    ts: str
    event: Event


# --- codec ----------------------------------------------------------------------


def _player_to(p: Player) -> dict:
    return {"id": p.id, "name": p.name, "elo": p.elo}


def _player_from(d: dict) -> Player:
    return Player(id=d["id"], name=d["name"], elo=int(d["elo"]))


def _config_to(c: TournamentConfig) -> dict:
    return {
        "tiers": [
            {"base": t.base_size, "promote": t.promote_count, "max_group": t.max_group_size}
            for t in c.tiers
        ],
        "seed": c.seed,
        "tie_break_mode": c.tie_break_mode.value,
    }


def _config_from(d: dict) -> TournamentConfig:
    return TournamentConfig(
        tiers=tuple(
            TierConfig(
                base_size=t["base"],
                promote_count=t["promote"],
                max_group_size=t["max_group"],
            )
            for t in d["tiers"]
        ),
        seed=d["seed"],
        tie_break_mode=TieBreakMode(d["tie_break_mode"]),
    )


def _round_to(r: PublishedRound) -> dict:
    return {
        "round": r.round,
        "boards": [[b.ref, b.white_id, b.black_id] for b in r.boards],
        "bye": r.bye,
    }


def _round_from(d: dict) -> PublishedRound:
    return PublishedRound(
        round=d["round"],
        boards=tuple(PublishedBoard(ref=b[0], white_id=b[1], black_id=b[2]) for b in d["boards"]),
        bye=d["bye"],
    )


def _row_to(r: StandingRow) -> list:
    return [r.rank, r.player_id, r.ts_num, r.ts_den, r.wins, r.losses, r.draws, r.rule]


def _row_from(v: list) -> StandingRow:
    return StandingRow(
        rank=v[0], player_id=v[1], ts_num=v[2], ts_den=v[3],
        wins=v[4], losses=v[5], draws=v[6], rule=v[7],
    )


def _encode(event: Event) -> dict:
    if isinstance(event, TournamentCreated):
        return {"config": _config_to(event.config), "roster": [_player_to(p) for p in event.roster]}
    if isinstance(event, TierStarted):
        return {"tier": event.tier, "members": list(event.members)}
    if isinstance(event, GroupsFormed):
        return {
            "tier": event.tier,
            "groups": [{"id": g.group_id, "members": list(g.members)} for g in event.groups],
        }
    if isinstance(event, PairingsPublished):
        return {
            "tier": event.tier,
            "group": event.group_id,
            "rounds": [_round_to(r) for r in event.rounds],
        }
    if isinstance(event, ResultEntered):
        return {"game": event.game_ref, "result": event.result.value, "moves": event.moves}
    if isinstance(event, PlayerForfeited):
        return {"player": event.player_id, "reason": event.reason}
    if isinstance(event, TieResolvedRandomly):
        return {"context": event.context, "players": list(event.players)}
    if isinstance(event, TierCompleted):
        return {
            "tier": event.tier,
            "standings": [
                {"group": s.group_id, "rows": [_row_to(r) for r in s.rows]} for s in event.standings
            ],
            "promoted": list(event.promoted),
        }
    if isinstance(event, PromotionsApplied):
        return {"from": event.from_tier, "to": event.to_tier, "players": list(event.players)}
    if isinstance(event, TournamentCompleted):
        return {"winner": event.winner, "standing": [_row_to(r) for r in event.standing]}
    raise TypeError(f"not an event: {event!r}")


def _decode(type_name: str, data: dict) -> Event:
    if type_name == "TournamentCreated":
        return TournamentCreated(
            config=_config_from(data["config"]),
            roster=tuple(_player_from(p) for p in data["roster"]),
        )
    if type_name == "TierStarted":
        return TierStarted(tier=data["tier"], members=tuple(data["members"]))
    if type_name == "GroupsFormed":
        return GroupsFormed(
            tier=data["tier"],
            groups=tuple(GroupSpec(group_id=g["id"], members=tuple(g["members"])) for g in data["groups"]),
        )
    if type_name == "PairingsPublished":
        return PairingsPublished(
            tier=data["tier"],
            group_id=data["group"],
            rounds=tuple(_round_from(r) for r in data["rounds"]),
        )
    if type_name == "ResultEntered":
        return ResultEntered(
            game_ref=data["game"], result=GameResult(data["result"]), moves=data["moves"]
        )
    if type_name == "PlayerForfeited":
        return PlayerForfeited(player_id=data["player"], reason=data["reason"])
    if type_name == "TieResolvedRandomly":
        return TieResolvedRandomly(context=data["context"], players=tuple(data["players"]))
    if type_name == "TierCompleted":
        return TierCompleted(
            tier=data["tier"],
            standings=tuple(
                GroupStanding(group_id=s["group"], rows=tuple(_row_from(r) for r in s["rows"]))
                for s in data["standings"]
            ),
            promoted=tuple(data["promoted"]),
        )
    if type_name == "PromotionsApplied":
        return PromotionsApplied(from_tier=data["from"], to_tier=data["to"], players=tuple(data["players"]))
    if type_name == "TournamentCompleted":
        return TournamentCompleted(
            winner=data["winner"], standing=tuple(_row_from(r) for r in data["standing"])
        )
    raise KeyError(type_name)


def record_to_line(record: LogRecord) -> str:
    obj = {
        "v": SCHEMA_VERSION,
        "seq": record.seq,
        "ts": record.ts,
        "type": type(record.event).__name__,
        "data": _encode(record.event),
    }
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def record_from_line(line: str, lineno: int = 0) -> LogRecord:
    try:
        obj = json.loads(line)
    except json.JSONDecodeError as exc:
        raise CorruptLine(f"line {lineno}: invalid JSON ({exc.msg})", line=lineno) from None
    if not isinstance(obj, dict):
        raise CorruptLine(f"line {lineno}: record is not an object", line=lineno)
    version = obj.get("v")
    if version != SCHEMA_VERSION:
        raise VersionMismatch(
            f"line {lineno}: schema version {version!r}, expected {SCHEMA_VERSION}", line=lineno
        )
    try:
        event = _decode(obj["type"], obj["data"])
        return LogRecord(seq=obj["seq"], ts=obj["ts"], event=event)
    except (KeyError, IndexError, TypeError, ValueError) as exc:
        raise CorruptLine(f"line {lineno}: {exc!r}", line=lineno) from None
