"""Wire models for the HTTP surface. camelCase on the wire, snake_case here."""

from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, ConfigDict, Field
from pydantic.alias_generators import to_camel

from ..core.types import (
    Player,
    TieBreakMode,
    TierConfig,
    TournamentConfig,
)


class ApiModel(BaseModel):
    model_config = ConfigDict(alias_generator=to_camel, populate_by_name=True)


class TierConfigModel(ApiModel):
    base_size: int
    promote_count: int
    max_group_size: int | None = 10


class ConfigModel(ApiModel):
    tiers: list[TierConfigModel]
    seed: int = 0
    tie_break_mode: Literal["auto", "interactive"] = "auto"

    def to_domain(self) -> TournamentConfig:
        return TournamentConfig(
            tiers=tuple(
                TierConfig(
                    base_size=t.base_size,
                    promote_count=t.promote_count,
                    max_group_size=t.max_group_size,
                )
                for t in self.tiers
            ),
            seed=self.seed,
            tie_break_mode=TieBreakMode(self.tie_break_mode),
        )

    @classmethod
    def from_domain(cls, config: TournamentConfig) -> "ConfigModel":
        return cls(
            tiers=[
                TierConfigModel(
                    base_size=t.base_size,
                    promote_count=t.promote_count,
                    max_group_size=t.max_group_size,
                )
                for t in config.tiers
            ],
            seed=config.seed,
            tie_break_mode=config.tie_break_mode.value,
        )


class PlayerModel(ApiModel):
    id: str
    name: str
    elo: int

    def to_domain(self) -> Player:
        return Player(id=self.id, name=self.name, elo=self.elo)


class CreateTournamentRequest(ApiModel):
    config_ref: ConfigModel
    roster: list[PlayerModel]


class CreateTournamentResponse(ApiModel):
    tournament_id: str


class BoardModel(ApiModel):
    tier: int
    group_id: str
    round: int
    ref: str
    white_id: str
    black_id: str
    result: str | None = None


class ByeModel(ApiModel):
    group_id: str
    round: int
    player_id: str


class PairingsResponse(ApiModel):
    tournament_id: str
    tier: int
    boards: list[BoardModel]
    byes: list[ByeModel]


class StandingRowModel(ApiModel):
    rank: int
    player_id: str
    ts_num: int
    ts_den: int
    wins: int
    losses: int
    draws: int
    tiebreak_rule: str


class GroupStandingModel(ApiModel):
    group_id: str
    rows: list[StandingRowModel]


class StandingsResponse(ApiModel):
    tournament_id: str
    tier: int
    groups: list[GroupStandingModel]
    final_standing: list[StandingRowModel] | None = None
    winner: str | None = None


class ResultRequest(ApiModel):
    game_ref: str
    result: Literal["1-0", "0-1", "1/2-1/2"]
    moves: int = Field(ge=1)


class ForfeitRequest(ApiModel):
    player_id: str
    reason: str = ""


class CompleteTierResponse(ApiModel):
    tournament_id: str
    tier: int  # the tier just completed
    promoted: list[str]
    standings: list[GroupStandingModel]
    next_tier: int | None = None
    winner: str | None = None


class TieBreakRequest(ApiModel):
    accept: bool


class PendingTieBreakResponse(ApiModel):
    tournament_id: str
    code: Literal["PendingRandomTieBreak"] = "PendingRandomTieBreak"
    tied_players: list[str]
    message: str


class GroupSnapshotModel(ApiModel):
    group_id: str
    tier: int
    members: list[str]
    rounds_total: int


class TournamentSnapshot(ApiModel):
    tournament_id: str
    phase: str
    current_tier: int
    tier_count: int
    config: ConfigModel
    roster: list[PlayerModel]
    groups: list[GroupSnapshotModel]
    pending_games: list[str]
    forfeited: list[str]
    tie_break_mode: str
    winner: str | None = None


class EventsResponse(ApiModel):
    tournament_id: str
    since: int
    total: int
    events: list[dict]


class TournamentListResponse(ApiModel):
    tournaments: list[str]


class ApiError(ApiModel):
    http_status: int
    code: str
    message: str
    details: dict = {}
