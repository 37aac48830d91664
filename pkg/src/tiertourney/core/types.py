"""Domain types shared by every module.

Ratings are kept as positive integers throughout: integer sums make the
group-balancing subset optimization exact, and real-world rating lists are
integers anyway.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .errors import DegenerateTier, DuplicatePlayer, IndivisibleTier, SizeMismatch

#: Group size above which a tier is split into balanced subsets, unless the
#: config says otherwise. Ten opponents is about the practical ceiling for a
#: single all-play-all group.
DEFAULT_MAX_GROUP_SIZE = 10


class Color(enum.Enum):
    WHITE = "white"
    BLACK = "black"
    BYE = "bye"


class GameResult(enum.Enum):
    """Outcome of one game, using the conventional result tokens."""

    WHITE_WIN = "1-0"
    BLACK_WIN = "0-1"
    DRAW = "1/2-1/2"

    @classmethod
    def from_token(cls, token: str) -> "GameResult":
        for member in cls:
            if member.value == token:
                return member
        raise ValueError(f"unknown result token: {token!r}")


@dataclass(frozen=True)
class Player:
    id: str
    name: str
    elo: int

    def __post_init__(self):
        if not self.id:
            raise ValueError("player id must be non-empty")
        if self.elo <= 0:
            raise ValueError(f"player {self.id!r}: elo must be a positive integer, got {self.elo}")


@dataclass(frozen=True)
class GameRecord:
    """One finished game. `move_count` is in full moves; forfeited games are
    marked and carry move_count 0 (the only case 0 is allowed)."""

    white_id: str
    black_id: str
    result: GameResult
    move_count: int
    round: int = 1
    group_id: str = ""
    forfeit: bool = False

    def __post_init__(self):
        if self.white_id == self.black_id:
            raise ValueError(f"game pairs player {self.white_id!r} with themselves")
        if self.forfeit:
            if self.move_count != 0:
                raise ValueError("forfeited games carry move_count 0")
        elif self.move_count < 1:
            raise ValueError(f"move_count must be >= 1, got {self.move_count}")

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
class TierConfig:
    """One tier: how many players seed into it, how many leave upward, and
    the largest group it may play in before being split into subsets.

    max_group_size=None disables splitting for the tier.
    """

    base_size: int
    promote_count: int
    max_group_size: int | None = DEFAULT_MAX_GROUP_SIZE

    def __post_init__(self):
        if self.base_size < 1:
            raise ValueError("base_size must be >= 1")
        if self.promote_count < 0:
            raise ValueError("promote_count must be >= 0")
        if self.max_group_size is not None and self.max_group_size < 2:
            raise ValueError("max_group_size must be >= 2 (or None)")


class TieBreakMode(enum.Enum):
    AUTO = "auto"
    INTERACTIVE = "interactive"


@dataclass(frozen=True)
class TournamentConfig:
    """Tier ladder (index 0 = lowest-rated tier), the master seed, and
    whether random tie-breaks need director confirmation."""

    tiers: tuple[TierConfig, ...]
    seed: int = 0
    tie_break_mode: TieBreakMode = TieBreakMode.AUTO

    def __post_init__(self):
        if not self.tiers:
            raise ValueError("config needs at least one tier")
        object.__setattr__(self, "tiers", tuple(self.tiers))

    @property
    def tier_count(self) -> int:
        return len(self.tiers)

    def tier_size(self, index: int) -> int:
        """Playing size of tier `index` (1-based): base players plus the
        promotions it receives from the tier below."""
        cfg = self.tiers[index - 1]
        received = self.tiers[index - 2].promote_count if index > 1 else 0
        return cfg.base_size + received


def validate_config(config: TournamentConfig, roster: list[Player]) -> TournamentConfig:
    """Check a config against a roster before any event is emitted.

    Raises SizeMismatch, DuplicatePlayer, DegenerateTier, or IndivisibleTier.
    Returns the config unchanged when everything lines up.
    """
    seen: set[str] = set()
    for player in roster:
        if player.id in seen:
            raise DuplicatePlayer(f"duplicate player id {player.id!r} in roster", player_id=player.id)
        seen.add(player.id)

    total = sum(t.base_size for t in config.tiers)
    if total != len(roster):
        raise SizeMismatch(
            f"tier sizes sum to {total} but roster has {len(roster)} players",
            expected=total,
            actual=len(roster),
        )

    last = config.tier_count
    for index in range(1, last + 1):
        tier_cfg = config.tiers[index - 1]
        size = config.tier_size(index)
        if size < 2:
            raise DegenerateTier(f"tier {index} would have {size} player(s)", tier=index, size=size)
        if index == last:
            if tier_cfg.promote_count != 0:
                raise DegenerateTier("final tier must have promote_count 0", tier=index)
        elif tier_cfg.promote_count < 1:
            raise DegenerateTier(f"tier {index} promotes nobody; the ladder is broken there", tier=index)
        elif tier_cfg.promote_count >= size:
            raise DegenerateTier(
                f"tier {index} cannot promote {tier_cfg.promote_count} of its {size} players",
                tier=index,
            )
        mgs = tier_cfg.max_group_size
        if mgs is not None and size > mgs and size % mgs != 0:
            raise IndivisibleTier(
                f"tier {index} has {size} players, not divisible into groups of {mgs}",
                tier=index,
                size=size,
                group_size=mgs,
            )
    return config


# --- config (de)serialization -------------------------------------------------

_TIER_KEYS = {
    "base_size": ("base_size", "baseSize"),
    "promote_count": ("promote_count", "promoteCount"),
    "max_group_size": ("max_group_size", "maxGroupSize"),
}


def _pick(mapping: dict, snake: str, camel: str, default=...):
    if snake in mapping:
        return mapping[snake]
    if camel in mapping:
        return mapping[camel]
    if default is ...:
        raise ValueError(f"config missing required key {camel!r}")
    return default


def config_from_dict(data: dict) -> TournamentConfig:
    """Parse a config mapping (camelCase or snake_case keys)."""
    raw_tiers = data.get("tiers")
    if not isinstance(raw_tiers, list) or not raw_tiers:
        raise ValueError("config needs a non-empty 'tiers' list")
    tiers = []
    for entry in raw_tiers:
        tiers.append(
            TierConfig(
                base_size=int(_pick(entry, *_TIER_KEYS["base_size"])),
                promote_count=int(_pick(entry, *_TIER_KEYS["promote_count"])),
                max_group_size=(
                    None
                    if (raw := _pick(entry, *_TIER_KEYS["max_group_size"], default=DEFAULT_MAX_GROUP_SIZE)) is None
                    else int(raw)
                ),
            )
        )
    mode = TieBreakMode(_pick(data, "tie_break_mode", "tieBreakMode", default="auto"))
    return TournamentConfig(tiers=tuple(tiers), seed=int(data.get("seed", 0)), tie_break_mode=mode)


def config_to_dict(config: TournamentConfig) -> dict:
    return {
        "tiers": [
            {
                "baseSize": t.base_size,
                "promoteCount": t.promote_count,
                "maxGroupSize": t.max_group_size,
            }
            for t in config.tiers
        ],
        "seed": config.seed,
        "tieBreakMode": config.tie_break_mode.value,
    }
