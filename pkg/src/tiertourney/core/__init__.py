from .errors import (
    AlreadyReported,
    CorruptLine,
    DegenerateTier,
    DuplicatePlayer,
    GroupTooSmall,
    IllegalTransition,
    InconsistentScores,
    IncompleteResults,
    IndivisibleTier,
    MissingColorCounts,
    MissingHeader,
    MixedPair,
    NoGames,
    NotActive,
    PendingRandomTieBreak,
    PoolTooSmall,
    RosterSizeUnsupported,
    SelfOpponent,
    SizeMismatch,
    TierClosed,
    TournamentError,
    UnknownGame,
    UnknownPlayer,
    UnknownTournament,
    VersionMismatch,
)
from .events import (
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
    SCHEMA_VERSION,
    StandingRow,
    TieResolvedRandomly,
    TierCompleted,
    TierStarted,
    TournamentCompleted,
    TournamentCreated,
    record_from_line,
    record_to_line,
)
from .log import append_record, append_records, read_events, read_log, write_log
from .rng import substream
from .roster import ROSTER_HEADER, parse_roster, read_roster, write_roster
from .state import GroupState, TournamentState, apply_event, replay
from .types import (
    DEFAULT_MAX_GROUP_SIZE,
    Color,
    GameRecord,
    GameResult,
    Player,
    TieBreakMode,
    TierConfig,
    TournamentConfig,
    config_from_dict,
    config_to_dict,
    validate_config,
)

__all__ = [name for name in dir() if not name.startswith("_")]
