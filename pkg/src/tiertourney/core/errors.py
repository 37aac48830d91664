"""Domain errors. Every class carries a stable machine code (its name)."""

from __future__ import annotations


class TournamentError(Exception):
    """Base domain error; `code` mirrors the class name and `details` holds
    structured context (e.g. the list of missing games)."""

    code = "TournamentError"

    def __init__(self, message: str, **details):
        super().__init__(message)
        self.details = details


# config / roster
class SizeMismatch(TournamentError):
    code = "SizeMismatch"


class DegenerateTier(TournamentError):
    code = "DegenerateTier"


class DuplicatePlayer(TournamentError):
    code = "DuplicatePlayer"


# event log
class IllegalTransition(TournamentError):
    code = "IllegalTransition"


class CorruptLine(TournamentError):
    code = "CorruptLine"


class VersionMismatch(TournamentError):
    code = "VersionMismatch"


# scoring
class NoGames(TournamentError):
    code = "NoGames"


class MixedPair(TournamentError):
    code = "MixedPair"


class SelfOpponent(TournamentError):
    code = "SelfOpponent"


class InconsistentScores(TournamentError):
    code = "InconsistentScores"


# tiering
class PoolTooSmall(TournamentError):
    code = "PoolTooSmall"


class IndivisibleTier(TournamentError):
    code = "IndivisibleTier"


# scheduling
class GroupTooSmall(TournamentError):
    code = "GroupTooSmall"


# engine
class UnknownGame(TournamentError):
    code = "UnknownGame"


class AlreadyReported(TournamentError):
    code = "AlreadyReported"


class TierClosed(TournamentError):
    code = "TierClosed"


class IncompleteResults(TournamentError):
    code = "IncompleteResults"


class UnknownPlayer(TournamentError):
    code = "UnknownPlayer"


class NotActive(TournamentError):
    code = "NotActive"


class PendingRandomTieBreak(TournamentError):
    """Raised in interactive mode when a random tie-break at a promotion or
    winner boundary awaits director confirmation. Not a failure."""

    code = "PendingRandomTieBreak"


# analyze
class MissingHeader(TournamentError):
    code = "MissingHeader"


class MissingColorCounts(TournamentError):
    code = "MissingColorCounts"


# simulate
class RosterSizeUnsupported(TournamentError):
    code = "RosterSizeUnsupported"


# service
class UnknownTournament(TournamentError):
    code = "UnknownTournament"
