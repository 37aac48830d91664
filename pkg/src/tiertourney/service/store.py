"""Disk-backed tournament store: one append-only log file per tournament.

Every mutation appends and fsyncs before the caller can answer the client,
so an acknowledged event survives a crash. A per-tournament lock serializes
writers; reads serve the cached state, rebuilt from disk on first touch.
"""

from __future__ import annotations

import secrets
import threading
from pathlib import Path

from ..core.errors import UnknownTournament
from ..core.log import append_records, read_log
from ..core.state import TournamentState, replay
from ..engine import Progress

LOG_SUFFIX = ".ndjson"


class TournamentStore:
    def __init__(self, log_dir: str | Path):
        self.log_dir = Path(log_dir)
        self.log_dir.mkdir(parents=True, exist_ok=True)
        self._states: dict[str, TournamentState] = {}
        self._locks: dict[str, threading.Lock] = {}
        self._registry_lock = threading.Lock()

    def path_for(self, tournament_id: str) -> Path:
        return self.log_dir / f"{tournament_id}{LOG_SUFFIX}"

    def lock(self, tournament_id: str) -> threading.Lock:
        with self._registry_lock:
            return self._locks.setdefault(tournament_id, threading.Lock())

    def list_ids(self) -> list[str]:
        return sorted(p.name[: -len(LOG_SUFFIX)] for p in self.log_dir.glob(f"*{LOG_SUFFIX}"))

    def new_id(self) -> str:
        while True:
            tid = secrets.token_hex(6)
            if not self.path_for(tid).exists():
                return tid

    def create(self, progress: Progress) -> str:
        tournament_id = self.new_id()
        with self.lock(tournament_id):
            append_records(self.path_for(tournament_id), progress.new_records)
            self._states[tournament_id] = progress.state
        return tournament_id

    def state(self, tournament_id: str) -> TournamentState:
        """Current state; rebuilt from the log when not cached."""
        cached = self._states.get(tournament_id)
        if cached is not None:
            return cached
        path = self.path_for(tournament_id)
        if not path.exists():
            raise UnknownTournament(tournament_id)
        state = replay([r.event for r in read_log(path)])
        self._states[tournament_id] = state
        return state

    def commit(self, tournament_id: str, progress: Progress) -> None:
        """Persist a mutation; caller must hold the tournament's lock."""
        append_records(self.path_for(tournament_id), progress.new_records)
        self._states[tournament_id] = progress.state

    def records(self, tournament_id: str):
        path = self.path_for(tournament_id)
        if not path.exists():
            raise UnknownTournament(tournament_id)
        return read_log(path)
