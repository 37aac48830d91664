from .app import create_app
from .store import TournamentStore

__all__ = ["create_app", "TournamentStore"]
