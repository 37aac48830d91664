"""HTTP service over the tournament engine.

One log file per tournament; every mutation is appended and fsynced before
the response goes out. Mutations on one tournament are serialized through
its lock, reads serve consistent snapshots, and different tournaments never
contend. Non-2xx responses always carry the ApiError shape.
"""

from __future__ import annotations

import json
import os
from pathlib import Path

from fastapi import FastAPI, Query, Request
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from ..core.errors import (
    PendingRandomTieBreak,
    TournamentError,
)
from ..core.events import record_to_line
from ..core.state import PHASE_COMPLETE, TournamentState
from ..core.types import GameResult
from ..engine import (
    byes_view,
    complete_tier,
    create_tournament,
    current_standings,
    enter_result,
    forfeit,
    pairings_view,
    pending_games,
    system_clock,
)
from .models import (
    ApiError,
    BoardModel,
    ByeModel,
    CompleteTierResponse,
    ConfigModel,
    CreateTournamentRequest,
    CreateTournamentResponse,
    EventsResponse,
    ForfeitRequest,
    GroupSnapshotModel,
    GroupStandingModel,
    PairingsResponse,
    PendingTieBreakResponse,
    PlayerModel,
    ResultRequest,
    StandingRowModel,
    StandingsResponse,
    TieBreakRequest,
    TournamentListResponse,
    TournamentSnapshot,
)
from .store import TournamentStore

# codes not listed here answer 400
_STATUS = {
    "UnknownTournament": 404,
    "UnknownGame": 404,
    "UnknownPlayer": 404,
    "AlreadyReported": 409,
    "TierClosed": 409,
    "IncompleteResults": 409,
    "NotActive": 409,
    "IllegalTransition": 409,
    "PendingRandomTieBreak": 202,
}

DEFAULT_LOG_DIR = "./tournament-logs"


def _error_response(status: int, code: str, message: str, details: dict) -> JSONResponse:
    body = ApiError(http_status=status, code=code, message=message, details=details)
    return JSONResponse(status_code=status, content=body.model_dump(by_alias=True))


def _row_models(rows) -> list[StandingRowModel]:
    return [
        StandingRowModel(
            rank=r.rank,
            player_id=r.player_id,
            ts_num=r.ts_num,
            ts_den=r.ts_den,
            wins=r.wins,
            losses=r.losses,
            draws=r.draws,
            tiebreak_rule=r.rule,
        )
        for r in rows
    ]


def _standings_response(tournament_id: str, state: TournamentState) -> StandingsResponse:
    per_group = current_standings(state)
    ordered = sorted(per_group, key=lambda gid: (state.groups[gid].tier, gid))
    return StandingsResponse(
        tournament_id=tournament_id,
        tier=state.current_tier,
        groups=[
            GroupStandingModel(group_id=gid, rows=_row_models(per_group[gid]))
            for gid in ordered
        ],
        final_standing=_row_models(state.final_standing) if state.final_standing else None,
        winner=state.winner,
    )


def create_app(log_dir: str | Path | None = None, console_dir: str | Path | None = None) -> FastAPI:
    resolved = Path(log_dir or os.environ.get("MTT_LOG_DIR") or DEFAULT_LOG_DIR)
    store = TournamentStore(resolved)

    app = FastAPI(title="tiered tournament service")
    app.state.store = store

    @app.exception_handler(TournamentError)
    async def on_domain_error(request: Request, exc: TournamentError):
        status = _STATUS.get(exc.code, 400)
        return _error_response(status, exc.code, str(exc), exc.details)

    @app.exception_handler(ValueError)
    async def on_value_error(request: Request, exc: ValueError):
        return _error_response(400, "InvalidValue", str(exc), {})

    @app.get("/tournaments", response_model=TournamentListResponse)
    def list_tournaments():
        return TournamentListResponse(tournaments=store.list_ids())

    @app.post("/tournaments", status_code=201, response_model=CreateTournamentResponse)
    def create(req: CreateTournamentRequest):
        config = req.config_ref.to_domain()
        roster = [p.to_domain() for p in req.roster]
        progress = create_tournament(config, roster, system_clock)
        tournament_id = store.create(progress)
        return CreateTournamentResponse(tournament_id=tournament_id)

    @app.get("/tournaments/{tournament_id}", response_model=TournamentSnapshot)
    def snapshot(tournament_id: str):
        state = store.state(tournament_id)
        assert state.config is not None
        return TournamentSnapshot(
            tournament_id=tournament_id,
            phase=state.phase,
            current_tier=state.current_tier,
            tier_count=state.config.tier_count,
            config=ConfigModel.from_domain(state.config),
            roster=[PlayerModel(id=p.id, name=p.name, elo=p.elo) for p in state.roster],
            groups=[
                GroupSnapshotModel(
                    group_id=g.group_id,
                    tier=g.tier,
                    members=list(g.members),
                    rounds_total=len(g.rounds),
                )
                for g in state.current_groups()
            ],
            pending_games=pending_games(state),
            forfeited=sorted(state.forfeited),
            tie_break_mode=state.config.tie_break_mode.value,
            winner=state.winner,
        )

    @app.get("/tournaments/{tournament_id}/pairings", response_model=PairingsResponse)
    def pairings(tournament_id: str, round: int | None = Query(default=None, ge=1)):
        state = store.state(tournament_id)
        boards = pairings_view(state, round)
        return PairingsResponse(
            tournament_id=tournament_id,
            tier=state.current_tier,
            boards=[
                BoardModel(
                    tier=b.tier,
                    group_id=b.group_id,
                    round=b.round,
                    ref=b.ref,
                    white_id=b.white_id,
                    black_id=b.black_id,
                    result=b.result,
                )
                for b in boards
            ],
            byes=[
                ByeModel(group_id=gid, round=rnd, player_id=pid)
                for gid, rnd, pid in byes_view(state, round)
            ],
        )

    @app.post("/tournaments/{tournament_id}/results", response_model=StandingsResponse)
    def post_result(tournament_id: str, req: ResultRequest):
        with store.lock(tournament_id):
            state = store.state(tournament_id)
            progress = enter_result(
                state, req.game_ref, GameResult.from_token(req.result), req.moves, system_clock
            )
            store.commit(tournament_id, progress)
            return _standings_response(tournament_id, progress.state)

    @app.post("/tournaments/{tournament_id}/forfeit", response_model=StandingsResponse)
    def post_forfeit(tournament_id: str, req: ForfeitRequest):
        with store.lock(tournament_id):
            state = store.state(tournament_id)
            progress = forfeit(state, req.player_id, req.reason, system_clock)
            store.commit(tournament_id, progress)
            return _standings_response(tournament_id, progress.state)

    def _complete(tournament_id: str, confirm_random: bool):
        with store.lock(tournament_id):
            state = store.state(tournament_id)
            completed = state.current_tier
            try:
                progress = complete_tier(state, system_clock, confirm_random=confirm_random)
            except PendingRandomTieBreak as exc:
                body = PendingTieBreakResponse(
                    tournament_id=tournament_id,
                    tied_players=list(exc.details.get("tiedPlayers", ())),
                    message=str(exc),
                )
                return JSONResponse(status_code=202, content=body.model_dump(by_alias=True))
            store.commit(tournament_id, progress)
            new = progress.state
            return CompleteTierResponse(
                tournament_id=tournament_id,
                tier=completed,
                promoted=list(new.promoted_history.get(completed, ())),
                standings=[
                    GroupStandingModel(group_id=s.group_id, rows=_row_models(s.rows))
                    for s in new.standings_history.get(completed, ())
                ],
                next_tier=new.current_tier if new.phase != PHASE_COMPLETE else None,
                winner=new.winner,
            )

    @app.post(
        "/tournaments/{tournament_id}/complete-tier",
        response_model=CompleteTierResponse,
        responses={202: {"model": PendingTieBreakResponse}, 409: {"model": ApiError}},
    )
    def post_complete_tier(tournament_id: str):
        return _complete(tournament_id, confirm_random=False)

    @app.post(
        "/tournaments/{tournament_id}/tiebreak",
        response_model=CompleteTierResponse,
        responses={400: {"model": ApiError}},
    )
    def post_tiebreak(tournament_id: str, req: TieBreakRequest):
        if not req.accept:
            return _error_response(
                400,
                "ConfirmationRequired",
                "tiebreak must be posted with accept=true",
                {},
            )
        return _complete(tournament_id, confirm_random=True)

    @app.get("/tournaments/{tournament_id}/standings", response_model=StandingsResponse)
    def standings(tournament_id: str):
        state = store.state(tournament_id)
        return _standings_response(tournament_id, state)

    @app.get("/tournaments/{tournament_id}/events", response_model=EventsResponse)
    def events(tournament_id: str, since: int = Query(default=0, ge=0)):
        records = store.records(tournament_id)
        suffix = records[since:]
        return EventsResponse(
            tournament_id=tournament_id,
            since=since,
            total=len(records),
            events=[json.loads(record_to_line(r)) for r in suffix],
        )

    if console_dir is not None and Path(console_dir).is_dir():
        app.mount("/console", StaticFiles(directory=str(console_dir), html=True), name="console")

    return app
