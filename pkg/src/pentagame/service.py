"""HTTP session service for interactive human-vs-bot play.

A thin shell over :func:`pentagame.bot.bot_move`: the human is always
Player 1, the bot replies synchronously to every human move, and the
state payload carries everything a client needs to render the board
(point lists, phase, active circle, live threats, the last blocked
copy).  Sessions live in memory; requests for the same session are
serialized by a per-session lock while distinct sessions proceed
concurrently.
"""

from __future__ import annotations

import os
import threading
import time
import uuid
from dataclasses import dataclass, field

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel

from .bot import BotState, bot_move
from .geometry import (
    DEFAULT_T,
    EPS_EXACT,
    GoalSet,
    PlanarPoint,
    Threat,
    find_copies,
    find_threats,
)

SNAP_TOLERANCE = 1e-6

T_ENV_VAR = "PENTAGAME_T"


def default_t() -> float:
    """The goal-set parameter, overridable via the environment."""
    raw = os.environ.get(T_ENV_VAR)
    return float(raw) if raw else DEFAULT_T


@dataclass
class Session:
    """One human-vs-bot game and its append-only event log."""

    id: str
    goal: GoalSet
    state: BotState
    p1_points: list[PlanarPoint] = field(default_factory=list)
    p2_points: list[PlanarPoint] = field(default_factory=list)
    log: list[dict] = field(default_factory=list)
    last_block: dict | None = None
    p1_completed: bool = False
    created: float = field(default_factory=time.time)
    updated: float = field(default_factory=time.time)
    lock: threading.Lock = field(default_factory=threading.Lock)

    @property
    def move_index(self) -> int:
        return len(self.p1_points) + len(self.p2_points)


def _copy_dict(th: Threat, owner: str) -> dict:
    return {
        "owner": owner,
        "points": [[p.x, p.y] for p in th.copy.points],
        "missing": [th.missing_point.x, th.missing_point.y],
    }


def session_state(s: Session) -> dict:
    """The full render payload for a session."""
    p1_threats = find_threats(s.p1_points, s.p2_points, s.goal, EPS_EXACT)
    p2_threats = find_threats(s.p2_points, s.p1_points, s.goal, EPS_EXACT, owner="P2")
    circle = None
    if s.state.center is not None:
        circle = {
            "id": s.state.circle_id,
            "center": [s.state.center.x, s.state.center.y],
            "radius": 1.0,
        }
    return {
        "id": s.id,
        "move": s.move_index,
        "phase": s.state.phase.capitalize(),
        "t": s.goal.t,
        "theta": s.goal.theta,
        "p1_points": [p.to_dict() for p in s.p1_points],
        "p2_points": [p.to_dict() for p in s.p2_points],
        "circle": circle,
        "threats": {
            "p1": [_copy_dict(th, "P1") for th in p1_threats],
            "p2": [_copy_dict(th, "P2") for th in p2_threats],
        },
        "last_block": s.last_block,
        "p1_completed": s.p1_completed,
        "violations": list(s.state.violations),
        "created": s.created,
        "updated": s.updated,
    }


class CreateGame(BaseModel):
    t: float | None = None


class MoveBody(BaseModel):
    x: float
    y: float


def create_app() -> FastAPI:
    """A fresh service instance with its own session registry."""
    app = FastAPI(title="pentagame")
    sessions: dict[str, Session] = {}
    registry_lock = threading.Lock()

    def _get(game_id: str) -> Session:
        with registry_lock:
            s = sessions.get(game_id)
        if s is None:
            raise HTTPException(status_code=404, detail="unknown game")
        return s

    @app.post("/games", status_code=201)
    def create_game(body: CreateGame | None = None):
        t = body.t if body and body.t is not None else default_t()
        if not 0.0 < t < 1.0 / 9.0:
            raise HTTPException(status_code=422, detail="t must be in (0, 1/9)")
        goal = GoalSet(t=t)
        s = Session(id=uuid.uuid4().hex, goal=goal, state=BotState(goal=goal))
        with registry_lock:
            sessions[s.id] = s
        return {"id": s.id, "state": session_state(s)}

    @app.post("/games/{game_id}/move")
    def play_move(game_id: str, body: MoveBody):
        s = _get(game_id)
        with s.lock:
            if s.p1_completed:
                raise HTTPException(status_code=409, detail="game over")
            pt = PlanarPoint(body.x, body.y)
            taken = s.p1_points + s.p2_points
            if any(pt.dist(q) <= SNAP_TOLERANCE for q in taken):
                raise HTTPException(status_code=409, detail="point already chosen")
            s.p1_points.append(pt)
            s.log.append(
                {"i": s.move_index - 1, "player": 1, "x": pt.x, "y": pt.y}
            )
            if find_copies(s.p1_points, s.goal, EPS_EXACT):
                # the bot failed (this cannot happen against the strategy,
                # but the ledger records it rather than hiding it)
                s.p1_completed = True
                s.updated = time.time()
                return {"bot_reply": None, "state": session_state(s)}
            reply, s.state = bot_move(s.state, s.p1_points, s.p2_points)
            s.p2_points.append(reply)
            row = {"i": s.move_index - 1, "player": 2, "x": reply.x, "y": reply.y}
            if reply.on is not None:
                row["circle"] = reply.on.circle_id
                row["k2"] = reply.on.angle.k2
                s.last_block = None
            else:
                blocked = [
                    th
                    for th in find_threats(
                        s.p1_points, s.p2_points[:-1], s.goal, EPS_EXACT
                    )
                    if th.missing_point.dist(reply) <= SNAP_TOLERANCE
                ]
                if blocked:
                    s.last_block = _copy_dict(blocked[0], "P1")
            s.log.append(row)
            s.updated = time.time()
            return {"bot_reply": reply.to_dict(), "state": session_state(s)}

    @app.get("/games/{game_id}")
    def get_game(game_id: str):
        s = _get(game_id)
        with s.lock:
            return session_state(s)

    return app


app = create_app()
