"""Interactive play API.

Each session owns a level instance: the ground-truth state, the recorded
trajectory, and the model relearned from scratch after every accepted
input. Relearning per move is deliberate; at play-session scale it costs
milliseconds and keeps the server free of incremental-update state.

    GET  /api/levels
    POST /api/sessions                {"level_id": ...}
    POST /api/sessions/{id}/moves     {"direction": "up"|"down"|"left"|"right"}
    GET  /api/sessions/{id}/model
    GET  /api/sessions/{id}/trace
"""

from __future__ import annotations

import threading
import uuid
from dataclasses import dataclass, field

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import PlainTextResponse
from pydantic import BaseModel

from .errors import TracelearnError
from .evaluation import report
from .learner import learn
from .pddl.model import Domain, Problem
from .pddl.printer import print_domain
from .simulator import step
from .sokoban import SokobanLevel, compile_level, render_grid, resolve_intent
from .trace import Trajectory, Transition, write_trace


class CreateSession(BaseModel):
    level_id: str


class MoveRequest(BaseModel):
    direction: str


@dataclass
class Session:
    id: str
    level: SokobanLevel
    problem: Problem
    state: frozenset
    transitions: list[Transition] = field(default_factory=list)
    lock: threading.Lock = field(default_factory=threading.Lock)

    def trajectory(self) -> Trajectory:
        return Trajectory(
            objects=dict(self.problem.objects),
            init=self.problem.init,
            transitions=tuple(self.transitions),
        )


def _proficiency(domain: Domain, trajectory: Trajectory) -> tuple[list[dict], str]:
    model = learn([trajectory], domain)
    rows = []
    for row in report(model, domain).rows:
        rows.append({"action": row.name, "f1": "unobserved" if row.unobserved else row.f1})
    return rows, print_domain(model.to_domain(domain))


def create_app(domain: Domain, levels: dict[str, SokobanLevel]) -> FastAPI:
    app = FastAPI(title="tracelearn play server")
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )
    sessions: dict[str, Session] = {}

    def get_session(session_id: str) -> Session:
        session = sessions.get(session_id)
        if session is None:
            raise HTTPException(status_code=404, detail=f"unknown session {session_id!r}")
        return session

    @app.get("/api/levels")
    def list_levels() -> list[dict]:
        return [
            {"id": level_id, "name": level_id, "grid-rows": list(level.rows)}
            for level_id, level in sorted(levels.items())
        ]

    @app.post("/api/sessions")
    def create_session(body: CreateSession) -> dict:
        level = levels.get(body.level_id)
        if level is None:
            raise HTTPException(status_code=404, detail=f"unknown level {body.level_id!r}")
        problem = compile_level(level)
        session = Session(
            id=uuid.uuid4().hex, level=level, problem=problem, state=problem.init
        )
        sessions[session.id] = session
        return {
            "session_id": session.id,
            "grid": render_grid(level, session.state),
            "state-atoms": sorted(str(a) for a in session.state),
        }

    @app.post("/api/sessions/{session_id}/moves")
    def make_move(session_id: str, body: MoveRequest) -> dict:
        session = get_session(session_id)
        with session.lock:
            try:
                action = resolve_intent(session.state, body.direction, domain, session.problem)
                result = step(session.state, action, domain, session.problem.objects)
            except TracelearnError as exc:
                raise HTTPException(status_code=400, detail=str(exc))
            if result.ok:
                session.transitions.append(Transition(session.state, action, True, result.next_state))
                session.state = result.next_state
            else:
                session.transitions.append(Transition(session.state, action, False, session.state))
            proficiency, model_pddl = _proficiency(domain, session.trajectory())
            return {
                "outcome": "ok" if result.ok else "failed",
                "action": str(action),
                "state-atoms": sorted(str(a) for a in session.state),
                "trace_length": len(session.transitions),
                "proficiency": proficiency,
                "model_pddl": model_pddl,
            }

    @app.get("/api/sessions/{session_id}/model")
    def get_model(session_id: str) -> dict:
        session = get_session(session_id)
        with session.lock:
            proficiency, model_pddl = _proficiency(domain, session.trajectory())
        return {"model_pddl": model_pddl, "proficiency": proficiency}

    @app.get("/api/sessions/{session_id}/trace")
    def get_trace(session_id: str) -> PlainTextResponse:
        session = get_session(session_id)
        with session.lock:
            body = write_trace(session.trajectory())
        return PlainTextResponse(
            body, headers={"Content-Disposition": f'attachment; filename="{session_id}.trace"'}
        )

    return app
