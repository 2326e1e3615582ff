"""HTTP boundary for the preference-elicitation loop.

A thin orchestrator over the library: sessions persist as one JSON file
each, adaptation runs are synchronous, and generation progress is available
as a server-sent event stream. Every response value is recomputable from
the persisted session alone.
"""

from __future__ import annotations

import json
import math
import threading
import time
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse, StreamingResponse

from .ergonomics import UserPose
from .errors import (
    ConfigurationError,
    OrderingError,
    SessionBusyError,
    StaleSelectionError,
    UnknownSessionError,
    ValidationError,
)
from .nsga3 import Nsga3Config
from .selection import (
    Session,
    SessionRound,
    apply_selection,
    auto_pick_index,
    new_session,
    run_adaptation_round,
)

RAD_TO_DEG = 180.0 / math.pi


class SessionStore:
    """In-memory session registry backed by file-per-session JSON."""

    def __init__(self, data_dir: str | Path):
        self.data_dir = Path(data_dir)
        self.data_dir.mkdir(parents=True, exist_ok=True)
        self._registry_lock = threading.Lock()
        self._sessions: dict[str, Session] = {}
        self._locks: dict[str, threading.Lock] = {}
        self._events: dict[str, list[dict]] = {}
        self._conditions: dict[str, threading.Condition] = {}

    def create(self, session: Session) -> Session:
        with self._registry_lock:
            self._sessions[session.id] = session
            self._locks[session.id] = threading.Lock()
            self._conditions[session.id] = threading.Condition()
            self._events[session.id] = []
        session.save(self.data_dir)
        return session

    def get(self, session_id: str) -> Session:
        with self._registry_lock:
            if session_id in self._sessions:
                return self._sessions[session_id]
        path = self.data_dir / f"{session_id}.json"
        if not path.exists():
            raise UnknownSessionError(f"no session '{session_id}'")
        session = Session.load(path)
        with self._registry_lock:
            self._sessions.setdefault(session.id, session)
            self._locks.setdefault(session.id, threading.Lock())
            self._conditions.setdefault(session.id, threading.Condition())
            self._events.setdefault(session.id, [])
            return self._sessions[session.id]

    def save(self, session: Session) -> None:
        session.save(self.data_dir)

    def lock(self, session_id: str) -> threading.Lock:
        self.get(session_id)
        with self._registry_lock:
            return self._locks[session_id]

    def push_event(self, session_id: str, event: dict) -> None:
        cond = self._conditions[session_id]
        with cond:
            self._events[session_id].append(event)
            cond.notify_all()

    def events(self, session_id: str) -> tuple[list[dict], threading.Condition]:
        self.get(session_id)
        with self._registry_lock:
            return self._events[session_id], self._conditions[session_id]


def _error_response(status: int, code: str, message: str, field: str | None = None):
    body: dict = {"code": code, "message": message}
    if field:
        body["field"] = field
    return JSONResponse(status_code=status, content=body)


def _round_payload(session: Session, rnd: SessionRound, round_index: int) -> dict:
    ids = session.problem.objective_ids
    candidates = []
    for cid, p in zip(rnd.candidate_ids, rnd.presented):
        member = rnd.front.members[p.candidate_index]
        candidates.append(
            {
                "id": cid,
                "position": [float(v) for v in member.position],
                "objectives": {
                    oid: float(member.objectives[m]) for m, oid in enumerate(ids)
                },
                "objectives_degrees": {
                    oid: float(member.objectives[m]) * RAD_TO_DEG
                    for m, oid in enumerate(ids)
                },
                "mu": None if math.isinf(p.mu) else p.mu,
                "is_extreme": p.is_extreme,
            }
        )
    ranges = rnd.front.objective_ranges
    return {
        "round": round_index,
        "candidates": candidates,
        "front": {
            "size": len(rnd.front),
            "ranges": {
                oid: [float(ranges[m, 0]), float(ranges[m, 1])]
                for m, oid in enumerate(ids)
            },
        },
        "auto_pick": rnd.candidate_ids[auto_pick_index(rnd.presented)],
    }


def _constraints_payload(session: Session) -> list[dict]:
    return [
        {"objective": c.objective, "upper_bound": c.upper_bound}
        for c in session.problem.preference_constraints
    ]


def create_app(data_dir: str | Path) -> FastAPI:
    app = FastAPI(title="paretoplace", version="0.1.0")
    store = SessionStore(data_dir)
    app.state.store = store

    @app.exception_handler(ValidationError)
    async def _validation(request: Request, exc: ValidationError):
        return _error_response(422, "validation", str(exc), getattr(exc, "field", None))

    @app.exception_handler(UnknownSessionError)
    async def _unknown(request: Request, exc: UnknownSessionError):
        return _error_response(404, "unknown_session", str(exc))

    @app.exception_handler(StaleSelectionError)
    async def _stale(request: Request, exc: StaleSelectionError):
        return _error_response(409, "stale_selection", str(exc))

    @app.exception_handler(OrderingError)
    async def _ordering(request: Request, exc: OrderingError):
        return _error_response(409, "ordering", str(exc))

    @app.exception_handler(SessionBusyError)
    async def _busy(request: Request, exc: SessionBusyError):
        return _error_response(409, "busy", str(exc))

    async def _body(request: Request) -> dict:
        raw = await request.body()
        if not raw:
            return {}
        try:
            data = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"request body is not valid JSON: {exc}") from exc
        if not isinstance(data, dict):
            raise ValidationError("request body must be a JSON object")
        return data

    @app.post("/sessions", status_code=201)
    async def create_session(request: Request):
        data = await _body(request)
        if "pose" not in data:
            raise ValidationError("missing 'pose'", field="pose")
        pose = UserPose.from_dict(data["pose"])
        config = data.get("config", {})
        if not isinstance(config, dict):
            raise ValidationError("'config' must be an object", field="config")
        nsga3 = (
            Nsga3Config.from_dict(config["nsga3"]) if "nsga3" in config else None
        )
        session = new_session(
            pose,
            nsga3=nsga3,
            reduction_k=int(config.get("reduction_k", 5)),
            tau=float(config.get("tau", 0.2)),
        )
        store.create(session)
        return {"id": session.id}

    @app.get("/sessions/{session_id}")
    async def get_session(session_id: str):
        session = store.get(session_id)
        return {
            "id": session.id,
            "pose": session.pose.to_dict(),
            "rounds": len(session.rounds),
            "selections": [r.selection for r in session.rounds],
            "constraints": _constraints_payload(session),
            "reduction_k": session.reduction_k,
            "tau": session.tau,
            "nsga3": session.nsga3.to_dict(),
        }

    @app.post("/sessions/{session_id}/adapt")
    async def adapt(session_id: str, request: Request):
        data = await _body(request)
        session = store.get(session_id)
        overrides = None
        if "nsga3" in data:
            merged = {**session.nsga3.to_dict(), **data["nsga3"]}
            overrides = Nsga3Config.from_dict(merged)
        reduction_k = int(data["reduction_k"]) if "reduction_k" in data else None
        lock = store.lock(session_id)
        if not lock.acquire(blocking=False):
            raise SessionBusyError("an adaptation round is already in flight")
        try:
            round_index = len(session.rounds)

            def on_progress(generation: int, rank0_size: int) -> None:
                store.push_event(
                    session_id,
                    {
                        "type": "progress",
                        "round": round_index,
                        "generation": generation,
                        "rank0_size": rank0_size,
                    },
                )

            rnd = run_adaptation_round(
                session, config=overrides, reduction_k=reduction_k, progress=on_progress
            )
            store.save(session)
        finally:
            lock.release()
        payload = _round_payload(session, rnd, round_index)
        store.push_event(
            session_id,
            {"type": "round_complete", "round": round_index, "front_size": len(rnd.front)},
        )
        return payload

    @app.get("/sessions/{session_id}/front")
    async def front(session_id: str):
        session = store.get(session_id)
        if not session.rounds:
            raise OrderingError("no adaptation round has been run yet")
        rnd = session.rounds[-1]
        ranges = rnd.front.objective_ranges
        ids = session.problem.objective_ids
        return {
            "round": len(session.rounds) - 1,
            "objective_ids": list(ids),
            "candidates": rnd.front.to_json(),
            "ranges": {
                oid: [float(ranges[m, 0]), float(ranges[m, 1])]
                for m, oid in enumerate(ids)
            },
            "constraints": _constraints_payload(session),
        }

    @app.post("/sessions/{session_id}/select")
    async def select(session_id: str, request: Request):
        data = await _body(request)
        if "candidate_id" not in data:
            raise ValidationError("missing 'candidate_id'", field="candidate_id")
        session = store.get(session_id)
        lock = store.lock(session_id)
        if not lock.acquire(blocking=False):
            raise SessionBusyError("an adaptation round is already in flight")
        try:
            apply_selection(session, str(data["candidate_id"]))
            store.save(session)
        finally:
            lock.release()
        return {
            "round": len(session.rounds) - 1,
            "selection": session.rounds[-1].selection,
            "constraints": _constraints_payload(session),
        }

    @app.get("/sessions/{session_id}/events")
    async def events(session_id: str, request: Request, wait: float = 0.0):
        history, cond = store.events(session_id)

        def stream():
            cursor = 0
            deadline = None
            while True:
                with cond:
                    pending = history[cursor:]
                if pending:
                    for event in pending:
                        cursor += 1
                        yield f"event: {event['type']}\ndata: {json.dumps(event)}\n\n"
                    continue
                if wait <= 0:
                    break
                if deadline is None:
                    deadline = time.monotonic() + wait
                remaining = deadline - time.monotonic()
                if remaining <= 0:
                    break
                with cond:
                    cond.wait(timeout=min(remaining, 0.5))

        return StreamingResponse(stream(), media_type="text/event-stream")

    return app
