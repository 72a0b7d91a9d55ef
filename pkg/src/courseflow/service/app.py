"""FastAPI wrapper around the engine.

Sessions live in process memory. Every endpoint takes the session's own
lock, so concurrent clients of one session are serialized while separate
sessions run independently.
"""

import json
import threading
import uuid
from pathlib import Path

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import PlainTextResponse

from ..engine import SessionConfig, Status
from ..errors import (
    CourseflowError,
    CourseValidationError,
    HashMismatch,
    MalformedPath,
    MalformedSnapshot,
    NotAwaitingScene,
    PathNotFound,
    TargetNotActive,
)
from ..gadgets import TimerGadget
from ..player import (
    MemoryLmsAdapter,
    SuspendRecord,
    load_course,
    make_session,
    parse_payload,
    resume,
    suspend,
)
from .schemas import (
    CompleteRequest,
    CreateSessionRequest,
    CurrentViewOut,
    HaltInfo,
    InterruptRequest,
    OptionOut,
    SessionCreated,
    SuspendResponse,
    TickRequest,
)


class _Entry:
    def __init__(self, session, bundle):
        self.session = session
        self.bundle = bundle
        self.lock = threading.Lock()


def _normalize(value):
    """JSON integers become script numbers (binary64)."""
    if isinstance(value, bool) or value is None or isinstance(value, (float, str)):
        return value
    if isinstance(value, int):
        return float(value)
    if isinstance(value, list):
        return [_normalize(v) for v in value]
    if isinstance(value, dict):
        return {k: _normalize(v) for k, v in value.items()}
    return value


def create_app(courses_dir):
    courses_dir = Path(courses_dir)
    app = FastAPI(title="courseflow sessions", version="0.1.0")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    entries = {}
    bundles = {}
    registry_lock = threading.Lock()

    def get_bundle(name):
        if not name or "/" in name or "\\" in name or name.startswith("."):
            raise HTTPException(404, f"unknown course {name!r}")
        with registry_lock:
            bundle = bundles.get(name)
            if bundle is None:
                directory = courses_dir / name
                if not (directory / "course.xml").exists():
                    raise HTTPException(404, f"unknown course {name!r}")
                try:
                    bundle = load_course(directory)
                except CourseflowError as exc:
                    raise HTTPException(400, f"course {name!r} does not parse: {exc}")
                bundles[name] = bundle
            return bundle

    def get_entry(session_id):
        entry = entries.get(session_id)
        if entry is None:
            raise HTTPException(404, f"unknown session {session_id!r}")
        return entry

    def new_config(seed):
        config = SessionConfig(seed=seed)
        config.register_gadget(TimerGadget())
        return config

    def view_out(entry):
        session = entry.session
        state = session.state()
        if state.status is Status.AWAITING_SCENE:
            view = session.current_view()
            kind = entry.bundle.registry.kind_for(view.presenter_type) or "message"
            info = parse_payload(kind, view.payload)
            options = None
            if kind == "choice":
                options = [OptionOut(id=o["id"], label=o["label"]) for o in info.options]
            return CurrentViewOut(
                status=state.status.value,
                path=str(view.path),
                presenterType=view.presenter_type,
                payload=view.payload,
                text=info.text,
                options=options,
            )
        halt = None
        if state.halt is not None:
            halt = HaltInfo(kind=state.halt.kind, detail=state.halt.detail)
        return CurrentViewOut(status=state.status.value, halt=halt)

    @app.post("/sessions", status_code=201, response_model=SessionCreated)
    def create_session(req: CreateSessionRequest):
        if req.resume is not None:
            try:
                record = SuspendRecord.from_json(json.dumps(req.resume))
            except MalformedSnapshot as exc:
                raise HTTPException(400, str(exc))
            bundle = get_bundle(record.course)
            try:
                session = resume(record, bundle.root_spec, bundle.new_source(),
                                 new_config(req.seed), course_name=bundle.name)
            except (HashMismatch, MalformedSnapshot, CourseflowError) as exc:
                raise HTTPException(400, f"cannot resume: {exc}")
            session.config.presenter_kinds = {
                **bundle.registry.as_dict(), **session.config.presenter_kinds}
        else:
            bundle = get_bundle(req.course)
            try:
                session = make_session(bundle, new_config(req.seed))
                session.start()
            except CourseValidationError as exc:
                raise HTTPException(400, f"course does not validate: {exc}")
        session_id = uuid.uuid4().hex
        entries[session_id] = _Entry(session, bundle)
        return SessionCreated(sessionId=session_id)

    @app.get("/sessions/{session_id}/current", response_model=CurrentViewOut,
             response_model_exclude_none=True)
    def current(session_id: str):
        entry = get_entry(session_id)
        with entry.lock:
            return view_out(entry)

    @app.post("/sessions/{session_id}/complete", response_model=CurrentViewOut,
              response_model_exclude_none=True)
    def complete(session_id: str, req: CompleteRequest):
        entry = get_entry(session_id)
        with entry.lock:
            try:
                entry.session.complete_scene(_normalize(req.result))
            except NotAwaitingScene as exc:
                raise HTTPException(409, str(exc))
            return view_out(entry)

    @app.post("/sessions/{session_id}/interrupt", response_model=CurrentViewOut,
              response_model_exclude_none=True)
    def interrupt(session_id: str, req: InterruptRequest = None):
        entry = get_entry(session_id)
        target = req.target if req is not None else None
        with entry.lock:
            try:
                entry.session.interrupt(target)
            except NotAwaitingScene as exc:
                raise HTTPException(409, str(exc))
            except TargetNotActive as exc:
                raise HTTPException(409, f"target not active: {exc}")
            except (PathNotFound, MalformedPath) as exc:
                raise HTTPException(404, f"no such path: {exc}")
            return view_out(entry)

    @app.post("/sessions/{session_id}/tick", response_model=CurrentViewOut,
              response_model_exclude_none=True)
    def tick(session_id: str, req: TickRequest):
        entry = get_entry(session_id)
        with entry.lock:
            entry.session.tick(req.ms)
            return view_out(entry)

    @app.get("/sessions/{session_id}/journal", response_class=PlainTextResponse)
    def journal(session_id: str):
        entry = get_entry(session_id)
        with entry.lock:
            return entry.session.journal.text()

    @app.post("/sessions/{session_id}/suspend", response_model=SuspendResponse)
    def suspend_session(session_id: str):
        entry = get_entry(session_id)
        with entry.lock:
            try:
                record = suspend(entry.session, MemoryLmsAdapter())
            except NotAwaitingScene as exc:
                raise HTTPException(409, str(exc))
            return SuspendResponse(record=json.loads(record.to_json()))

    return app
