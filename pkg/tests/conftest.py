"""Shared helpers: inline course builders and an auto-completing driver."""

from pathlib import Path

import pytest

from courseflow.content import MemoryContentSource
from courseflow.engine import Session, SessionConfig, Status
from courseflow.flow import action, scene, stream

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


@pytest.fixture
def fixtures_dir():
    return FIXTURES


def new_session(root, files=None, seed=0, gadgets=(), step_limit=10_000,
                initial_global=None, presenter_kinds=None):
    config = SessionConfig(
        seed=seed,
        step_limit=step_limit,
        initial_global=dict(initial_global or {}),
        presenter_kinds=dict(presenter_kinds or {}),
    )
    for gadget in gadgets:
        config.register_gadget(gadget)
    return Session(root, MemoryContentSource(files or {}), config)


def run_one_pass(session):
    """Complete scenes with null until the root stream wraps or the session halts.

    Returns the journal exec: ids recorded during the first pass (the
    root's own entry excluded).
    """
    session.start()
    while session.status is Status.AWAITING_SCENE and not _wrapped(session):
        session.complete_scene(None)
    ids = []
    seen_root = False
    for entry in session.journal.entries:
        if entry.id == "complete:/":
            break
        if entry.id == "exec:/":
            seen_root = True
            continue
        if seen_root and entry.id.startswith("exec:"):
            ids.append(entry.id[len("exec:"):])
    return ids


def _wrapped(session):
    return any(e.id == "complete:/" for e in session.journal.entries)


def leaf_exec_sequence(session):
    """exec: ids of elements that ran without executing children, first pass only.

    A leaf execution is an exec: immediately followed by its own
    complete: entry (scenes auto-completed by the driver, actions, and
    streams that ran atomically).
    """
    entries = [e for e in session.journal.entries if e.src == "engine"]
    out = []
    for i, entry in enumerate(entries):
        if entry.id == "complete:/":
            break
        if not entry.id.startswith("exec:"):
            continue
        path = entry.id[len("exec:"):]
        if path == "/":
            continue
        if i + 1 < len(entries) and entries[i + 1].id == f"complete:{path}":
            out.append(path)
    return out


__all__ = [
    "FIXTURES",
    "action",
    "leaf_exec_sequence",
    "new_session",
    "run_one_pass",
    "scene",
    "stream",
]
