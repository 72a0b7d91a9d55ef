"""Suspend a session to an LMS store and rebuild it later.

The record captures everything the engine cannot rederive from the
course content: the global snapshot, position, pending mode, virtual
clock, PRNG state, dynamic content overrides and the engine counters.
Function-valued global keys do not survive; the record lists them so
courses can re-register them through guarded init blocks.
"""

import json
from dataclasses import dataclass, field

from ..engine import Session, Status, HaltReason
from ..errors import CommitFailed, HashMismatch, MalformedSnapshot, NotAwaitingScene
from ..script import restore_global, snapshot_global

RECORD_KEY = "suspend"
JOURNAL_KEY = "journal"


@dataclass
class SuspendRecord:
    course: str
    content_hash: str
    global_doc: str            # snapshot_global output, verbatim
    skipped: list
    path: str                  # "" when halted
    status: str                # "awaiting" | "halted"
    halt_kind: str = ""
    halt_detail: str = ""
    mode: str = "REGULAR"
    mode_target: str = None
    clock: int = 0
    rng_state: int = 0
    step_count: int = 0
    enacted_this_pass: int = 0
    journal_length: int = 0
    overrides: dict = field(default_factory=dict)  # path -> override XML text

    def to_json(self):
        return json.dumps({
            "course": self.course,
            "contentHash": self.content_hash,
            "global": self.global_doc,
            "skipped": self.skipped,
            "path": self.path,
            "status": self.status,
            "haltKind": self.halt_kind,
            "haltDetail": self.halt_detail,
            "mode": self.mode,
            "modeTarget": self.mode_target,
            "clock": self.clock,
            "rngState": str(self.rng_state),
            "stepCount": self.step_count,
            "enactedThisPass": self.enacted_this_pass,
            "journalLength": self.journal_length,
            "overrides": self.overrides,
        }, sort_keys=True, separators=(",", ":"), ensure_ascii=False)

    @classmethod
    def from_json(cls, text):
        try:
            data = json.loads(text)
        except (TypeError, ValueError) as exc:
            raise MalformedSnapshot(f"suspend record: {exc}") from exc
        if not isinstance(data, dict):
            raise MalformedSnapshot("suspend record must be an object")
        try:
            return cls(
                course=data["course"],
                content_hash=data["contentHash"],
                global_doc=data["global"],
                skipped=list(data.get("skipped", [])),
                path=data.get("path", ""),
                status=data["status"],
                halt_kind=data.get("haltKind", ""),
                halt_detail=data.get("haltDetail", ""),
                mode=data.get("mode", "REGULAR"),
                mode_target=data.get("modeTarget"),
                clock=int(data.get("clock", 0)),
                rng_state=int(data.get("rngState", 0)),
                step_count=int(data.get("stepCount", 0)),
                enacted_this_pass=int(data.get("enactedThisPass", 0)),
                journal_length=int(data.get("journalLength", 0)),
                overrides=dict(data.get("overrides", {})),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedSnapshot(f"suspend record is missing fields: {exc}") from exc


def suspend(session, lms):
    """Serialize the session state and commit it to the LMS store."""
    if session.status not in (Status.AWAITING_SCENE, Status.HALTED):
        raise NotAwaitingScene("can only suspend a waiting or halted session")
    doc, skipped = snapshot_global(session.globals)
    mode, mode_target = session._pending_mode
    halt = session.halt_reason
    record = SuspendRecord(
        course=session.course_name,
        content_hash=session.source.content_hash(),
        global_doc=doc,
        skipped=skipped,
        path=str(session._active_leaf.path) if session.status is Status.AWAITING_SCENE else "",
        status="awaiting" if session.status is Status.AWAITING_SCENE else "halted",
        halt_kind=halt.kind if halt else "",
        halt_detail=halt.detail if halt else "",
        mode=mode,
        mode_target=mode_target,
        clock=session.clock,
        rng_state=session.rng.get_state(),
        step_count=session.step_count,
        enacted_this_pass=session._enacted_this_pass,
        journal_length=len(session.journal),
        overrides=session.overrides.as_dict(),
    )
    lms.set(RECORD_KEY, record.to_json())
    lms.set(JOURNAL_KEY, session.journal.text())
    if not lms.commit():
        raise CommitFailed("LMS commit did not succeed")
    return record


def load_record(lms):
    text = lms.get(RECORD_KEY)
    if text is None:
        raise MalformedSnapshot("store holds no suspend record")
    return SuspendRecord.from_json(text)


def resume(record, root_spec, source, config=None, course_name="course"):
    """Rebuild a session from a suspend record.

    The engine re-enters the recorded scene directly: ancestor handlers
    do not run again and nothing is journaled. Dropped function values
    come back when course flow next passes a guarded init block.
    """
    actual_hash = source.content_hash()
    if actual_hash != record.content_hash:
        raise HashMismatch(
            f"course content changed since suspend ({record.content_hash[:12]} != {actual_hash[:12]})"
        )
    session = Session(root_spec, source, config, course_name=course_name)
    restored = restore_global(record.global_doc)
    session.globals.entries.clear()
    session.globals.entries.update(restored.entries)
    session.clock = record.clock
    session.rng.set_state(record.rng_state)
    session.step_count = record.step_count
    session._enacted_this_pass = record.enacted_this_pass
    session._pending_mode = (record.mode, record.mode_target)
    for path_text, xml_text in sorted(record.overrides.items()):
        session.set_content(path_text, xml_text)
    for gadget in session.config.gadgets:
        session._dispatch_gadget(gadget.on_session_start)
    session._flush_queue()
    if record.status == "halted":
        session.status = Status.HALTED
        session.halt_reason = HaltReason(record.halt_kind or "Error", record.halt_detail)
        return session
    session.restore_position(record.path)
    return session
