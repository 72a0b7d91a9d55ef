"""Request/response bodies of the session API."""

from typing import Any, Optional

from pydantic import BaseModel, Field


class CreateSessionRequest(BaseModel):
    course: Optional[str] = None
    seed: int = 0
    resume: Optional[dict] = None  # a previously returned suspend record


class SessionCreated(BaseModel):
    sessionId: str


class HaltInfo(BaseModel):
    kind: str
    detail: str = ""


class OptionOut(BaseModel):
    id: str
    label: str = ""


class CurrentViewOut(BaseModel):
    status: str
    path: Optional[str] = None
    presenterType: Optional[str] = None
    payload: Optional[str] = None
    text: Optional[str] = None
    options: Optional[list[OptionOut]] = None
    halt: Optional[HaltInfo] = None


class CompleteRequest(BaseModel):
    result: Any = None


class InterruptRequest(BaseModel):
    target: Optional[str] = None


class TickRequest(BaseModel):
    ms: int = Field(gt=0)


class SuspendResponse(BaseModel):
    record: dict
