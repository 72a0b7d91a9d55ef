"""Deterministic execution engine for flow-driven adaptive courseware."""

from .engine import (
    EngineState,
    Gadget,
    PresenterView,
    Session,
    SessionConfig,
    Status,
)
from .errors import CourseflowError
from .flow import (
    CoursePath,
    Diagnostic,
    ElementKind,
    ElementSpec,
    parse_path,
    resolve_path,
    static_flatten,
    validate_course,
)

__version__ = "0.1.0"

__all__ = [
    "CourseflowError",
    "CoursePath",
    "Diagnostic",
    "ElementKind",
    "ElementSpec",
    "EngineState",
    "Gadget",
    "PresenterView",
    "Session",
    "SessionConfig",
    "Status",
    "parse_path",
    "resolve_path",
    "static_flatten",
    "validate_course",
    "__version__",
]
