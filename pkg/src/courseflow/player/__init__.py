"""Session services around the engine: presenters, persistence, policies, course loading."""

from .presenters import PresenterRegistry, parse_payload
from .lms import DirectoryLmsAdapter, LmsAdapter, MemoryLmsAdapter
from .suspend import SuspendRecord, load_record, resume, suspend
from .policy import drive_policy, evaluate_policy, load_policy
from .loader import CourseBundle, load_course, make_session

__all__ = [
    "CourseBundle",
    "DirectoryLmsAdapter",
    "LmsAdapter",
    "MemoryLmsAdapter",
    "PresenterRegistry",
    "SuspendRecord",
    "drive_policy",
    "evaluate_policy",
    "load_course",
    "load_policy",
    "load_record",
    "make_session",
    "parse_payload",
    "resume",
    "suspend",
]
