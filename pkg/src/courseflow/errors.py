"""Exception taxonomy shared across the package."""


class CourseflowError(Exception):
    """Base class for all errors raised by this package."""


# --- paths / flow model ---

class MalformedPath(CourseflowError):
    pass


class PathNotFound(CourseflowError):
    pass


class NotAStream(CourseflowError):
    pass


class CourseValidationError(CourseflowError):
    """A session was started on a course with validation errors."""


# --- action language ---

class ScriptError(CourseflowError):
    """Lex, parse or runtime failure in an action-language script.

    Position is always set for lex/parse errors and best-effort for
    runtime errors.
    """

    def __init__(self, phase, message, line=0, col=0):
        self.phase = phase
        self.message = message
        self.line = line
        self.col = col
        super().__init__(f"{phase} error at {line}:{col}: {message}")


class StepBudgetExceeded(ScriptError):
    def __init__(self, limit, line=0, col=0):
        super().__init__("runtime", f"step budget of {limit} exceeded", line, col)
        self.limit = limit


class GuardSideEffect(CourseflowError):
    """An includeIf guard attempted to mutate state."""


class CyclicData(CourseflowError):
    """Self-referencing list/map cannot be serialized."""


class MalformedSnapshot(CourseflowError):
    pass


# --- content pipeline ---

class ContentError(CourseflowError):
    pass


class XmlSyntax(ContentError):
    pass


class WrongRootElement(ContentError):
    pass


class UnknownElement(ContentError):
    pass


class FetchFailed(ContentError):
    pass


# --- engine ---

class NotAwaitingScene(CourseflowError):
    pass


class TargetNotActive(CourseflowError):
    pass


class MissingTarget(CourseflowError):
    pass


class DuplicateGadgetName(CourseflowError):
    pass


# --- player ---

class PolicyMissing(CourseflowError):
    pass


class HashMismatch(CourseflowError):
    pass


class CommitFailed(CourseflowError):
    pass


class SinkWriteFailed(CourseflowError):
    pass
