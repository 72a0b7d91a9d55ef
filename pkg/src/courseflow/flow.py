"""Course-flow tree model: element specs, absolute paths, static validation.

A course is a tree of elements of three kinds. Streams order their
children; scenes wait for an interaction; actions run a script. The
tree is immutable after parsing - execution state lives elsewhere.
"""

import re
from dataclasses import dataclass, field
from enum import Enum

from .errors import GuardSideEffect, MalformedPath, NotAStream, PathNotFound, ScriptError
from .script import Interpreter, parse_expression, parse_program, truthy
from .script.interp import Env


class ElementKind(Enum):
    STREAM = "stream"
    SCENE = "scene"
    ACTION = "action"


ID_PATTERN = re.compile(r"^[A-Za-z_][A-Za-z0-9_-]*$")


@dataclass(frozen=True)
class CoursePath:
    """Absolute path of an element: "/" joined ids, root is "/"."""

    segments: tuple = ()

    def __str__(self):
        return "/" + "/".join(self.segments)

    def __truediv__(self, segment):
        return CoursePath(self.segments + (segment,))

    @property
    def is_root(self):
        return not self.segments

    def parent(self):
        if self.is_root:
            return None
        return CoursePath(self.segments[:-1])

    def is_prefix_of(self, other):
        return other.segments[: len(self.segments)] == self.segments


ROOT_PATH = CoursePath()


def parse_path(text):
    """Parse "/a/b" into a CoursePath; round-trips through str()."""
    if not isinstance(text, str) or not text.startswith("/"):
        raise MalformedPath(f"path must start with '/': {text!r}")
    if text == "/":
        return ROOT_PATH
    segments = text[1:].split("/")
    for seg in segments:
        if not seg:
            raise MalformedPath(f"empty segment in {text!r}")
        if not ID_PATTERN.match(seg):
            raise MalformedPath(f"invalid segment {seg!r} in {text!r}")
    return CoursePath(tuple(segments))


@dataclass
class ElementSpec:
    """Declarative node of the course-flow tree.

    Exactly one body family applies per kind: streams carry children,
    scenes carry presenter_type/payload/record_to, actions carry script.
    A node with content_url leaves its body unresolved until fetched.
    """

    id: str
    kind: ElementKind
    include_if: str = None
    on_execute: str = None
    on_complete: str = None
    on_interrupt: str = None
    content_url: str = None
    preload: bool = False
    cached: bool = False
    # stream body
    children: list = None
    # scene body
    presenter_type: str = None
    payload: str = ""
    record_to: str = None
    # action body
    script: str = None
    # set when the document used the legacy includeSelf spelling
    legacy_include_attr: bool = False

    def has_inline_body(self):
        if self.kind == ElementKind.STREAM:
            return self.children is not None
        if self.kind == ElementKind.SCENE:
            return self.presenter_type is not None or bool(self.payload)
        return self.script is not None


def stream(id_, children, **kw):
    return ElementSpec(id=id_, kind=ElementKind.STREAM, children=list(children), **kw)


def scene(id_, presenter_type=None, payload="", **kw):
    return ElementSpec(id=id_, kind=ElementKind.SCENE,
                       presenter_type=presenter_type, payload=payload, **kw)


def action(id_, script=None, **kw):
    return ElementSpec(id=id_, kind=ElementKind.ACTION, script=script, **kw)


@dataclass
class Diagnostic:
    severity: str  # "error" | "warning"
    path: CoursePath
    code: str
    message: str

    def __str__(self):
        return f"{self.severity} {self.code} {self.path}: {self.message}"


def resolve_path(root, path):
    """Walk the tree by matching ids segment by segment through stream children."""
    node = root
    for i, seg in enumerate(path.segments):
        if node.kind != ElementKind.STREAM:
            at = CoursePath(path.segments[:i])
            raise NotAStream(f"{at} is a {node.kind.value}, cannot descend into it")
        match = None
        for child in node.children or []:
            if child.id == seg:
                match = child
                break
        if match is None:
            raise PathNotFound(str(CoursePath(path.segments[: i + 1])))
        node = match
    return node


def _check_scripts(node, path, out):
    for attr, source, is_expr in (
        ("includeIf", node.include_if, True),
        ("onExecute", node.on_execute, False),
        ("onComplete", node.on_complete, False),
        ("onInterrupt", node.on_interrupt, False),
        ("script", node.script, False),
    ):
        if source is None:
            continue
        try:
            if is_expr:
                parse_expression(source)
            else:
                parse_program(source)
        except ScriptError as exc:
            out.append(Diagnostic(
                "error", path, "ScriptParse",
                f"{attr}: {exc.message} (at {exc.line}:{exc.col})",
            ))


def validate_course(root):
    """Static checks over a parsed course; returns diagnostics, never raises.

    The legacy includeSelf attribute yields a single deprecation warning
    per document, anchored at the first element that uses it.
    """
    out = []
    legacy_seen = []

    def visit(node, path):
        if not path.is_root:
            if not ID_PATTERN.match(node.id or ""):
                out.append(Diagnostic("error", path, "BadId", f"invalid id {node.id!r}"))
        if node.legacy_include_attr:
            legacy_seen.append(path)
        if node.content_url is not None and node.has_inline_body():
            out.append(Diagnostic(
                "error", path, "BodyConflict",
                "element has both an inline body and a contentURL",
            ))
        if (node.kind == ElementKind.SCENE and node.content_url is None
                and node.presenter_type is None):
            out.append(Diagnostic(
                "error", path, "MissingPresenter",
                "scene has no presenterType and no contentURL",
            ))
        _check_scripts(node, path, out)
        if node.kind == ElementKind.STREAM and node.children:
            seen = {}
            for child in node.children:
                child_path = path / (child.id or "?")
                if child.id in seen:
                    out.append(Diagnostic(
                        "error", child_path, "DuplicateId",
                        f"sibling id {child.id!r} is not unique",
                    ))
                seen[child.id] = True
                visit(child, child_path)

    visit(root, ROOT_PATH)
    if legacy_seen:
        out.append(Diagnostic(
            "warning", legacy_seen[0], "LegacyIncludeAttr",
            "attribute includeSelf is deprecated; use includeIf",
        ))
    return out


class GuardEvaluator:
    """Evaluates includeIf expressions against a space, rejecting writes.

    Parsed guard ASTs are cached per spec node; a spec tree is immutable
    so the cache never goes stale.
    """

    def __init__(self, globals_, host=None):
        self.interp = Interpreter(globals_, host or {})
        self._cache = {}

    def includable(self, node):
        if node.include_if is None:
            return True
        expr = self._cache.get(id(node))
        if expr is None:
            expr = parse_expression(node.include_if)
            self._cache[id(node)] = expr
        with self.interp.globals.check_pure("includeIf"):
            value = self.interp.eval_expr(expr, Env())
        return truthy(value)


def static_flatten(root, guard_env, host=None):
    """Depth-first order of elements a single regular pass would execute.

    Returns paths of scenes and actions whose own and ancestors' guards
    hold, plus streams that are includable but have no includable child
    (those execute and complete atomically). This is the brute-force
    traversal oracle the engine is tested against.

    Guards must not write; a write raises GuardSideEffect.
    """
    guards = GuardEvaluator(guard_env, host)
    out = []

    def visit(node, path):
        emitted = False
        for child in node.children or []:
            child_path = path / child.id
            if not guards.includable(child):
                continue
            if child.kind == ElementKind.STREAM:
                if visit(child, child_path):
                    emitted = True
                else:
                    out.append(child_path)  # guarded-empty stream runs atomically
                    emitted = True
            else:
                out.append(child_path)
                emitted = True
        return emitted

    visit(root, ROOT_PATH)
    return out
