"""The execution engine.

A session walks the course tree one element at a time. Between external
calls it runs until it either waits on a scene, or halts. The advance
decision after each completed element follows the pending execution
mode, which automatically falls back to REGULAR once consumed.

Service calls made by scripts and gadget callbacks (interrupt, content
overrides, finish) are queued and applied after the current dispatch
returns; the engine is never mutated re-entrantly.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum

from .content import (
    ContentCache,
    OverrideTable,
    apply_override,
    body_from_spec,
    resolve_content,
    schedule_preloads,
)
from .errors import (
    ContentError,
    CourseValidationError,
    DuplicateGadgetName,
    GuardSideEffect,
    MalformedPath,
    MissingTarget,
    NotAStream,
    NotAwaitingScene,
    PathNotFound,
    ScriptError,
    TargetNotActive,
)
from .flow import (
    CoursePath,
    ElementKind,
    GuardEvaluator,
    ROOT_PATH,
    parse_path,
    validate_course,
)
from .journal import Journal
from .rng import SplitMix64
from .script import GlobalSpace, HostFn, format_value, parse_program
from .script.interp import Env, Interpreter
from .script.values import is_number

log = logging.getLogger(__name__)

DEFAULT_STEP_LIMIT = 10_000

MODES = ("REGULAR", "STAY", "UPSTREAM", "CANAL")

BUILTIN_PRESENTER_KINDS = ("message", "choice", "input", "auto")


class Status(Enum):
    RUNNING = "running"
    AWAITING_SCENE = "awaiting-scene"
    HALTED = "halted"


@dataclass
class HaltReason:
    kind: str          # Finished | CourseExhausted | StepLimit | Error
    detail: str = ""


@dataclass
class PresenterView:
    path: CoursePath
    presenter_type: str
    payload: str
    record_to: str = None


@dataclass
class EngineState:
    """Externally visible snapshot of a session."""

    status: Status
    current: CoursePath = None
    mode: str = "REGULAR"
    mode_target: str = None
    clock: int = 0
    step_count: int = 0
    halt: HaltReason = None


class Gadget:
    """Cross-scene plug-in; override the hooks you need.

    Hooks receive a GadgetServices handle. Requests made through the
    handle are queued and applied after the dispatch round, never while
    the callback runs.
    """

    name = "gadget"

    def on_session_start(self, svc):
        pass

    def on_execute(self, svc, path):
        pass

    def on_complete(self, svc, path):
        pass

    def on_interrupt(self, svc, path):
        pass

    def on_tick(self, svc, now_ms):
        pass


class GadgetServices:
    """What a gadget may do: read state now, request changes for later."""

    def __init__(self, session):
        self._session = session

    def get_global(self, key):
        return self._session.globals.get(key)

    def now_ms(self):
        return self._session.clock

    def set_global(self, key, value):
        self._session._queue.append(("global_set", (key, value), "gadget"))

    def journal(self, id_):
        self._session._queue.append(("journal", id_, "gadget"))

    def interrupt(self, target=None):
        self._session._queue_interrupt(target, "gadget")

    def set_mode(self, mode, target=None):
        self._session._queue.append(("set_mode", (mode, target), "gadget"))

    def set_content(self, path, xml_text):
        self._session._queue.append(("set_content", (path, xml_text), "gadget"))

    def finish(self):
        self._session._queue.append(("finish", None, "gadget"))


@dataclass
class SessionConfig:
    seed: int = 0
    step_limit: int = DEFAULT_STEP_LIMIT
    script_step_budget: int = 1_000_000
    logging_enabled: bool = True
    gadgets: list = field(default_factory=list)
    # presenterType token -> presenter kind; tokens equal to builtin kinds
    # are implicitly registered
    presenter_kinds: dict = field(default_factory=dict)
    initial_global: dict = field(default_factory=dict)

    def register_gadget(self, gadget):
        if any(g.name == gadget.name for g in self.gadgets):
            raise DuplicateGadgetName(gadget.name)
        self.gadgets.append(gadget)

    def presenter_kind(self, token):
        if token in self.presenter_kinds:
            return self.presenter_kinds[token]
        if token in BUILTIN_PRESENTER_KINDS:
            return token
        return None


class _RuntimeNode:
    """Mutable execution-side mirror of one spec node."""

    __slots__ = ("spec", "path", "children", "body")

    def __init__(self, spec, path):
        self.spec = spec
        self.path = path
        self.children = None   # list of _RuntimeNode for streams, per resolution
        self.body = None       # last resolved Body

    @property
    def kind(self):
        return self.spec.kind


class _Activation:
    """One live stream: the node, its children at entry, and the scan position."""

    __slots__ = ("node", "children", "idx")

    def __init__(self, node):
        self.node = node
        self.children = list(node.children or [])
        self.idx = -1


class Session:
    """One learner's run of one course. Single-threaded; callers serialize."""

    def __init__(self, root_spec, source, config=None, course_name="course"):
        self.config = config or SessionConfig()
        self.course_name = course_name
        self.root_spec = root_spec
        self.source = source
        self.cache = ContentCache()
        self.overrides = OverrideTable()
        self.globals = GlobalSpace(self.config.initial_global)
        self.rng = SplitMix64(self.config.seed)
        self.clock = 0
        self.journal = Journal(self.config.logging_enabled)
        self.warnings = []
        self.debug_log = []
        self.status = Status.RUNNING
        self.halt_reason = None
        self.step_count = 0

        self._guards = GuardEvaluator(self.globals, self._make_host())
        self._interp = Interpreter(self.globals, self._host,
                                   step_budget=self.config.script_step_budget)
        self._services = GadgetServices(self)
        self._root = _RuntimeNode(root_spec, ROOT_PATH)
        self._rt_nodes = {"/": self._root}
        self._stack = []           # list of _Activation, root first
        self._next = None          # element chosen for execution
        self._active_leaf = None   # element executing or awaited
        self._current_view = None
        self._resume_from = None   # completed node whose advance was deferred
        self._queue = []           # queued service requests
        self._halt_requested = False
        self._interrupt_request = None  # (has_request, target str | None)
        self._pending_mode = ("REGULAR", None)
        self._enacted_this_pass = 0
        self._program_cache = {}
        names = set()
        for gadget in self.config.gadgets:
            if gadget.name in names:
                raise DuplicateGadgetName(gadget.name)
            names.add(gadget.name)

    # ------------------------------------------------------------------
    # public entry points
    # ------------------------------------------------------------------

    def start(self):
        """Validate, fire session-start hooks and run to the first stop."""
        problems = [d for d in validate_course(self.root_spec) if d.severity == "error"]
        if problems:
            raise CourseValidationError("; ".join(str(p) for p in problems))
        for gadget in self.config.gadgets:
            self._dispatch_gadget(gadget.on_session_start)
        self._flush_queue()
        self._next = self._root
        self._pump()
        return self.state()

    def state(self):
        mode, target = self._pending_mode
        return EngineState(
            status=self.status,
            current=self._active_leaf.path if self._active_leaf else None,
            mode=mode,
            mode_target=str(target) if target else None,
            clock=self.clock,
            step_count=self.step_count,
            halt=self.halt_reason,
        )

    def current_view(self):
        """The open presenter view, only while a scene awaits interaction."""
        if self.status is Status.AWAITING_SCENE:
            return self._current_view
        return None

    def complete_scene(self, result):
        """Finish the awaited scene with the interaction's result value."""
        if self.status is not Status.AWAITING_SCENE:
            raise NotAwaitingScene(f"session is {self.status.value}")
        scene = self._active_leaf
        view = self._current_view
        self._current_view = None
        self.status = Status.RUNNING
        if view.record_to:
            self.globals.set(view.record_to, result)
        self._complete(scene)
        self._pump()
        return self.state()

    def interrupt(self, target=None):
        """Terminate the awaited scene (or an ancestor stream) from outside."""
        if self.status is not Status.AWAITING_SCENE:
            raise NotAwaitingScene(f"session is {self.status.value}")
        if target is not None:
            path = target if isinstance(target, CoursePath) else parse_path(str(target))
            chain = {str(a.node.path) for a in self._stack}
            chain.add(str(self._active_leaf.path))
            if str(path) not in chain:
                try:
                    self._resolve_runtime(path)
                except (PathNotFound, NotAStream):
                    raise PathNotFound(str(path))
                raise TargetNotActive(str(path))
            target = str(path)
        self._interrupt_request = (True, target)
        self._pump()
        return self.state()

    def set_mode(self, mode, target=None):
        """Set the mode for the next advance only; it resets to REGULAR after."""
        if mode not in MODES:
            raise ValueError(f"unknown mode {mode!r}")
        if mode == "CANAL":
            if target is None:
                raise MissingTarget("CANAL needs a target path")
            target = str(target)
        elif target is not None:
            raise ValueError(f"mode {mode} takes no target")
        self._pending_mode = (mode, target)

    def tick(self, delta_ms):
        """Advance the virtual clock and run gadget tick hooks."""
        if delta_ms <= 0:
            raise ValueError("tick delta must be positive")
        self.clock += int(delta_ms)
        if self.status is Status.HALTED:
            return self.state()
        for gadget in self.config.gadgets:
            self._dispatch_gadget(gadget.on_tick, self.clock)
        self._flush_queue()
        self._pump()
        return self.state()

    def journal_append(self, id_, src="script"):
        self.journal.append(self.clock, id_, src)

    def set_content(self, path, xml_text):
        """Install a dynamic body override; next resolution of `path` uses it."""
        path = path if isinstance(path, CoursePath) else parse_path(str(path))
        apply_override(self.overrides, self._resolve_spec_for_override, path, xml_text)

    def exec_program_text(self, source, name="<setup>"):
        """Run a program against this session's globals and builtins.

        Used for learner policies and test setup; fatal errors propagate
        to the caller instead of halting the session.
        """
        program = parse_program(source)
        completion = self._interp.exec_program(program, Env())
        self._flush_queue()
        return completion

    def call_function(self, fn, args):
        value = self._interp.call_function(fn, args)
        self._flush_queue()
        return value

    # ------------------------------------------------------------------
    # host builtins for scripts
    # ------------------------------------------------------------------

    def _make_host(self):
        import math

        def _journal(id_):
            if not isinstance(id_, str):
                raise ScriptError("runtime", "journal() needs a string identifier")
            self.journal_append(id_, "script")
            return None

        def _log(msg):
            text = msg if isinstance(msg, str) else format_value(msg)
            self.debug_log.append(text)
            log.debug("course: %s", text)
            return None

        def _require_unarmed(name):
            if self.globals.write_log is not None:
                self.globals.record_mutation(f"<service:{name}>")
                return False
            return True

        def _interrupt(target=None):
            if not _require_unarmed("interrupt"):
                return None
            if target is not None and not isinstance(target, str):
                raise ScriptError("runtime", "interrupt() target must be a path string")
            self._queue_interrupt(target, "script")
            return None

        def _set_mode(mode, target=None):
            if not _require_unarmed("setMode"):
                return None
            if not isinstance(mode, str) or mode not in MODES:
                raise ScriptError("runtime", f"setMode() got unknown mode {format_value(mode)}")
            if mode == "CANAL":
                if not isinstance(target, str):
                    raise ScriptError("runtime", "setMode('CANAL') needs a target path")
            elif target is not None:
                raise ScriptError("runtime", f"setMode({mode!r}) takes no target")
            self._pending_mode = (mode, target)
            return None

        def _set_content(path, xml_text):
            if not _require_unarmed("setContent"):
                return None
            if not isinstance(path, str) or not isinstance(xml_text, str):
                raise ScriptError("runtime", "setContent() needs a path and an XML string")
            self._queue.append(("set_content", (path, xml_text), "script"))
            return None

        def _finish():
            if not _require_unarmed("finish"):
                return None
            self._queue.append(("finish", None, "script"))
            return None

        def _random():
            return self.rng.next_float()

        def _floor(x):
            if not is_number(x):
                raise ScriptError("runtime", "floor() needs a number")
            f = float(x)
            if math.isnan(f) or math.isinf(f):
                return f
            return float(math.floor(f))

        def _len(x):
            if isinstance(x, (str, list, dict)):
                return float(len(x))
            raise ScriptError("runtime", "len() needs a string, list or map")

        def _push(lst, value):
            if not isinstance(lst, list):
                raise ScriptError("runtime", "push() needs a list")
            if self.globals.write_log is not None:
                self.globals.record_mutation("<push>")
                return float(len(lst))
            lst.append(value)
            return float(len(lst))

        def _keys(m):
            if not isinstance(m, dict):
                raise ScriptError("runtime", "keys() needs a map")
            return sorted(m.keys())

        def _str(x):
            return format_value(x)

        def _num(x):
            if is_number(x):
                return float(x)
            if isinstance(x, str):
                s = x.strip()
                import re
                if re.fullmatch(r"[+-]?[0-9]+(\.[0-9]+)?", s):
                    return float(s)
            return None

        def _now():
            return float(self.clock)

        self._host = {
            "journal": HostFn("journal", _journal, 1, 1),
            "log": HostFn("log", _log, 1, 1),
            "interrupt": HostFn("interrupt", _interrupt, 0, 1),
            "setMode": HostFn("setMode", _set_mode, 1, 2),
            "setContent": HostFn("setContent", _set_content, 2, 2),
            "finish": HostFn("finish", _finish, 0, 0),
            "random": HostFn("random", _random, 0, 0),
            "floor": HostFn("floor", _floor, 1, 1),
            "len": HostFn("len", _len, 1, 1),
            "push": HostFn("push", _push, 2, 2),
            "keys": HostFn("keys", _keys, 1, 1),
            "str": HostFn("str", _str, 1, 1),
            "num": HostFn("num", _num, 1, 1),
            "now": HostFn("now", _now, 0, 0),
        }
        return self._host

    def _queue_interrupt(self, target, src):
        if target is None and self._active_leaf is not None:
            target = str(self._active_leaf.path)
        self._queue.append(("interrupt", target, src))

    # ------------------------------------------------------------------
    # queued services
    # ------------------------------------------------------------------

    def _dispatch_gadget(self, hook, *args):
        try:
            hook(self._services, *args)
        except Exception as exc:  # a broken gadget must not wedge the engine
            self._halt_error(f"gadget hook failed: {exc}")

    def _flush_queue(self):
        queue, self._queue = self._queue, []
        for kind, payload, src in queue:
            if self.status is Status.HALTED:
                return
            if kind == "journal":
                self.journal_append(payload, src)
            elif kind == "global_set":
                key, value = payload
                self.globals.set(key, value)
            elif kind == "set_mode":
                mode, target = payload
                try:
                    self.set_mode(mode, target)
                except (ValueError, MissingTarget) as exc:
                    self._halt_error(f"set_mode request: {exc}")
            elif kind == "set_content":
                path, xml_text = payload
                try:
                    self.set_content(path, xml_text)
                except (MalformedPath, PathNotFound, NotAStream, ContentError) as exc:
                    self._halt_error(f"setContent {path!r}: {exc}")
            elif kind == "finish":
                self._halt_requested = True
            elif kind == "interrupt":
                self._interrupt_request = (True, payload)
            else:
                raise AssertionError(kind)

    def _control_pending(self):
        return self._halt_requested or self._interrupt_request is not None

    # ------------------------------------------------------------------
    # main loop
    # ------------------------------------------------------------------

    def _pump(self):
        while self.status is not Status.HALTED:
            if self._take_control():
                continue
            if self.status is Status.AWAITING_SCENE:
                return
            if self._next is not None:
                node, self._next = self._next, None
                self._execute(node)
                continue
            if self._resume_from is not None:
                node, self._resume_from = self._resume_from, None
                self._next = self._advance_from(node)
                continue
            self._halt_error("engine has no next element")

    def _take_control(self):
        if self.status is Status.HALTED:
            return False
        if self._halt_requested:
            self._halt_requested = False
            self._halt("Finished")
            return True
        if self._interrupt_request is not None:
            _, target = self._interrupt_request
            self._interrupt_request = None
            return self._perform_interrupt(target)
        return False

    # ------------------------------------------------------------------
    # element execution
    # ------------------------------------------------------------------

    def _runtime_child(self, parent, spec):
        path = parent.path / spec.id
        key = str(path)
        node = self._rt_nodes.get(key)
        if node is None or node.spec is not spec:
            node = _RuntimeNode(spec, path)
            self._rt_nodes[key] = node
        return node

    def _materialize(self, node):
        """Resolve the node's body for this execution. Returns False on halt."""
        try:
            body = resolve_content(node.path, node.spec, self.source,
                                   self.cache, self.overrides, self.warnings)
        except ContentError as exc:
            self._halt_error(f"content for {node.path}: {exc}")
            return False
        node.body = body
        if node.kind == ElementKind.STREAM:
            specs = body.children or []
            ids = [c.id for c in specs]
            if len(set(ids)) != len(ids):
                self._halt_error(f"duplicate child ids under {node.path}")
                return False
            node.children = [self._runtime_child(node, c) for c in specs]
            schedule_preloads(node.path, specs, self.source, self.cache, self.warnings)
        return True

    def _execute(self, node):
        if self.step_count >= self.config.step_limit:
            self._halt("StepLimit")
            return
        self.step_count += 1
        if not node.path.is_root:
            self._enacted_this_pass += 1
        self._active_leaf = node

        if not self._materialize(node):
            return
        self.journal_append(f"exec:{node.path}", "engine")
        if not self._run_handler(node, node.spec.on_execute, "onExecute"):
            return
        for gadget in self.config.gadgets:
            self._dispatch_gadget(gadget.on_execute, str(node.path))
        self._flush_queue()
        if self._control_pending() or self.status is Status.HALTED:
            return

        kind = node.kind
        if kind == ElementKind.ACTION:
            if not self._run_script(node, node.body.script or "", "script"):
                return
            if self._interrupt_request is not None:
                # the script interrupted itself or an ancestor: no completion
                return
            self._complete(node)
        elif kind == ElementKind.SCENE:
            self._open_scene(node)
        else:
            self._enter_stream(node)

    def _open_scene(self, node):
        token = node.body.presenter_type
        if token is None:
            self._halt_error(f"scene {node.path} has no presenterType")
            return
        pkind = self.config.presenter_kind(token)
        if pkind is None:
            self._halt_error(f"scene {node.path}: presenterType {token!r} is not registered")
            return
        view = PresenterView(
            path=node.path,
            presenter_type=token,
            payload=node.body.payload or "",
            record_to=node.body.record_to,
        )
        if pkind == "auto":
            if view.record_to:
                self.globals.set(view.record_to, None)
            self._complete(node)
            return
        self._current_view = view
        self.status = Status.AWAITING_SCENE

    def _enter_stream(self, node):
        act = _Activation(node)
        self._stack.append(act)
        idx = self._scan_forward(act, 0)
        if idx is None:
            if self.status is Status.HALTED:
                return
            self._stack.pop()
            self._complete(node)
            return
        act.idx = idx
        self._next = act.children[idx]

    def _complete(self, node):
        """Normal completion: handler, journal, gadget hooks, then advance."""
        ok = self._run_handler(node, node.spec.on_complete, "onComplete")
        if not ok:
            return
        self.journal_append(f"complete:{node.path}", "engine")
        for gadget in self.config.gadgets:
            self._dispatch_gadget(gadget.on_complete, str(node.path))
        self._flush_queue()
        if self._active_leaf is node:
            self._active_leaf = None
        if self.status is Status.HALTED:
            return
        if self._control_pending():
            self._resume_from = node
            return
        self._next = self._advance_from(node)

    def _finish_stream(self, node):
        """Completion bookkeeping for a stream being left during an advance."""
        if not self._run_handler(node, node.spec.on_complete, "onComplete"):
            return False
        self.journal_append(f"complete:{node.path}", "engine")
        for gadget in self.config.gadgets:
            self._dispatch_gadget(gadget.on_complete, str(node.path))
        self._flush_queue()
        return self.status is not Status.HALTED

    # ------------------------------------------------------------------
    # advancing
    # ------------------------------------------------------------------

    def _includable(self, rt_node):
        try:
            return self._guards.includable(rt_node.spec)
        except (ScriptError, GuardSideEffect) as exc:
            self._halt_error(f"includeIf of {rt_node.path}: {exc}")
            return None

    def _scan_forward(self, act, start):
        for j in range(start, len(act.children)):
            inc = self._includable(act.children[j])
            if inc is None:
                return None
            if inc:
                return j
        return None

    def _consume_mode(self):
        mode, self._pending_mode = self._pending_mode, ("REGULAR", None)
        return mode

    def _advance_from(self, node):
        mode, target = self._consume_mode()
        if mode == "STAY":
            inc = self._includable(node)
            if inc is None:
                return None
            if inc:
                return node
            mode = "REGULAR"
        if mode == "CANAL":
            return self._advance_canal(target)
        if mode == "UPSTREAM":
            return self._advance_upstream(node)
        return self._advance_regular(node)

    def _advance_regular(self, from_node):
        if not self._stack:
            # the root stream completed: wrap around or give up
            if self._enacted_this_pass == 0:
                self._halt("CourseExhausted")
                return None
            self._enacted_this_pass = 0
            return self._root
        act = self._stack[-1]
        idx = self._scan_forward(act, act.idx + 1)
        if self.status is Status.HALTED:
            return None
        if idx is not None:
            act.idx = idx
            return act.children[idx]
        # end of this stream: it completes, and the decision restarts from
        # it in the parent so a setMode in its onComplete is honored
        self._stack.pop()
        if not self._finish_stream(act.node):
            return None
        if self._control_pending():
            self._resume_from = act.node
            return None
        return self._advance_from(act.node)

    def _advance_upstream(self, from_node):
        while True:
            if not self._stack:
                return self._clamp_to_first()
            act = self._stack[-1]
            for j in range(act.idx - 1, -1, -1):
                inc = self._includable(act.children[j])
                if inc is None:
                    return None
                if inc:
                    act.idx = j
                    return act.children[j]
            if len(self._stack) == 1:
                # nothing before us anywhere in the root stream
                return self._clamp_to_first()
            self._stack.pop()
            if not self._finish_stream(act.node):
                return None
            if self._control_pending():
                self._resume_from = act.node
                return None

    def _clamp_to_first(self):
        """UPSTREAM hit the start of the root stream: re-run its first element."""
        if not self._stack:
            return self._root
        act = self._stack[0]
        del self._stack[1:]
        idx = self._scan_forward(act, 0)
        if self.status is Status.HALTED:
            return None
        if idx is None:
            self._halt("CourseExhausted")
            return None
        act.idx = idx
        return act.children[idx]

    def _advance_canal(self, target):
        try:
            path = parse_path(target)
        except MalformedPath as exc:
            self._halt_error(f"CANAL: {exc}")
            return None
        # leave every active stream that is not a proper ancestor of the target
        while self._stack:
            act = self._stack[-1]
            if act.node.path != path and act.node.path.is_prefix_of(path):
                break
            self._stack.pop()
            if not self._finish_stream(act.node):
                return None
        if path.is_root:
            return self._root
        if not self._stack:
            # the root itself was inactive (wrap point); re-enter it first
            if not self._enter_intermediate(self._root):
                return None
        # descend to the target, entering intermediate streams
        while True:
            act = self._stack[-1]
            depth = len(act.node.path.segments)
            seg = path.segments[depth]
            idx = None
            for j, child in enumerate(act.children):
                if child.spec.id == seg:
                    idx = j
                    break
            if idx is None:
                self._halt_error(f"CANAL: path not found: {CoursePath(path.segments[:depth + 1])}")
                return None
            act.idx = idx
            child = act.children[idx]
            if len(child.path.segments) == len(path.segments):
                return child
            if child.kind != ElementKind.STREAM:
                self._halt_error(f"CANAL: {child.path} is not a stream")
                return None
            if not self._enter_intermediate(child):
                return None

    def _enter_intermediate(self, node):
        """Execute a stream on the way to a CANAL target, without scanning it."""
        if self.step_count >= self.config.step_limit:
            self._halt("StepLimit")
            return False
        self.step_count += 1
        if not node.path.is_root:
            self._enacted_this_pass += 1
        if not self._materialize(node):
            return False
        self.journal_append(f"exec:{node.path}", "engine")
        if not self._run_handler(node, node.spec.on_execute, "onExecute"):
            return False
        for gadget in self.config.gadgets:
            self._dispatch_gadget(gadget.on_execute, str(node.path))
        self._flush_queue()
        if self.status is Status.HALTED:
            return False
        self._stack.append(_Activation(node))
        return True

    # ------------------------------------------------------------------
    # interrupts
    # ------------------------------------------------------------------

    def _perform_interrupt(self, target):
        """Unwind from the innermost active element to the target, inclusive.

        Returns True when control was consumed (unwind or halt); False
        when the request was stale and normal flow should continue.
        """
        active = [a.node for a in self._stack]
        if self._active_leaf is not None and (
                not active or active[-1] is not self._active_leaf):
            active.append(self._active_leaf)
        if target is None:
            if not active:
                return False
            victim_idx = len(active) - 1
        else:
            victim_idx = None
            for i, node in enumerate(active):
                if str(node.path) == target:
                    victim_idx = i
                    break
            if victim_idx is None:
                if self._resume_from is not None and str(self._resume_from.path) == target:
                    return False  # the element finished before the request applied
                self._halt_error(f"interrupt target not active: {target}")
                return True
        target_node = active[victim_idx]
        was_awaiting = self.status is Status.AWAITING_SCENE
        if was_awaiting:
            self._current_view = None
            self.status = Status.RUNNING
        for node in reversed(active[victim_idx:]):
            self._run_handler(node, node.spec.on_interrupt, "onInterrupt")
            if self.status is Status.HALTED:
                return True
            self.journal_append(f"interrupt:{node.path}", "engine")
            for gadget in self.config.gadgets:
                self._dispatch_gadget(gadget.on_interrupt, str(node.path))
            self._flush_queue()
            if self.status is Status.HALTED:
                return True
            if self._stack and self._stack[-1].node is node:
                self._stack.pop()
            if self._active_leaf is node:
                self._active_leaf = None
        self._next = self._advance_from(target_node)
        return True

    # ------------------------------------------------------------------
    # script plumbing
    # ------------------------------------------------------------------

    def _parse_cached(self, source):
        program = self._program_cache.get(source)
        if program is None:
            program = parse_program(source)
            self._program_cache[source] = program
        return program

    def _run_handler(self, node, source, what):
        """Run an element handler; False when the session halted."""
        if source is None:
            return True
        return self._run_script(node, source, what)

    def _run_script(self, node, source, what):
        try:
            program = self._parse_cached(source)
            self._interp.exec_program(program, Env())
        except ScriptError as exc:
            self._halt_error(f"{what} of {node.path}: {exc}")
            return False
        self._flush_queue()
        return self.status is not Status.HALTED

    # ------------------------------------------------------------------
    # halting and lookup helpers
    # ------------------------------------------------------------------

    def _halt(self, kind, detail=""):
        self.status = Status.HALTED
        self.halt_reason = HaltReason(kind, detail)
        self._current_view = None
        self._next = None
        self.journal_append(f"halt:{kind}", "engine")

    def _halt_error(self, detail):
        log.warning("session halted: %s", detail)
        self._halt("Error", detail)

    def restore_position(self, path):
        """Rebuild the activation stack and reopen the scene at `path`.

        Used by resume. Fires no handlers and writes no journal entries:
        the suspended run already performed and recorded that work, and
        replaying it would double its side effects.
        """
        path = path if isinstance(path, CoursePath) else parse_path(str(path))
        if path.is_root:
            raise PathNotFound("cannot resume at the root stream")
        node = self._root
        self._stack = []
        for depth, seg in enumerate(path.segments):
            if not self._materialize(node):
                raise ContentError(self.halt_reason.detail if self.halt_reason else str(node.path))
            act = _Activation(node)
            idx = None
            for j, child in enumerate(act.children):
                if child.spec.id == seg:
                    idx = j
                    break
            if idx is None:
                raise PathNotFound(str(CoursePath(path.segments[: depth + 1])))
            act.idx = idx
            self._stack.append(act)
            node = act.children[idx]
            if depth < len(path.segments) - 1 and node.kind != ElementKind.STREAM:
                raise NotAStream(str(node.path))
        if node.kind != ElementKind.SCENE:
            raise NotAwaitingScene(f"{node.path} is not a scene")
        if not self._materialize(node):
            raise ContentError(self.halt_reason.detail if self.halt_reason else str(node.path))
        token = node.body.presenter_type
        if token is None or self.config.presenter_kind(token) is None:
            raise ContentError(f"scene {node.path}: presenter {token!r} not available on resume")
        self._active_leaf = node
        self._current_view = PresenterView(
            path=node.path,
            presenter_type=token,
            payload=node.body.payload or "",
            record_to=node.body.record_to,
        )
        self.status = Status.AWAITING_SCENE
        return self.state()

    def _resolve_spec_for_override(self, path):
        return self._resolve_runtime(path).spec

    def _resolve_runtime(self, path):
        """Walk the runtime tree, materializing stream bodies as needed.

        Used for override targets; fires no handlers.
        """
        node = self._root
        for i, seg in enumerate(path.segments):
            if node.kind != ElementKind.STREAM:
                raise NotAStream(str(node.path))
            if node.children is None:
                body = resolve_content(node.path, node.spec, self.source,
                                       self.cache, self.overrides, self.warnings)
                specs = body.children or []
                node.children = [self._runtime_child(node, c) for c in specs]
            found = None
            for child in node.children:
                if child.spec.id == seg:
                    found = child
                    break
            if found is None:
                raise PathNotFound(str(CoursePath(path.segments[: i + 1])))
            node = found
        return node
