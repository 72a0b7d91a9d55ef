"""Runtime values of the action language.

Values map onto plain Python objects: null -> None, booleans -> bool,
numbers -> float (binary64), strings -> str, lists -> list, maps -> dict.
Functions are represented by Closure and HostFn below. Using native
containers keeps scripts, snapshots and the HTTP layer on one
representation.
"""

import math
from dataclasses import dataclass, field


@dataclass
class Closure:
    """A script function together with its defining environment."""

    params: list
    body: object  # Block AST node
    env: object   # Env it was defined in; captured by reference
    name: str = "<anonymous>"

    def __repr__(self):
        return f"<function {self.name}({', '.join(self.params)})>"


@dataclass
class HostFn:
    """A builtin bound by the engine, with an inclusive arity range."""

    name: str
    fn: object = field(repr=False)
    min_arity: int = 0
    max_arity: int = 0

    def __repr__(self):
        return f"<builtin {self.name}>"


def is_function(v):
    return isinstance(v, (Closure, HostFn))


def is_number(v):
    # bool is an int subclass; booleans are a distinct value kind here.
    return isinstance(v, float) or (isinstance(v, int) and not isinstance(v, bool))


def as_number(v):
    return float(v)


def truthy(v):
    """Falsy: null, false, 0, NaN, "". Containers and functions are always truthy."""
    if v is None:
        return False
    if isinstance(v, bool):
        return v
    if is_number(v):
        f = float(v)
        return not (f == 0.0 or math.isnan(f))
    if isinstance(v, str):
        return v != ""
    return True


def value_equals(a, b, _seen=None):
    """Same-kind value equality. Cross-kind compares are false, except null==null.

    NaN never equals NaN. Lists and maps compare structurally; functions
    compare by identity.
    """
    if a is None or b is None:
        return a is None and b is None
    if isinstance(a, bool) or isinstance(b, bool):
        return isinstance(a, bool) and isinstance(b, bool) and a == b
    if is_number(a) or is_number(b):
        if not (is_number(a) and is_number(b)):
            return False
        fa, fb = float(a), float(b)
        if math.isnan(fa) or math.isnan(fb):
            return False
        return fa == fb
    if isinstance(a, str) or isinstance(b, str):
        return isinstance(a, str) and isinstance(b, str) and a == b
    if is_function(a) or is_function(b):
        return a is b
    # containers: guard against cycles by comparing identity pairs already in flight
    if _seen is None:
        _seen = set()
    key = (id(a), id(b))
    if key in _seen:
        return True
    _seen.add(key)
    if isinstance(a, list) and isinstance(b, list):
        if len(a) != len(b):
            return False
        return all(value_equals(x, y, _seen) for x, y in zip(a, b))
    if isinstance(a, dict) and isinstance(b, dict):
        if set(a.keys()) != set(b.keys()):
            return False
        return all(value_equals(a[k], b[k], _seen) for k in a)
    return False


def format_number(f):
    """Integral finite numbers render without a fraction; others use the
    shortest round-trip decimal."""
    f = float(f)
    if math.isnan(f):
        return "NaN"
    if math.isinf(f):
        return "Infinity" if f > 0 else "-Infinity"
    if f == int(f) and abs(f) < 1e16:
        return str(int(f))
    return repr(f)


def _quote(s):
    out = ["'"]
    for ch in s:
        if ch == "\\":
            out.append("\\\\")
        elif ch == "'":
            out.append("\\'")
        elif ch == "\n":
            out.append("\\n")
        elif ch == "\t":
            out.append("\\t")
        else:
            out.append(ch)
    out.append("'")
    return "".join(out)


def format_value(v, _depth=0):
    """Render a value the way str() sees it.

    Top-level strings are unquoted; strings inside containers render in
    literal syntax. Map keys are sorted so output is deterministic.
    """
    if _depth > 64:
        raise RecursionError("value nesting too deep to format")
    if v is None:
        return "null"
    if isinstance(v, bool):
        return "true" if v else "false"
    if is_number(v):
        return format_number(v)
    if isinstance(v, str):
        return v if _depth == 0 else _quote(v)
    if isinstance(v, list):
        return "[" + ", ".join(format_value(x, _depth + 1) for x in v) + "]"
    if isinstance(v, dict):
        items = (f"{_quote(k)}: {format_value(v[k], _depth + 1)}" for k in sorted(v))
        return "{" + ", ".join(items) + "}"
    return repr(v)
