"""Serialize the global data space to a deterministic JSON document.

Function values (closures and builtins) cannot cross the persistence
boundary; they are dropped and their key paths reported so callers can
surface what was lost.
"""

import json

from ..errors import CyclicData, MalformedSnapshot
from .space import GlobalSpace
from .values import is_function

_MISSING = object()


def _strip(value, path, skipped, on_stack):
    if is_function(value):
        skipped.append(path)
        return _MISSING
    if isinstance(value, list):
        if id(value) in on_stack:
            raise CyclicData(f"cycle through {path or '<root>'}")
        on_stack.add(id(value))
        out = []
        for i, item in enumerate(value):
            kept = _strip(item, f"{path}[{i}]", skipped, on_stack)
            # dropping a list slot would shift indices; keep the slot as null
            out.append(None if kept is _MISSING else kept)
        on_stack.discard(id(value))
        return out
    if isinstance(value, dict):
        if id(value) in on_stack:
            raise CyclicData(f"cycle through {path or '<root>'}")
        on_stack.add(id(value))
        out = {}
        for key in value:
            sub = f"{path}.{key}" if path else key
            kept = _strip(value[key], sub, skipped, on_stack)
            if kept is not _MISSING:
                out[key] = kept
        on_stack.discard(id(value))
        return out
    return value


def snapshot_global(globals_):
    """Return (document text, skipped key paths).

    The document is JSON with sorted keys and no extra whitespace, so
    equal spaces always serialize to equal bytes.
    """
    skipped = []
    data = _strip(globals_.as_dict(), "", skipped, set())
    text = json.dumps(data, sort_keys=True, separators=(",", ":"), ensure_ascii=False)
    return text, skipped


def restore_global(doc):
    """Parse a snapshot document back into a GlobalSpace."""
    try:
        data = json.loads(doc)
    except (ValueError, TypeError) as exc:
        raise MalformedSnapshot(str(exc)) from exc
    if not isinstance(data, dict):
        raise MalformedSnapshot("snapshot root must be an object")
    return GlobalSpace(_revive(data))


def _revive(value):
    if isinstance(value, dict):
        return {k: _revive(v) for k, v in value.items()}
    if isinstance(value, list):
        return [_revive(v) for v in value]
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    return float(value)
