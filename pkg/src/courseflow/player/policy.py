"""Scripted learner driver for headless runs.

A policy is an action-language program that stores a one-argument
function under Global['Policy']. For every awaited scene the driver
calls it with a map {path, presenterType, payloadText, options} and
completes the scene with the returned value. Two special map returns
steer the run instead of answering:

  {tick: ms}      advance the virtual clock (lets scene timers expire)
  {suspend: true} stop driving so the caller can suspend the session

A null return on a choice scene picks the first option.
"""

from ..engine import Status
from ..errors import PolicyMissing
from ..script.values import Closure, HostFn, is_number
from .presenters import parse_payload

POLICY_KEY = "Policy"


def load_policy(session, source_text):
    """Run the policy program inside the session's interpreter."""
    session.exec_program_text(source_text, name="<policy>")
    fn = session.globals.get(POLICY_KEY)
    if not isinstance(fn, (Closure, HostFn)):
        raise PolicyMissing(f"policy program did not define Global['{POLICY_KEY}']")
    return fn


def evaluate_policy(session, registry, view):
    """Call the session's policy function for one presenter view."""
    fn = session.globals.get(POLICY_KEY)
    if not isinstance(fn, (Closure, HostFn)):
        raise PolicyMissing(f"Global['{POLICY_KEY}'] is not a function")
    kind = registry.kind_for(view.presenter_type) or "message"
    info = parse_payload(kind, view.payload)
    vmap = {
        "path": str(view.path),
        "presenterType": view.presenter_type,
        "payloadText": info.text,
        "options": [opt["id"] for opt in info.options],
    }
    return session.call_function(fn, [vmap]), info, kind


def drive_policy(session, registry, max_interactions=100_000):
    """Answer scenes with the policy until the session halts.

    Returns "halted" normally, or "suspend" when the policy asked to
    stop so the session can be suspended mid-course.
    """
    interactions = 0
    while session.status is Status.AWAITING_SCENE:
        interactions += 1
        if interactions > max_interactions:
            raise RuntimeError("policy run exceeded the interaction limit")
        view = session.current_view()
        result, info, kind = evaluate_policy(session, registry, view)
        if isinstance(result, dict) and "tick" in result:
            ms = result["tick"]
            if not is_number(ms) or ms <= 0:
                raise ValueError("policy tick must be a positive number of ms")
            session.tick(int(ms))
            continue
        if isinstance(result, dict) and result.get("suspend"):
            return "suspend"
        if result is None and kind == "choice" and info.options:
            result = info.options[0]["id"]
        session.complete_scene(result)
    return "halted"
