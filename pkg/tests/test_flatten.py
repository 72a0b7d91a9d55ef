import pytest

from courseflow.errors import GuardSideEffect
from courseflow.flow import action, scene, static_flatten, stream
from courseflow.script import GlobalSpace
from courseflow.content import parse_course_document


def paths(root, env=None):
    return [str(p) for p in static_flatten(root, env or GlobalSpace())]


def test_empty_root():
    assert paths(stream("root", [])) == []


def test_plain_depth_first_without_guards():
    root = stream("root", [
        action("a", "null;"),
        stream("s", [action("b", "null;"), scene("c", "message")]),
        action("d", "null;"),
    ])
    assert paths(root) == ["/a", "/s/b", "/s/c", "/d"]


def test_guarded_middle_child():
    root = stream("root", [
        action("a", "null;"),
        action("b", "null;", include_if="false"),
        action("c", "null;"),
    ])
    assert paths(root) == ["/a", "/c"]


def test_guard_cuts_whole_subtree():
    root = stream("root", [
        stream("s", [action("a", "null;")], include_if="false"),
        action("b", "null;"),
    ])
    assert paths(root) == ["/b"]


def test_includable_stream_without_includable_children_is_a_leaf():
    root = stream("root", [
        stream("empty", []),
        stream("guarded", [action("x", "null;", include_if="false")]),
        action("tail", "null;"),
    ])
    assert paths(root) == ["/empty", "/guarded", "/tail"]


def test_guards_read_environment():
    env = GlobalSpace({"initializedAlready": True, "skipLogoAni": False})
    root = parse_course_document(b"""
    <streamContent>
      <stream id="init" includeSelf="!Global['initializedAlready']">
        <action id="x">null;</action>
      </stream>
      <scene id="disclaimer" presenterType="m" includeSelf="!Global['skipLogoAni']"/>
      <scene id="survey" presenterType="m"/>
      <scene id="map" presenterType="m"/>
      <stream id="test"/>
      <stream id="remediation"/>
    </streamContent>
    """)
    assert paths(root, env) == ["/disclaimer", "/survey", "/map", "/test", "/remediation"]


def test_guard_write_rejected():
    root = stream("root", [action("a", "null;", include_if="Global['x'] = 1")])
    with pytest.raises(GuardSideEffect):
        static_flatten(root, GlobalSpace())


def test_guard_service_call_rejected():
    from courseflow.engine import Session, SessionConfig
    from courseflow.content import MemoryContentSource
    from courseflow.flow import validate_course

    root = stream("root", [action("a", "null;", include_if="finish() == null")])
    assert validate_course(root) == []
    session = Session(root, MemoryContentSource(), SessionConfig())
    state = session.start()
    assert state.halt.kind == "Error"
    assert "includeIf" in state.halt.detail
