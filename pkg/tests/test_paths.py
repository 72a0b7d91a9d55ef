import pytest
from hypothesis import given, strategies as st

from courseflow.errors import MalformedPath, NotAStream, PathNotFound
from courseflow.flow import CoursePath, parse_path, resolve_path, action, scene, stream


def test_parse_simple():
    assert parse_path("/init/dataInit").segments == ("init", "dataInit")


def test_parse_root():
    assert parse_path("/").segments == ()
    assert str(parse_path("/")) == "/"


@pytest.mark.parametrize("bad", [
    "init/dataInit",   # missing leading slash
    "",
    "//",
    "/a//b",
    "/a/",
    "/a b",
    "/9lives",         # ids cannot start with a digit
    "/a/*",
])
def test_parse_malformed(bad):
    with pytest.raises(MalformedPath):
        parse_path(bad)


def test_roundtrip_examples():
    for text in ["/", "/a", "/a/b-c/_d", "/init/dataInit"]:
        assert str(parse_path(text)) == text


_ident = st.from_regex(r"[A-Za-z_][A-Za-z0-9_-]{0,8}", fullmatch=True)


@given(st.lists(_ident, max_size=6))
def test_roundtrip_property(segments):
    path = CoursePath(tuple(segments))
    assert parse_path(str(path)) == path


def _fig4ish():
    return stream("root", [
        stream("init", [
            stream("dataInit", []),
            action("commonInit", content_url="perpsContent/main_init.xml"),
        ]),
        scene("disclaimer", "DHSPresenter"),
    ])


def test_resolve_root_returns_root():
    root = _fig4ish()
    assert resolve_path(root, parse_path("/")) is root


def test_resolve_nested():
    root = _fig4ish()
    node = resolve_path(root, parse_path("/init/commonInit"))
    assert node.content_url == "perpsContent/main_init.xml"


def test_resolve_not_found():
    with pytest.raises(PathNotFound):
        resolve_path(_fig4ish(), parse_path("/init/nope"))


def test_resolve_through_scene_fails():
    with pytest.raises(NotAStream):
        resolve_path(_fig4ish(), parse_path("/disclaimer/x"))


def test_resolve_covers_exactly_tree_paths():
    root = _fig4ish()
    have = ["/init", "/init/dataInit", "/init/commonInit", "/disclaimer"]
    for text in have:
        resolve_path(root, parse_path(text))
    for text in ["/nope", "/init/dataInit/deeper", "/disclaimer/x"]:
        with pytest.raises((PathNotFound, NotAStream)):
            resolve_path(root, parse_path(text))
