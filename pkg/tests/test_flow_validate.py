from courseflow.flow import action, scene, stream, validate_course
from courseflow.content import parse_course_document


def _codes(diags, severity=None):
    return [d.code for d in diags if severity is None or d.severity == severity]


def test_valid_course_is_clean():
    root = stream("root", [
        action("a", "null;"),
        scene("s", "message"),
        stream("sub", [action("b", "null;")]),
    ])
    assert validate_course(root) == []


def test_duplicate_sibling_ids():
    root = stream("root", [action("a", "null;"), action("a", "null;")])
    diags = validate_course(root)
    assert _codes(diags, "error") == ["DuplicateId"]
    assert str(diags[0].path) == "/a"


def test_inline_body_plus_content_url_conflict():
    root = stream("root", [action("a", "null;", content_url="x.xml")])
    assert "BodyConflict" in _codes(validate_course(root), "error")


def test_scene_without_presenter_or_url():
    root = stream("root", [scene("s")])
    assert "MissingPresenter" in _codes(validate_course(root), "error")


def test_scene_with_content_url_may_defer_presenter():
    root = stream("root", [scene("s", content_url="s.xml")])
    assert _codes(validate_course(root), "error") == []


def test_unparsable_guard_reported_with_position():
    root = stream("root", [scene("s", "message", include_if="1 +")])
    diags = [d for d in validate_course(root) if d.code == "ScriptParse"]
    assert len(diags) == 1
    assert "includeIf" in diags[0].message
    assert str(diags[0].path) == "/s"


def test_unparsable_handler_reported():
    root = stream("root", [action("a", "null;", on_complete="var = ;")])
    assert "ScriptParse" in _codes(validate_course(root), "error")


def test_bad_id_pattern():
    root = stream("root", [action("9lives", "null;")])
    assert "BadId" in _codes(validate_course(root), "error")


def test_legacy_include_attr_single_warning():
    doc = b"""
    <streamContent>
      <stream id="init" includeSelf="!Global['initializedAlready']">
        <action id="a" includeSelf="true">null;</action>
      </stream>
      <scene id="s" presenterType="message" includeSelf="false"/>
    </streamContent>
    """
    root = parse_course_document(doc)
    diags = validate_course(root)
    legacy = [d for d in diags if d.code == "LegacyIncludeAttr"]
    # one deprecation warning per document, anchored at the first use
    assert len(legacy) == 1
    assert legacy[0].severity == "warning"
    assert str(legacy[0].path) == "/init"
    assert _codes(diags, "error") == []


def test_fig4_document_validates_with_one_warning(fixtures_dir):
    root = parse_course_document((fixtures_dir / "fig4" / "course.xml").read_bytes())
    diags = validate_course(root)
    assert _codes(diags, "error") == []
    assert _codes(diags, "warning") == ["LegacyIncludeAttr"]
    assert str(diags[0].path) == "/init"
