"""Flow XML parsing and external-content resolution.

Wire format: root elements streamContent | sceneContent | actionContent;
child elements stream | scene | action with attributes id, includeIf,
includeSelf (legacy), contentURL, preload, cached, onExecute, onComplete,
onInterrupt, presenterType, recordTo. Boolean attributes accept exactly
"true" / "false".

Resolution precedence for a node's body:
override > cache hit (when the node is cached) > preloaded one-shot >
fetch(contentURL) + parse > inline body.
"""

import hashlib
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from pathlib import Path

from .errors import FetchFailed, UnknownElement, WrongRootElement, XmlSyntax
from .flow import Diagnostic, ElementKind, ElementSpec

ROOT_TAGS = {
    "streamContent": ElementKind.STREAM,
    "sceneContent": ElementKind.SCENE,
    "actionContent": ElementKind.ACTION,
}

CHILD_TAGS = {
    "stream": ElementKind.STREAM,
    "scene": ElementKind.SCENE,
    "action": ElementKind.ACTION,
}

_COMMON_ATTRS = {
    "id", "includeIf", "includeSelf", "contentURL", "preload", "cached",
    "onExecute", "onComplete", "onInterrupt",
}
_SCENE_ATTRS = _COMMON_ATTRS | {"presenterType", "recordTo"}
_ROOT_ATTRS = {"presenterType", "recordTo"}  # external scene docs may carry these


@dataclass
class Body:
    """Resolved body of one element, independent of its attributes."""

    kind: ElementKind
    children: list = None        # STREAM
    presenter_type: str = None   # SCENE
    payload: str = ""
    record_to: str = None
    script: str = ""             # ACTION


def _bool_attr(elem, name, where):
    raw = elem.get(name)
    if raw is None:
        return False
    if raw == "true":
        return True
    if raw == "false":
        return False
    raise XmlSyntax(f"{where}: attribute {name} must be \"true\" or \"false\", got {raw!r}")


def _inner_xml(elem):
    parts = []
    if elem.text and elem.text.strip():
        parts.append(elem.text.strip())
    for child in elem:
        parts.append(ET.tostring(child, encoding="unicode").strip())
    return "".join(parts)


def _parse_element(elem, warnings, where):
    kind = CHILD_TAGS.get(elem.tag)
    if kind is None:
        raise UnknownElement(f"{where}: unexpected element <{elem.tag}>")
    node_id = elem.get("id")
    if not node_id:
        raise XmlSyntax(f"{where}: <{elem.tag}> is missing an id")
    where = f"{where}/{node_id}"

    allowed = _SCENE_ATTRS if kind == ElementKind.SCENE else _COMMON_ATTRS
    for attr in elem.attrib:
        if attr not in allowed:
            warnings.append(Diagnostic(
                "warning", None, "UnknownAttribute",
                f"{where}: ignoring unknown attribute {attr!r} on <{elem.tag}>",
            ))

    include_if = elem.get("includeIf")
    legacy = False
    if elem.get("includeSelf") is not None:
        legacy = True
        if include_if is None:
            include_if = elem.get("includeSelf")

    spec = ElementSpec(
        id=node_id,
        kind=kind,
        include_if=include_if,
        on_execute=elem.get("onExecute"),
        on_complete=elem.get("onComplete"),
        on_interrupt=elem.get("onInterrupt"),
        content_url=elem.get("contentURL"),
        preload=_bool_attr(elem, "preload", where),
        cached=_bool_attr(elem, "cached", where),
        legacy_include_attr=legacy,
    )

    if kind == ElementKind.STREAM:
        kids = list(elem)
        # a childless stream with a contentURL stays unresolved until fetched
        if kids or spec.content_url is None:
            spec.children = [_parse_element(c, warnings, where) for c in kids]
    elif kind == ElementKind.SCENE:
        spec.presenter_type = elem.get("presenterType")
        spec.record_to = elem.get("recordTo")
        spec.payload = _inner_xml(elem)
    else:  # ACTION
        text = elem.text or ""
        if list(elem):
            raise UnknownElement(f"{where}: <action> holds script text, not child elements")
        if text.strip() or spec.content_url is None:
            spec.script = text
    return spec


def parse_flow_document(data, expected_kind, warnings=None):
    """Parse one flow XML document into a Body of the expected kind.

    `warnings` collects non-fatal diagnostics (unknown attributes).
    """
    if warnings is None:
        warnings = []
    if isinstance(data, bytes):
        text = data.decode("utf-8")
    else:
        text = data
    try:
        root = ET.fromstring(text)
    except ET.ParseError as exc:
        raise XmlSyntax(str(exc)) from exc

    kind = ROOT_TAGS.get(root.tag)
    if kind is None:
        raise WrongRootElement(f"unexpected root element <{root.tag}>")
    if kind != expected_kind:
        raise WrongRootElement(
            f"expected <{_root_tag_for(expected_kind)}>, found <{root.tag}>"
        )

    if kind == ElementKind.STREAM:
        for attr in root.attrib:
            warnings.append(Diagnostic(
                "warning", None, "UnknownAttribute",
                f"ignoring attribute {attr!r} on <{root.tag}>",
            ))
        children = [_parse_element(c, warnings, "") for c in root]
        return Body(kind, children=children)
    if kind == ElementKind.SCENE:
        for attr in root.attrib:
            if attr not in _ROOT_ATTRS:
                warnings.append(Diagnostic(
                    "warning", None, "UnknownAttribute",
                    f"ignoring attribute {attr!r} on <{root.tag}>",
                ))
        return Body(
            kind,
            presenter_type=root.get("presenterType"),
            record_to=root.get("recordTo"),
            payload=_inner_xml(root),
        )
    for attr in root.attrib:
        warnings.append(Diagnostic(
            "warning", None, "UnknownAttribute",
            f"ignoring attribute {attr!r} on <{root.tag}>",
        ))
    if list(root):
        raise UnknownElement("<actionContent> holds script text, not child elements")
    return Body(kind, script=root.text or "")


def _root_tag_for(kind):
    for tag, k in ROOT_TAGS.items():
        if k == kind:
            return tag
    raise ValueError(kind)


def parse_course_document(data, warnings=None):
    """Parse a course root document into the root stream ElementSpec."""
    body = parse_flow_document(data, ElementKind.STREAM, warnings)
    return ElementSpec(id="root", kind=ElementKind.STREAM, children=body.children)


# --- content sources ---

def _check_locator(rel):
    if rel.startswith(("/", "\\")) or "\\" in rel:
        raise FetchFailed(f"locator must be relative with '/' separators: {rel!r}")
    parts = rel.split("/")
    if any(p in ("", ".", "..") for p in parts):
        raise FetchFailed(f"locator may not escape the content base: {rel!r}")


class ContentSource:
    """Fetches course content by relative locator; counts every fetch."""

    def __init__(self):
        self.fetch_counts = {}

    def fetch(self, rel):
        _check_locator(rel)
        data = self._read(rel)
        self.fetch_counts[rel] = self.fetch_counts.get(rel, 0) + 1
        return data

    def _read(self, rel):
        raise NotImplementedError

    def content_hash(self):
        raise NotImplementedError


class DirectoryContentSource(ContentSource):
    """Serves files from a course directory."""

    def __init__(self, base):
        super().__init__()
        self.base = Path(base)

    def _read(self, rel):
        path = self.base / rel
        try:
            return path.read_bytes()
        except OSError as exc:
            raise FetchFailed(f"cannot read {rel!r}: {exc}") from exc

    def content_hash(self):
        """Hash of every .xml file under the base, so edits refuse stale resumes."""
        h = hashlib.sha256()
        for path in sorted(self.base.rglob("*.xml")):
            h.update(str(path.relative_to(self.base)).encode())
            h.update(b"\0")
            h.update(path.read_bytes())
            h.update(b"\0")
        return h.hexdigest()


class MemoryContentSource(ContentSource):
    """In-memory source for tests."""

    def __init__(self, files=None):
        super().__init__()
        self.files = {k: (v.encode() if isinstance(v, str) else v)
                      for k, v in (files or {}).items()}

    def _read(self, rel):
        if rel not in self.files:
            raise FetchFailed(f"no such content: {rel!r}")
        return self.files[rel]

    def content_hash(self):
        h = hashlib.sha256()
        for rel in sorted(self.files):
            h.update(rel.encode())
            h.update(b"\0")
            h.update(self.files[rel])
            h.update(b"\0")
        return h.hexdigest()


# --- cache, preload store, overrides ---

class ContentCache:
    """Per-path cache of resolved bodies plus fetch+parse counters."""

    def __init__(self):
        self.entries = {}
        self.load_counts = {}
        self.preloaded = {}  # one-shot entries, consumed on first use

    def count_load(self, path):
        key = str(path)
        self.load_counts[key] = self.load_counts.get(key, 0) + 1

    def get(self, path):
        return self.entries.get(str(path))

    def put(self, path, body):
        self.entries[str(path)] = body

    def put_preloaded(self, path, body):
        self.preloaded[str(path)] = body

    def take_preloaded(self, path):
        return self.preloaded.pop(str(path), None)


def load_stats(cache):
    """Exact fetch+parse counts per course path."""
    return dict(cache.load_counts)


@dataclass
class OverrideTable:
    """Dynamic body replacements; an override beats both inline and external content."""

    entries: dict = field(default_factory=dict)  # str(path) -> (Body, source text)

    def set(self, path, body, source_text):
        self.entries[str(path)] = (body, source_text)

    def get(self, path):
        hit = self.entries.get(str(path))
        return hit[0] if hit else None

    def source_text(self, path):
        hit = self.entries.get(str(path))
        return hit[1] if hit else None

    def as_dict(self):
        return {p: text for p, (_, text) in self.entries.items()}


def body_from_spec(spec):
    """Inline body of a spec node, as a Body."""
    if spec.kind == ElementKind.STREAM:
        return Body(spec.kind, children=list(spec.children or []))
    if spec.kind == ElementKind.SCENE:
        return Body(spec.kind, presenter_type=spec.presenter_type,
                    record_to=spec.record_to, payload=spec.payload)
    return Body(spec.kind, script=spec.script or "")


def _merge_scene_attrs(spec, body):
    """Attributes on the referencing <scene> element win over external ones."""
    if spec.presenter_type is not None:
        body.presenter_type = spec.presenter_type
    if spec.record_to is not None:
        body.record_to = spec.record_to
    return body


def resolve_content(path, spec, source, cache, overrides, warnings=None):
    """Materialize the body an execution of `path` should use.

    External non-cached content is fetched again on every execution;
    cached content is fetched at most once per session. The node's own
    attributes always win over attributes in an external scene document.
    """
    override = overrides.get(path)
    if override is not None:
        return override
    if spec.cached:
        hit = cache.get(path)
        if hit is not None:
            return hit
    if spec.content_url is not None:
        body = cache.take_preloaded(path)
        if body is None:
            data = source.fetch(spec.content_url)
            body = parse_flow_document(data, spec.kind, warnings)
            cache.count_load(path)
        if spec.kind == ElementKind.SCENE:
            body = _merge_scene_attrs(spec, body)
        if spec.cached:
            cache.put(path, body)
        return body
    return body_from_spec(spec)


def schedule_preloads(stream_path, children, source, cache, warnings=None):
    """Fetch preload-flagged direct children of a just-resolved stream.

    Returns the preloaded paths in document order. A failing preload is
    a warning here; it only becomes fatal if the element is executed and
    the content is still unavailable.
    """
    if warnings is None:
        warnings = []
    preloaded = []
    for child in children:
        if not (child.preload and child.content_url):
            continue
        child_path = stream_path / child.id
        if cache.get(child_path) is not None or str(child_path) in cache.preloaded:
            continue
        try:
            data = source.fetch(child.content_url)
            body = parse_flow_document(data, child.kind, warnings)
        except (FetchFailed, XmlSyntax, WrongRootElement, UnknownElement) as exc:
            warnings.append(Diagnostic(
                "warning", child_path, "PreloadFailed", str(exc),
            ))
            continue
        cache.count_load(child_path)
        if child.kind == ElementKind.SCENE:
            body = _merge_scene_attrs(child, body)
        if child.cached:
            cache.put(child_path, body)
        else:
            cache.put_preloaded(child_path, body)
        preloaded.append(child_path)
    return preloaded


def apply_override(overrides, root_resolver, path, xml_text):
    """Install a dynamic body for `path`; later resolves return it.

    `root_resolver` maps a path to its ElementSpec (raising PathNotFound)
    so the override can be parsed against the right kind.
    """
    spec = root_resolver(path)
    body = parse_flow_document(xml_text, spec.kind)
    overrides.set(path, body, xml_text if isinstance(xml_text, str) else xml_text.decode("utf-8"))
    return overrides
