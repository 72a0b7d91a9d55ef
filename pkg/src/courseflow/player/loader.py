"""Course directory loading.

Layout: `course.xml` holds the root stream document; referenced content
files live relative to the directory. An optional `presenters.xml` maps
presenterType tokens to built-in interaction kinds:

    <presenters>
      <presenter type="DHSPresenter" kind="message"/>
    </presenters>
"""

import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from pathlib import Path

from ..content import DirectoryContentSource, parse_course_document
from ..engine import Session, SessionConfig
from ..errors import XmlSyntax
from .presenters import PresenterRegistry

COURSE_FILE = "course.xml"
PRESENTERS_FILE = "presenters.xml"


@dataclass
class CourseBundle:
    name: str
    directory: Path
    root_spec: object
    registry: PresenterRegistry
    parse_warnings: list = field(default_factory=list)

    def new_source(self):
        """A fresh content source (fetch counters start at zero)."""
        return DirectoryContentSource(self.directory)


def _load_presenter_map(path):
    registry = PresenterRegistry()
    if not path.exists():
        return registry
    try:
        root = ET.fromstring(path.read_text(encoding="utf-8"))
    except ET.ParseError as exc:
        raise XmlSyntax(f"{path.name}: {exc}") from exc
    if root.tag != "presenters":
        raise XmlSyntax(f"{path.name}: root element must be <presenters>")
    for elem in root:
        if elem.tag != "presenter":
            raise XmlSyntax(f"{path.name}: unexpected <{elem.tag}>")
        token, kind = elem.get("type"), elem.get("kind")
        if not token or not kind:
            raise XmlSyntax(f"{path.name}: <presenter> needs type and kind")
        registry.register(token, kind)
    return registry


def load_course(directory):
    """Read and parse a course directory into a bundle."""
    directory = Path(directory)
    course_path = directory / COURSE_FILE
    data = course_path.read_bytes()  # OSError propagates: unreadable course
    warnings = []
    root_spec = parse_course_document(data, warnings)
    registry = _load_presenter_map(directory / PRESENTERS_FILE)
    return CourseBundle(
        name=directory.name,
        directory=directory,
        root_spec=root_spec,
        registry=registry,
        parse_warnings=warnings,
    )


def make_session(bundle, config=None, source=None):
    """Build a session for a loaded course; presenter map rides on the config."""
    config = config or SessionConfig()
    merged = dict(bundle.registry.as_dict())
    merged.update(config.presenter_kinds)
    config.presenter_kinds = merged
    return Session(
        bundle.root_spec,
        source if source is not None else bundle.new_source(),
        config,
        course_name=bundle.name,
    )
