"""Presenter registry and payload conventions for the built-in kinds.

Course documents reference presenters by arbitrary tokens; a registry
maps every token to one of four interaction kinds:

  message - show text, any acknowledgement completes the scene
  choice  - offer options, the chosen option id is the result
  input   - free text, the entered string is the result
  auto    - completes immediately with null

Payload fragments for the built-ins:
  <message>text</message>
  <choice prompt="..."><option id="A">label</option>...</choice>
  <input prompt="..."/>
"""

import xml.etree.ElementTree as ET
from dataclasses import dataclass, field

from ..engine import BUILTIN_PRESENTER_KINDS
from ..flow import Diagnostic, ElementKind


@dataclass
class PayloadInfo:
    text: str = ""
    options: list = field(default_factory=list)  # [{"id": ..., "label": ...}]


class PresenterRegistry:
    """token -> kind mapping; builtin kind names are implicitly registered."""

    def __init__(self, mapping=None):
        self.mapping = dict(mapping or {})

    def register(self, token, kind):
        if kind not in BUILTIN_PRESENTER_KINDS:
            raise ValueError(f"unknown presenter kind {kind!r}")
        self.mapping[token] = kind

    def kind_for(self, token):
        if token in self.mapping:
            return self.mapping[token]
        if token in BUILTIN_PRESENTER_KINDS:
            return token
        return None

    def as_dict(self):
        return dict(self.mapping)

    def check_course(self, root_spec):
        """Warn about presenterType tokens no registered kind covers."""
        out = []

        def visit(node, path):
            if node.kind == ElementKind.SCENE and node.presenter_type is not None:
                if self.kind_for(node.presenter_type) is None:
                    out.append(Diagnostic(
                        "warning", path, "UnknownPresenter",
                        f"presenterType {node.presenter_type!r} has no registered kind",
                    ))
            for child in node.children or []:
                visit(child, path / child.id)

        from ..flow import ROOT_PATH
        visit(root_spec, ROOT_PATH)
        return out


def parse_payload(kind, payload_xml):
    """Extract learner-facing text and options from a payload fragment."""
    info = PayloadInfo()
    if not payload_xml or not payload_xml.strip():
        return info
    try:
        wrapper = ET.fromstring(f"<pp>{payload_xml}</pp>")
    except ET.ParseError:
        info.text = payload_xml.strip()
        return info

    prompt = None
    for elem in wrapper.iter():
        if elem is wrapper:
            continue
        if prompt is None and elem.get("prompt"):
            prompt = elem.get("prompt")
        if kind == "choice" and elem.tag == "option":
            info.options.append({
                "id": elem.get("id") or str(len(info.options)),
                "label": (elem.text or "").strip(),
            })
    if prompt is not None:
        info.text = prompt
    else:
        texts = []
        for elem in wrapper.iter():
            if kind == "choice" and elem.tag == "option":
                continue
            if elem.text and elem.text.strip():
                texts.append(elem.text.strip())
        info.text = " ".join(texts)
    return info
