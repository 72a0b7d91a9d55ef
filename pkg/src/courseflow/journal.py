"""Session journal: timestamped string event identifiers.

Engine-emitted ids follow a fixed scheme: "exec:<path>", "complete:<path>",
"interrupt:<path>" and "halt:<reason>". Scripts and gadgets append free-form
ids through the journaling service.
"""

import json
from dataclasses import dataclass

from .errors import SinkWriteFailed


@dataclass
class JournalEntry:
    t: int       # virtual-clock milliseconds
    id: str
    src: str     # engine | script | gadget

    def to_line(self):
        # fixed key order keeps files byte-stable across runs
        return json.dumps({"t": self.t, "id": self.id, "src": self.src},
                          ensure_ascii=False, separators=(",", ":"))


class Journal:
    """Append-only event log; appends are no-ops while logging is off."""

    def __init__(self, enabled=True):
        self.enabled = enabled
        self.entries = []

    def append(self, t, id_, src):
        if not self.enabled:
            return
        self.entries.append(JournalEntry(int(t), id_, src))

    def __len__(self):
        return len(self.entries)

    def lines(self):
        return [e.to_line() for e in self.entries]

    def text(self):
        return "".join(line + "\n" for line in self.lines())


def export_journal(journal, sink):
    """Write one record per line to a file-like sink; returns the line count."""
    count = 0
    try:
        for line in journal.lines():
            sink.write(line + "\n")
            count += 1
    except OSError as exc:
        raise SinkWriteFailed(str(exc)) from exc
    return count
