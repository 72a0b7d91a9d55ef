"""Key-value persistence adapter towards a learning management system.

The engine never talks to an LMS directly; anything that can store
string keys and values behind get/set/commit can back suspend records
and journal flushes.
"""

import os
from pathlib import Path

from ..errors import CommitFailed


class LmsAdapter:
    """Abstract store: set() buffers, commit() publishes atomically."""

    def get(self, key):
        raise NotImplementedError

    def set(self, key, value):
        raise NotImplementedError

    def commit(self):
        raise NotImplementedError


class MemoryLmsAdapter(LmsAdapter):
    def __init__(self, store=None):
        self.store = store if store is not None else {}
        self.pending = {}
        self.fail_commit = False  # test hook

    def get(self, key):
        return self.store.get(key)

    def set(self, key, value):
        self.pending[key] = value

    def commit(self):
        if self.fail_commit:
            raise CommitFailed("simulated commit failure")
        self.store.update(self.pending)
        self.pending.clear()
        return True


class DirectoryLmsAdapter(LmsAdapter):
    """One file per key inside a directory; commit is write-temp-then-rename."""

    def __init__(self, directory):
        self.directory = Path(directory)
        self.pending = {}

    def _path(self, key):
        safe = key.replace("/", "_")
        return self.directory / f"{safe}.dat"

    def get(self, key):
        path = self._path(key)
        if not path.exists():
            return None
        return path.read_text(encoding="utf-8")

    def set(self, key, value):
        self.pending[key] = value

    def commit(self):
        try:
            self.directory.mkdir(parents=True, exist_ok=True)
            for key, value in self.pending.items():
                target = self._path(key)
                tmp = target.with_suffix(".tmp")
                tmp.write_text(value, encoding="utf-8")
                os.replace(tmp, target)
        except OSError as exc:
            raise CommitFailed(str(exc)) from exc
        self.pending.clear()
        return True
