"""The string-keyed data space shared by scripts, guards, gadgets and presenters."""

from ..errors import GuardSideEffect


class GlobalSpace:
    """Mutable map of string keys to script values.

    Reading an absent key yields null (None); it is never an error.
    While the write log is armed, every mutation is recorded; the guard
    entry points use this to reject side effects in includeIf expressions.
    """

    def __init__(self, entries=None):
        self.entries = dict(entries) if entries else {}
        self.write_log = None

    def get(self, key):
        return self.entries.get(key)

    def set(self, key, value):
        if self.write_log is not None:
            self.write_log.append(key)
        self.entries[key] = value

    def arm_write_log(self):
        self.write_log = []

    def disarm_write_log(self):
        log, self.write_log = self.write_log, None
        return log or []

    def record_mutation(self, what):
        """Log a mutation that bypasses set(), e.g. a nested container write."""
        if self.write_log is not None:
            self.write_log.append(what)

    def check_pure(self, what="guard"):
        """Run a no-write section; raises GuardSideEffect if anything was logged."""
        return _PurityWatch(self, what)

    def as_dict(self):
        return self.entries

    def __contains__(self, key):
        return key in self.entries

    def __len__(self):
        return len(self.entries)


class _PurityWatch:
    def __init__(self, space, what):
        self.space = space
        self.what = what

    def __enter__(self):
        self.space.arm_write_log()
        return self

    def __exit__(self, exc_type, exc, tb):
        writes = self.space.disarm_write_log()
        if exc_type is None and writes:
            raise GuardSideEffect(
                f"{self.what} attempted to write: {', '.join(str(w) for w in writes)}"
            )
        return False
