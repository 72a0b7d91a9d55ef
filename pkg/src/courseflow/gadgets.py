"""Shipped gadgets."""

from .engine import Gadget
from .script.values import is_number


class TimerGadget(Gadget):
    """Scene timeout watchdog.

    A scene arms the timer by setting Global["timer.limitMs"] in its
    onExecute handler; this gadget consumes the key when the element's
    execute hook fires and stores the deadline in Global["timer.deadlineMs"].
    Once the virtual clock passes the deadline it sets
    Global["timer.expired"] = true, journals "timer:expired" and requests
    an interrupt of the running scene. Completion or interruption of the
    armed element disarms it.

    All timer state lives in the global space so it survives suspend
    and resume.
    """

    name = "timer"

    LIMIT_KEY = "timer.limitMs"
    DEADLINE_KEY = "timer.deadlineMs"
    ARMED_PATH_KEY = "timer.armedPath"
    EXPIRED_KEY = "timer.expired"

    def on_execute(self, svc, path):
        limit = svc.get_global(self.LIMIT_KEY)
        if limit is None or not is_number(limit):
            return
        svc.set_global(self.LIMIT_KEY, None)
        svc.set_global(self.DEADLINE_KEY, float(svc.now_ms()) + float(limit))
        svc.set_global(self.ARMED_PATH_KEY, path)

    def _disarm(self, svc, path):
        if svc.get_global(self.ARMED_PATH_KEY) == path:
            svc.set_global(self.DEADLINE_KEY, None)
            svc.set_global(self.ARMED_PATH_KEY, None)

    def on_complete(self, svc, path):
        self._disarm(svc, path)

    def on_interrupt(self, svc, path):
        self._disarm(svc, path)

    def on_tick(self, svc, now_ms):
        deadline = svc.get_global(self.DEADLINE_KEY)
        if deadline is None or not is_number(deadline):
            return
        if float(now_ms) < float(deadline):
            return
        svc.set_global(self.DEADLINE_KEY, None)
        svc.set_global(self.ARMED_PATH_KEY, None)
        svc.set_global(self.EXPIRED_KEY, True)
        svc.journal("timer:expired")
        svc.interrupt()
