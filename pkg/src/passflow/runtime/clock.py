"""Clocks driving timer wakeups.

The virtual clock only moves when the scheduler advances it (deterministic
test/scripted mode); the wall clock follows the host's monotonic time (serve
mode).
"""

from __future__ import annotations

import time


class VirtualClock:
    def __init__(self, start_ms: int = 0):
        self._now = start_ms

    def now_ms(self) -> int:
        return self._now

    def advance_to(self, deadline_ms: int) -> None:
        if deadline_ms > self._now:
            self._now = deadline_ms

    @property
    def virtual(self) -> bool:
        return True


class WallClock:
    def __init__(self):
        self._t0 = time.monotonic()

    def now_ms(self) -> int:
        return int((time.monotonic() - self._t0) * 1000)

    def advance_to(self, deadline_ms: int) -> None:
        # Wall time cannot jump; callers wait instead.
        pass

    @property
    def virtual(self) -> bool:
        return False
