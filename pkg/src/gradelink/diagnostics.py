"""Run-scoped diagnostics: each code is reported at most once per process."""

from __future__ import annotations

import logging
import threading

log = logging.getLogger("gradelink")

_lock = threading.Lock()
_seen = {}


def emit(code: str, message: str) -> bool:
    """Record ``code`` the first time it is seen.  Returns ``True`` if recorded now."""
    with _lock:
        if code in _seen:
            return False
        _seen[code] = message
    log.warning("%s: %s", code, message)
    return True


def emitted():
    with _lock:
        return dict(_seen)


def reset():
    with _lock:
        _seen.clear()
