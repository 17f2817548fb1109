"""
Library-wide logger.

triwave never configures logging on import. Until ``set_logger`` is called
every message goes to the stdlib logger named ``triwave``, which carries a
``NullHandler`` so nothing is printed unless the application (or the
``triwave`` command) installs a handler.
"""

import logging
from typing import Any, Callable

LOGGER_NAME = "triwave"


class LoggerProxy:
    """Forwards attribute access to the backend chosen with ``set_logger``."""

    def __init__(self) -> None:
        self._logger: Any = None

    def set_logger(self, backend: Any) -> Any:
        previous, self._logger = self._logger, backend
        return previous

    @property
    def backend(self) -> Any:
        if self._logger is None:
            stdlib = logging.getLogger(LOGGER_NAME)
            if not stdlib.handlers:
                stdlib.addHandler(logging.NullHandler())
            self._logger = stdlib
        return self._logger

    def emit(self, level: str, message: str) -> None:
        """Log ``message`` at ``level``; unknown levels log as warnings."""
        method = getattr(self.backend, level, None)
        if method is None:
            method = self.backend.warning
        method(message)

    def __getattr__(self, name: str) -> Callable:
        return getattr(self.backend, name)


logger = LoggerProxy()


def set_logger(custom_logger: Any) -> Any:
    """
    Set the logger for the entire library.

    Args:
        custom_logger: Any object with ``debug``/``info``/``warning``/
            ``error`` methods, e.g. a stdlib logger or loguru's ``logger``.
            ``None`` restores the stdlib fallback.

    Returns:
        The logger that was active before, or None for the fallback.
    """
    return logger.set_logger(custom_logger)
