"""Utility functions for logging."""

import logging
from functools import wraps
from time import perf_counter
from typing import (Any, Callable, Optional)

logger = logging.getLogger(__name__)


def _summarize(result: Any) -> str:
    """Short description of a computation result for log messages."""
    describe = getattr(result, "describe", None)
    if callable(describe):
        return str(describe())
    return type(result).__name__


def log_computation(
    _fn: Optional[Callable] = None,
    log_start: bool = True,
    log_result: bool = True,
    log_level: int = logging.DEBUG,
) -> Callable:
    """Decorator for logging the start and result of a computation.

    Args:
        log_start: Whether or not the start of the computation should be
            logged.
        log_result: Whether or not a summary of the result, together with the
            elapsed time, should be logged.
        log_level: Logging level, cf.
            https://docs.python.org/3/library/logging.html#logging-levels

    Returns:
        The decorated function.
    """

    def _decorator_log_computation(fn):
        @wraps(fn)
        def _wrapper(*args, **kwargs):
            name = fn.__qualname__
            if log_start:
                logger.log(
                    level=log_level,
                    msg=f"Computing {name}",
                )
            start = perf_counter()
            result = fn(*args, **kwargs)
            if log_result:
                logger.log(
                    level=log_level,
                    msg=(
                        f"Finished {name} in {perf_counter() - start:.3f}s: "
                        f"{_summarize(result)}"
                    ),
                )
            return result

        return _wrapper

    if _fn is None:
        return _decorator_log_computation
    else:
        return _decorator_log_computation(_fn)
