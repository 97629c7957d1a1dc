"""Define exceptions raised by POCO and map them to process exit codes."""

import json
import logging
from traceback import format_exception
from typing import (Dict, Optional, Type, TYPE_CHECKING)

from pydantic import ValidationError

if TYPE_CHECKING:  # pragma: no cover
    from poco.models.config import ExceptionConfig

# Get logger instance
logger = logging.getLogger(__name__)


class PocoError(Exception):
    """Base class for all errors raised deliberately by POCO."""


class InputError(PocoError, ValueError):
    """Input data is malformed."""


class PosetCycleError(InputError):
    """The cover relation contains a directed cycle."""


class RedundantCoverError(InputError):
    """A listed cover pair is implied by other cover pairs."""


class UnknownElementError(InputError):
    """An identifier does not name an element of the poset."""


class PresheafShapeError(InputError):
    """Group dimensions and restriction matrices do not fit together."""


class FunctorialityError(InputError):
    """Composites of restriction maps depend on the chosen chain."""


class MalformedLinkError(InputError):
    """A planar diagram code is malformed."""


class PreconditionError(PocoError, ValueError):
    """A well-formed input violates the precondition of an operation."""


class UngradedPosetError(PreconditionError):
    """The operation needs a graded poset."""


class NotCellPosetError(PreconditionError):
    """The operation needs a cell-like poset."""


class NonMonotoneMapError(PreconditionError):
    """A map of posets does not preserve the order."""


class BaseMismatchError(PreconditionError):
    """A presheaf or morphism lives on a different poset."""


class DegreeBoundError(PreconditionError):
    """A degree bound is too small for the requested computation."""


class BrokenComplexError(PocoError, ArithmeticError):
    """A computed differential does not square to zero.

    Raised whenever a composite ``g . f`` fails to vanish modulo relations.
    This signals a defect rather than bad input.
    """


# Default exceptions; "status" is used as the process exit code
exceptions: Dict[Type[BaseException], Dict] = {
    Exception: {
        "title": "Internal Error",
        "status": 1,
    },
    OSError: {
        "title": "Input Unreadable",
        "status": 1,
    },
    ValueError: {
        "title": "Malformed Input",
        "status": 1,
    },
    json.JSONDecodeError: {
        "title": "Malformed JSON",
        "status": 1,
    },
    ValidationError: {
        "title": "Malformed Input",
        "status": 1,
    },
    InputError: {
        "title": "Malformed Input",
        "status": 1,
    },
    PreconditionError: {
        "title": "Precondition Violated",
        "status": 2,
    },
    BrokenComplexError: {
        "title": "Broken Complex",
        "status": 1,
    },
}


def _exc_to_str(
    exc: BaseException,
    delimiter: str = "\\n",
) -> str:
    """Convert exception, including traceback, to string representation.

    Args:
        exc: The exception to convert to a string.
        delimiter: The delimiter used to join different lines of the exception
            stack.

    Returns:
        String representation of exception.
    """
    exc_lines = format_exception(
        exc.__class__,
        exc,
        exc.__traceback__
    )
    exc_stripped = [e.rstrip('\n') for e in exc_lines]
    exc_split = []
    for item in exc_stripped:
        exc_split.extend(item.splitlines())
    return delimiter.join(exc_split)


def _log_exception(
    exc: BaseException,
    format: str = 'minimal',
) -> None:
    """Log exception with indicated format.

    Requires a `logging` logger to be set up and configured.

    Args:
        exc: The exception to log.
        format: One of ``oneline`` (exception, including traceback logged to
            single line), ``minimal`` (log only exception title and message),
            or ``regular`` (exception logged with entire trace stack, typically
            across multiple lines).
    """
    if format == "oneline":
        exc_str = _exc_to_str(exc=exc)
    elif format == "minimal":
        exc_str = f"{type(exc).__name__}: {str(exc)}"
    elif format == "regular":
        exc_str = _exc_to_str(exc=exc, delimiter='\n')
    else:
        logger.error("Error logging is misconfigured.")
        return
    logger.error(exc_str)


def lookup_exception(
    exception: BaseException,
    conf: "ExceptionConfig",
) -> Dict:
    """Find the mapping entry for an exception.

    The exception's method resolution order is walked, so that the most
    specific registered class wins.

    Args:
        exception: Raised exception.
        conf: Exception configuration.

    Returns:
        Member dictionary registered for the exception class.
    """
    for cls in type(exception).__mro__:
        if cls in conf.mapping:
            return conf.mapping[cls]
    return conf.mapping.get(Exception, {"title": "Internal Error"})


def handle_exception(
    exception: BaseException,
    conf: Optional["ExceptionConfig"] = None,
) -> int:
    """Log an exception and translate it into a process exit code.

    Args:
        exception: Raised exception.
        conf: Exception configuration; defaults are used if not supplied.

    Returns:
        Exit code registered for the exception, or ``1`` if the registered
        status member cannot be read.
    """
    # the config model imports this module when validated
    from poco.models.config import (ExceptionConfig, _get_by_path)

    if conf is None:
        conf = ExceptionConfig()
    entry = lookup_exception(exception=exception, conf=conf)
    try:
        status = int(_get_by_path(
            obj=entry,
            key_sequence=conf.status_member,
        ))
    except (KeyError, TypeError, ValueError):
        status = 1
    if conf.logging.value != "none":
        logger.error(entry)
        _log_exception(
            exc=exception,
            format=conf.logging.value,
        )
    return status
