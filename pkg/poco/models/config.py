"""POCO config models."""

from copy import deepcopy
from enum import Enum
from functools import reduce
import importlib
import operator
from typing import (
    Any,
    Dict,
    List,
    Optional,
    Type,
    Union,
)

from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    field_validator,
    model_validator,
)
from typing_extensions import Self


def _validate_log_level_choices(cls, level: int) -> int:
    """Ensure that a valid logging level is set.

    Args:
        level: Log level choice to be validated.

    Returns:
        Unmodified `level` value if validation succeeds.

    Raises:
        ValueError: Raised if validation fails.
    """
    CHOICES = [0, 10, 20, 30, 40, 50]
    if level not in CHOICES:
        raise ValueError(f"illegal log level specified: {level}")

    return level


def _get_by_path(
    obj: Dict,
    key_sequence: List[str]
) -> Any:
    """Access a nested dictionary by sequence of keys.

    Args:
        obj: (Nested) dictionary.
        key_sequence: Sequence of keys, to be applied from outside to inside,
            pointing to the key (and descendants) to retrieve.

    Returns:
        Value of innermost key.
    """
    return reduce(operator.getitem, key_sequence, obj)  # type: ignore


class ExceptionLoggingEnum(Enum):
    """Enumerator for exception logging config values.

    Attributes:
        minimal: Exception title and message are logged on a single line.
        none: Exception details are not logged.
        oneline: Exception, including traceback, is logged on a single line.
        regular: The exception is logged with the entire traceback stack,
            typically on multiple lines.
    """
    minimal = "minimal"
    none = "none"
    regular = "regular"
    oneline = "oneline"


class PocoBaseConfig(BaseModel):
    """Base configuration for POCO models."""
    model_config = ConfigDict(extra='forbid', arbitrary_types_allowed=True)


class ComputeConfig(PocoBaseConfig):
    """Model for computation settings.

    Args:
        validate_presheaves: Whether presheaves read from files are checked
            for path independence of their restriction maps.
        check_complexes: Whether every computed differential is verified to
            square to zero.
        singular_degree_margin: Number of degrees beyond the longest chain
            up to which the complex with degenerate simplices is built.
        max_poset_size: Largest number of elements accepted in a poset file.

    Attributes:
        validate_presheaves: Whether presheaves read from files are checked
            for path independence of their restriction maps.
        check_complexes: Whether every computed differential is verified to
            square to zero.
        singular_degree_margin: Number of degrees beyond the longest chain
            up to which the complex with degenerate simplices is built.
        max_poset_size: Largest number of elements accepted in a poset file.

    Raises:
        pydantic.ValidationError: The class was instantianted with an illegal
            data type.

    Example:
        >>> ComputeConfig(check_complexes=False)
        ComputeConfig(validate_presheaves=True, check_complexes=False, singula\
r_degree_margin=1, max_poset_size=5000)
    """
    validate_presheaves: bool = True
    check_complexes: bool = True
    singular_degree_margin: int = Field(1, ge=1)
    max_poset_size: int = Field(5000, ge=1)


class ExceptionConfig(PocoBaseConfig):
    """Mapping of exception classes to problem records and exit codes.

    The record of the most specific class along an exception's MRO is
    logged, and its status member becomes the exit code of the command line
    interface.

    Args:
        required_members: Key paths every record must contain; one of them
            must be `status_member`.
        extension_members: Further key paths a record may contain, or
            ``True`` to allow any.
        status_member: Key path of the exit code.
        exceptions: Dotted path of the mapping dictionary, i.e. the module
            path followed by the attribute name, e.g.
            ``poco.errors.exceptions.exceptions``.
        logging: How a handled exception is logged: ``minimal`` (class and
            message), ``oneline`` (traceback joined to a single line),
            ``regular`` (traceback) or ``none``.

    Attributes:
        mapping: The imported dictionary, set by the validator.

    Raises:
        pydantic.ValidationError: The mapping cannot be imported, is not a
            dictionary of exception classes to records, or a record lacks a
            required member, has an unexpected one or a non-integer status.
    """
    required_members: List[List[str]] = [["title"], ["status"]]
    extension_members: Union[bool, List[List[str]]] = False
    status_member: List[str] = ["status"]
    exceptions: str = "poco.errors.exceptions.exceptions"
    logging: ExceptionLoggingEnum = ExceptionLoggingEnum.minimal
    mapping: Optional[Dict[Type[BaseException], Dict[str, Any]]] = None

    @model_validator(mode="after")
    def validate_exceptions_mapping(self) -> Self:
        """Import the mapping named by `exceptions` and check its records.

        Returns:
            Model instance with `mapping` set.
        """
        if self.status_member not in self.required_members:
            raise ValueError("status member is not among required members")
        exc_dict = _import_mapping(self.exceptions)

        allowed_members = deepcopy(self.required_members)
        if isinstance(self.extension_members, list):
            allowed_members += self.extension_members
        any_members = self.extension_members is True

        for key, val in exc_dict.items():
            if not (isinstance(key, type) and issubclass(key, BaseException)):
                raise ValueError(f"mapping key '{key}' is not an exception")
            if not isinstance(val, dict):
                raise ValueError(f"record of '{key.__name__}' is not a dict")
            for keys in self.required_members:
                try:
                    _get_by_path(obj=val, key_sequence=keys)
                except (KeyError, TypeError) as exc:
                    raise ValueError(
                        f"record of '{key.__name__}' lacks required member "
                        f"{keys}"
                    ) from exc
            if not any_members:
                members = deepcopy(val)
                for keys in allowed_members:
                    try:
                        reduce(lambda v, k: v.pop(k), keys, members)
                    except KeyError:
                        pass
                if members:
                    raise ValueError(
                        f"record of '{key.__name__}' has members beyond the "
                        f"allowed ones: {sorted(members)}"
                    )
            try:
                int(_get_by_path(obj=val, key_sequence=self.status_member))
            except (KeyError, ValueError) as exc:
                raise ValueError(
                    f"status of '{key.__name__}' is not an integer"
                ) from exc

        self.mapping = exc_dict
        return self


def _import_mapping(path: str) -> Dict:
    """Import a dictionary given as ``module.path.attribute``."""
    module_path, _, name = path.rpartition(".")
    try:
        mod = importlib.import_module(module_path)
    except ModuleNotFoundError as exc:
        raise ValueError(
            f"module '{module_path}' of the exceptions mapping not found"
        ) from exc
    exc_dict = getattr(mod, name, None)
    if not isinstance(exc_dict, dict):
        raise ValueError(f"'{path}' does not name a dictionary")
    return exc_dict


class LogFormatterConfig(PocoBaseConfig):
    """Log formatter, passed on to `dictConfig` under ``formatters``.

    Args:
        class: Dotted path of the formatter class.
        style: Placeholder style of `format`; POCO's own messages are
            written with ``{``.
        format: Record layout.

    Raises:
        pydantic.ValidationError: Unknown field or wrong type.
    """
    class_formatter: str = Field(
        "logging.Formatter",
        alias="class",
    )
    style: str = "{"
    format: str = "[{asctime}: {levelname:<8}] {message} [{name}]"


class LogHandlerConfig(PocoBaseConfig):
    """Log handler, passed on to `dictConfig` under ``handlers``.

    Reports go to stdout, so the default handler writes to stderr. The
    ``--quiet`` flag raises `level` to ``30``.

    Args:
        class: Dotted path of the handler class.
        level: Lowest level the handler emits.
        formatter: Key of an entry in `LogConfig.formatters`.
        stream: Stream in `dictConfig` notation.

    Raises:
        pydantic.ValidationError: Unknown field, wrong type or a level other
            than 0, 10, 20, 30, 40 and 50.

    Example:
        >>> LogHandlerConfig(level=30)
        LogHandlerConfig(class_handler='logging.StreamHandler', level=30, form\
atter='standard', stream='ext://sys.stderr')
    """
    class_handler: str = Field(
        "logging.StreamHandler",
        alias="class",
    )
    level: int = 20
    formatter: str = "standard"
    stream: str = "ext://sys.stderr"

    _validate_level = field_validator('level')(_validate_log_level_choices)


class LogRootConfig(PocoBaseConfig):
    """Root logger; per-degree statistics are logged at ``10``.

    Args:
        level: Lowest level passed to the handlers.
        handlers: Keys of entries in `LogConfig.handlers`.

    Raises:
        pydantic.ValidationError: Unknown field, wrong type or invalid level.
    """
    level: int = 10
    handlers: Optional[List[str]] = ["console"]

    _validate_level = field_validator('level')(_validate_log_level_choices)


class LogConfig(PocoBaseConfig):
    """Logging setup in the schema of `logging.config.dictConfig`.

    Args:
        version: Schema version; ``1`` is the only one `dictConfig` knows.
        disable_existing_loggers: Whether loggers created before the
            configuration is applied are silenced.
        formatters: Formatters by name.
        handlers: Handlers by name.
        root: Root logger.

    Raises:
        pydantic.ValidationError: Unknown field or wrong type.
    """
    version: int = 1
    disable_existing_loggers: bool = False
    formatters: Optional[Dict[str, LogFormatterConfig]] = {
        "standard": LogFormatterConfig(),  # type: ignore
    }
    handlers: Optional[Dict[str, LogHandlerConfig]] = {
        "console": LogHandlerConfig(),  # type: ignore
    }
    root: Optional[LogRootConfig] = LogRootConfig()


class Config(PocoBaseConfig):
    """Complete POCO configuration, as read from a YAML file.

    Sections other than the ones below are kept as they are, so that a
    custom model can validate them later, cf.
    :py:meth:`poco.config.config_parser.ConfigParser.parse_custom_config`.

    Args:
        compute: Computation settings.
        exceptions: Exception to exit code mapping.
        log: Logging setup.

    Raises:
        pydantic.ValidationError: A section does not match its model.
    """
    compute: ComputeConfig = ComputeConfig()
    exceptions: ExceptionConfig = ExceptionConfig()
    log: LogConfig = LogConfig()
    model_config = ConfigDict(extra='allow')
