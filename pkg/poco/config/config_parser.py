"""Parser for YAML-based configuration."""

from importlib import import_module
import logging
from logging.config import dictConfig
from pathlib import Path
from typing import (Dict, Optional)

from addict import Dict as Addict
from pydantic import BaseModel
import yaml

from poco.models.config import (Config, LogConfig)

logger = logging.getLogger(__name__)

DEFAULT_CONFIG = Path(__file__).parent / "default_config.yaml"


class ConfigParser():
    """Read, validate and apply a POCO configuration.

    The file is merged into the packaged defaults in
    ``default_config.yaml`` with :py:meth:`merge_yaml`, so it only needs to
    name the settings it changes. Logging is configured from the ``log``
    section right away unless `format_logs` is ``False``.

    Args:
        config_file: YAML file.
        custom_config_model: Dotted path of a `pydantic` model, e.g.
            ``mysuite.models.SuiteConfig``, that validates the ``custom``
            section; the instance replaces the raw section on `config`.
        format_logs: Whether to call `dictConfig`.
        quiet: Whether handlers only pass warnings and errors.

    Attributes:
        config_file: YAML file.
        custom_config_model: Dotted path of the custom model.
        format_logs: Whether logging was configured.
        quiet: Whether handlers only pass warnings and errors.
        config: Validated configuration.

    Raises:
        OSError: The file cannot be read.
        ValueError: The file is not YAML, or the custom model cannot be
            used.
        pydantic.ValidationError: A section does not match its model.
    """

    def __init__(
        self,
        config_file: Optional[Path] = None,
        custom_config_model: Optional[str] = None,
        format_logs: bool = True,
        quiet: bool = False,
    ) -> None:
        """Constructor method."""
        self.config_file = config_file
        self.custom_config_model = custom_config_model
        self.format_logs = format_logs
        self.quiet = quiet
        files = [DEFAULT_CONFIG]
        if config_file is not None:
            files.append(config_file)
        self.config = Config(**self.merge_yaml(*files))
        if custom_config_model is not None:
            setattr(
                self.config,
                'custom',
                self.parse_custom_config(
                    model=custom_config_model,
                )
            )
        if quiet and self.config.log.handlers is not None:
            for handler in self.config.log.handlers.values():
                handler.level = max(handler.level, logging.WARNING)
        if format_logs:
            self._configure_logging()
        logger.debug(f"Parsed config: {self.config.model_dump(by_alias=True)}")

    def _configure_logging(self) -> None:
        """Apply the ``log`` section, or the default one if it is rejected."""
        try:
            dictConfig(self.config.log.model_dump(by_alias=True))
        except Exception as e:
            dictConfig(LogConfig().model_dump(by_alias=True))
            logger.warning(
                f"Failed to configure logging. Falling back to default "
                f"settings. Original error: {type(e).__name__}: {e}"
            )

    @staticmethod
    def parse_yaml(conf: Path) -> Dict:
        """Load a YAML file.

        Args:
            conf: YAML file.

        Returns:
            File contents; ``None`` for an empty file.

        Raises:
            OSError: The file cannot be read.
            ValueError: The file is not YAML.
        """
        try:
            with open(conf) as config_file:
                try:
                    return yaml.safe_load(config_file)
                except yaml.YAMLError as exc:
                    raise ValueError(
                        f"file '{conf}' is not valid YAML"
                    ) from exc
        except OSError as exc:
            raise OSError(
                f"file '{conf}' could not be read"
            ) from exc

    @staticmethod
    def merge_yaml(*args: Path) -> Dict:
        """Load YAML files and merge them in order.

        Later files update nested sections of earlier ones key by key rather
        than replacing them, cf. https://github.com/mewwts/addict.

        Args:
            *args: YAML files.

        Returns:
            Merged contents; an empty dictionary without arguments.
        """
        args_list = list(args)
        if not args_list:
            return {}
        yaml_dict = Addict(ConfigParser.parse_yaml(args_list.pop(0)))

        for arg in args_list:
            yaml_dict.update(Addict(ConfigParser.parse_yaml(arg)))

        return yaml_dict.to_dict()

    def parse_custom_config(self, model: str) -> BaseModel:
        """Validate the ``custom`` section against a model.

        Args:
            model: Dotted path of a `pydantic` model class.

        Returns:
            Model instance; built from defaults if there is no ``custom``
            section.

        Raises:
            ValueError: The model cannot be imported or rejects the section.
        """
        module, _, class_name = model.rpartition(".")
        try:
            model_class = getattr(import_module(module), class_name)
        except ModuleNotFoundError:
            raise ValueError(
                f"failed validating custom configuration: module '{module}' "
                "not available"
            )
        except (AttributeError, ImportError, ValueError):
            raise ValueError(
                f"failed validating custom configuration: module '{module}' "
                f"has no class {class_name} or could not be imported"
            )
        try:
            custom_config = model_class(
                **getattr(self.config, 'custom', {}))
        except Exception as exc:
            raise ValueError(
                "failed validating custom configuration: provided custom "
                f"configuration does not match model class in '{model}'"
            ) from exc
        return custom_config
