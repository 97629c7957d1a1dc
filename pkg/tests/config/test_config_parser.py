"""
Tests for config_parser.py
"""

import logging
from pathlib import Path
from unittest import mock

from pydantic import (
    BaseModel,
    ValidationError,
)
import pytest

from poco.config.config_parser import (
    DEFAULT_CONFIG,
    ConfigParser,
)
from poco.models.config import Config

DIR = Path(__file__).parent.parent / "test_files"
PATH_COMPUTE = DIR / "conf_compute.yaml"
PATH_COMPUTE_ADDITION = DIR / "conf_compute_addition.yaml"
TEST_CONFIG_INSTANCE = Config()
TEST_CONFIG_MODEL = 'tests.test_files.model_valid.CustomConfig'
TEST_CONFIG_MODEL_NOT_EXISTS = 'tests.test_files.model_valid.NotExists'
TEST_CONFIG_MODEL_MODULE_NOT_EXISTS = 'tests.test_files.not_a_module.NotExists'
TEST_DICT = {}
TEST_FILE = DIR / "conf_valid.yaml"
TEST_FILE_EMPTY = DIR / "empty_conf.yaml"
TEST_FILE_CUSTOM_INVALID = DIR / "conf_valid_custom_invalid.yaml"
TEST_FILE_INVALID = DIR / "conf_invalid_log_level.yaml"
TEST_FILE_INVALID_COMPUTE = DIR / "conf_invalid_compute.yaml"
TEST_FILE_INVALID_YAML = DIR / "conf_no_yaml.txt"
TEST_FILE_INVALID_LOG = DIR / "conf_log_invalid.yaml"
TEST_FILE_LOG_FORMATTER = DIR / "conf_log_formatter.yaml"


def test_config_parser_default():
    """Test parser without a config file."""
    conf = ConfigParser(format_logs=False)
    assert conf.config == TEST_CONFIG_INSTANCE


def test_config_parser_valid_config_file():
    """Test valid YAML parsing."""
    conf = ConfigParser(TEST_FILE)
    assert type(conf.config.model_dump()) == type(TEST_DICT)
    assert isinstance(conf.config, type(TEST_CONFIG_INSTANCE))
    assert conf.config.compute.singular_degree_margin == 2
    assert conf.config.exceptions.logging.value == "oneline"


def test_config_parser_empty_config_file():
    conf = ConfigParser(TEST_FILE_EMPTY)
    assert conf.config.compute == TEST_CONFIG_INSTANCE.compute


def test_config_parser_invalid_config_file():
    """Test invalid YAML parsing."""
    with pytest.raises(ValidationError):
        ConfigParser(TEST_FILE_INVALID)


def test_config_parser_invalid_compute():
    with pytest.raises(ValidationError):
        ConfigParser(TEST_FILE_INVALID_COMPUTE)


def test_config_parser_invalid_file_path():
    """Test invalid file path."""
    conf = ConfigParser(TEST_FILE)
    with pytest.raises(OSError):
        assert conf.parse_yaml(Path("")) is not None


def test_config_parser_invalid_log_config():
    """Test invalid log config YAML; falls back to default logging."""
    conf = ConfigParser(TEST_FILE_INVALID_LOG)
    assert type(conf.config.model_dump()) == type(TEST_DICT)
    assert isinstance(conf.config, type(TEST_CONFIG_INSTANCE))


def test_config_parser_merges_defaults():
    """Test that a partial file is merged into the packaged defaults."""
    conf = ConfigParser(PATH_COMPUTE_ADDITION, format_logs=False)
    assert conf.config.compute.singular_degree_margin == 3
    assert conf.config.compute.check_complexes is True
    assert conf.config.compute.max_poset_size == 5000
    assert conf.config.log.root.level == logging.WARNING
    assert conf.config.log.root.handlers == ["console"]


def test_config_parser_merges_nested_sections():
    """Test that added formatters keep the default ones."""
    conf = ConfigParser(TEST_FILE_LOG_FORMATTER, format_logs=False)
    assert set(conf.config.log.formatters) == {"plain", "standard"}
    console = conf.config.log.handlers["console"]
    assert console.formatter == "plain"
    assert console.stream == "ext://sys.stderr"


def test_default_config_matches_models():
    """Test that the packaged defaults agree with the model defaults."""
    defaults = ConfigParser.parse_yaml(DEFAULT_CONFIG)
    assert Config(**defaults) == TEST_CONFIG_INSTANCE


def test_config_parser_quiet():
    """Test that quiet mode raises handler levels to warnings."""
    conf = ConfigParser(TEST_FILE, quiet=True)
    assert conf.config.log.handlers['console'].level == logging.WARNING


def test_config_parser_with_custom_config_model():
    """Test with valid custom config model class."""
    conf = ConfigParser(
        config_file=TEST_FILE,
        custom_config_model=TEST_CONFIG_MODEL,
    )
    assert isinstance(conf.config.custom.label, str)
    assert conf.config.custom.label == "cellular-suite"


def test_process_yaml_valid_config_file():
    """Test process_yaml with valid YAML file."""
    result = ConfigParser.parse_yaml(TEST_FILE)
    assert isinstance(result, dict)


def test_process_yaml_invalid_config_file():
    """Test process_yaml with invalid YAML file."""
    with pytest.raises(ValueError):
        ConfigParser.parse_yaml(TEST_FILE_INVALID_YAML)


def test_process_yaml_missing_file():
    """Test process_yaml when file cannot be opened."""
    with mock.patch("poco.config.config_parser.open") as mock_open:
        mock_open.side_effect = OSError
        with pytest.raises(OSError):
            ConfigParser.parse_yaml(TEST_FILE)


def test_merge_yaml_with_no_args():
    """Test merge_yaml with no arguments."""
    empty_list = []
    res = ConfigParser.merge_yaml(*empty_list)
    assert res == {}


def test_merge_yaml_with_two_args():
    """Test merge_yaml with two arguments; nested items are updated."""
    res = ConfigParser.merge_yaml(PATH_COMPUTE, PATH_COMPUTE_ADDITION)
    assert res['compute'] == {
        'check_complexes': False,
        'max_poset_size': 3,
        'singular_degree_margin': 3,
    }
    assert res['log']['root']['level'] == 30


def test_parse_custom_config_valid_model():
    """Test ``.parse_custom_config()`` with a valid model class."""
    conf = ConfigParser(config_file=TEST_FILE)
    result = conf.parse_custom_config(model=TEST_CONFIG_MODEL)
    assert isinstance(result, BaseModel)
    assert result.label == "cellular-suite"


def test_parse_custom_config_default():
    """Test ``.parse_custom_config()`` without a custom section."""
    conf = ConfigParser(format_logs=False)
    result = conf.parse_custom_config(model=TEST_CONFIG_MODEL)
    assert result.label == "default-suite"


def test_parse_custom_config_model_module_not_exists():
    """Test ``.parse_custom_config()`` when module does not exist."""
    conf = ConfigParser(config_file=TEST_FILE)
    with pytest.raises(ValueError):
        conf.parse_custom_config(model=TEST_CONFIG_MODEL_MODULE_NOT_EXISTS)


def test_parse_custom_config_model_not_exists():
    """Test ``.parse_custom_config()`` when model class does not exist."""
    conf = ConfigParser(config_file=TEST_FILE)
    with pytest.raises(ValueError):
        conf.parse_custom_config(model=TEST_CONFIG_MODEL_NOT_EXISTS)


def test_parse_custom_config_invalid():
    """Test ``.parse_custom_config()`` when custom section does not match
    the model."""
    conf = ConfigParser(config_file=TEST_FILE_CUSTOM_INVALID)
    with pytest.raises(ValueError):
        conf.parse_custom_config(model=TEST_CONFIG_MODEL)
