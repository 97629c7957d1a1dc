"""Tests for `version.py` module."""

from poco.version import __version__  # noqa: F401
