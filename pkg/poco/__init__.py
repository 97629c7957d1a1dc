"""POCO root package."""

from poco.poco import Poco  # noqa: F401
