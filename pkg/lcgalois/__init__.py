"""The lcgalois package."""

TAG_VERSION = "0.1.0"

__version__ = TAG_VERSION
