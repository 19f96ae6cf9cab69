"""The lcgalois.cli.tests package."""
