"""The lcgalois.tests package."""
