"""The lcgalois.tests.helpers package."""
