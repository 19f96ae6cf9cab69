"""The lcgalois configuration package."""
