"""Finitely presented groups and their actions on small finite sets."""
