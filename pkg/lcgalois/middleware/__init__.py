"""Middleware wrapped around command dispatch."""
