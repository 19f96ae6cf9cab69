"""Truncated simplicial sets, Cech nerves of covers and edge-path groups."""
