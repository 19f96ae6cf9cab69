"""Finite group actions on graphs, equivariant covers and orbifold fundamental groups."""
