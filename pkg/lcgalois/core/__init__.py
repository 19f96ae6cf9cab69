"""Finite groups, groupoids and strict chains of groupoids."""
