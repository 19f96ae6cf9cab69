"""Finite graphs and their covers: the locally constant objects of a graph."""
