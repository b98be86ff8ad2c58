"""Permutation-group engine for 2-closures and orbital digraphs of rank-4 groups."""

__version__ = "0.1.0"
