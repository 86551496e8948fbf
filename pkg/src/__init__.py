"""Heuristic rating estimation engine for pairwise comparisons with a reference set."""
__version__ = "0.4.0"
