"""Polygraphs, cell words, and homology of free higher categories."""

__version__ = "0.1.0"
