"""Exact verification engine for the twisted sl2 Yangian."""

__version__ = "0.1.0"
