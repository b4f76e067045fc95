"""Syllable reconstruction for six abugida scripts."""

__version__ = "0.1.0"
