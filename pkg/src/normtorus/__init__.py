"""Tate-Shafarevich groups of norm-one tori, computed from finite group data."""

__version__ = "0.1.0"
