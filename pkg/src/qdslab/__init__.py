"""Incidence configurations built from quasi difference sets."""

__version__ = "0.1.0"
