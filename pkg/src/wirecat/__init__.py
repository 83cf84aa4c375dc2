"""Exact computational engine for wiring diagrams and wheeled props."""

__version__ = "0.1.0"
