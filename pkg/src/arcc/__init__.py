"""Toolchain for an extensible component and connector architecture language."""

__version__ = "0.1.0"
