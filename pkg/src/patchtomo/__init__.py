"""Tomographic reconstruction with learned nonnegative patch dictionaries."""

__version__ = "0.1.0"
