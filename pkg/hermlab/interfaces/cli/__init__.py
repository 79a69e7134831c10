"""
hermlab.interfaces.cli

Command-line interface package for hermlab.
"""

from .core import CLI, main

__all__ = ["CLI", "main"]
