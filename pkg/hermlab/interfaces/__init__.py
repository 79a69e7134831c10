"""
hermlab.interfaces

Front ends for the hermlab harness.
"""

from .cli import CLI, main

__all__ = ["CLI", "main"]
