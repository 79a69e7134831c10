"""
hermlab.core.base
Abstract base classes shared by the harness and its interfaces.
"""

from abc import ABC, abstractmethod
from typing import Any, Dict


class OutputDestination(ABC):
    """
    Base class for places a check result or report can be sent to.
    """

    @abstractmethod
    def send(self, value: Any, harness: Any) -> None:
        """
        Deliver a value produced while ``harness`` was running.

        :param value: Result object (an identity result or a full report).
        :param harness: The harness instance (may be None).
        """


class HarnessInterface(ABC):
    """
    Abstract interface for harness front ends (CLI and future ones).

    :param harness: An instance of a harness to be used by the interface.
    """

    def __init__(self, harness):
        self.harness = harness

    @abstractmethod
    def customize(self, config: Dict[str, Any]):
        """
        Customize the interface with the given configuration.

        :param config: Dictionary of configuration options.
        """
        if hasattr(self, "config") and isinstance(self.config, dict):
            self.config.update(config)

    @abstractmethod
    def run(self, argv=None) -> int:
        """
        Run the interface and return a process exit code.
        """
