"""
hermlab.core.logging

Logger factory and rich-backed handler setup.
"""

import logging

from rich.console import Console
from rich.logging import RichHandler

ROOT_LOGGER = "hermlab"


def get_logger(name: str) -> logging.Logger:
    """
    Return a logger under the hermlab namespace.
    :param name: Dotted module name (usually ``__name__``).
    """
    if name == ROOT_LOGGER or name.startswith(ROOT_LOGGER + "."):
        return logging.getLogger(name)
    return logging.getLogger(f"{ROOT_LOGGER}.{name}")


def configure_logging(debug: bool = False) -> logging.Logger:
    """
    Install a single RichHandler on stderr for the hermlab logger.
    :param debug: Log at DEBUG level when True, WARNING otherwise.
    :return: The configured root hermlab logger.
    """
    logger = logging.getLogger(ROOT_LOGGER)
    for handler in list(logger.handlers):
        if isinstance(handler, RichHandler):
            logger.removeHandler(handler)
    handler = RichHandler(
        console=Console(stderr=True),
        show_path=False,
        markup=False,
        rich_tracebacks=debug,
    )
    handler.setFormatter(logging.Formatter("%(message)s"))
    logger.addHandler(handler)
    logger.setLevel(logging.DEBUG if debug else logging.WARNING)
    logger.propagate = False
    return logger
