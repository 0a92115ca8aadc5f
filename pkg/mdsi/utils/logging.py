"""
Logger factory and console handler setup
"""
import logging

from rich.console import Console
from rich.logging import RichHandler

ROOT_LOGGER = "mdsi"


def get_logger(name: str) -> logging.Logger:
    """Logger in the package namespace, e.g. ``mdsi.pooling``"""
    return logging.getLogger(f"{ROOT_LOGGER}.{name}")


def configure_logging(verbose: bool = False) -> logging.Logger:
    """
    Attach a rich stderr handler to the package logger

    Args:
        verbose: DEBUG level when set, WARNING otherwise

    Returns:
        The package root logger
    """
    logger = logging.getLogger(ROOT_LOGGER)
    logger.setLevel(logging.DEBUG if verbose else logging.WARNING)
    for handler in list(logger.handlers):
        if isinstance(handler, RichHandler):
            logger.removeHandler(handler)
    handler = RichHandler(console=Console(stderr=True), show_path=False, markup=False)
    handler.setFormatter(logging.Formatter("%(message)s"))
    logger.addHandler(handler)
    logger.propagate = False
    return logger
