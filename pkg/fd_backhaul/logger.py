"""Logger module for setting up a logger."""
import logging

from fd_backhaul.settings import LOG_LEVEL

LOG_FORMAT = (
    "%(asctime)s [%(levelname)s]: %(filename)s(%(funcName)s:%(lineno)s) >> %(message)s"
)


def setup_custom_logger(name: str, propagate: bool = False) -> logging.Logger:
    """Sets up a custom logger.

    The level is taken from the ``LOG_LEVEL`` setting, so a ``.env`` file can
    switch every module to DEBUG at once.

    Parameters
    ----------
    name : str
        Name of the module where this function is called.
    propagate : bool, optional
        Whether to propagate logger messages or not, by default False

    Returns
    -------
    logging.Logger
        The logger.

    Examples
    ---------
    Per-grid-point details of a sweep:
    >>> logger.debug("")

    Run milestones such as files written or validation verdicts:
    >>> logger.info("")

    Statistically weak Monte Carlo estimates:
    >>> logger.warning("")
    """
    level = logging.getLevelName(LOG_LEVEL.upper())
    if not isinstance(level, int):
        level = logging.INFO

    logging.basicConfig(format=LOG_FORMAT, level=level)
    logger = logging.getLogger(name)
    logger.setLevel(level)

    if logger.hasHandlers():
        logger.handlers.clear()

    logger.propagate = propagate

    # Console output
    console_handler = logging.StreamHandler()
    console_handler.setFormatter(logging.Formatter(LOG_FORMAT))
    logger.addHandler(console_handler)

    return logger
