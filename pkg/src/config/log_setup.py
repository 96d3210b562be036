"""
LRJ Calculus Workbench
Logging Setup

Routes the standard ``logging`` tree through a rich handler.
"""

import logging
from typing import Optional

from rich.console import Console
from rich.logging import RichHandler

from .settings import settings

_CONFIGURED = False


def configure_logging(level: Optional[str] = None) -> None:
    """
    Install a RichHandler on the root logger (idempotent).

    Args:
        level: Log level name; defaults to ``settings.log_level``
    """
    global _CONFIGURED
    level_name = (level or settings.log_level).upper()
    root = logging.getLogger()
    root.setLevel(level_name)
    if _CONFIGURED:
        return
    handler = RichHandler(console=Console(stderr=True), show_path=False, rich_tracebacks=True, markup=False)
    handler.setFormatter(logging.Formatter("%(name)s: %(message)s"))
    root.addHandler(handler)
    _CONFIGURED = True
