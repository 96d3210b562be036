"""Config module initialization."""
from .settings import Settings, get_settings, settings
from .log_setup import configure_logging

__all__ = ["Settings", "get_settings", "settings", "configure_logging"]
