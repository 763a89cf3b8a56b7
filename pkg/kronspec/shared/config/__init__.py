"""Shared configuration utilities for kronspec modules."""

from kronspec.shared.config.base_settings import (
    LogLevel,
    Settings,
    configure_logging,
    get_settings,
    reload_settings,
)

__all__ = ["LogLevel", "Settings", "configure_logging", "get_settings", "reload_settings"]
