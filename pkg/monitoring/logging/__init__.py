"""
Structured logging module
"""

from .structured_logger import LogLevel, bind_frame, clear_frame, configure_logging

__all__ = ["LogLevel", "configure_logging", "bind_frame", "clear_frame"]
