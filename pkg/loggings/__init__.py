#!/usr/bin/env python3
"""
Logging utilities for the Schrödingerisation toolkit.
Provides centralized logging with date-based log file partitioning.
"""

from .logger import log_message, log_debug, log_info, log_warning, log_error, default_log_file

__all__ = ['log_message', 'log_debug', 'log_info', 'log_warning', 'log_error', 'default_log_file']
