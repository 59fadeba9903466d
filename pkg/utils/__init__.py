#!/usr/bin/env python3
"""
Shared utilities: error types and exit codes, CSV tables and plot scripts.
"""
