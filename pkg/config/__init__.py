"""
Configuration Module
Handles settings and configuration management
"""

from .settings import Settings, DEFAULT_CONFIG_PATH

__all__ = ['Settings', 'DEFAULT_CONFIG_PATH']
