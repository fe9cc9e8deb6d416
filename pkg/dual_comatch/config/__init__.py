"""
config module

Centralized configuration management for the dual co-matching toolkit.

Features:
- Loads and validates environment variables.
- Provides run defaults for model dimensions, seeds and worker counts.

Submodules:
- config: Defines the `Config` class for managing configurations.

Author: FOX Techniques <ali.nabbi@fox-techniques.com>
"""

from .config import Config, _get_env_variable

# Expose the Config class for external use.
__all__ = ["Config"]
