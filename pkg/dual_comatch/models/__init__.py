"""
models package

Defines the model that ties an encoder to the matching stack.

Modules:
    - dmn_model: DualCoMatchModel.

Author: FOX Techniques <ali.nabbi@fox-techniques.com>
"""

from .dmn_model import DualCoMatchModel

__all__ = ["DualCoMatchModel"]
