"""
errors module

Comprehensive error handling for the dual co-matching toolkit.

Submodules:
- handlers: Maps exceptions to exit codes and one-line error reports.
- exceptions: Defines custom exceptions for more granular error handling.

Author: FOX Techniques <ali.nabbi@fox-techniques.com>
"""

from .exceptions import (
    DMNError,
    DataFormatError,
    EmbeddingLookupError,
    EmptySequenceError,
    GradientCheckError,
    IntegrityError,
    NonFiniteError,
    ShapeError,
    TrainingDivergedError,
    UsageError,
    VersionMismatchError,
    VocabularyError,
)
from .handlers import format_error_line, handle_error, register_error_handlers

__all__ = [
    "register_error_handlers",
    "handle_error",
    "format_error_line",
    "DMNError",
    "DataFormatError",
    "EmbeddingLookupError",
    "EmptySequenceError",
    "GradientCheckError",
    "IntegrityError",
    "NonFiniteError",
    "ShapeError",
    "TrainingDivergedError",
    "UsageError",
    "VersionMismatchError",
    "VocabularyError",
]
