"""
handlers.py

Maps toolkit exceptions to CLI exit codes and machine-parseable error lines.

Features:
- Central registry of exception classes and their exit codes.
- Logs detailed error information for debugging.
- Emits exactly one `error code=... type=... detail="..."` line on stderr.
- Falls back to a generic handler for unexpected exceptions.

Usage:
- Call `register_error_handlers()` once, then `handle_error(exc)` around each command.

Author: FOX Techniques <ali.nabbi@fox-techniques.com>
"""

import sys
import traceback
from typing import Dict, TextIO, Type

from hestia_logger import get_logger
from pydantic import ValidationError

from dual_comatch.errors.exceptions import (
    DataFormatError,
    DMNError,
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

logger = get_logger("dmn_logger")

EXIT_UNEXPECTED = 1
EXIT_DATA = 2
EXIT_NUMERIC = 3
EXIT_STORAGE = 4

_EXIT_CODES: Dict[Type[BaseException], int] = {}


def register_error_handlers() -> Dict[Type[BaseException], int]:
    """
    Register exit codes for the toolkit's exception classes.

    Returns:
        Dict[Type[BaseException], int]: The registry, most specific classes first.
    """
    _EXIT_CODES.clear()
    _EXIT_CODES.update(
        {
            DataFormatError: EXIT_DATA,
            UsageError: EXIT_DATA,
            EmbeddingLookupError: EXIT_DATA,
            EmptySequenceError: EXIT_DATA,
            VocabularyError: EXIT_DATA,
            FileNotFoundError: EXIT_DATA,
            ValidationError: EXIT_DATA,
            ShapeError: EXIT_NUMERIC,
            NonFiniteError: EXIT_NUMERIC,
            TrainingDivergedError: EXIT_NUMERIC,
            GradientCheckError: EXIT_NUMERIC,
            IntegrityError: EXIT_STORAGE,
            VersionMismatchError: EXIT_STORAGE,
        }
    )
    return _EXIT_CODES


def _exit_code_for(exc: BaseException) -> int:
    for exc_type, exit_code in _EXIT_CODES.items():
        if isinstance(exc, exc_type):
            return exit_code
    return EXIT_UNEXPECTED


def format_error_line(exc: BaseException) -> str:
    """
    Render an exception as a single machine-parseable line.

    Args:
        exc (BaseException): The exception to render.

    Returns:
        str: `error code=<code> type=<ExceptionName> detail="<message>"`.
    """
    if isinstance(exc, DMNError):
        code = exc.code
    elif isinstance(exc, ValidationError):
        code = "invalid_input"
    elif isinstance(exc, FileNotFoundError):
        code = "not_found"
    else:
        code = "unexpected"
    detail = exc.detail if isinstance(exc, DMNError) else str(exc)
    detail = " ".join(detail.split()).replace('"', "'")
    return f'error code={code} type={type(exc).__name__} detail="{detail}"'


def handle_error(exc: BaseException, stream: TextIO | None = None) -> int:
    """
    Log an exception, print its error line and return the process exit code.

    Args:
        exc (BaseException): The exception raised by a command.
        stream (TextIO | None): Output stream, stderr by default.

    Returns:
        int: Nonzero exit code for the exception class.
    """
    if not _EXIT_CODES:
        register_error_handlers()

    exit_code = _exit_code_for(exc)
    if exit_code == EXIT_UNEXPECTED:
        logger.error(f"Unexpected error: {exc}")
        logger.debug(traceback.format_exc())
    else:
        logger.warning(f"{type(exc).__name__}: {exc}")

    print(format_error_line(exc), file=stream or sys.stderr)
    return exit_code
