"""
main.py

Entry point for the dual co-matching command-line interface.

This file assembles the argparse parser from the command modules and runs the
selected command under the central error handler.

Features:
- Sub-commands: train, eval, gradcheck, ablate, synth.
- Exit code 0 on success; failures print one machine-parseable error line.
- Argument errors are reported the same way (exit code 2) instead of a usage block.

Author: FOX Techniques <ali.nabbi@fox-techniques.com>
"""

import argparse
from typing import List, NoReturn, Optional

from hestia_logger import get_logger

from dual_comatch import __version__
from dual_comatch.commands import (
    register_ablate_command,
    register_eval_command,
    register_gradcheck_command,
    register_synth_command,
    register_train_command,
)
from dual_comatch.config import Config
from dual_comatch.errors.exceptions import UsageError
from dual_comatch.errors.handlers import handle_error, register_error_handlers

logger = get_logger("dmn_logger")


class DMNArgumentParser(argparse.ArgumentParser):
    """Argument parser that raises UsageError instead of printing usage and exiting."""

    def error(self, message: str) -> NoReturn:
        raise UsageError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    """
    Build the CLI parser with every sub-command registered.
    """
    parser = DMNArgumentParser(
        prog="dual-comatch",
        description="Dual co-matching network for multi-choice reading comprehension",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subparsers = parser.add_subparsers(dest="command", required=True)
    register_train_command(subparsers)
    register_eval_command(subparsers)
    register_gradcheck_command(subparsers)
    register_ablate_command(subparsers)
    register_synth_command(subparsers)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """
    Parse arguments and run one command.

    Args:
        argv (Optional[List[str]]): Arguments without the program name; sys.argv when None.

    Returns:
        int: Process exit code.
    """
    register_error_handlers()
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        return handle_error(exc)
    logger.info(f"Running '{args.command}' in environment: {Config.ENVIRONMENT}")
    try:
        return args.handler(args)
    except Exception as exc:
        return handle_error(exc)
