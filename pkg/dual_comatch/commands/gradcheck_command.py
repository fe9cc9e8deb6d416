"""
gradcheck_command.py

The `gradcheck` command: verify backpropagated gradients against central differences.

Author: FOX Techniques <ali.nabbi@fox-techniques.com>
"""

import argparse

from dual_comatch.commands.common import DIRECTIONS
from dual_comatch.config import Config
from dual_comatch.errors.exceptions import GradientCheckError
from dual_comatch.harness.diagnostics import gradient_check_model
from dual_comatch.schemas.config_schema import MatchConfig
from dual_comatch.utils.table_utils import format_table


def run_gradcheck(args: argparse.Namespace) -> int:
    cfg = MatchConfig(
        hidden_size=args.hidden,
        attention_normalization=args.attention,
        direction=DIRECTIONS[args.direction],
        fusion=args.fusion,
        use_qa_pair=not args.no_qa_pair,
        matching_dropout=0.0,
    )
    report = gradient_check_model(
        cfg, args.seed, h=args.step, tol=args.tol, num_candidates=args.candidates
    )
    rows = [[name, f"{error:.3e}"] for name, error in report.max_relative_error.items()]
    print(format_table(["parameter", "max rel error"], rows))
    if not report.passed:
        raise GradientCheckError(
            f"{report.worst_parameter} has relative error {report.worst:.3e} > {report.tolerance:.1e}"
        )
    print(f"gradcheck=passed worst={report.worst:.3e}")
    return 0


def register_gradcheck_command(subparsers: argparse._SubParsersAction) -> argparse.ArgumentParser:
    parser = subparsers.add_parser("gradcheck", help="Check gradients by finite differences")
    parser.add_argument("--hidden", type=int, default=4)
    parser.add_argument("--seed", type=int, default=Config.SEED)
    parser.add_argument("--tol", type=float, default=Config.GRADCHECK_TOL)
    parser.add_argument("--step", type=float, default=Config.GRADCHECK_STEP)
    parser.add_argument("--candidates", type=int, default=4)
    parser.add_argument("--attention", choices=("dual", "literal"), default="dual")
    parser.add_argument("--fusion", choices=("gated", "concat"), default="gated")
    parser.add_argument("--direction", choices=tuple(DIRECTIONS), default="bi")
    parser.add_argument("--no-qa-pair", action="store_true")
    parser.set_defaults(handler=run_gradcheck)
    return parser
