"""
ablate_command.py

The `ablate` command: run the matching-variant ablation suite and print the report.

Author: FOX Techniques <ali.nabbi@fox-techniques.com>
"""

import argparse
from pathlib import Path

from dual_comatch.commands.common import (
    add_data_arguments,
    add_match_arguments,
    add_synth_arguments,
    add_train_arguments,
    load_data,
    match_config_from_args,
    train_config_from_args,
)
from dual_comatch.config import Config
from dual_comatch.errors.exceptions import DataFormatError
from dual_comatch.harness.ablation import format_ablation_report, run_ablation_suite


def run_ablate(args: argparse.Namespace) -> int:
    data = load_data(args)
    eval_set = data.test or data.dev
    if not eval_set:
        raise DataFormatError("The ablation suite needs a dev or test split (--dev / --test)")
    report = run_ablation_suite(
        match_config_from_args(args),
        train_config_from_args(args),
        data.train,
        eval_set,
        data.vocab,
        seeds=args.seeds,
        dev_set=data.dev if data.test else None,
        include_literal=args.include_literal,
    )
    print(format_ablation_report(report))
    if args.json:
        Path(args.json).write_text(report.model_dump_json(indent=2), encoding="utf-8")
    return 0


def register_ablate_command(subparsers: argparse._SubParsersAction) -> argparse.ArgumentParser:
    parser = subparsers.add_parser("ablate", help="Run the ablation suite")
    add_data_arguments(parser)
    add_synth_arguments(parser)
    add_match_arguments(parser)
    add_train_arguments(parser)
    parser.add_argument("--seeds", type=int, default=Config.ABLATION_SEEDS, help="Seeds per variant")
    parser.add_argument("--include-literal", action="store_true", help="Add the literal attention variant")
    parser.add_argument("--json", help="Write the machine-readable report here")
    parser.set_defaults(handler=run_ablate)
    return parser
