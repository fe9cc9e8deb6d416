"""
synth_command.py

The `synth` command: write the synthetic task as JSON-lines splits.

Author: FOX Techniques <ali.nabbi@fox-techniques.com>
"""

import argparse
from pathlib import Path

from dual_comatch.commands.common import add_synth_arguments, synth_spec_from_args
from dual_comatch.config import Config
from dual_comatch.harness.synthetic import generate_synthetic
from dual_comatch.readers.jsonl import write_jsonl


def run_synth(args: argparse.Namespace) -> int:
    splits = generate_synthetic(synth_spec_from_args(args))
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for name in ("train", "dev", "test"):
        count = write_jsonl(out / f"{name}.jsonl", getattr(splits, name))
        print(f"{name}={out / f'{name}.jsonl'} examples={count}")
    return 0


def register_synth_command(subparsers: argparse._SubParsersAction) -> argparse.ArgumentParser:
    parser = subparsers.add_parser("synth", help="Generate the synthetic task")
    add_synth_arguments(parser)
    parser.add_argument("--seed", type=int, default=Config.SEED)
    parser.add_argument("--out", required=True, help="Output directory")
    parser.set_defaults(handler=run_synth)
    return parser
