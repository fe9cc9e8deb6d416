"""
train_command.py

The `train` command: build a model, train it and optionally save a bundle.

Author: FOX Techniques <ali.nabbi@fox-techniques.com>
"""

import argparse

from hestia_logger import get_logger

from dual_comatch.commands.common import (
    add_data_arguments,
    add_match_arguments,
    add_synth_arguments,
    add_train_arguments,
    load_data,
    match_config_from_args,
    subset_accuracy_lines,
    train_config_from_args,
)
from dual_comatch.config import Config
from dual_comatch.encoder.precomputed import PrecomputedStore
from dual_comatch.errors.exceptions import DataFormatError
from dual_comatch.harness.trainer import evaluate, train
from dual_comatch.models.dmn_model import DualCoMatchModel
from dual_comatch.storage.bundle import bundle_from_model, save_model
from dual_comatch.utils.table_utils import format_table

logger = get_logger("dmn_logger")


def run_train(args: argparse.Namespace) -> int:
    match_cfg = match_config_from_args(args)
    train_cfg = train_config_from_args(args)
    data = load_data(args)

    if args.encoder == "precomputed":
        if not args.embeddings:
            raise DataFormatError("--embeddings is required with --encoder precomputed")
        store = PrecomputedStore.open(args.embeddings)
        model = DualCoMatchModel.build_precomputed(match_cfg, store, train_cfg.seed)
    else:
        model = DualCoMatchModel.build_lookup(match_cfg, data.vocab, train_cfg.seed)

    result = train(
        model, data.train, train_cfg, dev=data.dev or None, metrics_path=args.metrics
    )

    rows = [
        [
            m.epoch,
            f"{m.train_loss:.4f}",
            "-" if m.dev_accuracy is None else f"{m.dev_accuracy:.4f}",
            m.skipped_steps,
        ]
        for m in result.metrics
    ]
    if rows:
        print(format_table(["epoch", "train loss", "dev acc", "skipped"], rows))
    if result.stopped_early:
        print(f"stopped_early=epoch_{result.metrics[-1].epoch}")

    if data.test:
        test_result = evaluate(model, data.test, workers=train_cfg.eval_workers)
        print(f"test_accuracy={test_result.accuracy:.4f} examples={len(data.test)}")
        for line in subset_accuracy_lines(test_result.subset_accuracy, prefix="test_accuracy"):
            print(line)

    if args.out:
        save_model(bundle_from_model(model, result.optimizer_state), args.out)
        print(f"saved={args.out}")
    return 0


def register_train_command(subparsers: argparse._SubParsersAction) -> argparse.ArgumentParser:
    """
    Register `train` on the CLI.
    """
    parser = subparsers.add_parser("train", help="Train a dual co-matching model")
    add_data_arguments(parser)
    add_synth_arguments(parser)
    add_match_arguments(parser)
    add_train_arguments(parser)
    parser.add_argument("--encoder", choices=("lookup", "precomputed"), default="lookup")
    parser.add_argument("--embeddings", help="Precomputed embedding file or directory")
    parser.add_argument("--metrics", default=Config.METRICS_PATH, help="JSON-lines epoch metrics file")
    parser.add_argument("--out", help="Model bundle to write")
    parser.set_defaults(handler=run_train)
    return parser
