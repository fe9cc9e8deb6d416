"""
eval_command.py

The `eval` command: load a bundle and report accuracy on a dataset.

Author: FOX Techniques <ali.nabbi@fox-techniques.com>
"""

import argparse
import json

from dual_comatch.commands.common import (
    add_synth_arguments,
    read_examples,
    subset_accuracy_lines,
    synth_spec_from_args,
)
from dual_comatch.config import Config
from dual_comatch.encoder.precomputed import PrecomputedStore
from dual_comatch.harness.synthetic import generate_synthetic
from dual_comatch.harness.trainer import evaluate
from dual_comatch.storage.bundle import load_model, model_from_bundle


def run_eval(args: argparse.Namespace) -> int:
    bundle = load_model(args.model)
    store = PrecomputedStore.open(args.embeddings) if args.embeddings else None
    model = model_from_bundle(bundle, store)

    if args.format == "synth":
        examples = generate_synthetic(synth_spec_from_args(args)).test
    else:
        examples = read_examples(args.data, args.format)

    result = evaluate(model, examples, workers=args.workers)
    if args.predictions:
        with open(args.predictions, "w", encoding="utf-8") as handle:
            for example, prediction, probs in zip(examples, result.predictions, result.probabilities):
                record = {"id": example.id, "prediction": prediction, "probs": probs.tolist()}
                handle.write(json.dumps(record) + "\n")
    print(f"accuracy={result.accuracy:.4f} examples={len(examples)}")
    for line in subset_accuracy_lines(result.subset_accuracy):
        print(line)
    return 0


def register_eval_command(subparsers: argparse._SubParsersAction) -> argparse.ArgumentParser:
    parser = subparsers.add_parser("eval", help="Evaluate a saved model")
    parser.add_argument("--model", required=True, help="Model bundle")
    parser.add_argument("--data", help="Dataset path (directory for race, file for jsonl)")
    parser.add_argument("--format", choices=("race", "jsonl", "synth"), default="jsonl")
    parser.add_argument("--embeddings", help="Embedding store for precomputed-encoder bundles")
    parser.add_argument("--workers", type=int, default=Config.EVAL_WORKERS)
    parser.add_argument("--predictions", help="JSON-lines file receiving per-example predictions")
    parser.add_argument("--seed", type=int, default=Config.SEED)
    add_synth_arguments(parser)
    parser.set_defaults(handler=run_eval)
    return parser
