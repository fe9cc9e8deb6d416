"""
common.py

Argument groups and loaders shared by the CLI commands.

Features:
- Dataset loading for `race`, `jsonl` and `synth` inputs.
- Matching and training flags mapped onto MatchConfig / TrainConfig.
- Vocabulary building over a training split.
- Per-subset accuracy lines for RACE-style ids.

Author: FOX Techniques <ali.nabbi@fox-techniques.com>
"""

import argparse
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Sequence

from hestia_logger import get_logger

from dual_comatch.config import Config
from dual_comatch.encoder.vocabulary import Vocabulary
from dual_comatch.errors.exceptions import DataFormatError
from dual_comatch.harness.synthetic import generate_synthetic
from dual_comatch.readers.jsonl import read_jsonl
from dual_comatch.readers.race import ROOT_SUBSET, read_race_dir
from dual_comatch.schemas.config_schema import MatchConfig, SynthTaskSpec, TrainConfig
from dual_comatch.schemas.example_schema import MultiChoiceExample

logger = get_logger("dmn_logger")

DATA_FORMATS = ("race", "jsonl", "synth")
DIRECTIONS = {"bi": "bidirectional", "uni": "unidirectional"}


@dataclass
class LoadedData:
    train: List[MultiChoiceExample]
    dev: List[MultiChoiceExample]
    test: List[MultiChoiceExample]
    vocab: Vocabulary


def read_examples(path: Optional[str], data_format: str) -> List[MultiChoiceExample]:
    """
    Raises:
        DataFormatError: If no path is given for a file format or nothing could be read.
    """
    if data_format not in ("race", "jsonl"):
        raise DataFormatError(f"Format '{data_format}' is not file based")
    if not path:
        raise DataFormatError(f"--data is required for format '{data_format}'")
    examples = read_race_dir(path) if data_format == "race" else read_jsonl(path)
    if not examples:
        raise DataFormatError(f"No valid examples in {path}")
    return examples


def corpus_texts(examples: Sequence[MultiChoiceExample]) -> Iterator[str]:
    for example in examples:
        yield example.passage
        yield example.question
        yield from example.candidates


def load_data(args: argparse.Namespace) -> LoadedData:
    """
    Load train/dev/test splits and a vocabulary for the parsed arguments.

    `synth` generates all three splits; file formats read `--data` for training and
    the optional `--dev` / `--test` paths, with the vocabulary built over the training split.
    """
    if args.format == "synth":
        splits = generate_synthetic(synth_spec_from_args(args))
        return LoadedData(splits.train, splits.dev, splits.test, splits.vocab)

    train = read_examples(args.data, args.format)
    dev = read_examples(args.dev, args.format) if getattr(args, "dev", None) else []
    test = read_examples(args.test, args.format) if getattr(args, "test", None) else []
    vocab = Vocabulary.build(corpus_texts(train), max_size=getattr(args, "vocab_size", None))
    logger.info(f"Built vocabulary of {len(vocab)} tokens over {len(train)} training examples")
    return LoadedData(train, dev, test, vocab)


def add_data_arguments(parser: argparse.ArgumentParser, require_data: bool = False) -> None:
    group = parser.add_argument_group("data")
    group.add_argument("--data", required=require_data, help="Dataset path (directory for race, file for jsonl)")
    group.add_argument("--format", choices=DATA_FORMATS, default="synth", help="Dataset format")
    group.add_argument("--dev", help="Dev split path (race/jsonl)")
    group.add_argument("--test", help="Test split path (race/jsonl)")
    group.add_argument("--vocab-size", type=int, default=None, help="Vocabulary cap for file formats")


def add_synth_arguments(parser: argparse.ArgumentParser) -> None:
    defaults = SynthTaskSpec()
    group = parser.add_argument_group("synthetic task")
    group.add_argument("--synth-vocab", type=int, default=defaults.vocab_size)
    group.add_argument("--candidates", type=int, default=defaults.num_candidates)
    group.add_argument("--passage-len", type=int, default=defaults.passage_len)
    group.add_argument("--answer-len", type=int, default=defaults.answer_len)
    group.add_argument("--overlap", type=float, default=defaults.distractor_overlap)
    group.add_argument("--train-size", type=int, default=defaults.train_size)
    group.add_argument("--dev-size", type=int, default=defaults.dev_size)
    group.add_argument("--test-size", type=int, default=defaults.test_size)
    group.add_argument("--synth-seed", type=int, default=None, help="Defaults to --seed")


def synth_spec_from_args(args: argparse.Namespace) -> SynthTaskSpec:
    seed = args.synth_seed if args.synth_seed is not None else args.seed
    return SynthTaskSpec(
        vocab_size=args.synth_vocab,
        num_candidates=args.candidates,
        passage_len=args.passage_len,
        answer_len=args.answer_len,
        distractor_overlap=args.overlap,
        train_size=args.train_size,
        dev_size=args.dev_size,
        test_size=args.test_size,
        seed=seed,
    )


def add_match_arguments(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("matching")
    group.add_argument("--hidden", type=int, default=Config.HIDDEN_SIZE, help="Hidden size l")
    group.add_argument("--max-len", type=int, default=Config.MAX_SEQ_LEN, help="Maximum sequence length")
    group.add_argument("--attention", choices=("dual", "literal"), default="dual")
    group.add_argument("--fusion", choices=("gated", "concat"), default="gated")
    group.add_argument("--direction", choices=tuple(DIRECTIONS), default="bi")
    group.add_argument("--no-qa-pair", action="store_true", help="Drop the question-answer pair from C")
    group.add_argument("--share-pairs", action="store_true", help="Share one parameter set across pairs")
    group.add_argument("--dropout-match", type=float, default=0.3, help="Matching dropout rate")


def match_config_from_args(args: argparse.Namespace) -> MatchConfig:
    return MatchConfig(
        hidden_size=args.hidden,
        max_seq_len=args.max_len,
        attention_normalization=args.attention,
        direction=DIRECTIONS[args.direction],
        fusion=args.fusion,
        use_qa_pair=not args.no_qa_pair,
        matching_dropout=args.dropout_match,
        share_pair_parameters=args.share_pairs,
    )


def add_train_arguments(parser: argparse.ArgumentParser) -> None:
    defaults = TrainConfig()
    group = parser.add_argument_group("training")
    group.add_argument("--lr", type=float, default=defaults.learning_rate)
    group.add_argument("--epochs", type=int, default=defaults.epochs)
    group.add_argument("--batch", type=int, default=defaults.batch_size)
    group.add_argument("--warmup", type=float, default=defaults.warmup_fraction)
    group.add_argument("--clip", type=float, default=defaults.gradient_clip_norm, help="0 disables clipping")
    group.add_argument("--seed", type=int, default=Config.SEED)
    group.add_argument("--workers", type=int, default=Config.EVAL_WORKERS, help="Evaluation threads")
    group.add_argument(
        "--target-accuracy",
        type=float,
        default=None,
        help="Stop once dev accuracy reaches this value",
    )


def train_config_from_args(args: argparse.Namespace) -> TrainConfig:
    return TrainConfig(
        learning_rate=args.lr,
        batch_size=args.batch,
        epochs=args.epochs,
        warmup_fraction=args.warmup,
        seed=args.seed,
        matching_dropout=args.dropout_match,
        gradient_clip_norm=args.clip,
        eval_workers=args.workers,
        target_dev_accuracy=getattr(args, "target_accuracy", None),
    )


def subset_accuracy_lines(subset_accuracy: Dict[str, float], prefix: str = "accuracy") -> List[str]:
    """
    One `<prefix>_<subset>=<acc>` line per subset; empty when every id sits at the root.
    """
    if set(subset_accuracy) <= {ROOT_SUBSET}:
        return []
    return [f"{prefix}_{name}={acc:.4f}" for name, acc in subset_accuracy.items()]
