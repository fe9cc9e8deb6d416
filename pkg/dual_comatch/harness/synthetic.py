"""
synthetic.py

Seeded synthetic multi-choice task for desk-scale training runs.

Features:
- Passages of random filler tokens with one contiguous key phrase inserted.
- The correct candidate is the key phrase, reordered.
- Distractors borrow `distractor_overlap` of their tokens from the passage fillers and fill
  the rest with key tokens that never occur in the passage.
- Gold index drawn uniformly; the whole dataset is a function of the seed.

Author: FOX Techniques <ali.nabbi@fox-techniques.com>
"""

from dataclasses import dataclass
from typing import List, Tuple

import numpy as np
from hestia_logger import get_logger

from dual_comatch.encoder.vocabulary import Vocabulary
from dual_comatch.errors.exceptions import DataFormatError
from dual_comatch.schemas.config_schema import SynthTaskSpec
from dual_comatch.schemas.example_schema import MultiChoiceExample
from dual_comatch.utils.seed_utils import derive_rng

logger = get_logger("dmn_logger")

QUESTION_TOKEN = "query"
RESERVED_COUNT = 3  # <pad>, <unk>, query


@dataclass(frozen=True)
class SyntheticSplits:
    train: List[MultiChoiceExample]
    dev: List[MultiChoiceExample]
    test: List[MultiChoiceExample]
    vocab: Vocabulary


def token_pools(spec: SynthTaskSpec) -> Tuple[List[str], List[str]]:
    """
    Filler and key token names; together with the reserved tokens they fill `vocab_size`.
    """
    free = spec.vocab_size - RESERVED_COUNT
    key_count = free // 2
    fillers = [f"f{i}" for i in range(free - key_count)]
    keys = [f"k{i}" for i in range(key_count)]
    return fillers, keys


def synthetic_vocabulary(spec: SynthTaskSpec) -> Vocabulary:
    fillers, keys = token_pools(spec)
    return Vocabulary([QUESTION_TOKEN] + fillers + keys)


def overlap_count(spec: SynthTaskSpec) -> int:
    """Passage tokens per distractor."""
    return int(round(spec.distractor_overlap * spec.answer_len))


def validate_spec(spec: SynthTaskSpec) -> None:
    """
    Raises:
        DataFormatError: If the task settings cannot produce the described examples.
    """
    if spec.answer_len > spec.passage_len:
        raise DataFormatError(
            f"answer_len {spec.answer_len} exceeds passage_len {spec.passage_len}"
        )
    shared = overlap_count(spec)
    filler_slots = spec.passage_len - spec.answer_len
    if shared > filler_slots:
        raise DataFormatError(
            f"Distractors need {shared} passage tokens but passages hold only {filler_slots} fillers"
        )
    _, keys = token_pools(spec)
    needed = spec.answer_len + (spec.answer_len - shared)
    if len(keys) < needed:
        raise DataFormatError(
            f"vocab_size {spec.vocab_size} leaves {len(keys)} key tokens, {needed} needed"
        )


def _make_example(
    example_id: str,
    spec: SynthTaskSpec,
    fillers: List[str],
    keys: List[str],
    rng: np.random.Generator,
) -> MultiChoiceExample:
    key_phrase = [str(t) for t in rng.choice(keys, size=spec.answer_len, replace=False)]
    filler_slots = spec.passage_len - spec.answer_len
    passage_fillers = [str(t) for t in rng.choice(fillers, size=filler_slots, replace=True)]
    insert_at = int(rng.integers(0, filler_slots + 1))
    passage = passage_fillers[:insert_at] + key_phrase + passage_fillers[insert_at:]

    correct = [key_phrase[i] for i in rng.permutation(spec.answer_len)]
    outside_keys = [key for key in keys if key not in key_phrase]
    shared = overlap_count(spec)

    distractors = []
    for _ in range(spec.num_candidates - 1):
        borrowed = [passage_fillers[i] for i in rng.choice(filler_slots, size=shared, replace=False)]
        novel = [str(t) for t in rng.choice(outside_keys, size=spec.answer_len - shared, replace=False)]
        tokens = borrowed + novel
        distractors.append([tokens[i] for i in rng.permutation(len(tokens))])

    gold = int(rng.integers(0, spec.num_candidates))
    candidates = distractors[:gold] + [correct] + distractors[gold:]
    return MultiChoiceExample(
        id=example_id,
        passage=" ".join(passage),
        question=QUESTION_TOKEN,
        candidates=[" ".join(tokens) for tokens in candidates],
        gold=gold,
    )


def generate_synthetic(spec: SynthTaskSpec) -> SyntheticSplits:
    """
    Generate train, dev and test splits.

    Args:
        spec (SynthTaskSpec): Task shape, split sizes and seed.

    Returns:
        SyntheticSplits: The three splits and the task vocabulary.

    Raises:
        DataFormatError: For contradictory specs (e.g. answer_len > passage_len).
    """
    validate_spec(spec)
    fillers, keys = token_pools(spec)
    rng = derive_rng(spec.seed, "synthetic")

    splits = {}
    for split, size in (("train", spec.train_size), ("dev", spec.dev_size), ("test", spec.test_size)):
        splits[split] = [
            _make_example(f"synth-{split}-{i}", spec, fillers, keys, rng) for i in range(size)
        ]
    logger.info(
        f"Generated synthetic task: {spec.train_size}/{spec.dev_size}/{spec.test_size} examples, "
        f"{spec.num_candidates} candidates, overlap {spec.distractor_overlap}"
    )
    return SyntheticSplits(vocab=synthetic_vocabulary(spec), **splits)
