"""
conftest.py

Shared fixtures for the dual co-matching test suite.

Features:
- Seeded numpy generators.
- Small match configurations with dropout off.
- A tiny vocabulary and a four-candidate example.

Author: FOX Techniques <ali.nabbi@fox-techniques.com>
"""

import numpy as np
import pytest

from dual_comatch.encoder.vocabulary import Vocabulary
from dual_comatch.schemas.config_schema import MatchConfig, SynthTaskSpec
from dual_comatch.schemas.example_schema import MultiChoiceExample


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def small_cfg():
    """
    Hidden size 4, default variant, dropout off.
    """
    return MatchConfig(hidden_size=4, max_seq_len=16, matching_dropout=0.0)


@pytest.fixture
def tiny_vocab():
    return Vocabulary(["the", "cat", "sat", "on", "mat", "dog", "ran", "where", "did", "?", "."])


@pytest.fixture
def cat_example():
    return MultiChoiceExample(
        id="toy#0",
        passage="The cat sat on the mat.",
        question="Where did the cat sit?",
        candidates=["on the mat", "on the dog", "the dog ran", "cat ran"],
        gold=0,
    )


@pytest.fixture
def tiny_synth_spec():
    return SynthTaskSpec(
        vocab_size=24,
        num_candidates=4,
        passage_len=6,
        answer_len=2,
        distractor_overlap=0.5,
        train_size=12,
        dev_size=8,
        test_size=8,
        seed=5,
    )
