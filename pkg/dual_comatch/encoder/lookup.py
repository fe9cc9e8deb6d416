"""
lookup.py

Trainable embedding-lookup encoder.

Features:
- `EmbeddingTable`: vocab_size x l learnable matrix, uniform [-0.1, 0.1] initialization.
- `encode_lookup`: row t of the output is table row ids[t], gradient-traceable into the table.
- `LookupEncoder`: encodes passage, question and each candidate independently.

Author: FOX Techniques <ali.nabbi@fox-techniques.com>
"""

from dataclasses import dataclass
from typing import Dict, List

import numpy as np

from dual_comatch.encoder.base import EncodedTriplet
from dual_comatch.encoder.vocabulary import UNK_ID, TokenSequence, Vocabulary, tokenize
from dual_comatch.errors.exceptions import ShapeError
from dual_comatch.numerics.kernels import gather_rows
from dual_comatch.numerics.tensor import Tensor, parameter
from dual_comatch.schemas.example_schema import MultiChoiceExample

EMBEDDING_INIT_SCALE = 0.1


@dataclass
class EmbeddingTable:
    """
    Learnable embedding matrix.

    Attributes:
        weights (Tensor): vocab_size x hidden_size parameter.
    """

    weights: Tensor

    def __post_init__(self):
        if self.weights.ndim != 2:
            raise ShapeError(f"Embedding table must be a matrix, got {self.weights.shape}")

    @classmethod
    def initialize(
        cls, vocab_size: int, hidden_size: int, rng: np.random.Generator
    ) -> "EmbeddingTable":
        data = rng.uniform(-EMBEDDING_INIT_SCALE, EMBEDDING_INIT_SCALE, (vocab_size, hidden_size))
        return cls(parameter(data, name="embeddings"))

    @property
    def vocab_size(self) -> int:
        return self.weights.shape[0]

    @property
    def hidden_size(self) -> int:
        return self.weights.shape[1]


def encode_lookup(tokens: TokenSequence, table: EmbeddingTable) -> Tensor:
    """
    Look up one embedding row per token.

    Raises:
        VocabularyError: If an id is not below the table's row count.
    """
    return gather_rows(table.weights, tokens.ids)


class LookupEncoder:
    """
    Encoder that embeds every role with the same trainable table.
    """

    kind = "lookup"

    def __init__(self, vocab: Vocabulary, table: EmbeddingTable, max_len: int):
        if table.vocab_size != len(vocab):
            raise ShapeError(
                f"Embedding table has {table.vocab_size} rows for a vocabulary of {len(vocab)}"
            )
        self.vocab = vocab
        self.table = table
        self.max_len = max_len

    @property
    def hidden_size(self) -> int:
        return self.table.hidden_size

    def parameters(self) -> Dict[str, Tensor]:
        return {"embeddings": self.table.weights}

    def tokens_for(self, text: str, allow_empty: bool = False) -> TokenSequence:
        if allow_empty and not text.strip():
            return TokenSequence(ids=(UNK_ID,), original_length=0)
        return tokenize(text, self.vocab, self.max_len)

    def encode_text(self, text: str, allow_empty: bool = False) -> Tensor:
        return encode_lookup(self.tokens_for(text, allow_empty), self.table)

    def encode_example(self, example: MultiChoiceExample) -> List[EncodedTriplet]:
        passage = self.encode_text(example.passage)
        # Story-completion inputs have no question; one unknown token stands in.
        question = self.encode_text(example.question, allow_empty=True)
        return [
            EncodedTriplet(passage, question, self.encode_text(candidate))
            for candidate in example.candidates
        ]
