"""
encoder module

Turns text into hidden matrices H^p, H^q, H^a.

Submodules:
- vocabulary: Vocabulary, TokenSequence and the tokenizer.
- base: EncodedTriplet and the Encoder protocol.
- lookup: Trainable embedding lookup.
- precomputed: Frozen contextual embeddings read from `*.dmne` containers.

Author: FOX Techniques <ali.nabbi@fox-techniques.com>
"""

from .base import EncodedTriplet, Encoder
from .lookup import EmbeddingTable, LookupEncoder, encode_lookup
from .precomputed import (
    EmbeddingKey,
    PrecomputedEncoder,
    PrecomputedStore,
    Role,
    load_precomputed,
    write_precomputed,
)
from .vocabulary import PAD_ID, UNK_ID, TokenSequence, Vocabulary, split_tokens, tokenize

__all__ = [
    "EncodedTriplet",
    "Encoder",
    "EmbeddingTable",
    "LookupEncoder",
    "encode_lookup",
    "EmbeddingKey",
    "PrecomputedEncoder",
    "PrecomputedStore",
    "Role",
    "load_precomputed",
    "write_precomputed",
    "PAD_ID",
    "UNK_ID",
    "TokenSequence",
    "Vocabulary",
    "split_tokens",
    "tokenize",
]
