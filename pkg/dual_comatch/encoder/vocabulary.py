"""
vocabulary.py

Token vocabulary and tokenizer for the lookup encoder.

Features:
- Reserved ids: 0 = padding (never produced), 1 = unknown.
- Lowercasing tokenizer that splits on whitespace and punctuation boundaries.
- Tail truncation to the configured maximum sequence length.
- Frequency-ordered vocabulary building from a corpus.

Author: FOX Techniques <ali.nabbi@fox-techniques.com>
"""

import re
from collections import Counter
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Tuple

from dual_comatch.errors.exceptions import EmptySequenceError, VocabularyError

PAD_ID = 0
UNK_ID = 1
PAD_TOKEN = "<pad>"
UNK_TOKEN = "<unk>"

_TOKEN_PATTERN = re.compile(r"\w+|[^\w\s]")


@dataclass(frozen=True)
class TokenSequence:
    """
    Token ids for one text span.

    Attributes:
        ids (Tuple[int, ...]): Ids after truncation, 1 <= len(ids) <= max_len.
        original_length (int): Token count before truncation.
    """

    ids: Tuple[int, ...]
    original_length: int

    def __len__(self) -> int:
        return len(self.ids)

    @property
    def truncated(self) -> bool:
        return self.original_length > len(self.ids)


class Vocabulary:
    """
    Injective token-string to id map with reserved padding and unknown ids.
    """

    def __init__(self, tokens: Iterable[str] = ()):
        self._token_to_id: Dict[str, int] = {PAD_TOKEN: PAD_ID, UNK_TOKEN: UNK_ID}
        self._id_to_token: List[str] = [PAD_TOKEN, UNK_TOKEN]
        for token in tokens:
            self.add(token)

    def add(self, token: str) -> int:
        existing = self._token_to_id.get(token)
        if existing is not None:
            return existing
        new_id = len(self._id_to_token)
        self._token_to_id[token] = new_id
        self._id_to_token.append(token)
        return new_id

    def id_of(self, token: str) -> int:
        return self._token_to_id.get(token, UNK_ID)

    def token_of(self, token_id: int) -> str:
        if not 0 <= token_id < len(self._id_to_token):
            raise VocabularyError(
                f"Token id {token_id} out of range for vocabulary of size {len(self)}"
            )
        return self._id_to_token[token_id]

    @property
    def tokens(self) -> List[str]:
        """All tokens in id order, reserved tokens included."""
        return list(self._id_to_token)

    def __len__(self) -> int:
        return len(self._id_to_token)

    def __contains__(self, token: object) -> bool:
        return token in self._token_to_id

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Vocabulary) and self._id_to_token == other._id_to_token

    @classmethod
    def from_tokens(cls, tokens: List[str]) -> "Vocabulary":
        """
        Rebuild a vocabulary from its `tokens` listing (reserved tokens first).

        Raises:
            VocabularyError: If the listing does not start with the reserved tokens
                or contains duplicates.
        """
        if tokens[:2] != [PAD_TOKEN, UNK_TOKEN]:
            raise VocabularyError("Vocabulary listing must start with <pad>, <unk>")
        vocab = cls(tokens[2:])
        if len(vocab) != len(tokens):
            raise VocabularyError("Vocabulary listing contains duplicate tokens")
        return vocab

    @classmethod
    def build(
        cls, texts: Iterable[str], max_size: Optional[int] = None, min_count: int = 1
    ) -> "Vocabulary":
        """
        Build a vocabulary ordered by descending frequency, ties by first appearance.

        Args:
            texts (Iterable[str]): Corpus texts.
            max_size (Optional[int]): Cap on the vocabulary size, reserved ids included.
            min_count (int): Minimum frequency for a token to be kept.

        Returns:
            Vocabulary: The new vocabulary.
        """
        counts: Counter = Counter()
        for text in texts:
            counts.update(split_tokens(text))
        # Counter preserves insertion order, so the stable sort keeps first-appearance ties.
        ranked = sorted(counts.items(), key=lambda item: -item[1])
        kept = [token for token, count in ranked if count >= min_count]
        if max_size is not None:
            kept = kept[: max(0, max_size - 2)]
        return cls(kept)


def split_tokens(text: str) -> List[str]:
    """Lowercase and split on whitespace and punctuation boundaries."""
    return _TOKEN_PATTERN.findall(text.lower())


def tokenize(text: str, vocab: Vocabulary, max_len: int) -> TokenSequence:
    """
    Convert text into token ids.

    Args:
        text (str): The text span.
        vocab (Vocabulary): Token map; unknown tokens map to id 1.
        max_len (int): Maximum sequence length; longer sequences lose their tail.

    Returns:
        TokenSequence: The ids and the pre-truncation length.

    Raises:
        EmptySequenceError: If the text contains no tokens.
    """
    if max_len < 1:
        raise ValueError(f"max_len must be positive, got {max_len}")
    tokens = split_tokens(text)
    if not tokens:
        raise EmptySequenceError(f"No tokens in text {text[:40]!r}")
    ids = tuple(vocab.id_of(token) for token in tokens[:max_len])
    return TokenSequence(ids=ids, original_length=len(tokens))
