"""
base.py

The encoder contract shared by the lookup and precomputed encoders.

Author: FOX Techniques <ali.nabbi@fox-techniques.com>
"""

from dataclasses import dataclass
from typing import Dict, List, Protocol

from dual_comatch.errors.exceptions import EmptySequenceError, ShapeError
from dual_comatch.numerics.tensor import Tensor
from dual_comatch.schemas.example_schema import MultiChoiceExample


@dataclass(frozen=True)
class EncodedTriplet:
    """
    Hidden matrices for one (passage, question, candidate) triplet.

    Attributes:
        passage (Tensor): H^p, |P| x l.
        question (Tensor): H^q, |Q| x l.
        answer (Tensor): H^a, |A| x l.
    """

    passage: Tensor
    question: Tensor
    answer: Tensor

    def __post_init__(self):
        for role, matrix in (
            ("passage", self.passage),
            ("question", self.question),
            ("answer", self.answer),
        ):
            if matrix.ndim != 2:
                raise ShapeError(f"{role} encoding must be a matrix, got {matrix.shape}")
            if matrix.shape[0] < 1:
                raise EmptySequenceError(f"{role} encoding has no rows")
        widths = {self.passage.shape[1], self.question.shape[1], self.answer.shape[1]}
        if len(widths) != 1:
            raise ShapeError(f"Triplet hidden sizes differ: {sorted(widths)}")

    @property
    def hidden_size(self) -> int:
        return self.passage.shape[1]


class Encoder(Protocol):
    """Turns a multi-choice example into one encoded triplet per candidate."""

    kind: str

    @property
    def hidden_size(self) -> int: ...

    def parameters(self) -> Dict[str, Tensor]: ...

    def encode_example(self, example: MultiChoiceExample) -> List[EncodedTriplet]: ...
