"""
parameters.py

Learnable parameters of the matching stack.

Features:
- `PairParameters`: W, W1-W4 (l x l) and b (l) for one sequence pair.
- `MatchParameters`: one set per pair (p-q, p-a, q-a) plus the classifier V.
- Glorot-uniform initialization for matrices, zeros for b and V.
- Deduplicated, ordered `named_parameters()` for optimizers, gradient checks and bundles.

Author: FOX Techniques <ali.nabbi@fox-techniques.com>
"""

from dataclasses import dataclass
from typing import Dict, Iterator, Tuple

import numpy as np

from dual_comatch.errors.exceptions import ShapeError
from dual_comatch.numerics.tensor import Tensor, parameter
from dual_comatch.schemas.config_schema import MatchConfig

PAIR_NAMES: Tuple[str, ...] = ("pq", "pa", "qa")
PAIR_FIELDS: Tuple[str, ...] = ("W", "W1", "W2", "W3", "W4", "b")


def _glorot(rng: np.random.Generator, rows: int, cols: int) -> np.ndarray:
    limit = np.sqrt(6.0 / (rows + cols))
    return rng.uniform(-limit, limit, (rows, cols))


@dataclass
class PairParameters:
    W: Tensor
    W1: Tensor
    W2: Tensor
    W3: Tensor
    W4: Tensor
    b: Tensor

    def __post_init__(self):
        size = self.b.shape[0] if self.b.ndim == 1 else -1
        if size < 1:
            raise ShapeError(f"Pair bias must be a non-empty vector, got {self.b.shape}")
        for name in PAIR_FIELDS[:-1]:
            shape = getattr(self, name).shape
            if shape != (size, size):
                raise ShapeError(f"Pair parameter {name} has shape {shape}, expected {(size, size)}")

    @property
    def hidden_size(self) -> int:
        return self.b.shape[0]

    @classmethod
    def initialize(cls, hidden_size: int, rng: np.random.Generator, prefix: str = "") -> "PairParameters":
        tensors = {
            name: parameter(_glorot(rng, hidden_size, hidden_size), name=f"{prefix}{name}")
            for name in PAIR_FIELDS[:-1]
        }
        tensors["b"] = parameter(np.zeros(hidden_size), name=f"{prefix}b")
        return cls(**tensors)

    def items(self) -> Iterator[Tuple[str, Tensor]]:
        for name in PAIR_FIELDS:
            yield name, getattr(self, name)


@dataclass
class MatchParameters:
    """
    Parameters of all three pairs and the candidate classifier.

    Attributes:
        pq (PairParameters): Passage-question pair.
        pa (PairParameters): Passage-answer pair.
        qa (PairParameters): Question-answer pair (unused when the q-a pair is off).
        V (Tensor): Classifier of length `MatchConfig.representation_size`.
    """

    pq: PairParameters
    pa: PairParameters
    qa: PairParameters
    V: Tensor

    @classmethod
    def initialize(
        cls, cfg: MatchConfig, rng: np.random.Generator, zero_classifier: bool = True
    ) -> "MatchParameters":
        """
        Create fresh parameters for a configuration.

        Args:
            cfg (MatchConfig): Hidden size and variant switches.
            rng (np.random.Generator): Source of the initial values.
            zero_classifier (bool): Start V at zero, which gives uniform candidate
                probabilities before training.
        """
        l = cfg.hidden_size
        if cfg.share_pair_parameters:
            shared = PairParameters.initialize(l, rng, prefix="shared.")
            pairs = {name: shared for name in PAIR_NAMES}
        else:
            pairs = {name: PairParameters.initialize(l, rng, prefix=f"{name}.") for name in PAIR_NAMES}
        size = cfg.representation_size
        values = np.zeros(size) if zero_classifier else rng.uniform(-1.0, 1.0, size) / np.sqrt(size)
        return cls(V=parameter(values, name="V"), **pairs)

    def validate_for(self, cfg: MatchConfig) -> None:
        """
        Raises:
            ShapeError: If the hidden size or V length disagrees with `cfg`.
        """
        for name in PAIR_NAMES:
            size = getattr(self, name).hidden_size
            if size != cfg.hidden_size:
                raise ShapeError(f"Pair {name} has hidden size {size}, configured {cfg.hidden_size}")
        if self.V.shape != (cfg.representation_size,):
            raise ShapeError(
                f"V has shape {self.V.shape}, configuration needs ({cfg.representation_size},)"
            )

    def named_parameters(self) -> Dict[str, Tensor]:
        """Every distinct tensor once, pairs in p-q, p-a, q-a order and V last."""
        named: Dict[str, Tensor] = {}
        seen = set()
        for pair_name in PAIR_NAMES:
            pair = getattr(self, pair_name)
            for field, tensor in pair.items():
                if id(tensor) in seen:
                    continue
                seen.add(id(tensor))
                named[f"{pair_name}.{field}"] = tensor
        named["V"] = self.V
        return named
