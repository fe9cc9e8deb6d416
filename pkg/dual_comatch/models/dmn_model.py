"""
dmn_model.py

Defines the dual co-matching model: an encoder plus the matching stack.

Features:
- Builders for the trainable lookup encoder and the frozen precomputed encoder.
- `forward` scores every candidate of one example, optionally capturing per-candidate traces.
- `loss` / `predict` for training and evaluation.
- `snapshot` / `restore` copy every parameter for best-epoch selection.

Author: FOX Techniques <ali.nabbi@fox-techniques.com>
"""

from typing import Dict, List, Optional

import numpy as np

from dual_comatch.encoder.base import Encoder
from dual_comatch.encoder.lookup import EmbeddingTable, LookupEncoder
from dual_comatch.encoder.precomputed import PrecomputedEncoder, PrecomputedStore
from dual_comatch.encoder.vocabulary import Vocabulary
from dual_comatch.errors.exceptions import ShapeError
from dual_comatch.matching.objective import (
    CandidateScores,
    MatchTrace,
    TripletRepresentation,
    score_and_loss,
    triplet_representation,
)
from dual_comatch.matching.parameters import MatchParameters
from dual_comatch.numerics.tensor import Tensor
from dual_comatch.schemas.config_schema import MatchConfig
from dual_comatch.schemas.example_schema import MultiChoiceExample
from dual_comatch.utils.seed_utils import derive_rng


class DualCoMatchModel:
    """
    Encoder plus matching parameters under one configuration.

    Attributes:
        encoder (Encoder): Produces H^p, H^q, H^a.
        params (MatchParameters): Pair parameters and the classifier V.
        cfg (MatchConfig): Variant switches and dimensions.
    """

    def __init__(self, encoder: Encoder, params: MatchParameters, cfg: MatchConfig):
        if encoder.hidden_size != cfg.hidden_size:
            raise ShapeError(
                f"Encoder hidden size {encoder.hidden_size} differs from configured {cfg.hidden_size}"
            )
        params.validate_for(cfg)
        self.encoder = encoder
        self.params = params
        self.cfg = cfg

    @classmethod
    def build_lookup(
        cls,
        cfg: MatchConfig,
        vocab: Vocabulary,
        seed: int,
        zero_classifier: bool = True,
    ) -> "DualCoMatchModel":
        """
        Fresh model with a trainable embedding table over `vocab`.

        Initialization is fully determined by `seed`.
        """
        rng = derive_rng(seed, "init")
        table = EmbeddingTable.initialize(len(vocab), cfg.hidden_size, rng)
        params = MatchParameters.initialize(cfg, rng, zero_classifier=zero_classifier)
        return cls(LookupEncoder(vocab, table, cfg.max_seq_len), params, cfg)

    @classmethod
    def build_precomputed(
        cls, cfg: MatchConfig, store: PrecomputedStore, seed: int, zero_classifier: bool = True
    ) -> "DualCoMatchModel":
        params = MatchParameters.initialize(
            cfg, derive_rng(seed, "init"), zero_classifier=zero_classifier
        )
        return cls(PrecomputedEncoder(store, cfg.hidden_size), params, cfg)

    @property
    def vocab(self) -> Optional[Vocabulary]:
        return getattr(self.encoder, "vocab", None)

    def named_parameters(self) -> Dict[str, Tensor]:
        named = dict(self.encoder.parameters())
        named.update(self.params.named_parameters())
        return named

    def forward(
        self,
        example: MultiChoiceExample,
        train: bool = False,
        rng: Optional[np.random.Generator] = None,
        traces: Optional[List[MatchTrace]] = None,
        dropout: Optional[float] = None,
    ) -> CandidateScores:
        """
        Score all candidates of an example.

        Args:
            example (MultiChoiceExample): The example; its gold index drives the loss.
            train (bool): Enable matching dropout.
            rng (Optional[np.random.Generator]): Dropout generator.
            traces (Optional[List[MatchTrace]]): Receives one trace per candidate.
            dropout (Optional[float]): Matching dropout rate overriding the configured one.

        Returns:
            CandidateScores: Probabilities, logits and loss.
        """
        cfg = self.cfg if dropout is None else self.cfg.model_copy(update={"matching_dropout": dropout})
        reps: List[TripletRepresentation] = []
        first_trace: Optional[MatchTrace] = None
        for triplet in self.encoder.encode_example(example):
            trace = None
            if traces is not None:
                trace = MatchTrace()
                if first_trace is None:
                    first_trace = trace
                else:
                    trace.pairs["pq"] = first_trace.pair("pq")
                traces.append(trace)
            # M^pq is the same for every candidate; match it once per example.
            shared_pq = reps[0].M_pq if reps else None
            reps.append(
                triplet_representation(triplet, self.params, cfg, train, rng, trace, shared_pq)
            )
        return score_and_loss(reps, self.params.V, example.gold)

    def loss(
        self,
        example: MultiChoiceExample,
        train: bool = False,
        rng: Optional[np.random.Generator] = None,
        dropout: Optional[float] = None,
    ) -> Tensor:
        return self.forward(example, train=train, rng=rng, dropout=dropout).loss

    def predict(self, example: MultiChoiceExample) -> CandidateScores:
        return self.forward(example, train=False)

    def snapshot(self) -> Dict[str, np.ndarray]:
        return {name: tensor.data.copy() for name, tensor in self.named_parameters().items()}

    def restore(self, snapshot: Dict[str, np.ndarray]) -> None:
        """
        Copy values back into the existing parameter arrays.

        Raises:
            ShapeError: If a name is missing or a shape differs.
        """
        for name, tensor in self.named_parameters().items():
            if name not in snapshot:
                raise ShapeError(f"Snapshot has no parameter '{name}'")
            if snapshot[name].shape != tensor.shape:
                raise ShapeError(
                    f"Snapshot shape {snapshot[name].shape} for '{name}' differs from {tensor.shape}"
                )
            tensor.data[...] = snapshot[name]
