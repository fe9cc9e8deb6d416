"""
objective.py

Triplet representation and the candidate-softmax objective.

Features:
- `triplet_representation`: matches (P, Q), (P, A) and optionally (Q, A) and concatenates
  the fused vectors into C.
- `candidate_logits`: V . C_i for every candidate.
- `score_and_loss`: candidate probabilities and -log p(gold) for any N >= 2, computed from
  logits relative to the first candidate.

Author: FOX Techniques <ali.nabbi@fox-techniques.com>
"""

from dataclasses import dataclass, field
from typing import Dict, Optional, Sequence

import numpy as np

from dual_comatch.encoder.base import EncodedTriplet
from dual_comatch.errors.exceptions import ShapeError
from dual_comatch.matching.bidirectional import PairTrace, bidirectional_match
from dual_comatch.matching.fusion import gated_fuse
from dual_comatch.matching.parameters import MatchParameters
from dual_comatch.numerics.kernels import candidate_softmax, concat, cross_entropy, matmul, stack_rows, sub
from dual_comatch.numerics.tensor import Tensor
from dual_comatch.schemas.config_schema import MatchConfig


@dataclass
class MatchTrace:
    """Pair traces keyed by pair name (`pq`, `pa`, `qa`)."""

    pairs: Dict[str, PairTrace] = field(default_factory=dict)

    def pair(self, name: str) -> PairTrace:
        return self.pairs.setdefault(name, PairTrace())


@dataclass(frozen=True)
class TripletRepresentation:
    """
    Fused pair vectors of one triplet and their concatenation C.

    `M_qa` is None when the question-answer pair is switched off.
    """

    M_pq: Tensor
    M_pa: Tensor
    M_qa: Optional[Tensor]
    C: Tensor

    def __len__(self) -> int:
        return len(self.C)


@dataclass(frozen=True)
class CandidateScores:
    """
    Attributes:
        probs (np.ndarray): Candidate distribution, length N.
        logits (Tensor): V . C_i per candidate.
        loss (Optional[Tensor]): -log probs[gold], None when scored without a gold index.
    """

    probs: np.ndarray
    logits: Tensor
    loss: Optional[Tensor]

    @property
    def prediction(self) -> int:
        # np.argmax returns the first maximum, so ties go to the lowest index.
        return int(np.argmax(self.probs))


def triplet_representation(
    enc: EncodedTriplet,
    mp: MatchParameters,
    cfg: MatchConfig,
    train: bool = False,
    rng: Optional[np.random.Generator] = None,
    trace: Optional[MatchTrace] = None,
    fused_pq: Optional[Tensor] = None,
) -> TripletRepresentation:
    """
    Build C = [M^pq; M^pa; M^qa] (or [M^pq; M^pa] without the q-a pair).

    `fused_pq` reuses an M^pq computed for another candidate of the same example;
    the passage-question pair does not depend on the answer.

    Raises:
        ShapeError: If the encoding and parameters disagree on the hidden size.
    """
    if enc.hidden_size != cfg.hidden_size:
        raise ShapeError(
            f"Encoded triplet has hidden size {enc.hidden_size}, configured {cfg.hidden_size}"
        )
    sequences = {
        "pq": (enc.passage, enc.question),
        "pa": (enc.passage, enc.answer),
        "qa": (enc.question, enc.answer),
    }
    active = ("pq", "pa", "qa") if cfg.use_qa_pair else ("pq", "pa")

    fused: Dict[str, Tensor] = {}
    if fused_pq is not None:
        if fused_pq.shape != (cfg.pair_size,):
            raise ShapeError(
                f"Reused M^pq has shape {fused_pq.shape}, configured ({cfg.pair_size},)"
            )
        fused["pq"] = fused_pq
    for name in active:
        if name in fused:
            continue
        hu, hv = sequences[name]
        pp = getattr(mp, name)
        pair_trace = trace.pair(name) if trace is not None else None
        s_u, s_v = bidirectional_match(hu, hv, pp, cfg, train=train, rng=rng, trace=pair_trace)
        fused[name] = gated_fuse(s_u, s_v, pp, cfg, trace=pair_trace)

    return TripletRepresentation(
        M_pq=fused["pq"],
        M_pa=fused["pa"],
        M_qa=fused.get("qa"),
        C=concat([fused[name] for name in active]),
    )


def candidate_logits(reps: Sequence[TripletRepresentation], V: Tensor) -> Tensor:
    """
    Raises:
        ShapeError: If fewer than two candidates are given or a C length differs from V.
    """
    if len(reps) < 2:
        raise ShapeError(f"Need at least 2 candidates, got {len(reps)}")
    for index, rep in enumerate(reps):
        if rep.C.shape != V.shape:
            raise ShapeError(
                f"Candidate {index} has representation length {len(rep.C)}, V has {V.shape[0]}"
            )
    return matmul(stack_rows([rep.C for rep in reps]), V)


def score_and_loss(
    reps: Sequence[TripletRepresentation], V: Tensor, gold: Optional[int] = None
) -> CandidateScores:
    """
    Score every candidate and compute the cross-entropy loss.

    Args:
        reps (Sequence[TripletRepresentation]): One representation per candidate.
        V (Tensor): Classifier vector.
        gold (Optional[int]): Correct candidate; the loss is skipped when None.

    Returns:
        CandidateScores: Probabilities, logits and loss.

    Raises:
        ShapeError: For fewer than two candidates or a length mismatch with V.
        IndexError: If gold is not a candidate index.
    """
    logits = candidate_logits(reps, V)
    if gold is not None and not 0 <= gold < len(reps):
        raise IndexError(f"gold {gold} out of range for {len(reps)} candidates")
    relative = relative_logits(reps, V)
    loss = cross_entropy(relative, gold) if gold is not None else None
    return CandidateScores(probs=candidate_softmax(relative), logits=logits, loss=loss)


def relative_logits(reps: Sequence[TripletRepresentation], V: Tensor) -> Tensor:
    """
    V . (C_i - C_0) per candidate.

    Equal to the logits up to a shift, so probabilities and loss are unchanged, but
    entries of C shared by every candidate (M^pq) cancel exactly.
    """
    base = reps[0].C
    return matmul(stack_rows([sub(rep.C, base) for rep in reps]), V)
