"""
matching module

Bidirectional pair matching, gated fusion and the candidate objective.

Submodules:
- parameters: PairParameters and MatchParameters.
- bidirectional: bidirectional_match and PairTrace.
- fusion: gated_fuse.
- objective: triplet_representation, score_and_loss.

Author: FOX Techniques <ali.nabbi@fox-techniques.com>
"""

from .bidirectional import PairTrace, bidirectional_match
from .fusion import gated_fuse
from .objective import (
    CandidateScores,
    MatchTrace,
    TripletRepresentation,
    candidate_logits,
    relative_logits,
    score_and_loss,
    triplet_representation,
)
from .parameters import PAIR_NAMES, MatchParameters, PairParameters

__all__ = [
    "PairTrace",
    "bidirectional_match",
    "gated_fuse",
    "CandidateScores",
    "MatchTrace",
    "TripletRepresentation",
    "candidate_logits",
    "relative_logits",
    "score_and_loss",
    "triplet_representation",
    "PAIR_NAMES",
    "MatchParameters",
    "PairParameters",
]
