"""
diagnostics.py

End-to-end gradient verification of the full model on small random instances.

Random cases draw embeddings and the classifier from U(-1, 1), which keeps attention
away from uniform and every used gradient entry well above finite-difference noise.

Author: FOX Techniques <ali.nabbi@fox-techniques.com>
"""

from typing import Tuple

from dual_comatch.config import Config
from dual_comatch.encoder.vocabulary import Vocabulary
from dual_comatch.models.dmn_model import DualCoMatchModel
from dual_comatch.numerics.gradcheck import finite_diff_check
from dual_comatch.schemas.config_schema import MatchConfig
from dual_comatch.schemas.example_schema import MultiChoiceExample
from dual_comatch.schemas.metrics_schema import GradReport
from dual_comatch.utils.seed_utils import derive_rng

WORDS = tuple(f"w{i}" for i in range(12))
MAX_SPAN = 5
CASE_SCALE = 1.0


def random_case(
    cfg: MatchConfig, seed: int, num_candidates: int = 4
) -> Tuple[DualCoMatchModel, MultiChoiceExample]:
    """
    A model with U(-1, 1) embeddings and classifier, and one random example of short spans.
    """
    rng = derive_rng(seed, "gradcheck")

    def span() -> str:
        length = int(rng.integers(1, MAX_SPAN + 1))
        return " ".join(str(w) for w in rng.choice(WORDS, size=length))

    example = MultiChoiceExample(
        id=f"gradcheck-{seed}",
        passage=span(),
        question=span(),
        candidates=[span() for _ in range(num_candidates)],
        gold=int(rng.integers(0, num_candidates)),
    )
    model = DualCoMatchModel.build_lookup(cfg, Vocabulary(WORDS), seed)
    embeddings = model.encoder.table.weights
    embeddings.data[...] = rng.uniform(-CASE_SCALE, CASE_SCALE, embeddings.shape)
    model.params.V.data[...] = rng.uniform(-CASE_SCALE, CASE_SCALE, model.params.V.shape)
    return model, example


def gradient_check_model(
    cfg: MatchConfig,
    seed: int,
    h: float = Config.GRADCHECK_STEP,
    tol: float = Config.GRADCHECK_TOL,
    num_candidates: int = 4,
) -> GradReport:
    """
    Finite-difference check over every parameter group with dropout off.
    """
    model, example = random_case(cfg, seed, num_candidates)
    return finite_diff_check(
        lambda: model.loss(example, train=False), model.named_parameters(), h=h, tol=tol
    )
