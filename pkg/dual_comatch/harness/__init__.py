"""
harness module

Optimization, evaluation, synthetic data and the ablation suite.

Submodules:
- optimizer: adam_step, OptimizerState, warmup and clipping helpers.
- trainer: train and evaluate.
- synthetic: generate_synthetic.
- ablation: run_ablation_suite and report formatting.

Author: FOX Techniques <ali.nabbi@fox-techniques.com>
"""

from .ablation import PUBLISHED_DELTAS, format_ablation_report, run_ablation_suite, variant_configs
from .optimizer import OptimizerState, adam_step, clip_gradients, learning_rate_at
from .synthetic import SyntheticSplits, generate_synthetic, synthetic_vocabulary
from .trainer import EvaluationResult, TrainingResult, evaluate, train

__all__ = [
    "PUBLISHED_DELTAS",
    "format_ablation_report",
    "run_ablation_suite",
    "variant_configs",
    "OptimizerState",
    "adam_step",
    "clip_gradients",
    "learning_rate_at",
    "SyntheticSplits",
    "generate_synthetic",
    "synthetic_vocabulary",
    "EvaluationResult",
    "TrainingResult",
    "evaluate",
    "train",
]
