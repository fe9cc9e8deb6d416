"""
dual_comatch package

Dual co-matching network for multi-choice reading comprehension, built on a small
float64 autodiff core.

Modules:
- `numerics`: Tensors, the gradient tape, kernels and finite-difference checks.
- `encoder`: Vocabulary, trainable lookup encoder and precomputed embeddings.
- `matching`: Bidirectional matching, gated fusion and the candidate objective.
- `models`: The model tying an encoder to the matching stack.
- `harness`: Optimizer, training loop, evaluation, synthetic task and ablations.
- `readers`: RACE-format and JSON-lines ingestion.
- `storage`: Binary model bundles.
- `commands`: The command-line surface.
- `config` / `errors` / `schemas` / `utils`: Shared infrastructure.

Author: FOX Techniques <ali.nabbi@fox-techniques.com>
"""

__version__ = "0.1.0"
