"""
optimizer.py

Adam with linear warmup and global-norm gradient clipping.

Features:
- Bias-corrected Adam (beta1 0.9, beta2 0.999, eps 1e-8).
- Learning rate rises linearly over the warmup fraction of all steps, then stays constant.
- Gradients are clipped to a global norm before the update (0 disables clipping).
- Steps with non-finite gradients are skipped and logged; state and parameters stay untouched.

Author: FOX Techniques <ali.nabbi@fox-techniques.com>
"""

from dataclasses import dataclass, field
from typing import Dict, Mapping, Optional, Tuple

import numpy as np
from hestia_logger import get_logger

from dual_comatch.errors.exceptions import ShapeError
from dual_comatch.numerics.tensor import Tensor
from dual_comatch.schemas.config_schema import TrainConfig

logger = get_logger("dmn_logger")

BETA1 = 0.9
BETA2 = 0.999
EPSILON = 1e-8


@dataclass
class OptimizerState:
    """
    Adam moments per parameter name and the number of applied steps.
    """

    first_moment: Dict[str, np.ndarray] = field(default_factory=dict)
    second_moment: Dict[str, np.ndarray] = field(default_factory=dict)
    step: int = 0

    @classmethod
    def for_parameters(cls, params: Mapping[str, Tensor]) -> "OptimizerState":
        return cls(
            first_moment={name: np.zeros_like(t.data) for name, t in params.items()},
            second_moment={name: np.zeros_like(t.data) for name, t in params.items()},
        )


def learning_rate_at(step: int, total_steps: int, cfg: TrainConfig) -> float:
    """
    Learning rate of the 1-based optimizer step `step`.
    """
    warmup_steps = int(cfg.warmup_fraction * total_steps)
    if warmup_steps <= 0:
        return cfg.learning_rate
    return cfg.learning_rate * min(1.0, step / warmup_steps)


def clip_gradients(
    grads: Mapping[str, np.ndarray], max_norm: float
) -> Tuple[Dict[str, np.ndarray], float]:
    """
    Scale all gradients together so their global L2 norm is at most `max_norm`.

    Returns:
        Tuple[Dict[str, np.ndarray], float]: Clipped gradients and the norm before clipping.
    """
    norm = float(np.sqrt(sum(float(np.sum(g * g)) for g in grads.values())))
    if max_norm <= 0 or norm <= max_norm:
        return dict(grads), norm
    scale = max_norm / norm
    return {name: g * scale for name, g in grads.items()}, norm


def adam_step(
    params: Mapping[str, Tensor],
    grads: Mapping[str, np.ndarray],
    state: OptimizerState,
    cfg: TrainConfig,
    total_steps: Optional[int] = None,
) -> bool:
    """
    Apply one Adam update in place.

    Args:
        params (Mapping[str, Tensor]): Parameters by name.
        grads (Mapping[str, np.ndarray]): Gradients by the same names.
        state (OptimizerState): Moments and step counter, updated in place.
        cfg (TrainConfig): Learning rate, warmup fraction and clipping threshold.
        total_steps (Optional[int]): Planned number of steps; warmup is off when omitted.

    Returns:
        bool: False when the step was skipped because of non-finite gradients.

    Raises:
        ShapeError: If a gradient is missing or its shape differs from its parameter.
    """
    for name, tensor in params.items():
        if name not in grads:
            raise ShapeError(f"No gradient for parameter '{name}'")
        if grads[name].shape != tensor.shape:
            raise ShapeError(
                f"Gradient for '{name}' has shape {grads[name].shape}, parameter {tensor.shape}"
            )

    bad = [name for name in params if not np.all(np.isfinite(grads[name]))]
    if bad:
        logger.warning(f"Skipping optimizer step {state.step + 1}: non-finite gradients in {bad}")
        return False

    clipped, _ = clip_gradients({name: grads[name] for name in params}, cfg.gradient_clip_norm)
    step = state.step + 1
    lr = learning_rate_at(step, total_steps, cfg) if total_steps else cfg.learning_rate
    correction1 = 1.0 - BETA1**step
    correction2 = 1.0 - BETA2**step

    for name, tensor in params.items():
        g = clipped[name]
        m = state.first_moment.setdefault(name, np.zeros_like(tensor.data))
        v = state.second_moment.setdefault(name, np.zeros_like(tensor.data))
        m *= BETA1
        m += (1.0 - BETA1) * g
        v *= BETA2
        v += (1.0 - BETA2) * g * g
        tensor.data -= lr * (m / correction1) / (np.sqrt(v / correction2) + EPSILON)

    state.step = step
    return True
