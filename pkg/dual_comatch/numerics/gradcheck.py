"""
gradcheck.py

Independent finite-difference verification of tape gradients.

Features:
- Central differences (f(θ+h) - f(θ-h)) / 2h for every entry of every parameter.
- Relative error |a - n| / max(|a|, |n|, 1e-8) per entry, reduced to a maximum per parameter.
- Accepts externally supplied analytic gradients so the detector itself can be tested.

Author: FOX Techniques <ali.nabbi@fox-techniques.com>
"""

from typing import Callable, Dict, Mapping, Optional

import numpy as np
from hestia_logger import get_logger

from dual_comatch.config import Config
from dual_comatch.numerics.tensor import Tape, Tensor
from dual_comatch.schemas.metrics_schema import GradReport

logger = get_logger("dmn_logger")

RELATIVE_ERROR_FLOOR = 1e-8


def relative_error(analytic: np.ndarray, numeric: np.ndarray) -> np.ndarray:
    scale = np.maximum(np.maximum(np.abs(analytic), np.abs(numeric)), RELATIVE_ERROR_FLOOR)
    return np.abs(analytic - numeric) / scale


def analytic_gradients(
    loss_fn: Callable[[], Tensor], params: Mapping[str, Tensor]
) -> Dict[str, np.ndarray]:
    """
    Run `loss_fn` under a fresh tape and return copies of the parameter gradients.
    """
    for tensor in params.values():
        tensor.zero_grad()
    with Tape() as tape:
        loss = loss_fn()
    tape.backward(loss)
    grads = {name: tensor.grad.copy() for name, tensor in params.items()}
    for tensor in params.values():
        tensor.zero_grad()
    return grads


def numeric_gradient(
    loss_fn: Callable[[], Tensor], tensor: Tensor, h: float
) -> np.ndarray:
    """
    Central-difference gradient of `loss_fn` with respect to every entry of `tensor`.

    The tensor is perturbed in place and restored bit-exactly afterwards.
    """
    flat = tensor.data.reshape(-1)
    grad = np.zeros_like(flat)
    for i in range(flat.size):
        original = flat[i]
        flat[i] = original + h
        upper = loss_fn().item()
        flat[i] = original - h
        lower = loss_fn().item()
        flat[i] = original
        grad[i] = (upper - lower) / (2.0 * h)
    return grad.reshape(tensor.shape)


def finite_diff_check(
    loss_fn: Callable[[], Tensor],
    params: Mapping[str, Tensor],
    h: float = Config.GRADCHECK_STEP,
    tol: float = Config.GRADCHECK_TOL,
    analytic: Optional[Mapping[str, np.ndarray]] = None,
) -> GradReport:
    """
    Compare analytic gradients against central differences.

    Args:
        loss_fn (Callable[[], Tensor]): Deterministic scalar loss (dropout disabled).
        params (Mapping[str, Tensor]): Parameters to verify, by name.
        h (float): Finite-difference step, > 0.
        tol (float): Maximum accepted relative error.
        analytic (Optional[Mapping[str, np.ndarray]]): Gradients to verify; computed
            with the tape when omitted.

    Returns:
        GradReport: Maximum relative error per parameter and the pass flag.
    """
    if h <= 0:
        raise ValueError(f"Finite-difference step must be positive, got {h}")

    grads = dict(analytic) if analytic is not None else analytic_gradients(loss_fn, params)

    errors: Dict[str, float] = {}
    for name, tensor in params.items():
        numeric = numeric_gradient(loss_fn, tensor, h)
        errors[name] = float(np.max(relative_error(grads[name], numeric), initial=0.0))

    passed = all(error <= tol for error in errors.values())
    report = GradReport(max_relative_error=errors, step=h, tolerance=tol, passed=passed)
    if passed:
        logger.info(f"Gradient check passed: max relative error {report.worst:.3e}")
    else:
        logger.warning(
            f"Gradient check failed: {report.worst_parameter} has relative error "
            f"{report.worst:.3e} > {tol:.1e}"
        )
    return report
