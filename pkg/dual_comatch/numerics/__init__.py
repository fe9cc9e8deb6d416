"""
numerics module

Dense float64 kernels with reverse-mode gradients and a finite-difference checker.

Submodules:
- tensor: Tensor, Tape and backward propagation.
- kernels: Differentiable operations used by the matching stack.
- gradcheck: finite_diff_check and helpers.

Author: FOX Techniques <ali.nabbi@fox-techniques.com>
"""

from .gradcheck import finite_diff_check
from .kernels import (
    add,
    candidate_softmax,
    complement,
    concat,
    cross_entropy,
    dropout,
    elementwise,
    gather_rows,
    matmul,
    maxpool_over_rows,
    mul,
    relu,
    sigmoid,
    softmax_rows,
    stack_rows,
    sub,
    sum_all,
    transpose,
)
from .tensor import Tape, Tensor, constant, parameter

__all__ = [
    "Tape",
    "Tensor",
    "constant",
    "parameter",
    "finite_diff_check",
    "add",
    "candidate_softmax",
    "complement",
    "concat",
    "cross_entropy",
    "dropout",
    "elementwise",
    "gather_rows",
    "matmul",
    "maxpool_over_rows",
    "mul",
    "relu",
    "sigmoid",
    "softmax_rows",
    "stack_rows",
    "sub",
    "sum_all",
    "transpose",
]
