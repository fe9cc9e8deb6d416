"""
tensor.py

Dense 64-bit tensors and the define-by-run tape used for reverse-mode differentiation.

Features:
- `Tensor`: a float64 matrix (2-D), vector (1-D) or scalar (0-D) with optional gradient storage.
- `Tape`: ordered record of executed operations, activated with a `with` block.
- `Tape.backward`: visits every recorded node once, in reverse order, and accumulates
  gradients into the parameter leaves.

A tape is bound to the current context (`contextvars`), so threads evaluating the model
concurrently never share a tape. Outside an active tape every operation produces a constant.

Author: FOX Techniques <ali.nabbi@fox-techniques.com>
"""

from __future__ import annotations

import contextvars
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from dual_comatch.errors.exceptions import ShapeError

BackwardFn = Callable[[np.ndarray], Sequence[Optional[np.ndarray]]]

_active_tape: contextvars.ContextVar[Optional["Tape"]] = contextvars.ContextVar(
    "dmn_active_tape", default=None
)


class Tensor:
    """
    A float64 array with optional gradient tracking.

    Leaves created with `requires_grad=True` are parameters: they own a `grad`
    buffer that `Tape.backward` accumulates into. Results of operations never
    own a buffer.
    """

    __slots__ = ("data", "grad", "requires_grad", "name")

    def __init__(self, data, requires_grad: bool = False, name: Optional[str] = None):
        array = np.array(data, dtype=np.float64, order="C")
        if array.ndim > 2:
            raise ShapeError(f"Tensors are at most 2-D, got shape {array.shape}")
        self.data: np.ndarray = array
        self.requires_grad = requires_grad
        self.grad: Optional[np.ndarray] = np.zeros_like(array) if requires_grad else None
        self.name = name

    @classmethod
    def _result(cls, data: np.ndarray, requires_grad: bool) -> "Tensor":
        out = cls.__new__(cls)
        out.data = data
        out.requires_grad = requires_grad
        out.grad = None
        out.name = None
        return out

    @property
    def shape(self) -> Tuple[int, ...]:
        return self.data.shape

    @property
    def ndim(self) -> int:
        return self.data.ndim

    @property
    def is_leaf(self) -> bool:
        return self.grad is not None

    def zero_grad(self) -> None:
        if self.grad is not None:
            self.grad.fill(0.0)

    def item(self) -> float:
        if self.data.size != 1:
            raise ShapeError(f"item() needs a single value, got shape {self.shape}")
        return float(self.data.reshape(()))

    def numpy(self) -> np.ndarray:
        return self.data

    def __len__(self) -> int:
        return self.data.shape[0]

    def __repr__(self) -> str:
        label = f", name={self.name!r}" if self.name else ""
        return f"Tensor(shape={self.shape}, requires_grad={self.requires_grad}{label})"


def parameter(data, name: Optional[str] = None) -> Tensor:
    """Create a trainable leaf tensor."""
    return Tensor(data, requires_grad=True, name=name)


def constant(data) -> Tensor:
    """Create a tensor that never receives gradients."""
    return Tensor(data, requires_grad=False)


@dataclass
class TapeNode:
    op: str
    output: Tensor
    inputs: Tuple[Tensor, ...]
    backward_fn: BackwardFn


class Tape:
    """
    Define-by-run record of differentiable operations.

    Usage:
        with Tape() as tape:
            loss = model.loss(example)
        tape.backward(loss)
    """

    def __init__(self):
        self.nodes: List[TapeNode] = []
        self._token: Optional[contextvars.Token] = None

    def __enter__(self) -> "Tape":
        self._token = _active_tape.set(self)
        return self

    def __exit__(self, exc_type, exc, tb) -> None:
        if self._token is not None:
            _active_tape.reset(self._token)
            self._token = None

    def __len__(self) -> int:
        return len(self.nodes)

    def record(
        self, op: str, output: Tensor, inputs: Tuple[Tensor, ...], backward_fn: BackwardFn
    ) -> None:
        self.nodes.append(TapeNode(op, output, inputs, backward_fn))

    def backward(self, loss: Tensor) -> None:
        """
        Propagate d(loss)/d(node) back through the tape into parameter leaves.

        Args:
            loss (Tensor): A 0-D tensor; a constant loss leaves every gradient untouched.

        Raises:
            ShapeError: If the loss is not a scalar.
        """
        if loss.ndim != 0:
            raise ShapeError(f"backward() needs a scalar loss, got shape {loss.shape}")

        pending: Dict[int, np.ndarray] = {id(loss): np.ones((), dtype=np.float64)}
        leaves: Dict[int, Tensor] = {}

        for node in reversed(self.nodes):
            upstream = pending.pop(id(node.output), None)
            if upstream is None:
                continue
            for tensor, grad in zip(node.inputs, node.backward_fn(upstream)):
                if grad is None or not tensor.requires_grad:
                    continue
                key = id(tensor)
                if tensor.is_leaf:
                    leaves[key] = tensor
                pending[key] = pending[key] + grad if key in pending else grad

        for key, tensor in leaves.items():
            tensor.grad += pending[key]


def active_tape() -> Optional[Tape]:
    return _active_tape.get()


def record(op: str, data: np.ndarray, inputs: Tuple[Tensor, ...], backward_fn: BackwardFn) -> Tensor:
    """
    Wrap an operation result and record it on the active tape when needed.

    The result tracks gradients only if a tape is active and some input tracks them.
    """
    tape = _active_tape.get()
    tracked = tape is not None and any(t.requires_grad for t in inputs)
    out = Tensor._result(data, tracked)
    if tracked:
        tape.record(op, out, inputs, backward_fn)
    return out
