"""
kernels.py

Differentiable dense kernels on `Tensor`.

Features:
- Linear algebra: `matmul`, `transpose`.
- Normalization and activations: `softmax_rows`, `elementwise` (relu, sigmoid).
- Reductions: `maxpool_over_rows`, `sum_all`.
- Regularization: `dropout` (inverted scaling, exact identity in eval mode).
- Plumbing for the matching stack: `add`, `sub`, `mul`, `complement`, `concat`,
  `stack_rows`, `gather_rows`, `cross_entropy`.

Every kernel is a pure function of its inputs. Each one records a backward closure on
the active tape (see `tensor.py`) and is otherwise a plain numpy computation.

Author: FOX Techniques <ali.nabbi@fox-techniques.com>
"""

from typing import Literal, Sequence, Union

import numpy as np

from dual_comatch.errors.exceptions import EmptySequenceError, NonFiniteError, ShapeError, VocabularyError
from dual_comatch.numerics.tensor import Tensor, record

ActivationKind = Literal["relu", "sigmoid"]
DropoutMode = Literal["train", "eval"]

# Largest/smallest float64 strictly inside (0, 1).
_SIGMOID_CEIL = np.nextafter(1.0, 0.0)
_SIGMOID_FLOOR = np.nextafter(0.0, 1.0)


def _require_finite(tensor: Tensor, op: str) -> None:
    if not np.all(np.isfinite(tensor.data)):
        raise NonFiniteError(f"{op}: input contains NaN or Inf")


def _require_ndim(tensor: Tensor, ndim: int, op: str) -> None:
    if tensor.ndim != ndim:
        raise ShapeError(f"{op}: expected a {ndim}-D tensor, got shape {tensor.shape}")


def _require_same_shape(a: Tensor, b: Tensor, op: str) -> None:
    if a.shape != b.shape:
        raise ShapeError(f"{op}: shapes {a.shape} and {b.shape} differ")


def matmul(a: Tensor, b: Tensor) -> Tensor:
    """
    Matrix product supporting matrix@matrix, vector@matrix, matrix@vector and vector@vector.

    Raises:
        ShapeError: If the inner dimensions differ or an operand is a scalar.
    """
    if a.ndim == 0 or b.ndim == 0:
        raise ShapeError(f"matmul: scalar operand ({a.shape} x {b.shape})")
    inner_a = a.shape[-1]
    inner_b = b.shape[0]
    if inner_a != inner_b:
        raise ShapeError(
            f"matmul: cannot multiply {a.shape} by {b.shape} "
            f"(inner dimensions {inner_a} != {inner_b})"
        )
    a_data, b_data = a.data, b.data
    out = a_data @ b_data

    def backward(g: np.ndarray):
        if a_data.ndim == 2 and b_data.ndim == 2:
            return g @ b_data.T, a_data.T @ g
        if a_data.ndim == 1 and b_data.ndim == 2:
            return b_data @ g, np.outer(a_data, g)
        if a_data.ndim == 2 and b_data.ndim == 1:
            return np.outer(g, b_data), a_data.T @ g
        return g * b_data, g * a_data

    return record("matmul", np.asarray(out, dtype=np.float64), (a, b), backward)


def transpose(a: Tensor) -> Tensor:
    _require_ndim(a, 2, "transpose")
    return record("transpose", a.data.T.copy(), (a,), lambda g: (g.T,))


def add(a: Tensor, b: Tensor) -> Tensor:
    _require_same_shape(a, b, "add")
    return record("add", a.data + b.data, (a, b), lambda g: (g, g))


def sub(a: Tensor, b: Tensor) -> Tensor:
    _require_same_shape(a, b, "sub")
    return record("sub", a.data - b.data, (a, b), lambda g: (g, -g))


def mul(a: Tensor, b: Tensor) -> Tensor:
    """Elementwise product."""
    _require_same_shape(a, b, "mul")
    a_data, b_data = a.data, b.data
    return record("mul", a_data * b_data, (a, b), lambda g: (g * b_data, g * a_data))


def complement(a: Tensor) -> Tensor:
    """1 - a, elementwise."""
    return record("complement", 1.0 - a.data, (a,), lambda g: (-g,))


def _stable_softmax(values: np.ndarray) -> np.ndarray:
    shifted = values - np.max(values, axis=-1, keepdims=True)
    exp = np.exp(shifted)
    return exp / np.sum(exp, axis=-1, keepdims=True)


def softmax_rows(m: Tensor) -> Tensor:
    """
    Row-wise softmax with max subtraction.

    Raises:
        ShapeError: If `m` is not a matrix.
        NonFiniteError: If `m` has NaN or Inf entries.
    """
    _require_ndim(m, 2, "softmax_rows")
    _require_finite(m, "softmax_rows")
    probs = _stable_softmax(m.data)

    def backward(g: np.ndarray):
        inner = np.sum(g * probs, axis=1, keepdims=True)
        return (probs * (g - inner),)

    return record("softmax_rows", probs, (m,), backward)


def _sigmoid(x: np.ndarray) -> np.ndarray:
    out = np.empty_like(x)
    positive = x >= 0
    out[positive] = 1.0 / (1.0 + np.exp(-x[positive]))
    exp_x = np.exp(x[~positive])
    out[~positive] = exp_x / (1.0 + exp_x)
    return np.clip(out, _SIGMOID_FLOOR, _SIGMOID_CEIL)


def elementwise(m: Tensor, kind: ActivationKind) -> Tensor:
    """
    Apply relu or sigmoid entrywise.

    Sigmoid outputs are kept strictly inside (0, 1), also for saturated inputs.
    """
    _require_finite(m, f"elementwise[{kind}]")
    x = m.data
    if kind == "relu":
        mask = x > 0
        return record("relu", np.where(mask, x, 0.0), (m,), lambda g: (g * mask,))
    if kind == "sigmoid":
        s = _sigmoid(x)
        return record("sigmoid", s, (m,), lambda g: (g * s * (1.0 - s),))
    raise ValueError(f"Unknown activation kind '{kind}'")


def relu(m: Tensor) -> Tensor:
    return elementwise(m, "relu")


def sigmoid(m: Tensor) -> Tensor:
    return elementwise(m, "sigmoid")


def maxpool_over_rows(s: Tensor) -> Tensor:
    """
    Column-wise maximum over the rows of a T x l matrix.

    The gradient of each column flows to its argmax row only; ties go to the lowest row.

    Raises:
        EmptySequenceError: If the matrix has no rows.
    """
    _require_ndim(s, 2, "maxpool_over_rows")
    if s.shape[0] == 0:
        raise EmptySequenceError("maxpool_over_rows: sequence has no rows")
    _require_finite(s, "maxpool_over_rows")
    rows = np.argmax(s.data, axis=0)
    cols = np.arange(s.shape[1])
    shape = s.shape

    def backward(g: np.ndarray):
        grad = np.zeros(shape, dtype=np.float64)
        grad[rows, cols] = g
        return (grad,)

    return record("maxpool_over_rows", s.data[rows, cols].copy(), (s,), backward)


def dropout(
    m: Tensor,
    rate: float,
    mode: DropoutMode = "train",
    rng: Union[np.random.Generator, int, None] = None,
) -> Tensor:
    """
    Inverted dropout.

    Args:
        m (Tensor): Input.
        rate (float): Drop probability in [0, 1).
        mode (str): `train` drops and rescales survivors by 1 / (1 - rate); `eval` is the identity.
        rng (Generator | int | None): Generator or seed for the drop mask.

    Returns:
        Tensor: `m` itself in eval mode or at rate 0, otherwise the masked tensor.
    """
    if not 0.0 <= rate < 1.0:
        raise ValueError(f"dropout rate must be in [0, 1), got {rate}")
    if mode == "eval" or rate == 0.0:
        return m
    if mode != "train":
        raise ValueError(f"Unknown dropout mode '{mode}'")
    generator = rng if isinstance(rng, np.random.Generator) else np.random.default_rng(rng)
    keep = 1.0 - rate
    mask = generator.random(m.shape) >= rate
    return record("dropout", m.data * mask / keep, (m,), lambda g: (g * mask / keep,))


def sum_all(m: Tensor) -> Tensor:
    shape = m.shape
    return record(
        "sum_all", np.asarray(np.sum(m.data)), (m,), lambda g: (np.full(shape, float(g)),)
    )


def concat(vectors: Sequence[Tensor]) -> Tensor:
    """Concatenate 1-D tensors in order."""
    if not vectors:
        raise ShapeError("concat: nothing to concatenate")
    for v in vectors:
        _require_ndim(v, 1, "concat")
    bounds = np.cumsum([len(v) for v in vectors])[:-1]
    return record(
        "concat",
        np.concatenate([v.data for v in vectors]),
        tuple(vectors),
        lambda g: tuple(np.split(g, bounds)),
    )


def stack_rows(vectors: Sequence[Tensor]) -> Tensor:
    """Stack equal-length 1-D tensors into a matrix, one row per vector."""
    if not vectors:
        raise ShapeError("stack_rows: nothing to stack")
    for v in vectors:
        _require_ndim(v, 1, "stack_rows")
        _require_same_shape(v, vectors[0], "stack_rows")
    return record(
        "stack_rows",
        np.stack([v.data for v in vectors]),
        tuple(vectors),
        lambda g: tuple(g[i] for i in range(g.shape[0])),
    )


def gather_rows(table: Tensor, ids: Sequence[int]) -> Tensor:
    """
    Select rows of a matrix by index; the gradient scatters back into the selected rows.

    Raises:
        VocabularyError: If an id falls outside the table.
    """
    _require_ndim(table, 2, "gather_rows")
    index = np.asarray(ids, dtype=np.int64)
    if index.ndim != 1 or index.size == 0:
        raise EmptySequenceError("gather_rows: need at least one id")
    rows = table.shape[0]
    bad = index[(index < 0) | (index >= rows)]
    if bad.size:
        raise VocabularyError(f"Token id {int(bad[0])} out of range for {rows} embedding rows")
    shape = table.shape

    def backward(g: np.ndarray):
        grad = np.zeros(shape, dtype=np.float64)
        np.add.at(grad, index, g)
        return (grad,)

    return record("gather_rows", table.data[index].copy(), (table,), backward)


def cross_entropy(logits: Tensor, target: int) -> Tensor:
    """
    Negative log-softmax of `logits` at `target`, as a scalar.

    Raises:
        ShapeError: If logits is not a vector.
        IndexError: If target is out of range.
    """
    _require_ndim(logits, 1, "cross_entropy")
    if not 0 <= target < len(logits):
        raise IndexError(f"target {target} out of range for {len(logits)} logits")
    shifted = logits.data - np.max(logits.data)
    log_norm = np.log(np.sum(np.exp(shifted)))
    loss = log_norm - shifted[target]
    probs = np.exp(shifted - log_norm)

    def backward(g: np.ndarray):
        grad = probs.copy()
        grad[target] -= 1.0
        return (grad * g,)

    return record("cross_entropy", np.asarray(loss, dtype=np.float64), (logits,), backward)


def candidate_softmax(logits: Tensor) -> np.ndarray:
    """Softmax of a logit vector as plain probabilities (no gradient)."""
    _require_ndim(logits, 1, "candidate_softmax")
    return _stable_softmax(logits.data)


__all__ = [
    "matmul",
    "transpose",
    "add",
    "sub",
    "mul",
    "complement",
    "softmax_rows",
    "elementwise",
    "relu",
    "sigmoid",
    "maxpool_over_rows",
    "dropout",
    "sum_all",
    "concat",
    "stack_rows",
    "gather_rows",
    "cross_entropy",
    "candidate_softmax",
]
