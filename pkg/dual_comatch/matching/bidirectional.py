"""
bidirectional.py

Bidirectional attention matching of one sequence pair.

Features:
- `dual` normalization: one row-softmax per direction, E^u = softmax(Hu W Hv^T) Hv and
  E^v = softmax(Hv W^T Hu^T) Hu.
- `literal` normalization: a single G = softmax(Hu W Hv^T), E^u = G Hv and E^v = G^T Hu.
- S^u = ReLU(E^u W1), S^v = ReLU(E^v W2), with dropout in training.
- Unidirectional configurations skip the S^v branch entirely.
- Optional `PairTrace` capture of every intermediate for inspection and tests.

Author: FOX Techniques <ali.nabbi@fox-techniques.com>
"""

from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from dual_comatch.errors.exceptions import ShapeError
from dual_comatch.matching.parameters import PairParameters
from dual_comatch.numerics.kernels import dropout, matmul, relu, softmax_rows, transpose
from dual_comatch.numerics.tensor import Tensor
from dual_comatch.schemas.config_schema import MatchConfig


@dataclass
class PairTrace:
    """
    Intermediates of one matched pair, filled in as they are computed.

    `G_v` stays None in literal mode, which reuses `G_u`. Every `v` entry stays None
    in unidirectional mode.
    """

    G_u: Optional[Tensor] = None
    G_v: Optional[Tensor] = None
    E_u: Optional[Tensor] = None
    E_v: Optional[Tensor] = None
    S_u: Optional[Tensor] = None
    S_v: Optional[Tensor] = None
    M_u: Optional[Tensor] = None
    M_v: Optional[Tensor] = None
    gate: Optional[Tensor] = None
    fused: Optional[Tensor] = None


def _check_pair(hu: Tensor, hv: Tensor, pp: PairParameters) -> None:
    for role, matrix in (("Hu", hu), ("Hv", hv)):
        if matrix.ndim != 2:
            raise ShapeError(f"{role} must be a matrix, got shape {matrix.shape}")
    if hu.shape[1] != hv.shape[1]:
        raise ShapeError(f"Hidden sizes differ: Hu has {hu.shape[1]}, Hv has {hv.shape[1]}")
    if hu.shape[1] != pp.hidden_size:
        raise ShapeError(
            f"Sequences have hidden size {hu.shape[1]}, pair parameters {pp.hidden_size}"
        )


def bidirectional_match(
    hu: Tensor,
    hv: Tensor,
    pp: PairParameters,
    cfg: MatchConfig,
    train: bool = False,
    rng: Optional[np.random.Generator] = None,
    trace: Optional[PairTrace] = None,
) -> Tuple[Tensor, Optional[Tensor]]:
    """
    Match two sequences in both directions.

    Args:
        hu (Tensor): |U| x l.
        hv (Tensor): |V| x l.
        pp (PairParameters): Parameters of this pair.
        cfg (MatchConfig): Normalization mode, direction and dropout rate.
        train (bool): Apply matching dropout.
        rng (Optional[np.random.Generator]): Dropout generator, used only when training.
        trace (Optional[PairTrace]): Receives the intermediates when given.

    Returns:
        Tuple[Tensor, Optional[Tensor]]: (S^u, S^v); S^v is None for unidirectional matching.

    Raises:
        ShapeError: If the hidden sizes disagree.
    """
    _check_pair(hu, hv, pp)
    mode = "train" if train else "eval"
    bidirectional = cfg.direction == "bidirectional"

    scores = matmul(matmul(hu, pp.W), transpose(hv))
    g_u = softmax_rows(scores)
    e_u = matmul(g_u, hv)
    s_u = dropout(relu(matmul(e_u, pp.W1)), cfg.matching_dropout, mode, rng)

    g_v = e_v = s_v = None
    if bidirectional:
        if cfg.attention_normalization == "dual":
            g_v = softmax_rows(transpose(scores))
            e_v = matmul(g_v, hu)
        else:
            e_v = matmul(transpose(g_u), hu)
        s_v = dropout(relu(matmul(e_v, pp.W2)), cfg.matching_dropout, mode, rng)

    if trace is not None:
        trace.G_u, trace.G_v, trace.E_u, trace.E_v = g_u, g_v, e_u, e_v
        trace.S_u, trace.S_v = s_u, s_v
    return s_u, s_v
