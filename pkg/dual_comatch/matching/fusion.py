"""
fusion.py

Pools the matched sequences of one pair and fuses them into a single vector.

Author: FOX Techniques <ali.nabbi@fox-techniques.com>
"""

from typing import Optional

from dual_comatch.errors.exceptions import ShapeError
from dual_comatch.matching.bidirectional import PairTrace
from dual_comatch.matching.parameters import PairParameters
from dual_comatch.numerics.kernels import add, complement, concat, matmul, maxpool_over_rows, mul, sigmoid
from dual_comatch.numerics.tensor import Tensor
from dual_comatch.schemas.config_schema import MatchConfig


def gated_fuse(
    s_u: Tensor,
    s_v: Optional[Tensor],
    pp: PairParameters,
    cfg: MatchConfig,
    trace: Optional[PairTrace] = None,
) -> Tensor:
    """
    Row-wise max pooling followed by the configured fusion.

    gated:          g = sigmoid(M^u W3 + M^v W4 + b), out = g * M^u + (1 - g) * M^v
    concat:         out = [M^u; M^v]
    unidirectional: out = M^u

    Args:
        s_u (Tensor): |U| x l.
        s_v (Optional[Tensor]): |V| x l, None for unidirectional matching.
        pp (PairParameters): W3, W4 and b of this pair.
        cfg (MatchConfig): Direction and fusion switches.
        trace (Optional[PairTrace]): Receives M^u, M^v, the gate and the output.

    Returns:
        Tensor: A vector of length `cfg.pair_size`.
    """
    l = pp.hidden_size
    if s_u.ndim != 2 or s_u.shape[1] != l:
        raise ShapeError(f"S^u has shape {s_u.shape}, expected (*, {l})")
    m_u = maxpool_over_rows(s_u)
    m_v = gate = None

    if cfg.direction == "unidirectional":
        out = m_u
    else:
        if s_v is None:
            raise ShapeError("Bidirectional fusion needs S^v")
        if s_v.ndim != 2 or s_v.shape[1] != l:
            raise ShapeError(f"S^v has shape {s_v.shape}, expected (*, {l})")
        m_v = maxpool_over_rows(s_v)
        if cfg.fusion == "concat":
            out = concat([m_u, m_v])
        else:
            gate = sigmoid(add(add(matmul(m_u, pp.W3), matmul(m_v, pp.W4)), pp.b))
            out = add(mul(gate, m_u), mul(complement(gate), m_v))

    if trace is not None:
        trace.M_u, trace.M_v, trace.gate, trace.fused = m_u, m_v, gate, out
    return out
