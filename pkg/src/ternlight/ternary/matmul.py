"""Integer-accumulation matrix-vector kernels for packed low-bit weights.

All kernels accumulate code * int8 products in integers (int32 partials,
int64 row sums) and apply the combined weight/activation scale once at the
end, so the direct kernel, the lookup-table kernel, and any faithful
unpacked reference produce bit-identical float64 outputs.

The LUT kernel follows the grouped-activation scheme: activations are split
into groups of 4 consecutive entries, and for each group the 81 reachable
signed partial sums are tabulated, indexed by the group's packed weight byte
(the reserved code 11 never occurs in a valid matrix). Rows then reduce to
one table gather per group. Columns not divisible by 4 fall into a
zero-padded tail group.

Overflow bound: int32 group partials hold up to 4 * 127; int64 row
accumulation is exact for any cols <= 2**55.
"""

from __future__ import annotations

import numpy as np

from .packing import TRIT_DECODE, packed_length
from .quantize import QuantizedActivation, TernaryMatrix, TwoBitMatrix

__all__ = ["ternary_matvec", "lut_matvec", "twobit_matvec", "float_matvec"]

LUT_GROUP = 4


def _check_dims(cols: int, x: QuantizedActivation) -> None:
    if cols != len(x.values):
        raise ValueError(f"dimension mismatch: matrix cols {cols} vs vector length {len(x.values)}")


def _finish(acc: np.ndarray, w_scale: float, x_scale: float) -> np.ndarray:
    return acc.astype(np.float64) * (np.float64(w_scale) * np.float64(x_scale))


def ternary_matvec(T: TernaryMatrix, x: QuantizedActivation) -> np.ndarray:
    """out[r] = T.scale * x.scale * sum_c code(r,c) * x.values[c]."""
    _check_dims(T.cols, x)
    codes = T.unpack().astype(np.int32)
    acc = codes @ x.values.astype(np.int32)
    return _finish(acc.astype(np.int64), T.scale, x.scale)


def lut_matvec(T: TernaryMatrix, x: QuantizedActivation) -> np.ndarray:
    """Grouped lookup-table kernel; bit-exact equal to ternary_matvec."""
    _check_dims(T.cols, x)
    ngroups = packed_length(T.cols)
    xpad = np.zeros(ngroups * LUT_GROUP, dtype=np.int32)
    xpad[: T.cols] = x.values
    # tables[g, b] = sum_k decode(b)[k] * x[4g + k], for all 256 byte values
    tables = xpad.reshape(ngroups, LUT_GROUP) @ TRIT_DECODE.astype(np.int32).T
    row_bytes = T.row_packed()
    gathered = tables[np.arange(ngroups)[None, :], row_bytes]
    acc = gathered.sum(axis=1, dtype=np.int64)
    return _finish(acc, T.scale, x.scale)


def twobit_matvec(M: TwoBitMatrix, x: QuantizedActivation) -> np.ndarray:
    """Direct integer kernel for 2-bit matrices."""
    _check_dims(M.cols, x)
    codes = M.unpack().astype(np.int32)
    acc = codes @ x.values.astype(np.int32)
    return _finish(acc.astype(np.int64), M.scale, x.scale)


def float_matvec(W: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Dense float baseline used for benchmark comparison."""
    if W.shape[1] != x.shape[0]:
        raise ValueError(f"dimension mismatch: {W.shape} vs {x.shape}")
    return W @ x
