"""Absmean ternary / 2-bit weight quantization and int8 activation quantization.

Weights are quantized per-tensor: the scale is the mean absolute value of the
tensor (floored at 1e-8), and each entry is round(w / scale) clipped to the
code range. Activations use absmax int8: scale = max|x| / 127, with an
all-zero vector mapping to zero codes and scale 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .packing import (
    pack_2bit,
    pack_trits,
    packed_length,
    unpack_2bit,
    unpack_trits,
)

__all__ = [
    "QuantizationError",
    "TernaryMatrix",
    "TwoBitMatrix",
    "QuantizedActivation",
    "quantize_absmean",
    "quantize_2bit",
    "quantize_activation",
    "SCALE_FLOOR",
]

SCALE_FLOOR = 1e-8


class QuantizationError(ValueError):
    """Input outside the quantizer's domain (non-finite, empty, bad scale)."""


@dataclass
class TernaryMatrix:
    """Bit-packed {-1, 0, +1} weight matrix with a per-tensor scale.

    codes holds rows*cols trits packed row-major, 4 per byte. Instances are
    immutable by convention and safe to share across threads.
    """

    rows: int
    cols: int
    codes: bytes
    scale: float
    _row_packed: np.ndarray | None = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise QuantizationError("matrix must be non-empty")
        expected = packed_length(self.rows * self.cols)
        if len(self.codes) != expected:
            raise QuantizationError(
                f"codes length {len(self.codes)} != ceil(rows*cols/4) = {expected}"
            )
        if not (np.isfinite(self.scale) and self.scale > 0):
            raise QuantizationError(f"scale must be positive and finite, got {self.scale}")

    def unpack(self) -> np.ndarray:
        """Decode to an int8 matrix of shape (rows, cols)."""
        return unpack_trits(self.codes, self.rows * self.cols).reshape(self.rows, self.cols)

    def dequantize(self, dtype=np.float32) -> np.ndarray:
        return self.unpack().astype(dtype) * dtype(self.scale)

    def row_packed(self) -> np.ndarray:
        """Byte-aligned per-row packing, shape (rows, ceil(cols/4)) uint8.

        Tail bit-pairs of each row are zero (code 0), so group kernels see a
        zero-padded final group. Cached after first use.
        """
        if self._row_packed is None:
            per_row = packed_length(self.cols)
            if self.cols % 4 == 0:
                aligned = np.frombuffer(self.codes, dtype=np.uint8).reshape(
                    self.rows, per_row
                )
            else:
                trits = self.unpack()
                rows = [pack_trits(trits[r]) for r in range(self.rows)]
                aligned = np.frombuffer(b"".join(rows), dtype=np.uint8).reshape(
                    self.rows, per_row
                )
            object.__setattr__(self, "_row_packed", aligned)
        return self._row_packed

    @property
    def nbytes(self) -> int:
        return len(self.codes)


@dataclass
class TwoBitMatrix:
    """Packed 2-bit integer matrix, codes in {-2, -1, 0, +1}, value = code * scale."""

    rows: int
    cols: int
    codes: bytes
    scale: float

    def __post_init__(self):
        expected = packed_length(self.rows * self.cols)
        if len(self.codes) != expected:
            raise QuantizationError(
                f"codes length {len(self.codes)} != ceil(rows*cols/4) = {expected}"
            )
        if not (np.isfinite(self.scale) and self.scale > 0):
            raise QuantizationError(f"scale must be positive and finite, got {self.scale}")

    def unpack(self) -> np.ndarray:
        return unpack_2bit(self.codes, self.rows * self.cols).reshape(self.rows, self.cols)

    def dequantize(self, dtype=np.float32) -> np.ndarray:
        return self.unpack().astype(dtype) * dtype(self.scale)

    @property
    def nbytes(self) -> int:
        return len(self.codes)


@dataclass
class QuantizedActivation:
    """Absmax-quantized int8 vector; real value ~= values[i] * scale."""

    values: np.ndarray
    scale: float

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=np.int8)

    def dequantize(self, dtype=np.float64) -> np.ndarray:
        return self.values.astype(dtype) * dtype(self.scale)

    def __len__(self) -> int:
        return len(self.values)


def _check_finite(arr: np.ndarray, what: str) -> None:
    if arr.size == 0:
        raise QuantizationError(f"{what} must be non-empty")
    if not np.isfinite(arr).all():
        raise QuantizationError(f"{what} contains non-finite values")


def quantize_absmean(W) -> TernaryMatrix:
    """Quantize a real matrix to ternary codes with absmean scaling.

    scale = max(mean|W|, 1e-8); code = clip(round(W / scale), -1, +1).
    """
    W = np.asarray(W, dtype=np.float64)
    if W.ndim != 2:
        raise QuantizationError(f"expected a 2-d matrix, got ndim={W.ndim}")
    _check_finite(W, "weight matrix")
    gamma = max(float(np.mean(np.abs(W))), SCALE_FLOOR)
    codes = np.clip(np.round(W / gamma), -1, 1).astype(np.int8)
    return TernaryMatrix(
        rows=W.shape[0], cols=W.shape[1], codes=pack_trits(codes), scale=gamma
    )


def quantize_2bit(W) -> TwoBitMatrix:
    """Quantize a real matrix to 2-bit codes {-2, -1, 0, +1}, absmean scaling."""
    W = np.asarray(W, dtype=np.float64)
    if W.ndim != 2:
        raise QuantizationError(f"expected a 2-d matrix, got ndim={W.ndim}")
    _check_finite(W, "weight matrix")
    gamma = max(float(np.mean(np.abs(W))), SCALE_FLOOR)
    codes = np.clip(np.round(W / gamma), -2, 1).astype(np.int8)
    return TwoBitMatrix(
        rows=W.shape[0], cols=W.shape[1], codes=pack_2bit(codes), scale=gamma
    )


def quantize_activation(x) -> QuantizedActivation:
    """Quantize a real vector to int8 with absmax scaling."""
    x = np.asarray(x, dtype=np.float64).reshape(-1)
    _check_finite(x, "activation vector")
    absmax = float(np.max(np.abs(x)))
    if absmax == 0.0:
        return QuantizedActivation(np.zeros(x.size, dtype=np.int8), 1.0)
    scale = absmax / 127.0
    values = np.clip(np.round(x / scale), -127, 127).astype(np.int8)
    return QuantizedActivation(values, scale)
