"""Binary weight-block serialization.

Ternary block layout (little-endian throughout):

    magic "BTRL" | version u16 | rows u32 | cols u32 | scale f64 | packed codes

Full-precision blocks use the same header shape under the "BF32" magic and
carry row-major float32 data instead of packed codes.
"""

from __future__ import annotations

import struct
from typing import BinaryIO

import numpy as np

from .packing import packed_length
from .quantize import TernaryMatrix

__all__ = [
    "BlockFormatError",
    "TERNARY_MAGIC",
    "FLOAT_MAGIC",
    "BLOCK_VERSION",
    "write_ternary_block",
    "read_ternary_block",
    "write_float_block",
    "read_float_block",
]

TERNARY_MAGIC = b"BTRL"
FLOAT_MAGIC = b"BF32"
BLOCK_VERSION = 1

_HEADER = struct.Struct("<4sHII")
_SCALE = struct.Struct("<d")


class BlockFormatError(ValueError):
    """Bad magic, unsupported version, or truncated block data."""


def _read_exact(fp: BinaryIO, n: int, what: str) -> bytes:
    data = fp.read(n)
    if len(data) != n:
        raise BlockFormatError(f"truncated block: expected {n} bytes of {what}, got {len(data)}")
    return data


def _read_header(fp: BinaryIO, magic: bytes) -> tuple[int, int]:
    raw = _read_exact(fp, _HEADER.size, "block header")
    got_magic, version, rows, cols = _HEADER.unpack(raw)
    if got_magic != magic:
        raise BlockFormatError(f"bad block magic {got_magic!r}, expected {magic!r}")
    if version != BLOCK_VERSION:
        raise BlockFormatError(f"unsupported block version {version}")
    return rows, cols


def write_ternary_block(fp: BinaryIO, mat: TernaryMatrix) -> None:
    fp.write(_HEADER.pack(TERNARY_MAGIC, BLOCK_VERSION, mat.rows, mat.cols))
    fp.write(_SCALE.pack(mat.scale))
    fp.write(mat.codes)


def read_ternary_block(fp: BinaryIO) -> TernaryMatrix:
    rows, cols = _read_header(fp, TERNARY_MAGIC)
    scale = _SCALE.unpack(_read_exact(fp, _SCALE.size, "scale"))[0]
    codes = _read_exact(fp, packed_length(rows * cols), "packed codes")
    return TernaryMatrix(rows=rows, cols=cols, codes=codes, scale=scale)


def write_float_block(fp: BinaryIO, arr: np.ndarray) -> None:
    arr = np.ascontiguousarray(arr, dtype=np.float32)
    if arr.ndim == 1:
        arr = arr.reshape(1, -1)
    if arr.ndim != 2:
        raise ValueError(f"float blocks are 1-d or 2-d, got ndim={arr.ndim}")
    fp.write(_HEADER.pack(FLOAT_MAGIC, BLOCK_VERSION, arr.shape[0], arr.shape[1]))
    fp.write(arr.astype("<f4").tobytes())


def read_float_block(fp: BinaryIO) -> np.ndarray:
    rows, cols = _read_header(fp, FLOAT_MAGIC)
    data = _read_exact(fp, rows * cols * 4, "float data")
    return np.frombuffer(data, dtype="<f4").reshape(rows, cols).astype(np.float32)
