"""Bit-packing for ternary and 2-bit weight codes.

Ternary encoding (2 bits per trit, 4 trits per byte, trit 0 in the lowest
bit-pair):

    00 -> 0
    01 -> +1
    10 -> -1
    11 -> reserved (never written; rejected on unpack)

2-bit integer encoding is plain two's complement in each bit-pair, covering
{-2, -1, 0, +1}; all four codes are valid.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "CorruptCodesError",
    "pack_trits",
    "unpack_trits",
    "pack_2bit",
    "unpack_2bit",
    "packed_length",
    "TRIT_DECODE",
    "TRIT_VALID",
    "TWOBIT_DECODE",
]


class CorruptCodesError(ValueError):
    """A packed byte stream contains the reserved trit code 11."""


_TRIT_TO_FIELD = {0: 0b00, 1: 0b01, -1: 0b10}


def _build_trit_tables() -> tuple[np.ndarray, np.ndarray]:
    decode = np.zeros((256, 4), dtype=np.int8)
    valid = np.ones(256, dtype=bool)
    for byte in range(256):
        for k in range(4):
            field = (byte >> (2 * k)) & 0b11
            if field == 0b11:
                valid[byte] = False
                decode[byte, k] = 0
            else:
                decode[byte, k] = {0b00: 0, 0b01: 1, 0b10: -1}[field]
    return decode, valid


def _build_twobit_table() -> np.ndarray:
    decode = np.zeros((256, 4), dtype=np.int8)
    for byte in range(256):
        for k in range(4):
            field = (byte >> (2 * k)) & 0b11
            decode[byte, k] = field if field < 2 else field - 4
    return decode


# Byte -> 4 decoded values, index k is bit-pair (2k, 2k+1).
TRIT_DECODE, TRIT_VALID = _build_trit_tables()
TWOBIT_DECODE = _build_twobit_table()


def packed_length(n: int) -> int:
    """Bytes needed to hold n 2-bit codes."""
    return (n + 3) // 4


def _pack_fields(fields: np.ndarray) -> bytes:
    n = fields.size
    padded = np.zeros(packed_length(n) * 4, dtype=np.uint8)
    padded[:n] = fields
    quads = padded.reshape(-1, 4)
    out = (
        quads[:, 0]
        | (quads[:, 1] << 2)
        | (quads[:, 2] << 4)
        | (quads[:, 3] << 6)
    ).astype(np.uint8)
    return out.tobytes()


def pack_trits(codes) -> bytes:
    """Pack a {-1, 0, +1} vector into bytes, 4 trits per byte."""
    arr = np.asarray(codes)
    flat = arr.reshape(-1).astype(np.int64)
    if flat.size and not np.isin(flat, (-1, 0, 1)).all():
        bad = flat[~np.isin(flat, (-1, 0, 1))][0]
        raise ValueError(f"trit codes must be in {{-1, 0, +1}}, got {bad}")
    fields = np.where(flat == 0, 0, np.where(flat == 1, 1, 2)).astype(np.uint8)
    return _pack_fields(fields)


def unpack_trits(data: bytes, n: int) -> np.ndarray:
    """Inverse of pack_trits; returns an int8 vector of length n.

    Raises CorruptCodesError if any of the n used bit-pairs holds the
    reserved code 11. Unused tail bit-pairs in the final byte are ignored.
    """
    buf = np.frombuffer(data, dtype=np.uint8)
    need = packed_length(n)
    if buf.size < need:
        raise ValueError(f"packed stream too short: {buf.size} bytes for {n} trits")
    buf = buf[:need]
    decoded = TRIT_DECODE[buf].reshape(-1)[:n]
    if n:
        full = buf[:-1] if n % 4 else buf
        if not TRIT_VALID[full].all():
            raise CorruptCodesError("reserved trit code 11 in packed stream")
        if n % 4:
            last = int(buf[-1])
            for k in range(n % 4):
                if (last >> (2 * k)) & 0b11 == 0b11:
                    raise CorruptCodesError("reserved trit code 11 in packed stream")
    return decoded


def pack_2bit(codes) -> bytes:
    """Pack a {-2, -1, 0, +1} vector into bytes, two's complement bit-pairs."""
    arr = np.asarray(codes)
    flat = arr.reshape(-1).astype(np.int64)
    if flat.size and (flat.min() < -2 or flat.max() > 1):
        raise ValueError("2-bit codes must be in {-2, -1, 0, +1}")
    fields = (flat & 0b11).astype(np.uint8)
    return _pack_fields(fields)


def unpack_2bit(data: bytes, n: int) -> np.ndarray:
    """Inverse of pack_2bit; returns an int8 vector of length n."""
    buf = np.frombuffer(data, dtype=np.uint8)
    need = packed_length(n)
    if buf.size < need:
        raise ValueError(f"packed stream too short: {buf.size} bytes for {n} codes")
    return TWOBIT_DECODE[buf[:need]].reshape(-1)[:n].copy()
