"""Agent checkpoint files.

Layout (little-endian):

    magic "BTRLCKPT" | version u16 | obs_dim u32 | n_actions u32 | n_layers u32
    then per layer: kind u8 (0 dense, 1 ternary) | has_bias u8 | weight block
    | bias block (rows=1) if present

Dense weights and all biases are f32 blocks; ternary layers store their
packed quantized form, so a loaded network reproduces the saved network's
forward outputs bit-exactly. Writes are atomic (temp file then rename).
"""

from __future__ import annotations

import os
import struct
import tempfile
from pathlib import Path

from ..ternary import (
    MLP,
    BlockFormatError,
    DenseLayer,
    TernaryLinear,
    read_float_block,
    read_ternary_block,
    write_float_block,
    write_ternary_block,
)

__all__ = ["CHECKPOINT_MAGIC", "CHECKPOINT_VERSION", "save_checkpoint", "load_checkpoint"]

CHECKPOINT_MAGIC = b"BTRLCKPT"
CHECKPOINT_VERSION = 1

_HEADER = struct.Struct("<8sHIII")
_LAYER = struct.Struct("<BB")

_KIND_DENSE = 0
_KIND_TERNARY = 1


def save_checkpoint(path, net: MLP, obs_dim: int, n_actions: int) -> None:
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or Path("."), suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as fp:
            fp.write(
                _HEADER.pack(
                    CHECKPOINT_MAGIC, CHECKPOINT_VERSION, obs_dim, n_actions, len(net.layers)
                )
            )
            for layer in net.layers:
                has_bias = layer.bias is not None
                if isinstance(layer, TernaryLinear):
                    fp.write(_LAYER.pack(_KIND_TERNARY, int(has_bias)))
                    write_ternary_block(fp, layer.quantized())
                elif isinstance(layer, DenseLayer):
                    fp.write(_LAYER.pack(_KIND_DENSE, int(has_bias)))
                    write_float_block(fp, layer.weight)
                else:
                    raise TypeError(f"cannot checkpoint layer of type {type(layer)!r}")
                if has_bias:
                    write_float_block(fp, layer.bias)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def load_checkpoint(path) -> tuple[MLP, int, int]:
    """Returns (network, obs_dim, n_actions)."""
    path = Path(path)
    with open(path, "rb") as fp:
        raw = fp.read(_HEADER.size)
        if len(raw) != _HEADER.size:
            raise BlockFormatError(f"checkpoint {path} is truncated")
        magic, version, obs_dim, n_actions, n_layers = _HEADER.unpack(raw)
        if magic != CHECKPOINT_MAGIC:
            raise BlockFormatError(
                f"{path} is not a checkpoint (magic {magic!r}, expected {CHECKPOINT_MAGIC!r})"
            )
        if version != CHECKPOINT_VERSION:
            raise BlockFormatError(
                f"checkpoint version {version} unsupported (expected {CHECKPOINT_VERSION})"
            )
        layers = []
        for _ in range(n_layers):
            raw = fp.read(_LAYER.size)
            if len(raw) != _LAYER.size:
                raise BlockFormatError(f"checkpoint {path} is truncated")
            kind, has_bias = _LAYER.unpack(raw)
            if kind == _KIND_TERNARY:
                tern = read_ternary_block(fp)
                bias = read_float_block(fp).reshape(-1) if has_bias else None
                layers.append(TernaryLinear.from_quantized(tern, bias))
            elif kind == _KIND_DENSE:
                weight = read_float_block(fp)
                bias = read_float_block(fp).reshape(-1) if has_bias else None
                layers.append(DenseLayer(weight, bias))
            else:
                raise BlockFormatError(f"unknown layer kind {kind}")
        trailing = fp.read(1)
        if trailing:
            raise BlockFormatError(f"checkpoint {path} has trailing bytes")
    return MLP(layers), obs_dim, n_actions
