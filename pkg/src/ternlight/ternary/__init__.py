"""Ternary (1.58-bit) and 2-bit quantization, packed storage, and integer
matvec kernels, plus the training-side layers that keep latent full-precision
weights behind quantized forward passes."""

from .packing import (
    CorruptCodesError,
    pack_2bit,
    pack_trits,
    packed_length,
    unpack_2bit,
    unpack_trits,
)
from .quantize import (
    QuantizationError,
    QuantizedActivation,
    TernaryMatrix,
    TwoBitMatrix,
    quantize_2bit,
    quantize_absmean,
    quantize_activation,
)
from .matmul import float_matvec, lut_matvec, ternary_matvec, twobit_matvec
from .layers import MLP, Adam, DenseLayer, TernaryLinear, relu, ste_gradient
from .blockio import (
    BLOCK_VERSION,
    BlockFormatError,
    FLOAT_MAGIC,
    TERNARY_MAGIC,
    read_float_block,
    read_ternary_block,
    write_float_block,
    write_ternary_block,
)

__all__ = [
    "CorruptCodesError",
    "QuantizationError",
    "QuantizedActivation",
    "TernaryMatrix",
    "TwoBitMatrix",
    "pack_trits",
    "unpack_trits",
    "pack_2bit",
    "unpack_2bit",
    "packed_length",
    "quantize_absmean",
    "quantize_2bit",
    "quantize_activation",
    "ternary_matvec",
    "lut_matvec",
    "twobit_matvec",
    "float_matvec",
    "MLP",
    "Adam",
    "DenseLayer",
    "TernaryLinear",
    "relu",
    "ste_gradient",
    "BlockFormatError",
    "TERNARY_MAGIC",
    "FLOAT_MAGIC",
    "BLOCK_VERSION",
    "read_ternary_block",
    "write_ternary_block",
    "read_float_block",
    "write_float_block",
]
