"""Kernel microbenchmarks with a machine-readable report.

Each (kernel, dims) row reports median and p95 latency over warm
iterations, the weight-storage footprint, and throughput in multiply-add
ops per second. Medians use at least 100 warm iterations after at least 10
warmup iterations. The report records the measured ternary-vs-2bit and
ternary-vs-float latency ratios and flags speed-ordering violations; edge
hardware figures do not transfer to desktops, so ordering is recorded,
never asserted.
"""

from __future__ import annotations

import os
import time
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .ternary import (
    QuantizedActivation,
    float_matvec,
    lut_matvec,
    quantize_2bit,
    quantize_absmean,
    quantize_activation,
    ternary_matvec,
    twobit_matvec,
)

__all__ = ["KERNELS", "run_bench", "quantized_memory_bytes", "float_memory_bytes"]

KERNELS = ("float", "ternary", "lut", "twobit")

MIN_ITERATIONS = 100
MIN_WARMUP = 10

# scale f64 + rows u32 + cols u32 alongside the packed codes
QUANTIZED_OVERHEAD_BYTES = 16


def quantized_memory_bytes(rows: int, cols: int) -> int:
    return (rows * cols + 3) // 4 + QUANTIZED_OVERHEAD_BYTES


def float_memory_bytes(rows: int, cols: int) -> int:
    return rows * cols * 4


def _cpu_model() -> str:
    try:
        with open("/proc/cpuinfo") as fp:
            for line in fp:
                if line.lower().startswith("model name"):
                    return line.split(":", 1)[1].strip()
    except OSError:
        pass
    import platform

    return platform.processor() or platform.machine()


def _make_case(rows: int, cols: int, rng: np.random.Generator):
    w = rng.normal(size=(rows, cols))
    x = rng.normal(size=cols)
    tern = quantize_absmean(w)
    two = quantize_2bit(w)
    act = quantize_activation(x)
    dense = tern.dequantize(np.float32)
    xf = act.dequantize(np.float32).astype(np.float32)
    return {
        "float": lambda: float_matvec(dense, xf),
        "ternary": lambda: ternary_matvec(tern, act),
        "lut": lambda: lut_matvec(tern, act),
        "twobit": lambda: twobit_matvec(two, act),
    }


def _parallel_rows(tern, act: QuantizedActivation, pool: ThreadPoolExecutor, chunks: int):
    bounds = np.linspace(0, tern.rows, chunks + 1, dtype=int)
    codes = tern.unpack().astype(np.int32)
    values = act.values.astype(np.int32)
    combined = np.float64(tern.scale) * np.float64(act.scale)

    def work(lo, hi):
        return (codes[lo:hi] @ values).astype(np.float64) * combined

    parts = list(pool.map(lambda b: work(*b), zip(bounds[:-1], bounds[1:])))
    return np.concatenate(parts)


def _time_kernel(fn, iterations: int, warmup: int) -> tuple[float, float]:
    for _ in range(warmup):
        fn()
    samples = np.empty(iterations)
    for i in range(iterations):
        start = time.perf_counter_ns()
        fn()
        samples[i] = time.perf_counter_ns() - start
    return float(np.median(samples) / 1e9), float(np.percentile(samples, 95) / 1e9)


def run_bench(
    dims: list[tuple[int, int]],
    kernels: tuple[str, ...] = KERNELS,
    iterations: int = MIN_ITERATIONS,
    warmup: int = MIN_WARMUP,
    seed: int = 0,
    threads: int = 0,
) -> dict:
    iterations = max(iterations, MIN_ITERATIONS)
    warmup = max(warmup, MIN_WARMUP)
    unknown = set(kernels) - set(KERNELS)
    if unknown:
        raise ValueError(f"unknown kernels: {sorted(unknown)}")
    rng = np.random.default_rng(seed)
    rows_out = []
    ratios = {}
    for rows, cols in dims:
        case = _make_case(rows, cols, rng)
        medians = {}
        for kernel in kernels:
            median, p95 = _time_kernel(case[kernel], iterations, warmup)
            medians[kernel] = median
            memory = (
                float_memory_bytes(rows, cols)
                if kernel == "float"
                else quantized_memory_bytes(rows, cols)
            )
            rows_out.append(
                {
                    "kernel": kernel,
                    "rows": rows,
                    "cols": cols,
                    "median_latency_s": median,
                    "p95_latency_s": p95,
                    "memory_bytes": memory,
                    "throughput_ops_s": 2.0 * rows * cols / median if median > 0 else None,
                    "threads": 1,
                }
            )
        if threads > 1:
            w = rng.normal(size=(rows, cols))
            tern = quantize_absmean(w)
            act = quantize_activation(rng.normal(size=cols))
            with ThreadPoolExecutor(max_workers=threads) as pool:
                median, p95 = _time_kernel(
                    lambda: _parallel_rows(tern, act, pool, threads), iterations, warmup
                )
            rows_out.append(
                {
                    "kernel": "ternary",
                    "rows": rows,
                    "cols": cols,
                    "median_latency_s": median,
                    "p95_latency_s": p95,
                    "memory_bytes": quantized_memory_bytes(rows, cols),
                    "throughput_ops_s": 2.0 * rows * cols / median if median > 0 else None,
                    "threads": threads,
                }
            )
        key = f"{rows}x{cols}"
        if "ternary" in medians and "twobit" in medians:
            ratios[f"twobit_over_ternary_{key}"] = medians["twobit"] / medians["ternary"]
        if "ternary" in medians and "float" in medians:
            ratios[f"float_over_ternary_{key}"] = medians["float"] / medians["ternary"]
    violations = []
    for key, value in ratios.items():
        if value < 1.0:
            violations.append(f"{key} = {value:.3f} (< 1: ternary slower on this host)")
    return {
        "environment": {
            "cpu_model": _cpu_model(),
            "thread_count": os.cpu_count(),
        },
        "iterations": iterations,
        "warmup": warmup,
        "rows": rows_out,
        "speed_ratios": ratios,
        "ordering_violations": violations,
    }
