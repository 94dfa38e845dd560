from ternlight.bench import (
    KERNELS,
    float_memory_bytes,
    quantized_memory_bytes,
    run_bench,
)


def test_memory_formulas():
    assert float_memory_bytes(128, 128) == 65536
    assert quantized_memory_bytes(128, 128) == (128 * 128 + 3) // 4 + 16 == 4112
    assert quantized_memory_bytes(7, 13) == (91 + 3) // 4 + 16


def test_report_shape():
    report = run_bench([(32, 48)], kernels=KERNELS, iterations=100, seed=1)
    assert report["iterations"] >= 100
    assert report["warmup"] >= 10
    assert report["environment"]["cpu_model"]
    assert report["environment"]["thread_count"] >= 1
    assert len(report["rows"]) == 4
    for row in report["rows"]:
        assert row["kernel"] in KERNELS
        assert row["median_latency_s"] > 0
        assert row["p95_latency_s"] >= row["median_latency_s"]
        assert row["memory_bytes"] > 0
        assert row["throughput_ops_s"] > 0
    assert "twobit_over_ternary_32x48" in report["speed_ratios"]
    assert "float_over_ternary_32x48" in report["speed_ratios"]
    assert isinstance(report["ordering_violations"], list)


def test_minimums_enforced():
    report = run_bench([(8, 8)], kernels=("ternary",), iterations=5, warmup=1, seed=0)
    assert report["iterations"] == 100
    assert report["warmup"] == 10


def test_memory_rows_match_formulas():
    report = run_bench([(128, 128)], kernels=("float", "ternary"), seed=2)
    by_kernel = {r["kernel"]: r for r in report["rows"]}
    assert by_kernel["float"]["memory_bytes"] == 65536
    assert by_kernel["ternary"]["memory_bytes"] == 4112


def test_threaded_rows_reported_separately():
    report = run_bench([(64, 64)], kernels=("ternary",), threads=2, seed=3)
    thread_counts = sorted(r["threads"] for r in report["rows"])
    assert thread_counts == [1, 2]


def test_unknown_kernel_rejected():
    import pytest

    with pytest.raises(ValueError):
        run_bench([(8, 8)], kernels=("warp",))
