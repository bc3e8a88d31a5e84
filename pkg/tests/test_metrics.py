import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from defog.metrics import (
    CSV_COLUMNS,
    BenchReport,
    bench_pipeline,
    mean_abs_error,
    mean_saturation,
    psnr,
    reports_from_csv,
    reports_to_csv,
    reports_to_table,
)
from defog.synthetic import patch_scene
from defog.transmittance import DehazeParams


def _rand(seed, shape=(5, 6, 3)):
    return np.random.default_rng(seed).uniform(size=shape)


def test_mae_basics():
    a = _rand(0)
    assert mean_abs_error(a, a) == 0.0
    assert mean_abs_error(np.zeros((2, 2, 3)), np.ones((2, 2, 3))) == 1.0


def test_mae_matches_loop():
    a, b = _rand(1), _rand(2)
    total = sum(abs(a[y, x, c] - b[y, x, c]) for y in range(5) for x in range(6) for c in range(3))
    assert mean_abs_error(a, b) == pytest.approx(total / a.size, abs=1e-12)


def test_mae_shape_mismatch():
    with pytest.raises(ValueError):
        mean_abs_error(np.zeros((2, 2, 3)), np.zeros((2, 3, 3)))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_mae_is_a_metric(seed):
    a, b, c = (_rand(seed + k) for k in range(3))
    assert mean_abs_error(a, b) == mean_abs_error(b, a)
    assert mean_abs_error(a, b) > 0
    assert mean_abs_error(a, c) <= mean_abs_error(a, b) + mean_abs_error(b, c) + 1e-15


def test_saturation_extremes():
    gray = np.repeat(_rand(3, (4, 4, 1)), 3, axis=2)
    assert mean_saturation(gray) == 0.0
    red = np.zeros((3, 3, 3))
    red[..., 0] = 1.0
    assert mean_saturation(red) == 1.0
    assert mean_saturation(np.zeros((2, 2, 3))) == 0.0


def test_saturation_matches_pixel_loop():
    img = _rand(4)
    sats = []
    for px in img.reshape(-1, 3):
        hi, lo = max(px), min(px)
        sats.append((hi - lo) / hi if hi > 0 else 0.0)
    assert mean_saturation(img) == pytest.approx(sum(sats) / len(sats), abs=1e-12)


def test_psnr():
    a = np.zeros((2, 2, 3))
    assert psnr(a, a) == float("inf")
    assert psnr(a, np.full((2, 2, 3), 0.1)) == pytest.approx(20.0)


def test_report_csv_round_trip():
    reports = [BenchReport("a", 10, 20, 2.0, 0.5), BenchReport("b,c", 3, 4, 1.5, 1.5)]
    text = reports_to_csv(reports)
    assert text.splitlines()[0] == ",".join(CSV_COLUMNS)
    back = reports_from_csv(text)
    assert [(r.name, r.width, r.height) for r in back] == [("a", 10, 20), ("b,c", 3, 4)]
    assert back[0].speedup == pytest.approx(4.0)
    assert all(len(line.split(",")) == 6 for line in text.splitlines()[:2])
    assert "4.00" in reports_to_table(reports)


def test_csv_header_checked():
    with pytest.raises(ValueError):
        reports_from_csv("name,w\nx,1\n")


def test_bench_self_comparison():
    img = patch_scene(24, 24, seed=0)
    report = bench_pipeline(img, DehazeParams(downsample_factor=1), repeats=3)
    assert report.t_full > 0 and report.t_fast > 0
    assert 0.5 <= report.speedup <= 2.0
    with pytest.raises(ValueError):
        bench_pipeline(img, repeats=0)
