import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from defog.airlight import Airlight, estimate_airlight
from defog.darkchannel import dark_channel
from defog.fogsim import FogScene, synthesize
from defog.synthetic import depth_ramp, patch_scene


def _estimate(img, r=2):
    return estimate_airlight(img, dark_channel(img, r))


def test_uniform_image():
    assert _estimate(np.full((10, 10, 3), 0.8)) == pytest.approx((0.8, 0.8, 0.8))


def test_white_patch_on_gray():
    img = np.full((40, 40, 3), 0.5)
    img[20:23, 10:13] = 1.0
    assert _estimate(img, 1) == (1.0, 1.0, 1.0)


def test_brightest_candidate_wins():
    # 2000 pixels -> two candidates, both with dark value 0.7
    img = np.zeros((40, 50, 3))
    img[5, 5] = (0.7, 0.8, 0.75)
    img[30, 40] = (0.9, 0.7, 0.95)
    assert _estimate(img, 0) == pytest.approx((0.9, 0.7, 0.95))


def test_component_floor():
    img = np.zeros((3, 3, 3))
    img[..., 0] = 0.6
    assert _estimate(img) == (0.6, 0.05, 0.05)


def test_raster_order_tie():
    img = np.zeros((2, 2, 3))
    img[0, 1] = (0.2, 0.5, 0.3)
    img[1, 0] = (0.3, 0.2, 0.5)
    assert _estimate(img, 0) == pytest.approx((0.2, 0.5, 0.3))


def test_dimension_mismatch():
    with pytest.raises(ValueError):
        estimate_airlight(np.zeros((4, 4, 3)), dark_channel(np.zeros((3, 4, 3)), 1))


def test_recovers_synthetic_airlight():
    h = w = 96
    scene = patch_scene(h, w, seed=7)
    a0 = Airlight(0.9, 0.85, 0.8)
    depth = depth_ramp(h, w, 0.5, 6.0)
    hazy = synthesize(FogScene(scene, depth, a0, (0.5, 0.64, 0.805)))
    est = _estimate(hazy)
    assert np.max(np.abs(np.subtract(est, a0))) <= 0.05


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1), st.floats(0.2, 1.0))
def test_estimate_is_a_pixel_and_scales(seed, s):
    img = np.random.default_rng(seed).uniform(0.1, 1.0, size=(12, 15, 3))
    est = np.array(_estimate(img))
    assert np.any(np.all(img.reshape(-1, 3) == est, axis=1))
    scaled = np.array(_estimate(img * s))
    np.testing.assert_allclose(scaled, np.maximum(est * s, 0.05), rtol=1e-12)
