import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from defog.darkchannel import dark_channel, normalized_dark_channel
from oracles import brute_dark_channel

images = arrays(np.float64, st.tuples(st.integers(1, 7), st.integers(1, 7), st.just(3)),
                elements=st.sampled_from([0.0, 0.25, 0.5, 0.75, 1.0]))


def test_white_image():
    res = dark_channel(np.ones((4, 5, 3)), 2)
    assert np.all(res.values == 1.0)
    assert np.all(res.channel == 0)


def test_uniform_value():
    res = dark_channel(np.full((3, 3, 3), 0.37), 1)
    assert np.all(res.values == 0.37)


def test_radius_zero_is_pixelwise_min():
    img = np.random.default_rng(0).uniform(size=(4, 4, 3))
    res = dark_channel(img, 0)
    np.testing.assert_array_equal(res.values, img.min(axis=2))
    np.testing.assert_array_equal(res.channel, img.argmin(axis=2))


@pytest.mark.parametrize("seed", range(10))
def test_matches_brute_force(seed):
    img = np.random.default_rng(seed).uniform(size=(8, 8, 3))
    res = dark_channel(img, 2)
    values, channel = brute_dark_channel(img, 2)
    np.testing.assert_array_equal(res.values, values)
    np.testing.assert_array_equal(res.channel, channel)


def test_normalized_unit_airlight_matches_plain():
    img = np.random.default_rng(5).uniform(size=(6, 9, 3))
    a = dark_channel(img, 2)
    b = normalized_dark_channel(img, (1.0, 1.0, 1.0), 2)
    np.testing.assert_array_equal(a.values, b.values)
    np.testing.assert_array_equal(a.channel, b.channel)


def test_normalized_image_equal_to_airlight():
    airlight = (0.9, 0.6, 0.3)
    img = np.broadcast_to(np.array(airlight), (5, 5, 3))
    assert np.all(normalized_dark_channel(img, airlight, 2).values == 1.0)


@pytest.mark.parametrize("seed", range(5))
def test_normalized_matches_brute_force(seed):
    rng = np.random.default_rng(100 + seed)
    img = rng.uniform(size=(8, 8, 3))
    a = rng.uniform(0.5, 1.0, size=3)
    a[a == 0.5] = 0.75
    res = normalized_dark_channel(img, a, 2)
    values, channel = brute_dark_channel(img / a, 2)
    np.testing.assert_array_equal(res.values, values)
    np.testing.assert_array_equal(res.channel, channel)


def test_normalized_may_exceed_one():
    img = np.full((3, 3, 3), 0.8)
    assert np.all(normalized_dark_channel(img, (0.5, 0.5, 0.5), 1).values == pytest.approx(1.6))


@pytest.mark.parametrize("bad", [(0.0, 1.0, 1.0), (1.0, -0.2, 1.0)])
def test_normalized_rejects_nonpositive_airlight(bad):
    with pytest.raises(ValueError):
        normalized_dark_channel(np.zeros((2, 2, 3)), bad, 1)


def test_center_attribution():
    img = np.zeros((1, 3, 3)) + 0.5
    img[0, 0, 2] = 0.1   # window minimum lives in B at the left pixel
    img[0, 1, 1] = 0.3   # centre pixel's own minimum is G
    res = dark_channel(img, 1, attribution="center")
    assert res.values[0, 1] == 0.1
    assert res.channel[0, 1] == 1
    assert dark_channel(img, 1).channel[0, 1] == 2


def test_tie_break_prefers_red_across_positions():
    img = np.full((1, 3, 3), 0.9)
    img[0, 0, 2] = 0.2
    img[0, 2, 0] = 0.2
    assert dark_channel(img, 1).channel[0, 1] == 0


@settings(max_examples=60, deadline=None)
@given(images, st.integers(0, 3))
def test_properties(img, r):
    res = dark_channel(img, r)
    wider = dark_channel(img, r + 1)
    assert np.all(wider.values <= res.values)
    assert np.all(res.values[:, :, None] <= img)
    # the recorded channel attains the value somewhere inside the window
    h, w, _ = img.shape
    for y in range(h):
        for x in range(w):
            win = img[max(0, y - r):y + r + 1, max(0, x - r):x + r + 1, res.channel[y, x]]
            assert win.min() == res.values[y, x]
