"""Windowed dark channel with per-pixel attribution of the minimising colour channel."""

from __future__ import annotations

from typing import NamedTuple

import numpy as np
from scipy.ndimage import minimum_filter

from .imagecore import as_image


class DarkChannelResult(NamedTuple):
    values: np.ndarray
    """``(H, W)`` windowed minimum over colour channels."""
    channel: np.ndarray
    """``(H, W)`` uint8 label of the channel attaining the minimum."""


def _min_over_window(source: np.ndarray, window_radius: int, attribution: str) -> DarkChannelResult:
    if window_radius < 0:
        raise ValueError("window_radius must be >= 0")
    if attribution not in ("window", "center"):
        raise ValueError(f"unknown attribution {attribution!r}")
    size = 2 * window_radius + 1
    # mode="nearest" replicates border samples that already lie inside the
    # truncated window, so the minimum equals the truncated-window minimum.
    per_channel = np.stack(
        [minimum_filter(source[:, :, c], size=size, mode="nearest") for c in range(3)],
        axis=2,
    )
    values = per_channel.min(axis=2)
    if attribution == "window":
        # argmin returns the first hit, giving the R < G < B tie-break
        channel = per_channel.argmin(axis=2)
    else:
        channel = source.argmin(axis=2)
    return DarkChannelResult(values, channel.astype(np.uint8))


def dark_channel(img, window_radius: int = 2, attribution: str = "window") -> DarkChannelResult:
    """Minimum over R, G, B and the ``(2r+1)^2`` window around each pixel.

    The window is truncated at the image border. ``channel`` records the
    colour channel of the winning (channel, position) pair over the whole
    window; ``attribution="center"`` instead labels each pixel with the
    channel minimal at the pixel itself. Ties go to R, then G, then B.
    """
    return _min_over_window(as_image(img), window_radius, attribution)


def normalized_dark_channel(img, airlight, window_radius: int = 2,
                            attribution: str = "window") -> DarkChannelResult:
    """As :func:`dark_channel` but over ``I^c / A^c``; values may exceed 1."""
    a = np.asarray(airlight, dtype=np.float64).reshape(3)
    if np.any(a <= 0):
        raise ValueError(f"airlight components must be positive, got {a}")
    return _min_over_window(as_image(img) / a, window_radius, attribution)
