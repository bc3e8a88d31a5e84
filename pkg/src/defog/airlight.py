from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

from .darkchannel import DarkChannelResult
from .imagecore import as_image

CANDIDATE_FRACTION = 0.001
MIN_COMPONENT = 0.05


class Airlight(NamedTuple):
    """Atmospheric light per channel, each component in (0, 1]."""

    r: float
    g: float
    b: float

    @classmethod
    def gray(cls, v: float) -> "Airlight":
        return cls(v, v, v)

    def validate(self) -> "Airlight":
        if not all(0.0 < c <= 1.0 for c in self):
            raise ValueError(f"airlight components must lie in (0, 1], got {tuple(self)}")
        return self


def estimate_airlight(img, dark: DarkChannelResult) -> Airlight:
    """Pick the atmospheric light from the haziest pixels.

    The brightest 0.1% of pixels by dark-channel value (at least one) are
    candidates; the candidate with the largest R+G+B in ``img`` supplies A.
    Ties resolve to the earlier pixel in raster order. Components are
    floored at 0.05.
    """
    img = as_image(img)
    values = np.asarray(dark.values)
    if values.shape != img.shape[:2]:
        raise ValueError("dark channel and image dimensions differ")
    flat_dark = values.ravel()
    n_cand = max(1, math.ceil(flat_dark.size * CANDIDATE_FRACTION))
    order = np.argsort(-flat_dark, kind="stable")
    candidates = np.sort(order[:n_cand])
    colors = img.reshape(-1, 3)[candidates]
    best = colors[np.argmax(colors.sum(axis=1))]
    return Airlight(*(max(float(c), MIN_COMPONENT) for c in best))
