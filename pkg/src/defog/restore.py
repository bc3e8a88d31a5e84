from __future__ import annotations

import numpy as np

from .imagecore import as_image


def restore(img, t, airlight, t0: float = 0.1) -> np.ndarray:
    """Invert the scattering model channel by channel.

    ``J_c = (I_c - A_c) / max(t_c, t0) + A_c``, clamped to [0, 1]. ``t`` is a
    :class:`ChannelTransmittances` (or any ``(H, W, 3)`` array); a single
    ``(H, W)`` map is shared by all channels.
    """
    if not 0.0 < t0 < 1.0:
        raise ValueError(f"t0 must lie in (0, 1), got {t0}")
    img = as_image(img)
    t = np.asarray(t.stack() if hasattr(t, "stack") else t, dtype=np.float64)
    if t.ndim == 2:
        t = t[:, :, None]
    if t.shape[:2] != img.shape[:2]:
        raise ValueError("transmittance and image dimensions differ")
    a = np.asarray(airlight, dtype=np.float64).reshape(3)
    return np.clip(restore_unclamped(img, t, a, t0), 0.0, 1.0)


def restore_unclamped(img: np.ndarray, t: np.ndarray, a: np.ndarray, t0: float) -> np.ndarray:
    return (img - a) / np.maximum(t, t0) + a
