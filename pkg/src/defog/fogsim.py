"""Forward haze synthesis under homogeneous, band-dependent attenuation."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .airlight import Airlight
from .imagecore import as_image, as_scalar_map
from .transmittance import BetaRatios, ChannelTransmittances


@dataclass(frozen=True)
class FogScene:
    radiance: np.ndarray
    """Fog-free scene, ``(H, W, 3)`` in [0, 1]."""
    depth: np.ndarray
    """Scene depth ``(H, W)``, same length unit as ``1/betas``."""
    airlight: Airlight
    betas: BetaRatios
    """Absolute attenuation coefficients per band."""

    def __post_init__(self):
        radiance = as_image(self.radiance, "radiance")
        depth = as_scalar_map(self.depth, "depth")
        if depth.shape != radiance.shape[:2]:
            raise ValueError("depth and radiance dimensions differ")
        if depth.min() < 0:
            raise ValueError("depth must be non-negative")
        object.__setattr__(self, "radiance", radiance)
        object.__setattr__(self, "depth", depth)
        object.__setattr__(self, "airlight", Airlight(*self.airlight).validate())
        object.__setattr__(self, "betas", BetaRatios(*self.betas).validate())


def transmittance_of(scene: FogScene) -> ChannelTransmittances:
    """``t_c = exp(-beta_c * d)`` for each band."""
    return ChannelTransmittances(*(np.exp(-b * scene.depth) for b in scene.betas))


def synthesize(scene: FogScene) -> np.ndarray:
    """Hazy observation ``I_c = J_c t_c + A_c (1 - t_c)``, clamped to [0, 1]."""
    t = transmittance_of(scene).stack()
    a = np.asarray(scene.airlight, dtype=np.float64)
    return np.clip(scene.radiance * t + a * (1.0 - t), 0.0, 1.0)


def constant_depth(shape: tuple[int, int], value: float) -> np.ndarray:
    return np.full(shape, float(value))
