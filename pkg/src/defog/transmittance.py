"""Rough, refined and per-channel transmittance."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .airlight import Airlight
from .darkchannel import DarkChannelResult, normalized_dark_channel
from .imagecore import as_image, as_scalar_map, downsample_area, upsample_bicubic
from .matting import SolveReport, build_matting_laplacian, refine_transmittance

log = logging.getLogger(__name__)


class BetaRatios(NamedTuple):
    """Relative attenuation coefficients of the R, G and B bands."""

    r: float = 1.0
    g: float = 1.28
    b: float = 1.61

    @classmethod
    def parse(cls, text: str) -> "BetaRatios":
        parts = [float(p) for p in text.split(",")]
        if len(parts) != 3:
            raise ValueError(f"expected three comma-separated betas, got {text!r}")
        return cls(*parts).validate()

    def validate(self) -> "BetaRatios":
        if not all(b > 0 for b in self):
            raise ValueError(f"betas must be positive, got {tuple(self)}")
        return self


UNIFORM_BETAS = BetaRatios(1.0, 1.0, 1.0)


class ChannelTransmittances(NamedTuple):
    t_r: np.ndarray
    t_g: np.ndarray
    t_b: np.ndarray

    def stack(self) -> np.ndarray:
        """``(H, W, 3)`` array of the three maps."""
        return np.stack(self, axis=2)


@dataclass(frozen=True)
class DehazeParams:
    omega: float = 0.95
    window_radius: int = 2
    lam: float = 1e-4
    eps: float = 1e-7
    t0: float = 0.1
    betas: BetaRatios = field(default_factory=BetaRatios)
    downsample_factor: int = 4
    cg_tol: float = 1e-6
    cg_maxiter: int = 2000
    attribution: str = "window"

    def __post_init__(self):
        if not 0.0 < self.omega <= 1.0:
            raise ValueError(f"omega must lie in (0, 1], got {self.omega}")
        if not 0.0 < self.t0 < 1.0:
            raise ValueError(f"t0 must lie in (0, 1), got {self.t0}")
        if self.window_radius < 0:
            raise ValueError("window_radius must be >= 0")
        if self.lam <= 0 or self.eps <= 0:
            raise ValueError("lambda and eps must be positive")
        if int(self.downsample_factor) != self.downsample_factor or self.downsample_factor < 1:
            raise ValueError("downsample_factor must be an integer >= 1")
        BetaRatios(*self.betas).validate()

    @classmethod
    def he(cls, **overrides) -> "DehazeParams":
        """Single-transmittance, full-resolution baseline."""
        overrides.update(betas=UNIFORM_BETAS, downsample_factor=1)
        return cls(**overrides)


def rough_transmittance(dark_norm: DarkChannelResult, omega: float = 0.95) -> np.ndarray:
    """``1 - omega * dark``, clamped to [0, 1]."""
    if not 0.0 < omega <= 1.0:
        raise ValueError(f"omega must lie in (0, 1], got {omega}")
    return np.clip(1.0 - omega * np.asarray(dark_norm.values, dtype=np.float64), 0.0, 1.0)


@dataclass
class RefineResult:
    t: np.ndarray
    """Refined dark-channel transmittance at full resolution."""
    channel: np.ndarray
    """Full-resolution dark-channel label map."""
    t_rough: np.ndarray
    """Rough transmittance on the down-sampled grid."""
    report: SolveReport


def refine_pipeline(img, params: DehazeParams, airlight: Airlight) -> RefineResult:
    """Down-sample, estimate and refine the transmittance, then resize back.

    Matting runs on the down-sampled image only. The channel label map is
    taken from the full-resolution normalised dark channel, with the window
    widened by the down-sampling factor so it covers the same scene area as
    the window that produced the refined value.
    """
    img = as_image(img)
    h, w, _ = img.shape
    factor = int(params.downsample_factor)
    small = downsample_area(img, factor)
    if small.shape[0] < 3 or small.shape[1] < 3:
        raise ValueError(f"image {w}x{h} is too small for down-sampling by {factor}")
    dark_small = normalized_dark_channel(small, airlight, params.window_radius)
    t_rough = rough_transmittance(dark_small, params.omega)
    L = build_matting_laplacian(small, params.eps)
    t_small, report = refine_transmittance(L, t_rough, params.lam, params.cg_tol, params.cg_maxiter)
    t_full = upsample_bicubic(t_small, w, h)
    if factor == 1 and params.attribution == "window":
        channel = dark_small.channel
    else:
        channel = normalized_dark_channel(
            img, airlight, params.window_radius * factor, params.attribution
        ).channel
    return RefineResult(t_full, channel, t_rough, report)


def per_channel_transmittance(t_d, d, betas: BetaRatios = BetaRatios()) -> ChannelTransmittances:
    """Spread the dark-channel transmittance to all channels.

    For a pixel whose dark channel is ``d``, channel ``c`` gets
    ``t_d ** (beta_c / beta_d)``; channel ``d`` itself keeps ``t_d``.
    """
    t_d = as_scalar_map(t_d, "t_d")
    d = np.asarray(d)
    if d.shape != t_d.shape:
        raise ValueError("transmittance and channel map dimensions differ")
    beta = np.asarray(BetaRatios(*betas).validate(), dtype=np.float64)
    beta_d = beta[d]
    maps = []
    for c in range(3):
        t_c = np.power(t_d, beta[c] / beta_d)
        maps.append(np.where(d == c, t_d, t_c))
    return ChannelTransmittances(*maps)
