"""End-to-end dehazing."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .airlight import Airlight, estimate_airlight
from .darkchannel import DarkChannelResult, dark_channel
from .imagecore import as_image
from .matting import SolveReport
from .restore import restore
from .transmittance import (
    ChannelTransmittances,
    DehazeParams,
    per_channel_transmittance,
    refine_pipeline,
)


@dataclass
class DehazeResult:
    image: np.ndarray
    airlight: Airlight
    t_d: np.ndarray
    channel: np.ndarray
    transmittances: ChannelTransmittances
    dark: DarkChannelResult
    report: SolveReport


def dehaze(img, params: DehazeParams | None = None, airlight: Airlight | None = None) -> DehazeResult:
    """Remove haze from ``img``.

    The atmospheric light is estimated from the full-resolution dark channel
    unless given. The refined dark-channel transmittance is spread to the
    three bands through ``params.betas`` and each band restored separately.
    """
    params = params or DehazeParams()
    img = as_image(img)
    dark = dark_channel(img, params.window_radius)
    if airlight is None:
        airlight = estimate_airlight(img, dark)
    airlight = Airlight(*airlight).validate()
    refined = refine_pipeline(img, params, airlight)
    ts = per_channel_transmittance(refined.t, refined.channel, params.betas)
    out = restore(img, ts, airlight, params.t0)
    return DehazeResult(out, airlight, refined.t, refined.channel, ts, dark, refined.report)
