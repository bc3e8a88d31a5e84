"""Single-image dehazing with band-dependent transmittance and down-sampled matting."""

from .airlight import Airlight, estimate_airlight
from .darkchannel import DarkChannelResult, dark_channel, normalized_dark_channel
from .fogsim import FogScene, synthesize, transmittance_of
from .imagecore import downsample_area, load_image, save_image, upsample_bicubic
from .matting import SolveReport, build_matting_laplacian, refine_transmittance
from .metrics import BenchReport, bench_pipeline, mean_abs_error, mean_saturation, psnr
from .pipeline import DehazeResult, dehaze
from .restore import restore
from .transmittance import (
    BetaRatios,
    ChannelTransmittances,
    DehazeParams,
    per_channel_transmittance,
    refine_pipeline,
    rough_transmittance,
)

__all__ = [
    "Airlight", "BenchReport", "BetaRatios", "ChannelTransmittances", "DarkChannelResult",
    "DehazeParams", "DehazeResult", "FogScene", "SolveReport", "bench_pipeline",
    "build_matting_laplacian", "dark_channel", "dehaze", "downsample_area",
    "estimate_airlight", "load_image", "mean_abs_error", "mean_saturation",
    "normalized_dark_channel", "per_channel_transmittance", "psnr", "refine_pipeline",
    "refine_transmittance", "restore", "rough_transmittance", "save_image", "synthesize",
    "transmittance_of", "upsample_bicubic",
]
