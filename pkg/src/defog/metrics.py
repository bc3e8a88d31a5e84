"""Image quality metrics and the full-vs-downsampled timing harness."""

from __future__ import annotations

import csv
import dataclasses
import io
import statistics
import time
from dataclasses import dataclass

import numpy as np

from .airlight import Airlight
from .imagecore import as_image
from .pipeline import dehaze
from .transmittance import DehazeParams

CSV_COLUMNS = ("name", "w", "h", "t_full_s", "t_fast_s", "speedup")


def _pair(a, b) -> tuple[np.ndarray, np.ndarray]:
    a, b = as_image(a, "a"), as_image(b, "b")
    if a.shape != b.shape:
        raise ValueError(f"image shapes differ: {a.shape} vs {b.shape}")
    return a, b


def mean_abs_error(a, b) -> float:
    a, b = _pair(a, b)
    return float(np.mean(np.abs(a - b)))


def psnr(a, b) -> float:
    """``10 log10(1 / MSE)`` in dB; infinite for identical images."""
    a, b = _pair(a, b)
    mse = float(np.mean((a - b) ** 2))
    return float("inf") if mse == 0.0 else 10.0 * np.log10(1.0 / mse)


def mean_saturation(img) -> float:
    """Mean HSV saturation ``(max - min) / max`` (0 where max is 0)."""
    img = as_image(img)
    hi = img.max(axis=2)
    lo = img.min(axis=2)
    sat = np.divide(hi - lo, hi, out=np.zeros_like(hi), where=hi > 0)
    return float(sat.mean())


@dataclass(frozen=True)
class BenchReport:
    name: str
    width: int
    height: int
    t_full: float
    t_fast: float

    @property
    def speedup(self) -> float:
        return self.t_full / self.t_fast

    def row(self) -> list:
        return [self.name, self.width, self.height, f"{self.t_full:.6f}",
                f"{self.t_fast:.6f}", f"{self.speedup:.4f}"]


def time_dehaze(img, params: DehazeParams, repeats: int = 3,
                airlight: Airlight | None = None) -> float:
    """Median wall-clock seconds of ``dehaze(img, params)`` over ``repeats`` runs."""
    times = []
    for _ in range(repeats):
        start = time.perf_counter()
        dehaze(img, params, airlight)
        times.append(time.perf_counter() - start)
    return statistics.median(times)


def bench_pipeline(img, params: DehazeParams | None = None, repeats: int = 3,
                   name: str = "image", baseline_factor: int = 1) -> BenchReport:
    """Time the full-resolution path against ``params.downsample_factor``.

    Both runs use the same parameters apart from the down-sampling factor.
    """
    if repeats < 1:
        raise ValueError("repeats must be >= 1")
    params = params or DehazeParams()
    img = as_image(img)
    full = dataclasses.replace(params, downsample_factor=baseline_factor)
    t_full = time_dehaze(img, full, repeats)
    t_fast = time_dehaze(img, params, repeats)
    h, w, _ = img.shape
    return BenchReport(name, w, h, t_full, t_fast)


def reports_to_csv(reports) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in reports:
        writer.writerow(r.row())
    return buf.getvalue()


def reports_from_csv(text: str) -> list[BenchReport]:
    reader = csv.DictReader(io.StringIO(text))
    if tuple(reader.fieldnames or ()) != CSV_COLUMNS:
        raise ValueError(f"unexpected CSV header {reader.fieldnames}")
    return [
        BenchReport(row["name"], int(row["w"]), int(row["h"]),
                    float(row["t_full_s"]), float(row["t_fast_s"]))
        for row in reader
    ]


def reports_to_table(reports) -> str:
    header = f"{'name':<20} {'size':>11} {'full (s)':>10} {'fast (s)':>10} {'speedup':>8}"
    lines = [header, "-" * len(header)]
    for r in reports:
        size = f"{r.width}x{r.height}"
        lines.append(f"{r.name:<20} {size:>11} {r.t_full:>10.3f} {r.t_fast:>10.3f} {r.speedup:>8.2f}")
    return "\n".join(lines)
