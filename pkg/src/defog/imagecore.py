"""Raster containers, PNG/PPM I/O and resampling.

Images are plain ``numpy`` arrays:

* an *image* is ``float64`` of shape ``(H, W, 3)`` holding linear R, G, B
  intensities in ``[0, 1]``;
* a *scalar map* is ``float64`` of shape ``(H, W)``;
* a *channel map* is ``uint8`` of shape ``(H, W)`` with labels
  ``R=0, G=1, B=2``.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np
from PIL import Image as PILImage

R, G, B = 0, 1, 2

_SUFFIX_FORMAT = {".png": "PNG", ".ppm": "PPM"}


class ImageIOError(OSError):
    """Raised when a raster cannot be read or written."""


def as_image(img, name: str = "image") -> np.ndarray:
    """Validate and return ``img`` as a float64 ``(H, W, 3)`` array."""
    arr = np.asarray(img, dtype=np.float64)
    if arr.ndim != 3 or arr.shape[2] != 3:
        raise ValueError(f"{name} must have shape (H, W, 3), got {arr.shape}")
    if arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ValueError(f"{name} has zero size")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite samples")
    if arr.min() < 0.0 or arr.max() > 1.0:
        raise ValueError(f"{name} samples must lie in [0, 1]")
    return arr


def as_scalar_map(values, name: str = "map") -> np.ndarray:
    arr = np.asarray(values, dtype=np.float64)
    if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ValueError(f"{name} must be a non-empty 2-D array, got {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite values")
    return arr


def _format_for(path: Path) -> str:
    try:
        return _SUFFIX_FORMAT[path.suffix.lower()]
    except KeyError:
        raise ImageIOError(f"unknown image extension {path.suffix!r} (use .png or .ppm)") from None


def _ppm_header(path: Path) -> tuple[bytes, int]:
    """Magic number and maxval of a PNM file."""
    with open(path, "rb") as fh:
        head = fh.read(512)
    tokens = []
    for line in head.split(b"\n"):
        tokens.extend(line.split(b"#", 1)[0].split())
        if len(tokens) >= 4:
            break
    if len(tokens) < 4 or not tokens[3].isdigit():
        raise ImageIOError(f"{path}: malformed PPM header")
    return tokens[0], int(tokens[3])


def _open_8bit(path) -> PILImage.Image:
    path = Path(path)
    try:
        pil = PILImage.open(path)
        pil.load()
    except (OSError, ValueError, SyntaxError) as exc:
        raise ImageIOError(f"cannot read {path}: {exc}") from exc
    if pil.format not in ("PNG", "PPM"):
        raise ImageIOError(f"{path}: unsupported format {pil.format}")
    if pil.format == "PPM":
        magic, maxval = _ppm_header(path)
        if magic != b"P6" or maxval != 255:
            raise ImageIOError(f"{path}: only binary P6 with maxval 255 is supported")
    # 16-bit PNG/PPM decode to 'I' or 'I;16*' modes
    if pil.mode not in ("RGB", "RGBA", "L", "LA", "P", "1"):
        raise ImageIOError(f"{path}: unsupported pixel mode {pil.mode} (8-bit only)")
    if pil.width < 1 or pil.height < 1:
        raise ImageIOError(f"{path}: zero-dimension image")
    return pil


def load_image(path) -> np.ndarray:
    """Read an 8-bit PNG or binary PPM as an ``(H, W, 3)`` float image in [0, 1].

    Alpha is dropped; grayscale and palette files are expanded to RGB.
    """
    pil = _open_8bit(path)
    rgb = np.asarray(pil.convert("RGB"), dtype=np.uint8)
    return rgb.astype(np.float64) / 255.0


def load_scalar_map(path) -> np.ndarray:
    """Read an 8-bit raster as a single-channel map in [0, 1] (luma for colour files)."""
    pil = _open_8bit(path)
    return np.asarray(pil.convert("L"), dtype=np.float64) / 255.0


def to_bytes(values: np.ndarray) -> np.ndarray:
    return np.clip(np.rint(np.asarray(values, dtype=np.float64) * 255.0), 0, 255).astype(np.uint8)


def save_image(img, path) -> None:
    """Write ``img`` as 8-bit PNG or P6 PPM, chosen by the file extension."""
    path = Path(path)
    fmt = _format_for(path)
    data = to_bytes(as_image(img))
    try:
        PILImage.fromarray(data, mode="RGB").save(path, format=fmt)
    except OSError as exc:
        raise ImageIOError(f"cannot write {path}: {exc}") from exc


def save_scalar_map(values, path) -> None:
    """Write a map as an 8-bit grayscale raster (values clamped to [0, 1])."""
    path = Path(path)
    fmt = _format_for(path)
    data = to_bytes(as_scalar_map(values))
    if fmt == "PPM":
        data = np.repeat(data[:, :, None], 3, axis=2)
    try:
        PILImage.fromarray(data).save(path, format=fmt)
    except OSError as exc:
        raise ImageIOError(f"cannot write {path}: {exc}") from exc


def downsample_area(img: np.ndarray, factor: int) -> np.ndarray:
    """Box-average ``img`` by an integer factor.

    Output size is ``ceil(H/factor) x ceil(W/factor)``; blocks cut off by the
    right/bottom border are averaged over the pixels they actually cover.
    Works for images and scalar maps alike.
    """
    if int(factor) != factor or factor < 1:
        raise ValueError(f"downsample factor must be an integer >= 1, got {factor!r}")
    factor = int(factor)
    arr = np.asarray(img, dtype=np.float64)
    if factor == 1:
        return arr.copy()
    h, w = arr.shape[:2]
    rows = np.arange(0, h, factor)
    cols = np.arange(0, w, factor)
    sums = np.add.reduceat(np.add.reduceat(arr, rows, axis=0), cols, axis=1)
    counts = np.outer(np.diff(np.append(rows, h)), np.diff(np.append(cols, w)))
    if arr.ndim == 3:
        counts = counts[:, :, None]
    return np.clip(sums / counts, 0.0, 1.0) if arr.ndim == 3 else sums / counts


def _catmull_rom(x: np.ndarray) -> np.ndarray:
    # Keys cubic convolution kernel, a = -0.5
    ax = np.abs(x)
    out = np.where(ax <= 1.0, 1.5 * ax**3 - 2.5 * ax**2 + 1.0, 0.0)
    return np.where((ax > 1.0) & (ax < 2.0), -0.5 * ax**3 + 2.5 * ax**2 - 4.0 * ax + 2.0, out)


def _axis_weights(n_in: int, n_out: int) -> tuple[np.ndarray, np.ndarray]:
    """Tap indices (edge-clamped) and weights, both shaped ``(n_out, 4)``."""
    src = (np.arange(n_out) + 0.5) * (n_in / n_out) - 0.5
    base = np.floor(src)
    frac = src - base
    offsets = np.arange(-1, 3)
    idx = np.clip(base[:, None].astype(np.int64) + offsets, 0, n_in - 1)
    weights = _catmull_rom(frac[:, None] - offsets)
    return idx, weights / weights.sum(axis=1, keepdims=True)


def upsample_bicubic(values, target_w: int, target_h: int) -> np.ndarray:
    """Resize a scalar map with Catmull-Rom bicubic interpolation.

    Pixel centres are aligned (``src = (dst + 0.5) * in/out - 0.5``) and
    out-of-range taps are clamped to the nearest edge sample. The result is
    clamped to ``[0, 1]`` since the kernel overshoots near steps.
    """
    arr = as_scalar_map(values)
    if target_w < 1 or target_h < 1:
        raise ValueError("target size must be positive")
    h, w = arr.shape
    if (h, w) == (target_h, target_w):
        return np.clip(arr, 0.0, 1.0)
    ridx, rw = _axis_weights(h, target_h)
    cidx, cw = _axis_weights(w, target_w)
    tmp = np.einsum("ok,okw->ow", rw, arr[ridx])
    out = np.einsum("ok,hok->ho", cw, tmp[:, cidx])
    return np.clip(out, 0.0, 1.0)
