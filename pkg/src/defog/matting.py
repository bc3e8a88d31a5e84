"""Closed-form matting Laplacian and the transmittance refinement solve.

The refinement solves ``(L + lam*I) t = lam * t_rough`` where ``L`` is the
matting Laplacian of the guide image built from all fully interior 3x3
windows.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .imagecore import as_image, as_scalar_map

log = logging.getLogger(__name__)

WINDOW_RADIUS = 1
WINDOW = 2 * WINDOW_RADIUS + 1
WINDOW_PIXELS = WINDOW * WINDOW


@dataclass(frozen=True)
class SolveReport:
    iterations: int
    residual: float
    """Final relative residual ``||b - Ax|| / ||b||``."""
    converged: bool


class MattingError(ValueError):
    pass


def _window_stats(guide: np.ndarray, eps: float) -> tuple[list[np.ndarray], np.ndarray]:
    """Centred colours of every window pixel and the regularised inverse covariances.

    Returns ``centred[a]`` of shape ``(h-2, w-2, 3)`` for window position
    ``a`` (raster order inside the window) and ``inv`` of shape
    ``(h-2, w-2, 3, 3)``.
    """
    h, w, _ = guide.shape
    ch, cw = h - 2 * WINDOW_RADIUS, w - 2 * WINDOW_RADIUS
    shifted = [guide[dy:dy + ch, dx:dx + cw] for dy in range(WINDOW) for dx in range(WINDOW)]
    mean = sum(shifted) / WINDOW_PIXELS
    centred = [s - mean for s in shifted]
    cov = sum(np.einsum("...i,...j->...ij", c, c) for c in centred) / WINDOW_PIXELS
    reg = cov + (eps / WINDOW_PIXELS) * np.eye(3)
    inv = np.linalg.inv(reg)
    inv = 0.5 * (inv + np.swapaxes(inv, -1, -2))
    return centred, inv


def build_matting_laplacian(guide, eps: float = 1e-7) -> sp.csr_matrix:
    """Matting Laplacian of ``guide`` as an ``N x N`` CSR matrix, ``N = H*W``.

    Pixels are numbered in raster order. Entry ``(i, j)`` accumulates, over
    every 3x3 window ``k`` containing both pixels,
    ``delta_ij - (1 + (I_i - mu_k)^T (Sigma_k + eps/9 Id)^-1 (I_j - mu_k)) / 9``.
    Each pixel couples to its 5x5 neighbourhood, so rows have at most 25
    nonzeros. Assembly works per neighbour offset; the matrix is symmetric by
    construction.
    """
    guide = as_image(guide, "guide")
    if eps <= 0:
        raise MattingError("eps must be positive")
    h, w, _ = guide.shape
    if h < WINDOW or w < WINDOW:
        raise MattingError(f"guide {w}x{h} is smaller than one {WINDOW}x{WINDOW} window")
    centred, inv = _window_stats(guide, eps)
    ch, cw = h - 2 * WINDOW_RADIUS, w - 2 * WINDOW_RADIUS
    projected = [np.einsum("...i,...ij->...j", c, inv) for c in centred]

    span = 2 * WINDOW - 1
    # diags[oy, ox][y, x] is L[(y, x), (y + oy - 2, x + ox - 2)]
    diags = np.zeros((span, span, h, w))
    positions = [(dy, dx) for dy in range(WINDOW) for dx in range(WINDOW)]
    for a, (ay, ax) in enumerate(positions):
        for b in range(a, WINDOW_PIXELS):
            by, bx = positions[b]
            val = -(1.0 + np.einsum("...i,...i->...", projected[a], centred[b])) / WINDOW_PIXELS
            if a == b:
                val = val + 1.0
            oy, ox = by - ay, bx - ax
            diags[oy + WINDOW - 1, ox + WINDOW - 1, ay:ay + ch, ax:ax + cw] += val
            if a != b:
                diags[-oy + WINDOW - 1, -ox + WINDOW - 1, by:by + ch, bx:bx + cw] += val

    rows, cols, vals = [], [], []
    index = np.arange(h * w).reshape(h, w)
    for oy in range(-(WINDOW - 1), WINDOW):
        for ox in range(-(WINDOW - 1), WINDOW):
            ys = slice(max(0, -oy), min(h, h - oy))
            xs = slice(max(0, -ox), min(w, w - ox))
            src = index[ys, xs]
            rows.append(src.ravel())
            cols.append((src + oy * w + ox).ravel())
            vals.append(diags[oy + WINDOW - 1, ox + WINDOW - 1][ys, xs].ravel())
    n = h * w
    L = sp.csr_matrix(
        (np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))), shape=(n, n)
    )
    L.sum_duplicates()
    return L


def pcg(A, b: np.ndarray, x0: np.ndarray, tol: float = 1e-6, maxiter: int = 2000):
    """Jacobi-preconditioned conjugate gradient for SPD ``A``.

    Stops once ``||b - A x|| <= tol * ||b||``. Returns the last iterate and
    a :class:`SolveReport`.
    """
    inv_diag = 1.0 / A.diagonal()
    x = np.array(x0, dtype=np.float64)
    r = b - A @ x
    b_norm = np.linalg.norm(b)
    if b_norm == 0.0:
        b_norm = 1.0
    res = np.linalg.norm(r) / b_norm
    if res <= tol:
        return x, SolveReport(0, float(res), True)
    z = inv_diag * r
    p = z.copy()
    rz = r @ z
    k = 0
    while k < maxiter:
        Ap = A @ p
        alpha = rz / (p @ Ap)
        x += alpha * p
        r -= alpha * Ap
        k += 1
        res = np.linalg.norm(r) / b_norm
        if res <= tol:
            break
        z = inv_diag * r
        rz_new = r @ z
        p = z + (rz_new / rz) * p
        rz = rz_new
    return x, SolveReport(k, float(res), bool(res <= tol))


def refine_transmittance(L, t_rough, lam: float = 1e-4, tol: float = 1e-6,
                         maxiter: int = 2000) -> tuple[np.ndarray, SolveReport]:
    """Smooth a rough transmittance map along guide-image structure.

    Solves ``(L + lam*I) t = lam * t_rough`` with PCG started from
    ``t_rough``; the result is clamped to ``[0, 1]``. Non-convergence is
    logged and the best iterate returned with ``report.converged`` False.
    """
    t_rough = as_scalar_map(t_rough, "t_rough")
    if lam <= 0:
        raise ValueError("lambda must be positive")
    if L.shape[0] != t_rough.size:
        raise ValueError(f"Laplacian size {L.shape[0]} does not match map with {t_rough.size} pixels")
    A = (L + lam * sp.identity(L.shape[0], format="csr")).tocsr()
    rhs = lam * t_rough.ravel()
    t, report = pcg(A, rhs, t_rough.ravel(), tol=tol, maxiter=maxiter)
    if not report.converged:
        log.warning("matting solve stopped after %d iterations (relative residual %.3g)",
                    report.iterations, report.residual)
    return np.clip(t.reshape(t_rough.shape), 0.0, 1.0), report
