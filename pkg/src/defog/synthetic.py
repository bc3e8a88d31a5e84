"""Deterministic synthetic scenes for experiments and tests."""

from __future__ import annotations

import numpy as np


def patch_scene(h: int, w: int, seed: int = 0, block: int = 8,
                dark_level: float = 0.02) -> np.ndarray:
    """Checkerboard of random-colour blocks and near-black blocks.

    Every block touches a dark neighbour, so any window spanning a block
    boundary sees a near-zero sample and the dark-channel prior holds.
    """
    rng = np.random.default_rng(seed)
    by, bx = -(-h // block), -(-w // block)
    colors = rng.uniform(0.15, 0.95, size=(by, bx, 3))
    dark = rng.uniform(0.0, dark_level, size=(by, bx, 3))
    checker = (np.add.outer(np.arange(by), np.arange(bx)) % 2 == 1)[:, :, None]
    blocks = np.where(checker, dark, colors)
    img = np.repeat(np.repeat(blocks, block, axis=0), block, axis=1)[:h, :w]
    texture = rng.normal(0.0, 0.01, size=(h, w, 3))
    return np.clip(img + texture, 0.0, 1.0)


def depth_ramp(h: int, w: int, near: float, far: float) -> np.ndarray:
    """Depth increasing linearly from the bottom row (near) to the top row (far)."""
    return np.repeat(np.linspace(far, near, h)[:, None], w, axis=1)


def saturated_scene(h: int, w: int, seed: int = 0, block: int = 16) -> np.ndarray:
    """Blocks of saturated colour: each block has one channel near zero.

    The dark-channel prior then holds at every pixel, and area averaging by
    any factor dividing ``block`` keeps it intact.
    """
    rng = np.random.default_rng(seed)
    by, bx = -(-h // block), -(-w // block)
    colors = rng.uniform(0.2, 0.95, size=(by, bx, 3))
    zero = rng.integers(0, 3, size=(by, bx))
    np.put_along_axis(colors, zero[:, :, None], rng.uniform(0.0, 0.02, size=(by, bx, 1)), axis=2)
    img = np.repeat(np.repeat(colors, block, axis=0), block, axis=1)[:h, :w]
    return np.clip(img + rng.normal(0.0, 0.005, size=(h, w, 3)), 0.0, 1.0)
