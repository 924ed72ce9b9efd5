"""Binary dilation with a square structuring neighborhood."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .errors import ConfigError
from .raster import BinaryImage


@dataclass(frozen=True)
class MorphConfig:
    """Square structuring neighborhood side length and iteration count."""

    mask_size: int = 3
    iterations: int = 1

    def __post_init__(self):
        if self.mask_size < 3 or self.mask_size % 2 == 0:
            raise ConfigError(f"morph mask_size must be an odd integer >= 3, got {self.mask_size}")
        if self.iterations < 1:
            raise ConfigError(f"morph iterations must be >= 1, got {self.iterations}")


def dilate(image: BinaryImage, config: MorphConfig) -> BinaryImage:
    """Grow foreground: a pixel becomes 255 if any pixel in its
    mask_size x mask_size neighborhood (itself included) is 255.

    The neighborhood is clipped at the borders, which zero padding
    reproduces exactly. Applied `iterations` times in sequence; with
    mask_size 3 one pass is the classic 8-neighbor rule plus retention.
    """
    r = config.mask_size // 2
    out = image.pixels
    for _ in range(config.iterations):
        padded = np.pad(out, r, mode="constant", constant_values=0)
        windows = sliding_window_view(padded, (config.mask_size, config.mask_size))
        out = windows.max(axis=(2, 3))
    return BinaryImage(out)
