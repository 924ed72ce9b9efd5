"""Intensity preprocessing: grayscale conversion, equalization, box blur.

Rounding conventions are pinned so every stage is bit-reproducible:
grayscale and blur use floor division, the equalization lookup table
rounds half away from zero. All arithmetic is exact integer math.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, EmptyImageError
from .raster import GrayImage, RgbImage

GRAY_LEVELS = 256


@dataclass(frozen=True, eq=False)
class Histogram256:
    """Per-intensity pixel counts of a gray image plus the pixel total."""

    counts: np.ndarray
    total: int

    def __post_init__(self):
        arr = np.asarray(self.counts, dtype=np.int64)
        if arr.shape != (GRAY_LEVELS,):
            raise ValueError(f"histogram needs {GRAY_LEVELS} bins, got shape {arr.shape}")
        if arr.size and arr.min() < 0:
            raise ValueError("histogram counts must be non-negative")
        if int(arr.sum()) != self.total:
            raise ValueError(f"counts sum to {int(arr.sum())}, declared total is {self.total}")
        arr = np.array(arr, copy=True)
        arr.flags.writeable = False
        object.__setattr__(self, "counts", arr)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Histogram256)
            and self.total == other.total
            and np.array_equal(self.counts, other.counts)
        )


@dataclass(frozen=True, eq=False)
class EqualizationLut:
    """Monotone intensity remapping derived from a cumulative histogram."""

    table: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.table)
        if arr.shape != (GRAY_LEVELS,):
            raise ValueError(f"LUT needs {GRAY_LEVELS} entries, got shape {arr.shape}")
        if arr.min() < 0 or arr.max() > 255:
            raise ValueError("LUT entries must lie in 0..255")
        if np.any(np.diff(arr.astype(np.int64)) < 0):
            raise ValueError("LUT must be monotone non-decreasing")
        arr = np.array(arr, dtype=np.uint8)
        arr.flags.writeable = False
        object.__setattr__(self, "table", arr)

    def __eq__(self, other) -> bool:
        return isinstance(other, EqualizationLut) and np.array_equal(self.table, other.table)


@dataclass(frozen=True)
class BlurConfig:
    """Side length of the square averaging mask; must be odd."""

    mask_size: int = 3

    def __post_init__(self):
        if self.mask_size < 1 or self.mask_size % 2 == 0:
            raise ConfigError(f"blur mask_size must be an odd integer >= 1, got {self.mask_size}")


def to_grayscale(image: RgbImage) -> GrayImage:
    """Collapse color to intensity: floor((r + g + b) / 3) per pixel."""
    totals = image.pixels.astype(np.uint16).sum(axis=2)
    return GrayImage((totals // 3).astype(np.uint8))


def compute_histogram(image: GrayImage) -> Histogram256:
    """Count how many pixels carry each intensity value."""
    counts = np.bincount(image.pixels.ravel(), minlength=GRAY_LEVELS)
    return Histogram256(counts, total=image.width * image.height)


def equalization_lut(hist: Histogram256) -> EqualizationLut:
    """Build the remapping table: round(255 * CDF(v)), half away from zero.

    Computed as (510 * cumsum + total) // (2 * total), which is the exact
    integer form of the half-away-from-zero rounding for non-negative input.
    """
    if hist.total == 0:
        raise EmptyImageError("cannot equalize an empty histogram (total is 0)")
    cumulative = hist.counts.cumsum()
    table = (510 * cumulative + hist.total) // (2 * hist.total)
    return EqualizationLut(table)


def equalize(image: GrayImage) -> GrayImage:
    """Remap intensities through the scaled cumulative distribution."""
    lut = equalization_lut(compute_histogram(image))
    return GrayImage(lut.table[image.pixels])


def box_blur(image: GrayImage, config: BlurConfig) -> GrayImage:
    """Replace each pixel with the floored mean of its square neighborhood.

    At borders the window is clipped to the image and the mean is taken
    over the in-bounds pixels only; no padding values are invented.
    """
    k = config.mask_size
    if k > min(image.width, image.height):
        raise ConfigError(
            f"blur mask_size {k} exceeds image size {image.width}x{image.height}"
        )
    if k == 1:
        return GrayImage(image.pixels)
    h, w = image.height, image.width
    r = k // 2
    integral = np.zeros((h + 1, w + 1), dtype=np.int64)
    integral[1:, 1:] = image.pixels.astype(np.int64).cumsum(axis=0).cumsum(axis=1)
    ys = np.arange(h)
    xs = np.arange(w)
    y0 = np.maximum(ys - r, 0)
    y1 = np.minimum(ys + r, h - 1) + 1
    x0 = np.maximum(xs - r, 0)
    x1 = np.minimum(xs + r, w - 1) + 1
    sums = (
        integral[y1[:, None], x1[None, :]]
        - integral[y0[:, None], x1[None, :]]
        - integral[y1[:, None], x0[None, :]]
        + integral[y0[:, None], x0[None, :]]
    )
    counts = (y1 - y0)[:, None] * (x1 - x0)[None, :]
    return GrayImage((sums // counts).astype(np.uint8))
