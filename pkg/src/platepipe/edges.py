"""Edge detection over 3x3 windows.

Two detectors share the window layout z1..z9 (row-major, z1 top-left,
z5 center, z9 bottom-right):

  vertical-diff  fires when the left and right window columns differ:
                 |mean(z1,z4,z7) - mean(z3,z6,z9)| > T, evaluated as the
                 exact integer test |sum_left - sum_right| > 3*T.

  sobel          fires when |Gx| + |Gy| > T with
                 Gx = (z7 + 2*z8 + z9) - (z1 + 2*z2 + z3)
                 Gy = (z3 + 2*z6 + z9) - (z1 + 2*z4 + z7)

Both comparisons are strict. Border pixels, whose 3x3 window would leave
the image, are always 0 in the output.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, SizeError
from .raster import BinaryImage, GrayImage

MODE_VERTICAL_DIFF = "vertical-diff"
MODE_SOBEL = "sobel"
EDGE_MODES = (MODE_VERTICAL_DIFF, MODE_SOBEL)

# |Gx| + |Gy| for 8-bit input never exceeds this, so a threshold of 2040
# silences the sobel detector entirely.
SOBEL_MAGNITUDE_MAX = 2040


@dataclass(frozen=True)
class EdgeConfig:
    mode: str = MODE_VERTICAL_DIFF
    threshold: int = 40

    def __post_init__(self):
        if self.mode not in EDGE_MODES:
            raise ConfigError(f"edge mode must be one of {EDGE_MODES}, got {self.mode!r}")
        limit = 255 if self.mode == MODE_VERTICAL_DIFF else SOBEL_MAGNITUDE_MAX
        if not 0 <= self.threshold <= limit:
            raise ConfigError(
                f"edge threshold {self.threshold} out of range 0..{limit} for {self.mode}"
            )


@dataclass(frozen=True)
class ConvWindow:
    """One 3x3 neighborhood, kept for spot-checking single pixels."""

    z1: int
    z2: int
    z3: int
    z4: int
    z5: int
    z6: int
    z7: int
    z8: int
    z9: int

    def __post_init__(self):
        for name in ("z1", "z2", "z3", "z4", "z5", "z6", "z7", "z8", "z9"):
            v = getattr(self, name)
            if not 0 <= v <= 255:
                raise ValueError(f"{name}={v} outside 0..255")

    @classmethod
    def from_image(cls, image: GrayImage, x: int, y: int) -> "ConvWindow":
        """Window centered at (x, y); the center must be interior."""
        if not (1 <= x <= image.width - 2 and 1 <= y <= image.height - 2):
            raise SizeError(f"({x}, {y}) has no full 3x3 window in {image.width}x{image.height}")
        p = image.pixels
        return cls(*(int(p[y + dy, x + dx]) for dy in (-1, 0, 1) for dx in (-1, 0, 1)))

    def left_column_sum(self) -> int:
        return self.z1 + self.z4 + self.z7

    def right_column_sum(self) -> int:
        return self.z3 + self.z6 + self.z9

    def gx(self) -> int:
        return (self.z7 + 2 * self.z8 + self.z9) - (self.z1 + 2 * self.z2 + self.z3)

    def gy(self) -> int:
        return (self.z3 + 2 * self.z6 + self.z9) - (self.z1 + 2 * self.z4 + self.z7)

    def magnitude(self) -> int:
        return abs(self.gx()) + abs(self.gy())


def _require_window(image: GrayImage) -> None:
    if image.width < 3 or image.height < 3:
        raise SizeError(f"edge detection needs at least 3x3, got {image.width}x{image.height}")


def _window_planes(pixels: np.ndarray) -> tuple[np.ndarray, ...]:
    """Shifted int32 views z1..z9 aligned on the interior grid."""
    p = pixels.astype(np.int32)
    return (
        p[:-2, :-2], p[:-2, 1:-1], p[:-2, 2:],
        p[1:-1, :-2], p[1:-1, 1:-1], p[1:-1, 2:],
        p[2:, :-2], p[2:, 1:-1], p[2:, 2:],
    )


def _mask_to_image(fired: np.ndarray, height: int, width: int) -> BinaryImage:
    out = np.zeros((height, width), dtype=np.uint8)
    out[1:-1, 1:-1][fired] = 255
    return BinaryImage(out)


def vertical_edge_detect(image: GrayImage, config: EdgeConfig) -> BinaryImage:
    """Three-column difference detector (the pipeline default)."""
    if config.mode != MODE_VERTICAL_DIFF:
        raise ConfigError(f"vertical_edge_detect given config for mode {config.mode!r}")
    _require_window(image)
    z1, _, z3, z4, _, z6, z7, _, z9 = _window_planes(image.pixels)
    left = z1 + z4 + z7
    right = z3 + z6 + z9
    fired = np.abs(left - right) > 3 * config.threshold
    return _mask_to_image(fired, image.height, image.width)


def sobel_edge_detect(image: GrayImage, config: EdgeConfig) -> BinaryImage:
    """Sobel detector with magnitude |Gx| + |Gy|."""
    if config.mode != MODE_SOBEL:
        raise ConfigError(f"sobel_edge_detect given config for mode {config.mode!r}")
    _require_window(image)
    z1, z2, z3, z4, _, z6, z7, z8, z9 = _window_planes(image.pixels)
    gx = (z7 + 2 * z8 + z9) - (z1 + 2 * z2 + z3)
    gy = (z3 + 2 * z6 + z9) - (z1 + 2 * z4 + z7)
    fired = np.abs(gx) + np.abs(gy) > config.threshold
    return _mask_to_image(fired, image.height, image.width)


def edge_detect(image: GrayImage, config: EdgeConfig) -> BinaryImage:
    """Dispatch to the detector selected by config.mode."""
    if config.mode == MODE_VERTICAL_DIFF:
        return vertical_edge_detect(image, config)
    return sobel_edge_detect(image, config)
