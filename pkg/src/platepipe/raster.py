"""Raster buffer types and bit-exact image file I/O.

Pixel layout is row-major with the origin at the top-left corner and y
increasing downward. Arrays are indexed ``[y, x]``. Values are 8-bit:
0 is black, 255 is white. All image objects are immutable once built.

File formats: binary netpbm (PGM P5 and PPM P6, maxval 255) encoded by
hand so fixtures stay auditable in a hex dump, and PNG decoded through
Pillow. PNG alpha is dropped with a warning on stderr.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import BoundsError, FormatError

_PNG_MAGIC = b"\x89PNG\r\n\x1a\n"


def _validated_pixels(values, channels: int | None) -> np.ndarray:
    """Normalize array-like pixel data to a read-only uint8 array."""
    arr = np.asarray(values)
    expected_ndim = 2 if channels is None else 3
    if arr.ndim != expected_ndim:
        raise ValueError(f"expected a {expected_ndim}-d pixel array, got {arr.ndim}-d")
    if channels is not None and arr.shape[2] != channels:
        raise ValueError(f"expected {channels} channels, got {arr.shape[2]}")
    if arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ValueError(f"image dimensions must be >= 1, got {arr.shape[1]}x{arr.shape[0]}")
    if arr.dtype != np.uint8:
        if arr.size and (arr.min() < 0 or arr.max() > 255):
            raise ValueError("pixel values must lie in 0..255")
        arr = arr.astype(np.uint8)
    arr = np.array(arr, copy=True)
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True)
class Rect:
    """Axis-aligned pixel rectangle: top-left corner (x, y), size w x h."""

    x: int
    y: int
    w: int
    h: int

    def __post_init__(self):
        if self.w < 1 or self.h < 1:
            raise BoundsError(f"rect size must be >= 1x1, got {self.w}x{self.h}")

    @property
    def right(self) -> int:
        return self.x + self.w

    @property
    def bottom(self) -> int:
        return self.y + self.h

    def area(self) -> int:
        return self.w * self.h

    def expanded(self, margin: int, within: tuple[int, int]) -> "Rect":
        """Grow by `margin` on every side, clamped to a (w, h) canvas."""
        img_w, img_h = within
        x0 = max(self.x - margin, 0)
        y0 = max(self.y - margin, 0)
        x1 = min(self.right + margin, img_w)
        y1 = min(self.bottom + margin, img_h)
        return Rect(x0, y0, x1 - x0, y1 - y0)


@dataclass(frozen=True, eq=False)
class RgbImage:
    """24-bit color raster: (h, w, 3) uint8 array of (r, g, b) triples."""

    pixels: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "pixels", _validated_pixels(self.pixels, channels=3))

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    def __eq__(self, other) -> bool:
        return isinstance(other, RgbImage) and np.array_equal(self.pixels, other.pixels)


@dataclass(frozen=True, eq=False)
class GrayImage:
    """8-bit intensity raster: (h, w) uint8 array."""

    pixels: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "pixels", _validated_pixels(self.pixels, channels=None))

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    def __eq__(self, other) -> bool:
        return isinstance(other, GrayImage) and np.array_equal(self.pixels, other.pixels)


@dataclass(frozen=True, eq=False)
class BinaryImage:
    """Mask raster: (h, w) uint8 array where every pixel is 0 or 255."""

    pixels: np.ndarray

    def __post_init__(self):
        arr = _validated_pixels(self.pixels, channels=None)
        if not np.isin(arr, (0, 255)).all():
            bad = arr[(arr != 0) & (arr != 255)].flat[0]
            raise ValueError(f"binary image may only contain 0 or 255, found {bad}")
        object.__setattr__(self, "pixels", arr)

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    def foreground_count(self) -> int:
        return int(np.count_nonzero(self.pixels))

    def __eq__(self, other) -> bool:
        return isinstance(other, BinaryImage) and np.array_equal(self.pixels, other.pixels)


def _read_netpbm_header(data: bytes, path: Path) -> tuple[bytes, int, int, int]:
    """Parse 'P5'/'P6', width, height, maxval; return them plus payload offset.

    Token separation follows netpbm: runs of whitespace, with '#' starting
    a comment that runs to end of line.
    """
    magic = data[:2]
    pos = 2
    tokens: list[int] = []
    while len(tokens) < 3:
        while pos < len(data) and data[pos : pos + 1].isspace():
            pos += 1
        if pos < len(data) and data[pos : pos + 1] == b"#":
            eol = data.find(b"\n", pos)
            if eol == -1:
                raise FormatError(f"{path}: unterminated comment in header")
            pos = eol + 1
            continue
        start = pos
        while pos < len(data) and not data[pos : pos + 1].isspace():
            pos += 1
        if pos == start:
            raise FormatError(f"{path}: truncated header after {len(tokens) + 1} tokens")
        token = data[start:pos]
        if not token.isdigit():
            raise FormatError(f"{path}: non-numeric header token {token!r}")
        tokens.append(int(token))
    if pos >= len(data) or not data[pos : pos + 1].isspace():
        raise FormatError(f"{path}: missing whitespace after maxval")
    pos += 1  # exactly one whitespace byte separates header from payload
    w, h, maxval = tokens
    if w < 1 or h < 1:
        raise FormatError(f"{path}: invalid dimensions {w}x{h}")
    if maxval != 255:
        raise FormatError(f"{path}: unsupported maxval {maxval} (only 255)")
    return magic, w, h, pos


def _load_netpbm(data: bytes, path: Path) -> RgbImage:
    magic, w, h, offset = _read_netpbm_header(data, path)
    channels = 1 if magic == b"P5" else 3
    expected = w * h * channels
    payload = data[offset : offset + expected]
    if len(payload) != expected:
        raise FormatError(
            f"{path}: payload has {len(payload)} bytes, header {magic.decode()} "
            f"{w} {h} promises {expected}"
        )
    flat = np.frombuffer(payload, dtype=np.uint8)
    if channels == 1:
        gray = flat.reshape(h, w)
        rgb = np.repeat(gray[:, :, np.newaxis], 3, axis=2)
    else:
        rgb = flat.reshape(h, w, 3)
    return RgbImage(rgb)


def _load_png(path: Path) -> RgbImage:
    from PIL import Image

    with Image.open(path) as im:
        has_alpha = im.mode in ("RGBA", "LA", "PA") or (
            im.mode == "P" and "transparency" in im.info
        )
        if has_alpha:
            print(f"warning: {path}: dropping alpha channel", file=sys.stderr)
        rgb = im.convert("RGB")
        arr = np.asarray(rgb, dtype=np.uint8)
    return RgbImage(arr)


def load_image(path) -> RgbImage:
    """Decode a PNG, binary PPM (P6), or binary PGM (P5) file.

    PGM input is promoted to color by replicating the gray channel.
    Raises FormatError for anything else, OSError for unreadable paths.
    """
    path = Path(path)
    with open(path, "rb") as f:
        data = f.read()
    if data[:2] in (b"P5", b"P6"):
        return _load_netpbm(data, path)
    if data[: len(_PNG_MAGIC)] == _PNG_MAGIC:
        return _load_png(path)
    raise FormatError(f"{path}: unsupported format (magic {data[:2]!r})")


def save_gray(image: GrayImage, path) -> None:
    """Write a binary PGM (P5, maxval 255). Round-trips bit-exactly."""
    header = f"P5\n{image.width} {image.height}\n255\n".encode("ascii")
    with open(path, "wb") as f:
        f.write(header)
        f.write(image.pixels.tobytes())


def save_rgb(image: RgbImage, path) -> None:
    """Write a binary PPM (P6, maxval 255). Round-trips bit-exactly."""
    header = f"P6\n{image.width} {image.height}\n255\n".encode("ascii")
    with open(path, "wb") as f:
        f.write(header)
        f.write(image.pixels.tobytes())


def save_binary(image: BinaryImage, path) -> None:
    """Write a mask as a binary PGM (P5)."""
    save_gray(GrayImage(image.pixels), path)


def crop(image, rect: Rect):
    """Cut `rect` out of an image; the result is the same image kind.

    Output pixel (i, j) equals input pixel (rect.x + i, rect.y + j).
    """
    if rect.x < 0 or rect.y < 0:
        raise BoundsError(f"rect origin ({rect.x}, {rect.y}) is negative")
    if rect.right > image.width:
        raise BoundsError(f"rect right edge {rect.right} exceeds image width {image.width}")
    if rect.bottom > image.height:
        raise BoundsError(f"rect bottom edge {rect.bottom} exceeds image height {image.height}")
    window = image.pixels[rect.y : rect.bottom, rect.x : rect.right]
    return type(image)(window)
