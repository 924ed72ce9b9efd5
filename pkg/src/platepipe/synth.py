"""Deterministic synthetic scene generator for benchmarks and fixtures.

A scene is a uniform background, one plate-like rectangle (light fill
with groups of dark vertical stroke bars standing in for characters),
and optional distractors: a filled disc posing as a car logo and noise
patches posing as texture. The plate rectangle is returned as ground
truth. Identical specs render bit-identical images.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import ConfigError
from .raster import Rect, RgbImage

_PLATE_CLEARANCE = 12  # distractors keep this many pixels away from the plate


@dataclass(frozen=True)
class SceneSpec:
    """Everything needed to render one scene.

    stroke_width / stroke_gap / glyph_gap default to a geometry the
    default pipeline config merges into a single block; the fixture for
    the dilation-mask failure mode overrides them.
    """

    seed: int
    plate_rect: Rect
    image_size: tuple[int, int] = (640, 480)
    char_count: int = 6
    distractors: int = 2
    background_level: int = 90
    stroke_width: int | None = None
    stroke_gap: int | None = None
    glyph_gap: int | None = None

    def __post_init__(self):
        w, h = self.image_size
        p = self.plate_rect
        if p.x < 0 or p.y < 0 or p.right > w or p.bottom > h:
            raise ConfigError(f"plate rect {p} outside image {w}x{h}")
        aspect = Fraction(p.w, p.h)
        if not 2 <= aspect <= 6:
            raise ConfigError(f"plate aspect ratio {float(aspect):.2f} outside [2, 6]")
        if self.char_count < 4:
            raise ConfigError(f"char_count must be >= 4, got {self.char_count}")
        if self.distractors < 0:
            raise ConfigError(f"distractors must be >= 0, got {self.distractors}")
        if not 0 <= self.background_level <= 255:
            raise ConfigError(f"background_level {self.background_level} outside 0..255")
        for name in ("stroke_width", "stroke_gap", "glyph_gap"):
            value = getattr(self, name)
            if value is not None and value < 1:
                raise ConfigError(f"{name} must be >= 1, got {value}")


def _rects_intersect(a: Rect, b: Rect) -> bool:
    return not (a.right <= b.x or b.right <= a.x or a.bottom <= b.y or b.bottom <= a.y)


def _draw_plate(canvas: np.ndarray, spec: SceneSpec, rng: random.Random) -> None:
    plate = spec.plate_rect
    plate_fill = rng.randint(215, 235)
    stroke_level = rng.randint(20, 40)
    canvas[plate.y : plate.bottom, plate.x : plate.right] = plate_fill

    bar_w = spec.stroke_width if spec.stroke_width is not None else 2
    gap = spec.stroke_gap if spec.stroke_gap is not None else 4
    glyph_gap = spec.glyph_gap if spec.glyph_gap is not None else gap + 1
    pad_x = max(3, plate.w // 20)
    pad_y = max(2, plate.h // 8)
    x0, x1 = plate.x + pad_x, plate.right - pad_x
    y0, y1 = plate.y + pad_y, plate.bottom - pad_y
    interior_w = x1 - x0

    # distribute as many bars as fit into char_count glyph groups; the
    # only voids inside the strip are then `gap` and `glyph_gap`, both
    # sized so the stroke blocks stay connectable
    pitch = bar_w + gap
    total_bars = (interior_w - (spec.char_count - 1) * glyph_gap + gap) // pitch
    if total_bars < 2 * spec.char_count:
        raise ConfigError(
            f"plate {plate.w}x{plate.h} too small for {spec.char_count} glyphs of >= 2 bars"
        )
    base, extra = divmod(total_bars, spec.char_count)
    glyph_bars = [base + 1 if k < extra else base for k in range(spec.char_count)]
    strip_w = (
        total_bars * bar_w
        + (total_bars - spec.char_count) * gap
        + (spec.char_count - 1) * glyph_gap
    )
    x = x0 + (interior_w - strip_w) // 2
    for k, bars in enumerate(glyph_bars):
        for b in range(bars):
            canvas[y0:y1, x : x + bar_w] = stroke_level
            x += bar_w + (gap if b < bars - 1 else 0)
        if k < spec.char_count - 1:
            x += glyph_gap


def _place_clear(
    rng: random.Random, size_w: int, size_h: int, w: int, h: int, occupied: list[Rect]
) -> Rect | None:
    """Sample a w x h position not intersecting anything occupied."""
    if size_w - w - 2 < 1 or size_h - h - 2 < 1:
        return None
    for _ in range(100):
        rect = Rect(rng.randint(1, size_w - w - 2), rng.randint(1, size_h - h - 2), w, h)
        if not any(_rects_intersect(rect, other) for other in occupied):
            return rect
    return None


def _draw_logo(canvas: np.ndarray, rng: random.Random, occupied: list[Rect]) -> None:
    radius = rng.randint(14, 30)
    level = rng.randint(150, 200)
    side = 2 * radius + 1
    rect = _place_clear(rng, canvas.shape[1], canvas.shape[0], side, side, occupied)
    if rect is None:
        return
    yy, xx = np.ogrid[:side, :side]
    disc = (xx - radius) ** 2 + (yy - radius) ** 2 <= radius**2
    window = canvas[rect.y : rect.bottom, rect.x : rect.right]
    window[disc] = level
    occupied.append(rect)


def _draw_texture(canvas: np.ndarray, rng: random.Random, occupied: list[Rect]) -> None:
    w = rng.randint(18, 34)
    h = rng.randint(18, 34)
    noise = np.frombuffer(rng.randbytes(w * h), dtype=np.uint8).reshape(h, w)
    rect = _place_clear(rng, canvas.shape[1], canvas.shape[0], w, h, occupied)
    if rect is None:
        return
    canvas[rect.y : rect.bottom, rect.x : rect.right] = noise
    occupied.append(rect)


def synth_scene(spec: SceneSpec) -> tuple[RgbImage, Rect]:
    """Render the scene; returns the image and the ground-truth rect."""
    rng = random.Random(spec.seed)
    w, h = spec.image_size
    canvas = np.full((h, w), spec.background_level, dtype=np.uint8)
    _draw_plate(canvas, spec, rng)
    occupied = [spec.plate_rect.expanded(_PLATE_CLEARANCE, (w, h))]
    for k in range(spec.distractors):
        if k % 2 == 0:
            _draw_logo(canvas, rng, occupied)
        else:
            _draw_texture(canvas, rng, occupied)
    rgb = np.repeat(canvas[:, :, np.newaxis], 3, axis=2)
    return RgbImage(rgb), spec.plate_rect


def random_scene_spec(
    seed: int,
    image_size: tuple[int, int] = (640, 480),
    distractors: int = 2,
    char_count: int = 6,
) -> SceneSpec:
    """Derive a full spec (plate placement included) from one seed."""
    rng = random.Random(f"scene-spec-{seed}")
    w, h = image_size
    plate_w = rng.randint(150, min(240, w - 40))
    plate_h = max(34, int(plate_w / rng.uniform(3.0, 4.5)))
    px = rng.randint(16, w - plate_w - 16)
    py = rng.randint(16, h - plate_h - 16)
    return SceneSpec(
        seed=seed,
        plate_rect=Rect(px, py, plate_w, plate_h),
        image_size=image_size,
        char_count=char_count,
        distractors=distractors,
    )
