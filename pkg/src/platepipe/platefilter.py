"""Candidate filtering, scoring, and plate extraction.

filter_heuristic keeps blobs passing every bound at once; the staged
variant additionally reports how many blobs survive each predicate in
the order width, height, ratio, area, border — that running count is
what the CLI sweep table shows.

Scoring multiplies a blob's edge density by its area normalized to the
largest candidate. The idea: a plate bounding box is packed with
character strokes, so among size-plausible candidates the densest,
largest one wins. Car logos of similar bounding box are sparser inside
and rank below.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import TYPE_CHECKING

from .errors import BoundsError, ConfigError, NoCandidatesError
from .raster import Rect, RgbImage, crop
from .segmentation import Blob

if TYPE_CHECKING:
    from .config import PipelineConfig

HEURISTIC_STAGES = ("width", "height", "ratio", "area", "border")


@dataclass(frozen=True)
class FilterConfig:
    """Inclusive bounds a plausible plate blob must satisfy.

    Defaults are tuned for 640x480 input and are engineering choices,
    overridable through the pipeline config file.
    """

    min_w: int = 60
    max_w: int = 300
    min_h: int = 15
    max_h: int = 100
    ratio_min: float = 2.0
    ratio_max: float = 6.0
    border_margin: int = 2
    area_min: int = 400
    area_max: int = 20000

    def __post_init__(self):
        for lo, hi, name in (
            (self.min_w, self.max_w, "w"),
            (self.min_h, self.max_h, "h"),
            (self.ratio_min, self.ratio_max, "ratio"),
            (self.area_min, self.area_max, "area"),
        ):
            if lo > hi:
                raise ConfigError(f"filter {name} bounds inverted: min {lo} > max {hi}")
        if self.ratio_min <= 0:
            raise ConfigError(f"filter ratio_min must be > 0, got {self.ratio_min}")
        if self.border_margin < 0:
            raise ConfigError(f"filter border_margin must be >= 0, got {self.border_margin}")


@dataclass(frozen=True)
class CandidateScore:
    """A surviving blob and its density-times-normalized-area score."""

    blob: Blob
    score: Fraction

    def __post_init__(self):
        if not 0 < self.score <= 1:
            raise ValueError(f"candidate score {self.score} outside (0, 1]")


@dataclass(frozen=True)
class DetectionReport:
    """Outcome of one pipeline run."""

    winner: Blob | None
    candidates: tuple[CandidateScore, ...]
    stage_counts: dict[str, int]
    config_used: "PipelineConfig"
    artifacts: tuple[Path, ...] = field(default=())

    def __post_init__(self):
        if self.winner is not None and self.winner not in [c.blob for c in self.candidates]:
            raise ValueError("winner is not among the final candidates")
        counts = list(self.stage_counts.values())
        if any(a < b for a, b in zip(counts, counts[1:])):
            raise ValueError(f"stage counts must be non-increasing, got {self.stage_counts}")


def _stage_predicates(config: FilterConfig, image_size: tuple[int, int]):
    img_w, img_h = image_size

    def width_ok(b: Blob) -> bool:
        return config.min_w <= b.bbox.w <= config.max_w

    def height_ok(b: Blob) -> bool:
        return config.min_h <= b.bbox.h <= config.max_h

    def ratio_ok(b: Blob) -> bool:
        ratio = Fraction(b.bbox.w, b.bbox.h)
        return config.ratio_min <= ratio <= config.ratio_max

    def area_ok(b: Blob) -> bool:
        return config.area_min <= b.area <= config.area_max

    def border_ok(b: Blob) -> bool:
        m = config.border_margin
        return (
            b.bbox.x >= m
            and b.bbox.y >= m
            and img_w - b.bbox.right >= m
            and img_h - b.bbox.bottom >= m
        )

    return dict(zip(HEURISTIC_STAGES, (width_ok, height_ok, ratio_ok, area_ok, border_ok)))


def filter_heuristic(
    blobs: list[Blob], config: FilterConfig, image_size: tuple[int, int]
) -> list[Blob]:
    """Keep blobs passing all bounds; input order preserved."""
    predicates = _stage_predicates(config, image_size).values()
    return [b for b in blobs if all(p(b) for p in predicates)]


def filter_heuristic_staged(
    blobs: list[Blob], config: FilterConfig, image_size: tuple[int, int]
) -> tuple[list[Blob], dict[str, int]]:
    """filter_heuristic plus survivor counts after each predicate."""
    survivors = list(blobs)
    counts: dict[str, int] = {}
    for name, predicate in _stage_predicates(config, image_size).items():
        survivors = [b for b in survivors if predicate(b)]
        counts[name] = len(survivors)
    return survivors, counts


def score_candidates(blobs: list[Blob]) -> list[CandidateScore]:
    """Score each blob edge_density * (area / max candidate area)."""
    if not blobs:
        raise NoCandidatesError("no candidates to score")
    max_area = max(b.area for b in blobs)
    return [CandidateScore(b, b.edge_density * Fraction(b.area, max_area)) for b in blobs]


def select_plate(scored: list[CandidateScore]) -> Blob | None:
    """The maximum-score candidate; ties resolve to the topmost-leftmost
    bbox, then the smallest label. None when the list is empty."""
    best: CandidateScore | None = None
    for candidate in scored:
        if best is None or candidate.score > best.score:
            best = candidate
        elif candidate.score == best.score:
            key = (candidate.blob.bbox.y, candidate.blob.bbox.x, candidate.blob.label)
            best_key = (best.blob.bbox.y, best.blob.bbox.x, best.blob.label)
            if key < best_key:
                best = candidate
    return best.blob if best is not None else None


def extract_plate(original: RgbImage, winner: Blob, margin: int) -> RgbImage:
    """Crop the winner's bbox grown by `margin`, clamped to the image."""
    bbox = winner.bbox
    if bbox.right > original.width or bbox.bottom > original.height:
        raise BoundsError(
            f"winner bbox {bbox} exceeds image {original.width}x{original.height}"
        )
    return crop(original, bbox.expanded(margin, (original.width, original.height)))
