"""End-to-end detection pipeline, stage artifact dumps, and sweeps.

Stage order: grayscale, equalize, blur, edge detect, dilate, label
components, heuristic filter, score, select, extract. When dumping is
enabled each stage writes one numbered artifact mirroring that order.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import numpy as np

from .config import PipelineConfig, apply_param, config_to_dict
from .edges import edge_detect
from .morphology import dilate
from .platefilter import (
    HEURISTIC_STAGES,
    DetectionReport,
    extract_plate,
    filter_heuristic_staged,
    score_candidates,
    select_plate,
)
from .preprocess import box_blur, equalize, to_grayscale
from .raster import BinaryImage, GrayImage, Rect, RgbImage, save_gray, save_rgb
from .segmentation import Blob, label_components_full, render_components

STAGE_DUMP_NAMES = (
    "00-gray.pgm",
    "01-equalized.pgm",
    "02-blur.pgm",
    "03-edge.pgm",
    "04-dilated.pgm",
    "05-components.ppm",
    "06-candidates.ppm",
    "07-plate.ppm",
)

_OUTLINE_COLOR = (0, 255, 0)


def iou(a: Rect, b: Rect) -> Fraction:
    """Intersection over union of two rects, exact; 0 when disjoint."""
    ix = max(a.x, b.x)
    iy = max(a.y, b.y)
    ix1 = min(a.right, b.right)
    iy1 = min(a.bottom, b.bottom)
    if ix1 <= ix or iy1 <= iy:
        return Fraction(0)
    inter = (ix1 - ix) * (iy1 - iy)
    return Fraction(inter, a.area() + b.area() - inter)


def _outline_rects(image: RgbImage, rects: list[Rect]) -> RgbImage:
    """Copy of `image` with 1-px rectangle outlines drawn over it."""
    arr = np.array(image.pixels, copy=True)
    for r in rects:
        arr[r.y, r.x : r.right] = _OUTLINE_COLOR
        arr[r.bottom - 1, r.x : r.right] = _OUTLINE_COLOR
        arr[r.y : r.bottom, r.x] = _OUTLINE_COLOR
        arr[r.y : r.bottom, r.right - 1] = _OUTLINE_COLOR
    return RgbImage(arr)


def run_pipeline(
    image: RgbImage, config: PipelineConfig | None = None, dump_dir=None
) -> DetectionReport:
    """Run every stage on `image`; optionally dump one artifact per stage.

    A scene with no surviving candidate yields a report with winner None;
    that is an expected outcome, not an error.
    """
    config = config if config is not None else PipelineConfig()
    size = (image.width, image.height)

    gray = to_grayscale(image)
    equalized = equalize(gray)
    blurred = box_blur(equalized, config.blur)
    edge_map = edge_detect(blurred, config.edge)
    dilated = dilate(edge_map, config.morph)
    blobs, labels = label_components_full(dilated, config.connectivity)
    survivors, filter_counts = filter_heuristic_staged(blobs, config.filter, size)
    scored = score_candidates(survivors) if survivors else []
    winner = select_plate(scored)

    stage_counts = {
        "edge_pixels": edge_map.foreground_count(),
        "components": len(blobs),
        **filter_counts,
    }

    artifacts: list[Path] = []
    if dump_dir is not None:
        dump_dir = Path(dump_dir)
        dump_dir.mkdir(parents=True, exist_ok=True)
        components_img = render_components(blobs, labels, size)
        candidates_img = _outline_rects(image, [b.bbox for b in survivors])
        stages: list[tuple[str, GrayImage | BinaryImage | RgbImage]] = [
            (STAGE_DUMP_NAMES[0], gray),
            (STAGE_DUMP_NAMES[1], equalized),
            (STAGE_DUMP_NAMES[2], blurred),
            (STAGE_DUMP_NAMES[3], GrayImage(edge_map.pixels)),
            (STAGE_DUMP_NAMES[4], GrayImage(dilated.pixels)),
            (STAGE_DUMP_NAMES[5], components_img),
            (STAGE_DUMP_NAMES[6], candidates_img),
        ]
        if winner is not None:
            stages.append(
                (STAGE_DUMP_NAMES[7], extract_plate(image, winner, config.extract_margin))
            )
        for name, artifact in stages:
            path = dump_dir / name
            if isinstance(artifact, RgbImage):
                save_rgb(artifact, path)
            else:
                save_gray(artifact, path)
            artifacts.append(path)

    return DetectionReport(
        winner=winner,
        candidates=tuple(scored),
        stage_counts=stage_counts,
        config_used=config,
        artifacts=tuple(artifacts),
    )


@dataclass(frozen=True)
class SweepRow:
    value: int | float
    edge_pixels: int
    components: int
    survivors: dict[str, int]
    winner: Rect | None


def sweep(
    image: RgbImage, base: PipelineConfig, param: str, values: list[int | float]
) -> list[SweepRow]:
    """Re-run the pipeline once per value of one numeric parameter."""
    rows = []
    for value in values:
        report = run_pipeline(image, apply_param(base, param, value))
        rows.append(
            SweepRow(
                value=value,
                edge_pixels=report.stage_counts["edge_pixels"],
                components=report.stage_counts["components"],
                survivors={name: report.stage_counts[name] for name in HEURISTIC_STAGES},
                winner=report.winner.bbox if report.winner is not None else None,
            )
        )
    return rows


def sweep_tsv(param: str, rows: list[SweepRow]) -> str:
    """Render sweep rows as a tab-separated table with a header row."""
    header = [param, "edge_pixels", "components", *HEURISTIC_STAGES, "winner"]
    lines = ["\t".join(header)]
    for row in rows:
        winner = "none" if row.winner is None else (
            f"{row.winner.x},{row.winner.y},{row.winner.w},{row.winner.h}"
        )
        cells = [
            str(row.value),
            str(row.edge_pixels),
            str(row.components),
            *(str(row.survivors[name]) for name in HEURISTIC_STAGES),
            winner,
        ]
        lines.append("\t".join(cells))
    return "\n".join(lines) + "\n"


def _blob_dict(blob: Blob, score: Fraction | None) -> dict:
    data = {
        "label": blob.label,
        "bbox": {"x": blob.bbox.x, "y": blob.bbox.y, "w": blob.bbox.w, "h": blob.bbox.h},
        "area": blob.area,
        "density": str(blob.edge_density),
    }
    if score is not None:
        data["score"] = str(score)
    return data


def report_json(report: DetectionReport) -> str:
    """Serialize a report deterministically (sorted keys, exact scores)."""
    winner = None
    if report.winner is not None:
        score = next(c.score for c in report.candidates if c.blob == report.winner)
        winner = _blob_dict(report.winner, score)
    data = {
        "winner": winner,
        "candidates": [_blob_dict(c.blob, c.score) for c in report.candidates],
        "stage_counts": report.stage_counts,
        "config": config_to_dict(report.config_used),
        "artifacts": [str(p) for p in report.artifacts],
    }
    return json.dumps(data, sort_keys=True)
