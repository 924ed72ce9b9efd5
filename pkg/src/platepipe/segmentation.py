"""Connected-component labeling and labeled-region rendering.

Foreground pixels of a binary image are partitioned into blobs: maximal
sets of mutually connected pixels under 4- or 8-connectivity. Labeling
is run-based two-scan with union-find: each row decomposes into
foreground runs, runs touching a run in the previous row are unioned,
and features (area, bounding box, centroid) are accumulated per root.
Only the partition is contractual; the algorithm is an implementation
choice.
"""

from __future__ import annotations

import colorsys
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import ConfigError, ConsistencyError
from .raster import BinaryImage, Rect, RgbImage

FOUR_CONNECTED = 4
EIGHT_CONNECTED = 8

_GOLDEN_RATIO_CONJUGATE = 0.6180339887498949


def _check_connectivity(connectivity: int) -> None:
    if connectivity not in (FOUR_CONNECTED, EIGHT_CONNECTED):
        raise ConfigError(f"connectivity must be 4 or 8, got {connectivity}")


@dataclass(frozen=True)
class Blob:
    """A labeled connected region with its geometry features.

    centroid is the exact mean pixel coordinate as a Fraction pair (x, y);
    edge_density is area over bounding-box area, also exact.
    """

    label: int
    bbox: Rect
    area: int
    centroid: tuple[Fraction, Fraction]

    def __post_init__(self):
        if self.label < 1:
            raise ValueError(f"blob label must be positive, got {self.label}")
        if not 1 <= self.area <= self.bbox.area():
            raise ValueError(f"blob area {self.area} outside 1..{self.bbox.area()}")
        cx, cy = self.centroid
        if not (self.bbox.x <= cx <= self.bbox.right - 1):
            raise ValueError(f"centroid x {cx} outside bbox columns")
        if not (self.bbox.y <= cy <= self.bbox.bottom - 1):
            raise ValueError(f"centroid y {cy} outside bbox rows")

    @property
    def edge_density(self) -> Fraction:
        return Fraction(self.area, self.bbox.area())


def _row_runs(row: np.ndarray) -> list[tuple[int, int]]:
    """Half-open [start, end) spans of consecutive True values."""
    transitions = np.diff(row.astype(np.int8))
    starts = (np.flatnonzero(transitions == 1) + 1).tolist()
    ends = (np.flatnonzero(transitions == -1) + 1).tolist()
    if row[0]:
        starts.insert(0, 0)
    if row[-1]:
        ends.append(len(row))
    return list(zip(starts, ends))


def _find(parent: list[int], i: int) -> int:
    while parent[i] != i:
        parent[i] = parent[parent[i]]
        i = parent[i]
    return i


def _union(parent: list[int], a: int, b: int) -> None:
    # the smaller root survives, so a component's root stays its first run
    ra, rb = _find(parent, a), _find(parent, b)
    if ra == rb:
        return
    if ra < rb:
        parent[rb] = ra
    else:
        parent[ra] = rb


def label_components_full(
    image: BinaryImage, connectivity: int = EIGHT_CONNECTED
) -> tuple[list[Blob], np.ndarray]:
    """Label the foreground; return blobs plus the full label raster.

    The raster holds 0 for background and the blob label elsewhere.
    Labels are 1..n in raster-scan discovery order; the returned list is
    sorted by (bbox.y, bbox.x, label).
    """
    _check_connectivity(connectivity)
    mask = image.pixels != 0
    h, w = mask.shape
    reach = 1 if connectivity == EIGHT_CONNECTED else 0

    parent: list[int] = []
    runs: list[tuple[int, int, int, int]] = []
    prev: list[tuple[int, int, int]] = []
    for y in range(h):
        row = mask[y]
        if not row.any():
            prev = []
            continue
        cur: list[tuple[int, int, int]] = []
        i = 0
        for s, e in _row_runs(row):
            rid = len(parent)
            parent.append(rid)
            runs.append((y, s, e, rid))
            cur.append((s, e, rid))
            while i < len(prev) and prev[i][1] <= s - reach:
                i += 1
            j = i
            while j < len(prev) and prev[j][0] < e + reach:
                _union(parent, rid, prev[j][2])
                j += 1
        prev = cur

    order: dict[int, int] = {}
    area: list[int] = []
    min_x: list[int] = []
    max_x: list[int] = []
    min_y: list[int] = []
    max_y: list[int] = []
    sum_x: list[int] = []
    sum_y: list[int] = []
    labels = np.zeros((h, w), dtype=np.int32)
    for y, s, e, rid in runs:
        root = _find(parent, rid)
        idx = order.get(root)
        if idx is None:
            idx = len(order)
            order[root] = idx
            area.append(0)
            min_x.append(s)
            max_x.append(e - 1)
            min_y.append(y)
            max_y.append(y)
            sum_x.append(0)
            sum_y.append(0)
        n = e - s
        area[idx] += n
        if s < min_x[idx]:
            min_x[idx] = s
        if e - 1 > max_x[idx]:
            max_x[idx] = e - 1
        if y > max_y[idx]:
            max_y[idx] = y
        sum_x[idx] += (s + e - 1) * n // 2
        sum_y[idx] += y * n
        labels[y, s:e] = idx + 1

    blobs = []
    for idx in range(len(order)):
        bbox = Rect(
            min_x[idx],
            min_y[idx],
            max_x[idx] - min_x[idx] + 1,
            max_y[idx] - min_y[idx] + 1,
        )
        centroid = (Fraction(sum_x[idx], area[idx]), Fraction(sum_y[idx], area[idx]))
        blobs.append(Blob(label=idx + 1, bbox=bbox, area=area[idx], centroid=centroid))
    blobs.sort(key=lambda b: (b.bbox.y, b.bbox.x, b.label))
    labels.flags.writeable = False
    return blobs, labels


def label_components(image: BinaryImage, connectivity: int = EIGHT_CONNECTED) -> list[Blob]:
    """Partition the foreground into blobs; see label_components_full."""
    return label_components_full(image, connectivity)[0]


def palette_color(label: int) -> tuple[int, int, int]:
    """Deterministic per-label color: golden-angle hue walk, full value."""
    hue = (label * _GOLDEN_RATIO_CONJUGATE) % 1.0
    r, g, b = colorsys.hsv_to_rgb(hue, 0.85, 1.0)
    return (int(r * 255 + 0.5), int(g * 255 + 0.5), int(b * 255 + 0.5))


def render_components(blobs: list[Blob], labels: np.ndarray, size: tuple[int, int]) -> RgbImage:
    """Paint each blob its palette color on a black background."""
    w, h = size
    if labels.shape != (h, w):
        raise ConsistencyError(f"label raster shape {labels.shape} does not match size {size}")
    max_label = max((b.label for b in blobs), default=0)
    counts = np.bincount(labels.ravel(), minlength=max_label + 1)
    raster_labels = set(np.flatnonzero(counts).tolist()) - {0}
    blob_labels = {b.label for b in blobs}
    if raster_labels != blob_labels:
        raise ConsistencyError(
            f"raster labels {sorted(raster_labels)} != blob labels {sorted(blob_labels)}"
        )
    for blob in blobs:
        if counts[blob.label] != blob.area:
            raise ConsistencyError(
                f"label {blob.label} covers {counts[blob.label]} pixels, blob area is {blob.area}"
            )
    lut = np.zeros((max_label + 1, 3), dtype=np.uint8)
    for blob in blobs:
        lut[blob.label] = palette_color(blob.label)
    return RgbImage(lut[labels])
