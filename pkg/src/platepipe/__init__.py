"""License plate localization from first-principles image operations."""

from .config import PipelineConfig, apply_param, config_to_dict, parse_config
from .edges import (
    EDGE_MODES,
    MODE_SOBEL,
    MODE_VERTICAL_DIFF,
    ConvWindow,
    EdgeConfig,
    edge_detect,
    sobel_edge_detect,
    vertical_edge_detect,
)
from .errors import (
    BoundsError,
    ConfigError,
    ConsistencyError,
    EmptyImageError,
    FormatError,
    NoCandidatesError,
    SizeError,
)
from .morphology import MorphConfig, dilate
from .pipeline import SweepRow, iou, report_json, run_pipeline, sweep, sweep_tsv
from .platefilter import (
    CandidateScore,
    DetectionReport,
    FilterConfig,
    extract_plate,
    filter_heuristic,
    filter_heuristic_staged,
    score_candidates,
    select_plate,
)
from .preprocess import (
    BlurConfig,
    EqualizationLut,
    Histogram256,
    box_blur,
    compute_histogram,
    equalization_lut,
    equalize,
    to_grayscale,
)
from .raster import (
    BinaryImage,
    GrayImage,
    Rect,
    RgbImage,
    crop,
    load_image,
    save_binary,
    save_gray,
    save_rgb,
)
from .segmentation import (
    EIGHT_CONNECTED,
    FOUR_CONNECTED,
    Blob,
    label_components,
    label_components_full,
    palette_color,
    render_components,
)
from .synth import SceneSpec, random_scene_spec, synth_scene

__version__ = "0.1.0"

__all__ = [
    "BinaryImage",
    "Blob",
    "BlurConfig",
    "BoundsError",
    "CandidateScore",
    "ConfigError",
    "ConsistencyError",
    "ConvWindow",
    "DetectionReport",
    "EDGE_MODES",
    "EIGHT_CONNECTED",
    "EdgeConfig",
    "EmptyImageError",
    "EqualizationLut",
    "FilterConfig",
    "FormatError",
    "FOUR_CONNECTED",
    "GrayImage",
    "Histogram256",
    "MODE_SOBEL",
    "MODE_VERTICAL_DIFF",
    "MorphConfig",
    "NoCandidatesError",
    "PipelineConfig",
    "Rect",
    "RgbImage",
    "SceneSpec",
    "SizeError",
    "SweepRow",
    "apply_param",
    "box_blur",
    "compute_histogram",
    "config_to_dict",
    "crop",
    "dilate",
    "edge_detect",
    "equalization_lut",
    "equalize",
    "extract_plate",
    "filter_heuristic",
    "filter_heuristic_staged",
    "iou",
    "label_components",
    "label_components_full",
    "load_image",
    "palette_color",
    "parse_config",
    "random_scene_spec",
    "render_components",
    "report_json",
    "run_pipeline",
    "save_binary",
    "save_gray",
    "save_rgb",
    "score_candidates",
    "select_plate",
    "sobel_edge_detect",
    "sweep",
    "sweep_tsv",
    "synth_scene",
    "to_grayscale",
    "vertical_edge_detect",
]
