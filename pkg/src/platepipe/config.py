"""Pipeline configuration: the full tunable set and its file format.

Config files are plain text, one dotted ``key=value`` per line, with
``#`` starting a comment. Unknown keys are an error rather than being
silently ignored; missing keys fall back to defaults. All defaults are
engineering choices for 640x480 input.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from pathlib import Path

from .edges import EDGE_MODES, EdgeConfig
from .errors import ConfigError
from .morphology import MorphConfig
from .platefilter import FilterConfig
from .preprocess import BlurConfig
from .segmentation import EIGHT_CONNECTED, FOUR_CONNECTED


@dataclass(frozen=True)
class PipelineConfig:
    blur: BlurConfig = BlurConfig(mask_size=3)
    edge: EdgeConfig = EdgeConfig()
    morph: MorphConfig = MorphConfig(mask_size=3, iterations=2)
    connectivity: int = EIGHT_CONNECTED
    filter: FilterConfig = FilterConfig()
    extract_margin: int = 2

    def __post_init__(self):
        if self.connectivity not in (FOUR_CONNECTED, EIGHT_CONNECTED):
            raise ConfigError(f"connectivity must be 4 or 8, got {self.connectivity}")
        if self.extract_margin < 0:
            raise ConfigError(f"extract_margin must be >= 0, got {self.extract_margin}")


INT_KEYS = (
    "blur.mask_size",
    "edge.threshold",
    "morph.mask_size",
    "morph.iterations",
    "connectivity",
    "filter.min_w",
    "filter.max_w",
    "filter.min_h",
    "filter.max_h",
    "filter.border_margin",
    "filter.area_min",
    "filter.area_max",
    "extract_margin",
)
FLOAT_KEYS = ("filter.ratio_min", "filter.ratio_max")
STR_KEYS = ("edge.mode",)
KNOWN_KEYS = INT_KEYS + FLOAT_KEYS + STR_KEYS
NUMERIC_KEYS = INT_KEYS + FLOAT_KEYS


def parse_param_value(key: str, raw: str) -> int | float | str:
    """Parse one raw value for `key`, with type checking."""
    if key not in KNOWN_KEYS:
        raise ConfigError(f"unknown config key {key!r}")
    if key in INT_KEYS:
        try:
            return int(raw)
        except ValueError:
            raise ConfigError(f"key {key}: expected an integer, got {raw!r}") from None
    if key in FLOAT_KEYS:
        try:
            return float(raw)
        except ValueError:
            raise ConfigError(f"key {key}: expected a number, got {raw!r}") from None
    if raw not in EDGE_MODES:
        raise ConfigError(f"key {key}: expected one of {EDGE_MODES}, got {raw!r}")
    return raw


def apply_param(config: PipelineConfig, key: str, value: int | float) -> PipelineConfig:
    """Return a config with one numeric field replaced.

    This is the sweep entry point; edge.mode is not numeric and is
    rejected here (set it via a config file instead).
    """
    if key not in NUMERIC_KEYS:
        raise ConfigError(f"unknown or non-numeric parameter {key!r}")
    if key in INT_KEYS:
        if value != int(value):
            raise ConfigError(f"key {key}: expected an integer, got {value!r}")
        value = int(value)
    if key == "blur.mask_size":
        return replace(config, blur=BlurConfig(mask_size=value))
    if key == "edge.threshold":
        return replace(config, edge=EdgeConfig(config.edge.mode, value))
    if key == "morph.mask_size":
        return replace(config, morph=MorphConfig(value, config.morph.iterations))
    if key == "morph.iterations":
        return replace(config, morph=MorphConfig(config.morph.mask_size, value))
    if key == "connectivity":
        return replace(config, connectivity=value)
    if key == "extract_margin":
        return replace(config, extract_margin=value)
    filter_field = key.split(".", 1)[1]
    return replace(config, filter=replace(config.filter, **{filter_field: value}))


def _build_config(values: dict[str, int | float | str], describe) -> PipelineConfig:
    defaults = PipelineConfig()

    def build(ctor, default_obj, fields: dict[str, str]):
        kwargs = {kw: getattr(default_obj, kw) for kw in fields}
        kwargs.update({kw: values[key] for kw, key in fields.items() if key in values})
        try:
            return ctor(**kwargs)
        except ConfigError as exc:
            raise ConfigError(f"{exc} ({describe(fields.values())})") from None

    blur = build(BlurConfig, defaults.blur, {"mask_size": "blur.mask_size"})
    edge = build(EdgeConfig, defaults.edge, {"mode": "edge.mode", "threshold": "edge.threshold"})
    morph = build(
        MorphConfig,
        defaults.morph,
        {"mask_size": "morph.mask_size", "iterations": "morph.iterations"},
    )
    filt = build(
        FilterConfig,
        defaults.filter,
        {
            "min_w": "filter.min_w",
            "max_w": "filter.max_w",
            "min_h": "filter.min_h",
            "max_h": "filter.max_h",
            "ratio_min": "filter.ratio_min",
            "ratio_max": "filter.ratio_max",
            "border_margin": "filter.border_margin",
            "area_min": "filter.area_min",
            "area_max": "filter.area_max",
        },
    )
    top = {"connectivity": "connectivity", "extract_margin": "extract_margin"}
    kwargs = {kw: values[key] for kw, key in top.items() if key in values}
    try:
        return PipelineConfig(blur=blur, edge=edge, morph=morph, filter=filt, **kwargs)
    except ConfigError as exc:
        raise ConfigError(f"{exc} ({describe(top.values())})") from None


def parse_config(path) -> PipelineConfig:
    """Read a key=value config file; missing keys keep their defaults."""
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    lines: dict[str, int] = {}
    values: dict[str, int | float | str] = {}
    for line_no, raw_line in enumerate(text.splitlines(), 1):
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, raw_value = line.partition("=")
        key = key.strip()
        raw_value = raw_value.strip()
        if not sep or not key or not raw_value:
            raise ConfigError(f"{path}:{line_no}: expected key=value, got {raw_line.strip()!r}")
        if key not in KNOWN_KEYS:
            raise ConfigError(f"{path}:{line_no}: unknown key {key!r}")
        if key in lines:
            raise ConfigError(f"{path}:{line_no}: duplicate key {key!r} (first on line {lines[key]})")
        try:
            values[key] = parse_param_value(key, raw_value)
        except ConfigError as exc:
            raise ConfigError(f"{path}:{line_no}: {exc}") from None
        lines[key] = line_no

    def describe(keys) -> str:
        present = [f"{k} on line {lines[k]}" for k in keys if k in lines]
        return f"{path}: {', '.join(present)}" if present else f"{path}: defaults"

    return _build_config(values, describe)


def config_to_dict(config: PipelineConfig) -> dict[str, int | float | str]:
    """Flatten a config to its dotted-key form (the file format keys)."""
    return {
        "blur.mask_size": config.blur.mask_size,
        "edge.mode": config.edge.mode,
        "edge.threshold": config.edge.threshold,
        "morph.mask_size": config.morph.mask_size,
        "morph.iterations": config.morph.iterations,
        "connectivity": config.connectivity,
        "filter.min_w": config.filter.min_w,
        "filter.max_w": config.filter.max_w,
        "filter.min_h": config.filter.min_h,
        "filter.max_h": config.filter.max_h,
        "filter.ratio_min": config.filter.ratio_min,
        "filter.ratio_max": config.filter.ratio_max,
        "filter.border_margin": config.filter.border_margin,
        "filter.area_min": config.filter.area_min,
        "filter.area_max": config.filter.area_max,
        "extract_margin": config.extract_margin,
    }
