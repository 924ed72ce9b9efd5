#!/usr/bin/env python3
"""Regenerate the committed test fixtures.

Run from the repository root:

    python3 tools/make_fixtures.py

Outputs are deterministic; rerunning must leave git clean. The files
are committed so the fixture tests pin exact bytes, independent of this
script.
"""

from pathlib import Path

from platepipe.pipeline import run_pipeline
from platepipe.raster import Rect, save_rgb
from platepipe.synth import SceneSpec, synth_scene

FIXTURES = Path(__file__).resolve().parent.parent / "tests" / "fixtures"

# the stage-dump golden scene: small, two distractors, default config
STAGE_SPEC = SceneSpec(
    seed=11,
    plate_rect=Rect(28, 46, 100, 30),
    image_size=(160, 120),
    char_count=5,
    distractors=2,
)

# the dilation-mask failure scene: stroke bars 3 px apart in a pattern
# that a 5x5 blur flattens, leaving only sparse glyph-boundary edges
SWEEP_SPEC = SceneSpec(
    seed=7,
    plate_rect=Rect(80, 78, 160, 44),
    image_size=(320, 200),
    char_count=6,
    distractors=0,
    stroke_width=2,
    stroke_gap=3,
    glyph_gap=12,
)

SWEEP_CONFIG = """\
# base config for the dilation mask-size sweep fixture:
# heavier blur erases the 3-px stroke lattice, one dilation pass only
blur.mask_size=5
morph.iterations=1
"""


def write_scene(spec: SceneSpec, name: str) -> None:
    image, truth = synth_scene(spec)
    path = FIXTURES / name
    save_rgb(image, path)
    (FIXTURES / f"{name}.truth").write_text(
        f"{truth.x} {truth.y} {truth.w} {truth.h}\n", encoding="ascii"
    )
    print(f"wrote {path}")


def main() -> None:
    FIXTURES.mkdir(parents=True, exist_ok=True)
    write_scene(STAGE_SPEC, "stage_input.ppm")
    write_scene(SWEEP_SPEC, "sweep_scene.ppm")
    (FIXTURES / "sweep_config.txt").write_text(SWEEP_CONFIG, encoding="ascii")

    image, _ = synth_scene(STAGE_SPEC)
    report = run_pipeline(image, dump_dir=FIXTURES / "golden")
    for artifact in report.artifacts:
        print(f"wrote {artifact}")


if __name__ == "__main__":
    main()
