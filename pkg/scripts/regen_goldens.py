#!/usr/bin/env python3
"""Regenerate the golden regression cases under golden/.

Each case is a directory holding config.txt, input.pnm, expected.pnm and
expected.sha256. Inputs are derived from the seeds recorded in the config
comments, then committed as PNM so the cases stay self-contained. Rerun
this script only when an intentional pipeline change invalidates the
expected outputs, and review the resulting image diffs before committing.
"""

from __future__ import annotations

import hashlib
import sys
from pathlib import Path

import numpy as np

from tritone.image import ImageU8, write_pnm
from tritone.pipeline import posterize
from tritone.testkit import _golden_config


def random_rgb(seed: int, width: int, height: int) -> ImageU8:
    rng = np.random.default_rng(seed)
    return ImageU8(width, height, 3, rng.integers(0, 256, size=width * height * 3, dtype=np.uint8))


def noisy_ramp_gray(seed: int, width: int, height: int) -> ImageU8:
    rng = np.random.default_rng(seed)
    ramp = np.linspace(0, 255, width, dtype=np.float64)[None, :].repeat(height, axis=0)
    noise = rng.normal(0.0, 12.0, size=(height, width))
    data = np.clip(np.rint(ramp + noise), 0, 255).astype(np.uint8)
    return ImageU8(width, height, 1, data)


CASES = [
    (
        "gray_noblur_raw",
        noisy_ramp_gray(202, 40, 40),
        "# input: noisy horizontal ramp, seed = 202\n" "skip_blur = true\n" "effect = raw\n",
    ),
    (
        "gray_max_custom_membership",
        noisy_ramp_gray(505, 24, 24),
        "# input: noisy horizontal ramp, seed = 505\n"
        "sigma_spatial = 1.0\n"
        "sigma_range = 15.0\n"
        "radius = 2\n"
        "a_dr = 60\n"
        "b_dr = 40\n"
        "a_g = 120\n"
        "b_g = 60\n"
        "a_br = 190\n"
        "b_br = 45\n"
        "v_dr = 20\n"
        "v_g = 128\n"
        "v_br = 230\n"
        "effect = max\n",
    ),
    (
        "rgb_defaults_raw",
        random_rgb(101, 48, 32),
        "# input: uniform random RGB, seed = 101\n" "effect = raw\n",
    ),
    (
        "rgb_blend_half",
        random_rgb(303, 32, 32),
        "# input: uniform random RGB, seed = 303\n"
        "sigma_spatial = 1.5\n"
        "sigma_range = 20.0\n"
        "radius = 3\n"
        "effect = blend\n"
        "alpha = 0.5\n",
    ),
    (
        "rgb_min_small_window",
        random_rgb(404, 32, 32),
        "# input: uniform random RGB, seed = 404\n"
        "sigma_spatial = 1.0\n"
        "sigma_range = 10.0\n"
        "radius = 2\n"
        "effect = min\n",
    ),
]


def main() -> int:
    root = Path(__file__).resolve().parent.parent / "golden"
    root.mkdir(exist_ok=True)
    for name, image, config_text in CASES:
        case_dir = root / name
        case_dir.mkdir(exist_ok=True)
        config = _golden_config(config_text)
        expected = write_pnm(posterize(image, config))
        (case_dir / "config.txt").write_text(config_text, encoding="utf-8")
        (case_dir / "input.pnm").write_bytes(write_pnm(image))
        (case_dir / "expected.pnm").write_bytes(expected)
        (case_dir / "expected.sha256").write_text(
            hashlib.sha256(expected).hexdigest() + "\n", encoding="utf-8"
        )
        print(f"wrote {case_dir.relative_to(root.parent)}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
