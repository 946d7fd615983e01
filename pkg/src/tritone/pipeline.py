"""End-to-end posterization: smooth, quantize per channel, apply effect."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from tritone.bilateral import DEFAULT_BILATERAL, BilateralParams, bilateral_image
from tritone.effects import Effect, EffectKind, apply_effect
from tritone.fuzzy import DEFAULT_MEMBERSHIP, MembershipParams, build_lut, quantize_plane
from tritone.image import ImageU8, merge_channels, split_channels

__all__ = ["PipelineConfig", "posterize", "count_distinct_colors"]


@dataclass(frozen=True)
class PipelineConfig:
    """Everything one posterization run needs. ``threads=0`` means auto."""

    bilateral: BilateralParams = DEFAULT_BILATERAL
    membership: MembershipParams = DEFAULT_MEMBERSHIP
    effect: Effect = field(default_factory=lambda: Effect(EffectKind.RAW))
    skip_blur: bool = False
    threads: int = 0

    def __post_init__(self) -> None:
        if not (isinstance(self.threads, int) and self.threads >= 0):
            raise ValueError(f"threads must be an integer >= 0, got {self.threads}")


def posterize(img: ImageU8, cfg: PipelineConfig) -> ImageU8:
    """Run the full pipeline on one image.

    The input is bilateral-smoothed (unless ``skip_blur``), every channel
    is quantized through one shared lookup table, and the effect combines
    that raw three-tone output with the original, pre-blur image.
    """
    smoothed = img if cfg.skip_blur else bilateral_image(img, cfg.bilateral, threads=cfg.threads)
    lut = build_lut(cfg.membership)
    quantized = [quantize_plane(plane, lut, threads=cfg.threads) for plane in split_channels(smoothed)]
    raw = merge_channels(quantized)
    return apply_effect(img, raw, cfg.effect)


def count_distinct_colors(img: ImageU8) -> int:
    """Number of distinct pixel values: tuples for color, scalars for gray."""
    if img.channels == 1:
        return int(np.unique(img.data).size)
    rgb = img.data.reshape(-1, 3).astype(np.uint32)
    packed = (rgb[:, 0] << 16) | (rgb[:, 1] << 8) | rgb[:, 2]
    return int(np.unique(packed).size)
