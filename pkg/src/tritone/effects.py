"""Post effects combining the untouched input I with the quantized output O."""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from tritone.image import ImageU8

__all__ = ["EffectKind", "Effect", "apply_effect"]


class EffectKind(enum.Enum):
    RAW = "raw"
    MIN = "min"
    MAX = "max"
    BLEND = "blend"


@dataclass(frozen=True)
class Effect:
    """Effect selector; ``alpha`` is the blend weight of O and is only
    meaningful for :attr:`EffectKind.BLEND`."""

    kind: EffectKind
    alpha: float = 1.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", EffectKind(self.kind))
        if self.kind is EffectKind.BLEND and not 0.0 <= self.alpha <= 1.0:
            raise ValueError(f"alpha must lie in [0, 1] for blend, got {self.alpha}")


def apply_effect(original: ImageU8, posterized: ImageU8, effect: Effect) -> ImageU8:
    """Per-sample combination: raw O, min(I,O), max(I,O), or
    round(alpha*O + (1-alpha)*I) with round half away from zero."""
    if (original.width, original.height, original.channels) != (
        posterized.width,
        posterized.height,
        posterized.channels,
    ):
        raise ValueError(
            f"image shapes differ: {original.width}x{original.height}x{original.channels}"
            f" vs {posterized.width}x{posterized.height}x{posterized.channels}"
        )
    if effect.kind is EffectKind.RAW:
        return posterized
    if effect.kind is EffectKind.MAX:
        out = np.maximum(original.data, posterized.data)
    elif effect.kind is EffectKind.MIN:
        out = np.minimum(original.data, posterized.data)
    else:
        alpha = float(effect.alpha)
        blended = alpha * posterized.data.astype(np.float64)
        blended += (1.0 - alpha) * original.data.astype(np.float64)
        blended += 0.5
        np.floor(blended, out=blended)  # round half away from zero (values are >= 0)
        out = np.clip(blended, 0.0, 255.0).astype(np.uint8)
    return ImageU8(original.width, original.height, original.channels, out)
