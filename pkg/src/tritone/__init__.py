"""Three-tone image posterization toolkit.

An 8-bit raster is smoothed with an edge-preserving bilateral filter,
then every channel is quantized to three output intensities by a small
fuzzy rule base: dark/gray/bright membership grading, center-of-gravity
defuzzification, and nearest-output classification. Optional post effects
(min, max, alpha blend) combine the quantized result with the untouched
input. See the ``posterize`` command line tool for batch use.
"""

from tritone.bilateral import (
    DEFAULT_BILATERAL,
    BilateralParams,
    bilateral_image,
    bilateral_plane,
)
from tritone.effects import Effect, EffectKind, apply_effect
from tritone.fuzzy import (
    DEFAULT_MEMBERSHIP,
    FuzzyLabel,
    MembershipParams,
    QuantizeLut,
    build_lut,
    classify,
    defuzzify,
    mu_bright,
    mu_dark,
    mu_gray,
    quantize_plane,
    quantize_value,
)
from tritone.image import (
    ImageU8,
    Plane,
    merge_channels,
    read_image,
    read_pnm,
    split_channels,
    write_image,
    write_pnm,
)
from tritone.pipeline import PipelineConfig, count_distinct_colors, posterize

__version__ = "0.1.0"

__all__ = [
    "BilateralParams",
    "DEFAULT_BILATERAL",
    "DEFAULT_MEMBERSHIP",
    "Effect",
    "EffectKind",
    "FuzzyLabel",
    "ImageU8",
    "MembershipParams",
    "PipelineConfig",
    "Plane",
    "QuantizeLut",
    "apply_effect",
    "bilateral_image",
    "bilateral_plane",
    "build_lut",
    "classify",
    "count_distinct_colors",
    "defuzzify",
    "merge_channels",
    "mu_bright",
    "mu_dark",
    "mu_gray",
    "posterize",
    "quantize_plane",
    "quantize_value",
    "read_image",
    "read_pnm",
    "split_channels",
    "write_image",
    "write_pnm",
]
