"""Edge-preserving pre-smoothing with a windowed bilateral filter.

Each output sample is the weighted average of its ``(2r+1) x (2r+1)``
neighborhood, with replicate borders. A neighbor's weight is the product
of a Gaussian in squared pixel distance (``sigma_spatial``) and a Gaussian
in intensity difference (``sigma_range``), so neighbors across a strong
edge contribute almost nothing and the edge survives the blur.

The arithmetic contract is exact: accumulation in double precision, terms
added in row-major window order, quotient rounded half away from zero and
clamped to [0, 255]. Output is therefore bit-identical to a naive
quadruple loop and independent of how pixels are scheduled, which the row
banding below exploits for threading.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from tritone.image import ImageU8, Plane, merge_channels, split_channels
from tritone.parallel import resolve_threads, row_bands

__all__ = ["BilateralParams", "DEFAULT_BILATERAL", "bilateral_plane", "bilateral_image"]


@dataclass(frozen=True)
class BilateralParams:
    """Filter knobs: Gaussian widths, window radius, and border policy."""

    sigma_spatial: float
    sigma_range: float
    radius: int
    border: str = "replicate"

    def __post_init__(self) -> None:
        if not self.sigma_spatial > 0:
            raise ValueError(f"sigma_spatial must be > 0, got {self.sigma_spatial}")
        if not self.sigma_range > 0:
            raise ValueError(f"sigma_range must be > 0, got {self.sigma_range}")
        if not (isinstance(self.radius, int) and self.radius >= 1):
            raise ValueError(f"radius must be an integer >= 1, got {self.radius}")
        if self.border != "replicate":
            raise ValueError(f"unsupported border policy {self.border!r}")


#: Stock smoothing: sigma_spatial 3.0, sigma_range 30.0, radius 9
#: (radius = ceil(3 * sigma_spatial) covers nearly all spatial Gaussian mass).
DEFAULT_BILATERAL = BilateralParams(sigma_spatial=3.0, sigma_range=30.0, radius=9)


# Weight tables are built with scalar math.exp, not np.exp: the reference
# loop in tritone.testkit evaluates the same scalar expressions, and
# vectorized libm routines may differ from the scalar one in the last ulp.


def _offset_weight_tables(radius: int, sigma_spatial: float, sigma_range: float) -> np.ndarray:
    """Per-offset 256-entry tables of spatial weight times range weight."""
    size = 2 * radius + 1
    spatial = np.empty((size, size), dtype=np.float64)
    for dy in range(-radius, radius + 1):
        for dx in range(-radius, radius + 1):
            spatial[dy + radius, dx + radius] = math.exp(
                -(dy * dy + dx * dx) / (2.0 * sigma_spatial * sigma_spatial)
            )
    range_lut = np.array(
        [math.exp(-(d * d) / (2.0 * sigma_range * sigma_range)) for d in range(256)],
        dtype=np.float64,
    )
    # Elementwise float64 multiplies round exactly like their scalar
    # counterparts, so pre-scaling keeps the reference-loop arithmetic.
    return spatial[:, :, None] * range_lut[None, None, :]


def _filter_band(
    out: np.ndarray,
    center_i16: np.ndarray,
    padded_i16: np.ndarray,
    padded_f64: np.ndarray,
    tables: np.ndarray,
    radius: int,
    y0: int,
    y1: int,
) -> None:
    height = y1 - y0
    width = out.shape[1]
    num = np.zeros((height, width), dtype=np.float64)
    den = np.zeros((height, width), dtype=np.float64)
    diff = np.empty((height, width), dtype=np.int16)
    weight = np.empty((height, width), dtype=np.float64)
    term = np.empty((height, width), dtype=np.float64)
    center = center_i16[y0:y1]
    for dy in range(-radius, radius + 1):
        row_i = padded_i16[y0 + dy + radius : y1 + dy + radius]
        row_f = padded_f64[y0 + dy + radius : y1 + dy + radius]
        for dx in range(-radius, radius + 1):
            x0 = dx + radius
            np.subtract(center, row_i[:, x0 : x0 + width], out=diff)
            np.abs(diff, out=diff)
            np.take(tables[dy + radius, dx + radius], diff, out=weight)
            np.multiply(weight, row_f[:, x0 : x0 + width], out=term)
            num += term
            den += weight
    quotient = num / den
    quotient += 0.5
    np.floor(quotient, out=quotient)
    np.clip(quotient, 0.0, 255.0, out=quotient)
    out[y0:y1] = quotient.astype(np.uint8)


# Below this many pixels per band, GIL handoffs between tiny array ops cost
# more than the parallelism wins; such planes are filtered sequentially.
_MIN_BAND_PIXELS = 16384


def bilateral_plane(src: Plane, params: BilateralParams, threads: int = 1) -> Plane:
    """Filter one plane. ``threads``: worker count, 0 = one per CPU."""
    workers = min(resolve_threads(threads), max(1, (src.height * src.width) // _MIN_BAND_PIXELS))
    radius = params.radius
    rows = src.rows
    padded = np.pad(rows, radius, mode="edge")
    padded_i16 = padded.astype(np.int16)
    padded_f64 = padded.astype(np.float64)
    center_i16 = rows.astype(np.int16)
    tables = _offset_weight_tables(radius, params.sigma_spatial, params.sigma_range)

    out = np.empty((src.height, src.width), dtype=np.uint8)
    bands = row_bands(src.height, workers)
    if len(bands) == 1:
        _filter_band(out, center_i16, padded_i16, padded_f64, tables, radius, 0, src.height)
    else:

        def run_band(band: tuple[int, int]) -> None:
            _filter_band(out, center_i16, padded_i16, padded_f64, tables, radius, band[0], band[1])

        with ThreadPoolExecutor(max_workers=len(bands)) as pool:
            list(pool.map(run_band, bands))
    return Plane(src.width, src.height, out)


def bilateral_image(src: ImageU8, params: BilateralParams, threads: int = 1) -> ImageU8:
    """Filter every channel independently; dimensions are preserved."""
    filtered = [bilateral_plane(plane, params, threads=threads) for plane in split_channels(src)]
    return merge_channels(filtered)
