"""Per-pixel three-tone quantization driven by a small fuzzy rule base.

Every intensity ``p`` in 0..255 is graded against three linguistic labels:

* dark, a left shoulder: 1 below ``a_dr``, falling linearly to 0 at
  ``a_dr + b_dr``;
* gray, a triangle with apex 1 at ``a_g`` and feet at ``a_g +- b_g``;
* bright, a right shoulder: 0 below ``a_br - b_br``, rising linearly to 1
  at ``a_br`` and saturated above it.

The crisp value ``v0`` is the center of gravity of the three constant rule
outputs ``v_dr``, ``v_g``, ``v_br`` weighted by the membership degrees.
The pixel takes the output whose value is nearest to ``v0``; exact ties
resolve dark, then gray, then bright. Because the mapping depends only on
the 8-bit input, it is materialized once as a 256-entry lookup table and
applied to whole planes by indexing.

All membership and defuzzification arithmetic is IEEE double precision;
stored outputs are always an exact ``v_K``, never a rounded ``v0``.
"""

from __future__ import annotations

import enum
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from tritone.image import Plane
from tritone.parallel import resolve_threads, row_bands

__all__ = [
    "FuzzyLabel",
    "MembershipParams",
    "QuantizeLut",
    "DEFAULT_MEMBERSHIP",
    "mu_dark",
    "mu_gray",
    "mu_bright",
    "defuzzify",
    "classify",
    "quantize_value",
    "build_lut",
    "quantize_plane",
]


class FuzzyLabel(enum.Enum):
    """The three linguistic labels a pixel can be classified into."""

    DARK = "dark"
    GRAY = "gray"
    BRIGHT = "bright"


@dataclass(frozen=True)
class MembershipParams:
    """Shape constants of the three membership functions and their outputs.

    ``a_K`` positions each shape on the intensity axis, ``b_K`` is its ramp
    width, and ``v_K`` is the constant output intensity of label ``K``.
    Output intensities must be whole numbers (they are stored verbatim in
    8-bit planes) and pairwise distinct (equal outputs would make the
    nearest-output classification unable to discriminate).
    """

    a_dr: float
    b_dr: float
    a_g: float
    b_g: float
    a_br: float
    b_br: float
    v_dr: float
    v_g: float
    v_br: float

    def __post_init__(self) -> None:
        for name in ("b_dr", "b_g", "b_br"):
            value = getattr(self, name)
            if not value > 0:
                raise ValueError(f"{name} must be > 0, got {value}")
        for name in ("a_dr", "a_g", "a_br", "v_dr", "v_g", "v_br"):
            value = getattr(self, name)
            if not 0 <= value <= 255:
                raise ValueError(f"{name} must lie in [0, 255], got {value}")
        for name in ("v_dr", "v_g", "v_br"):
            value = getattr(self, name)
            if not float(value).is_integer():
                raise ValueError(f"{name} must be a whole 8-bit intensity, got {value}")
        if len({float(self.v_dr), float(self.v_g), float(self.v_br)}) != 3:
            raise ValueError("output intensities v_dr, v_g, v_br must be pairwise distinct")

    def outputs(self) -> tuple[int, int, int]:
        """The three rule outputs as exact 8-bit intensities."""
        return int(self.v_dr), int(self.v_g), int(self.v_br)


#: Stock parameters: shoulder/apex anchors 73, 127, 177, ramp width 50,
#: outputs 0, 127, 255.
DEFAULT_MEMBERSHIP = MembershipParams(
    a_dr=73.0,
    b_dr=50.0,
    a_g=127.0,
    b_g=50.0,
    a_br=177.0,
    b_br=50.0,
    v_dr=0.0,
    v_g=127.0,
    v_br=255.0,
)


def mu_dark(p: float, params: MembershipParams) -> float:
    """Dark membership degree of intensity ``p`` (left shoulder)."""
    if p < params.a_dr:
        return 1.0
    if p <= params.a_dr + params.b_dr:
        return 1.0 - (p - params.a_dr) / params.b_dr
    return 0.0


def mu_gray(p: float, params: MembershipParams) -> float:
    """Gray membership degree of intensity ``p`` (triangle)."""
    if params.a_g - params.b_g <= p < params.a_g:
        return 1.0 - (params.a_g - p) / params.b_g
    if params.a_g <= p <= params.a_g + params.b_g:
        return 1.0 - (p - params.a_g) / params.b_g
    return 0.0


def mu_bright(p: float, params: MembershipParams) -> float:
    """Bright membership degree of intensity ``p`` (right shoulder)."""
    if params.a_br - params.b_br <= p <= params.a_br:
        return 1.0 - (params.a_br - p) / params.b_br
    if p > params.a_br:
        return 1.0
    return 0.0


def _nearest_anchor_output(p: float, params: MembershipParams) -> float:
    # Non-default parameters can leave coverage gaps where every membership
    # is zero; classify such a pixel by the label whose anchor a_K is
    # nearest (ties resolve dark, then gray, matching classify()).
    d_dr = abs(p - params.a_dr)
    d_g = abs(p - params.a_g)
    d_br = abs(p - params.a_br)
    if d_dr <= d_g and d_dr <= d_br:
        return float(params.v_dr)
    if d_g <= d_br:
        return float(params.v_g)
    return float(params.v_br)


def defuzzify(p: float, params: MembershipParams) -> float:
    """Crisp value of ``p``: membership-weighted mean of the rule outputs."""
    m_dr = mu_dark(p, params)
    m_g = mu_gray(p, params)
    m_br = mu_bright(p, params)
    total = m_dr + m_g + m_br
    if total == 0.0:
        return _nearest_anchor_output(p, params)
    return (m_dr * params.v_dr + m_g * params.v_g + m_br * params.v_br) / total


def classify(p: float, params: MembershipParams) -> FuzzyLabel:
    """Label of ``p``: the rule output nearest to the defuzzified value.

    Equal distances resolve in the fixed order dark, gray, bright; with
    the default parameters p=100 is an exact tie between dark and gray.
    """
    v0 = defuzzify(p, params)
    d_dr = abs(v0 - params.v_dr)
    d_g = abs(v0 - params.v_g)
    d_br = abs(v0 - params.v_br)
    if d_dr <= d_g and d_dr <= d_br:
        return FuzzyLabel.DARK
    if d_g <= d_br:
        return FuzzyLabel.GRAY
    return FuzzyLabel.BRIGHT


def quantize_value(p: float, params: MembershipParams) -> int:
    """New intensity for ``p``: the output of its classified label."""
    label = classify(p, params)
    if label is FuzzyLabel.DARK:
        return int(params.v_dr)
    if label is FuzzyLabel.GRAY:
        return int(params.v_g)
    return int(params.v_br)


@dataclass(frozen=True, eq=False)
class QuantizeLut:
    """Frozen 256-entry cache of :func:`quantize_value` for one parameter set."""

    params: MembershipParams
    table: np.ndarray

    def __post_init__(self) -> None:
        table = np.array(self.table, dtype=np.uint8, copy=True).reshape(-1)
        if table.size != 256:
            raise ValueError(f"lookup table must have 256 entries, got {table.size}")
        outputs = set(self.params.outputs())
        present = {int(v) for v in np.unique(table)}
        if not present <= outputs:
            raise ValueError(
                f"table contains intensities {sorted(present - outputs)} outside the rule outputs"
            )
        table.setflags(write=False)
        object.__setattr__(self, "table", table)


def build_lut(params: MembershipParams) -> QuantizeLut:
    """Evaluate the full rule base once per possible 8-bit intensity."""
    table = np.fromiter((quantize_value(p, params) for p in range(256)), dtype=np.uint8, count=256)
    return QuantizeLut(params, table)


# A table lookup is memory bound; banding only pays off on large planes.
_MIN_BAND_SAMPLES = 1 << 20


def quantize_plane(src: Plane, lut: QuantizeLut, threads: int = 1) -> Plane:
    """Map every sample of ``src`` through the lookup table.

    ``threads`` > 1 splits large planes into row bands; the result is
    bit-identical for any worker count (pure table lookup).
    """
    workers = min(resolve_threads(threads), max(1, src.data.size // _MIN_BAND_SAMPLES))
    if workers <= 1 or src.height < 2:
        return Plane(src.width, src.height, lut.table[src.data])

    out = np.empty(src.height * src.width, dtype=np.uint8)
    out_rows = out.reshape(src.height, src.width)
    src_rows = src.rows
    bands = row_bands(src.height, workers)

    def run_band(band: tuple[int, int]) -> None:
        y0, y1 = band
        np.take(lut.table, src_rows[y0:y1], out=out_rows[y0:y1])

    with ThreadPoolExecutor(max_workers=len(bands)) as pool:
        list(pool.map(run_band, bands))
    return Plane(src.width, src.height, out)
