"""Reference implementations and harnesses the fast paths are verified against.

The oracles here are deliberately naive, straight-line transcriptions of
the arithmetic contracts: :func:`oracle_quantize_value` re-derives one
pixel's quantized intensity without touching the lookup-table code, and
:func:`oracle_bilateral` filters a plane with the obvious quadruple loop.
They share only data types with the production modules, never logic, so
agreement between the two routes is meaningful evidence.

:func:`run_property_suite` drives every cross-module invariant over fixed
seeds and reports one pass/fail line per property; ``python -m
tritone.testkit`` runs it from the shell. Golden regression cases live in
a ``golden/`` directory as (config.txt, input.pnm, expected.pnm,
expected.sha256) quadruples handled by :func:`load_golden_case`.
"""

from __future__ import annotations

import hashlib
import math
import sys
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from tritone.bilateral import BilateralParams, bilateral_plane
from tritone.config import (
    bilateral_from_values,
    coerce_param_values,
    membership_from_values,
    parse_kv_text,
)
from tritone.effects import Effect, EffectKind, apply_effect
from tritone.fuzzy import (
    DEFAULT_MEMBERSHIP,
    MembershipParams,
    QuantizeLut,
    build_lut,
    mu_bright,
    mu_dark,
    mu_gray,
    quantize_value,
)
from tritone.image import ImageU8, Plane, merge_channels, read_pnm, split_channels, write_pnm
from tritone.pipeline import PipelineConfig, count_distinct_colors, posterize

__all__ = [
    "oracle_quantize_value",
    "oracle_bilateral",
    "GoldenCase",
    "load_golden_case",
    "iter_golden_cases",
    "PropertyResult",
    "run_property_suite",
    "lut_mismatches",
    "main",
]

DEFAULT_SEED = 20240801


def oracle_quantize_value(p: float, params: MembershipParams) -> int:
    """Re-derive one pixel's quantized intensity from scratch.

    Straight-line scalar evaluation: grade ``p`` against the dark shoulder,
    gray triangle, and bright shoulder; take the membership-weighted mean
    of the outputs; return the output nearest to it (ties: dark, gray,
    bright). Kept free of any production quantization code on purpose.
    """
    a_dr, b_dr = params.a_dr, params.b_dr
    a_g, b_g = params.a_g, params.b_g
    a_br, b_br = params.a_br, params.b_br
    v_dr, v_g, v_br = params.v_dr, params.v_g, params.v_br

    if p < a_dr:
        m_dr = 1.0
    elif p <= a_dr + b_dr:
        m_dr = 1.0 - (p - a_dr) / b_dr
    else:
        m_dr = 0.0

    if a_g - b_g <= p < a_g:
        m_g = 1.0 - (a_g - p) / b_g
    elif a_g <= p <= a_g + b_g:
        m_g = 1.0 - (p - a_g) / b_g
    else:
        m_g = 0.0

    if a_br - b_br <= p <= a_br:
        m_br = 1.0 - (a_br - p) / b_br
    elif p > a_br:
        m_br = 1.0
    else:
        m_br = 0.0

    total = m_dr + m_g + m_br
    if total == 0.0:
        d_dr = abs(p - a_dr)
        d_g = abs(p - a_g)
        d_br = abs(p - a_br)
        if d_dr <= d_g and d_dr <= d_br:
            v0 = float(v_dr)
        elif d_g <= d_br:
            v0 = float(v_g)
        else:
            v0 = float(v_br)
    else:
        v0 = (m_dr * v_dr + m_g * v_g + m_br * v_br) / total

    dist_dr = abs(v0 - v_dr)
    dist_g = abs(v0 - v_g)
    dist_br = abs(v0 - v_br)
    if dist_dr <= dist_g and dist_dr <= dist_br:
        return int(v_dr)
    if dist_g <= dist_br:
        return int(v_g)
    return int(v_br)


def oracle_bilateral(src: Plane, params: BilateralParams) -> Plane:
    """Naive reference bilateral filter: quadruple loop, replicate borders.

    Terms are accumulated in row-major window order in double precision,
    the quotient rounded half away from zero, matching the contract of the
    production filter bit for bit.
    """
    height, width = src.height, src.width
    rows = src.rows
    radius = params.radius
    sigma_s = params.sigma_spatial
    sigma_r = params.sigma_range
    out = np.zeros((height, width), dtype=np.uint8)
    for y in range(height):
        for x in range(width):
            center = int(rows[y, x])
            num = 0.0
            den = 0.0
            for dy in range(-radius, radius + 1):
                yy = min(max(y + dy, 0), height - 1)
                for dx in range(-radius, radius + 1):
                    xx = min(max(x + dx, 0), width - 1)
                    value = int(rows[yy, xx])
                    w_s = math.exp(-(dy * dy + dx * dx) / (2.0 * sigma_s * sigma_s))
                    diff = center - value
                    w_r = math.exp(-(diff * diff) / (2.0 * sigma_r * sigma_r))
                    weight = w_s * w_r
                    num += weight * value
                    den += weight
            rounded = math.floor(num / den + 0.5)
            out[y, x] = min(max(rounded, 0), 255)
    return Plane(width, height, out)


# -- golden regression cases -------------------------------------------------

_GOLDEN_BOOL = {"true": True, "false": False}


@dataclass(frozen=True)
class GoldenCase:
    """One frozen regression case: input, full config, and output digest."""

    name: str
    input: ImageU8
    config: PipelineConfig
    expected_digest: str


def _golden_config(text: str) -> PipelineConfig:
    kv = parse_kv_text(text)
    effect_kind = EffectKind(kv.pop("effect", "raw"))
    alpha = float(kv.pop("alpha", "1.0"))
    skip_blur_text = kv.pop("skip_blur", "false").lower()
    if skip_blur_text not in _GOLDEN_BOOL:
        raise ValueError(f"skip_blur must be true or false, got {skip_blur_text!r}")
    threads = int(kv.pop("threads", "0"))
    values = coerce_param_values(kv)
    return PipelineConfig(
        bilateral=bilateral_from_values(values),
        membership=membership_from_values(values),
        effect=Effect(effect_kind, alpha=alpha),
        skip_blur=_GOLDEN_BOOL[skip_blur_text],
        threads=threads,
    )


def load_golden_case(case_dir) -> GoldenCase:
    """Load one case directory and verify its stored digest is self-consistent."""
    case_dir = Path(case_dir)
    config = _golden_config((case_dir / "config.txt").read_text(encoding="utf-8"))
    image = read_pnm((case_dir / "input.pnm").read_bytes())
    digest = (case_dir / "expected.sha256").read_text(encoding="utf-8").strip()
    stored = hashlib.sha256((case_dir / "expected.pnm").read_bytes()).hexdigest()
    if stored != digest:
        raise ValueError(f"{case_dir.name}: expected.pnm digest {stored} != recorded {digest}")
    return GoldenCase(case_dir.name, image, config, digest)


def iter_golden_cases(root) -> list[GoldenCase]:
    """Load every case directory under ``root``, sorted by name."""
    return [load_golden_case(d) for d in sorted(Path(root).iterdir()) if d.is_dir()]


# -- property suite ------------------------------------------------------------


@dataclass(frozen=True)
class PropertyResult:
    name: str
    passed: bool
    detail: str = ""


def _fuzzed_params(rng: np.random.Generator) -> MembershipParams:
    outputs = rng.choice(256, size=3, replace=False)
    return MembershipParams(
        a_dr=float(rng.uniform(0.0, 255.0)),
        b_dr=float(rng.uniform(1.0, 128.0)),
        a_g=float(rng.uniform(0.0, 255.0)),
        b_g=float(rng.uniform(1.0, 128.0)),
        a_br=float(rng.uniform(0.0, 255.0)),
        b_br=float(rng.uniform(1.0, 128.0)),
        v_dr=float(outputs[0]),
        v_g=float(outputs[1]),
        v_br=float(outputs[2]),
    )


def _random_image(rng: np.random.Generator, width: int, height: int, channels: int) -> ImageU8:
    data = rng.integers(0, 256, size=width * height * channels, dtype=np.uint8)
    return ImageU8(width, height, channels, data)


def lut_mismatches(lut: QuantizeLut) -> list[int]:
    """Intensities where a lookup table disagrees with the scalar oracle."""
    return [p for p in range(256) if int(lut.table[p]) != oracle_quantize_value(p, lut.params)]


def _check_membership_bounded(rng) -> tuple[bool, str]:
    for params in [DEFAULT_MEMBERSHIP] + [_fuzzed_params(rng) for _ in range(25)]:
        for p in range(256):
            for mu in (mu_dark, mu_gray, mu_bright):
                degree = mu(p, params)
                if not 0.0 <= degree <= 1.0:
                    return False, f"{mu.__name__}({p}) = {degree} for {params}"
    return True, ""


def _check_coverage_under_defaults(rng) -> tuple[bool, str]:
    for p in range(256):
        total = (
            mu_dark(p, DEFAULT_MEMBERSHIP)
            + mu_gray(p, DEFAULT_MEMBERSHIP)
            + mu_bright(p, DEFAULT_MEMBERSHIP)
        )
        if not total > 0.0:
            return False, f"zero membership coverage at p={p}"
    return True, ""


def _check_quantize_codomain(rng) -> tuple[bool, str]:
    for params in [DEFAULT_MEMBERSHIP] + [_fuzzed_params(rng) for _ in range(25)]:
        outputs = set(params.outputs())
        for p in range(256):
            value = quantize_value(p, params)
            if value not in outputs:
                return False, f"quantize_value({p}) = {value} not in {sorted(outputs)}"
    return True, ""


def _check_lut_equivalence(rng) -> tuple[bool, str]:
    for params in [DEFAULT_MEMBERSHIP] + [_fuzzed_params(rng) for _ in range(25)]:
        bad = lut_mismatches(build_lut(params))
        if bad:
            return False, f"table disagrees with the scalar oracle at p={bad[:8]}"
    return True, ""


def _check_idempotence_under_defaults(rng) -> tuple[bool, str]:
    for p in range(256):
        once = quantize_value(p, DEFAULT_MEMBERSHIP)
        twice = quantize_value(once, DEFAULT_MEMBERSHIP)
        if once != twice:
            return False, f"quantize(quantize({p})) = {twice} != {once}"
    return True, ""


def _check_monotonicity_under_defaults(rng) -> tuple[bool, str]:
    table = build_lut(DEFAULT_MEMBERSHIP).table
    for p in range(255):
        if table[p + 1] < table[p]:
            return False, f"quantize_value decreases between p={p} and p={p + 1}"
    return True, ""


def _check_blend_betweenness(rng) -> tuple[bool, str]:
    for alpha in (0.0, 0.25, 0.5, 0.816, 1.0):
        original = _random_image(rng, 31, 17, 3)
        posterized = _random_image(rng, 31, 17, 3)
        blended = apply_effect(original, posterized, Effect(EffectKind.BLEND, alpha=alpha))
        low = np.minimum(original.data, posterized.data)
        high = np.maximum(original.data, posterized.data)
        if not (np.all(blended.data >= low) and np.all(blended.data <= high)):
            return False, f"blend alpha={alpha} left the [min, max] interval"
    return True, ""


def _check_min_max_lattice(rng) -> tuple[bool, str]:
    original = _random_image(rng, 23, 19, 3)
    posterized = _random_image(rng, 23, 19, 3)
    got_max = apply_effect(original, posterized, Effect(EffectKind.MAX))
    got_min = apply_effect(original, posterized, Effect(EffectKind.MIN))
    if not np.array_equal(got_max.data, np.maximum(original.data, posterized.data)):
        return False, "max effect differs from the pointwise maximum"
    if not np.array_equal(got_min.data, np.minimum(original.data, posterized.data)):
        return False, "min effect differs from the pointwise minimum"
    return True, ""


def _check_thread_determinism(rng) -> tuple[bool, str]:
    # 192x192 is large enough that thread counts > 1 really produce
    # different row bandings (see bilateral._MIN_BAND_PIXELS).
    img = _random_image(rng, 192, 192, 3)
    cfg = PipelineConfig(
        bilateral=BilateralParams(sigma_spatial=1.5, sigma_range=25.0, radius=4)
    )
    digests = set()
    for threads in (1, 2, 8):
        out = posterize(img, replace(cfg, threads=threads))
        digests.add(hashlib.sha256(write_pnm(out)).hexdigest())
    if len(digests) != 1:
        return False, f"outputs differ across thread counts: {sorted(digests)}"
    return True, ""


def _check_pnm_roundtrip(rng) -> tuple[bool, str]:
    for channels in (1, 3):
        for _ in range(5):
            img = _random_image(rng, int(rng.integers(1, 24)), int(rng.integers(1, 24)), channels)
            back = read_pnm(write_pnm(img))
            if back != img:
                return False, f"PNM round trip changed a {channels}-channel image"
    return True, ""


def _check_split_merge_roundtrip(rng) -> tuple[bool, str]:
    for channels in (1, 3):
        img = _random_image(rng, 13, 7, channels)
        if merge_channels(split_channels(img)) != img:
            return False, f"split/merge round trip changed a {channels}-channel image"
    return True, ""


def _check_raw_color_bound(rng) -> tuple[bool, str]:
    cfg = PipelineConfig(bilateral=BilateralParams(sigma_spatial=1.5, sigma_range=25.0, radius=3))
    for _ in range(5):
        img = _random_image(rng, 32, 32, 3)
        out = posterize(img, cfg)
        colors = count_distinct_colors(out)
        if colors > 27:
            return False, f"raw posterization produced {colors} distinct colors"
        for plane in split_channels(out):
            if np.unique(plane.data).size > 3:
                return False, "a channel of the raw output holds more than 3 values"
    return True, ""


def _check_bilateral_matches_oracle(rng) -> tuple[bool, str]:
    for params in (
        BilateralParams(sigma_spatial=1.0, sigma_range=10.0, radius=2),
        BilateralParams(sigma_spatial=3.0, sigma_range=30.0, radius=4),
    ):
        plane = Plane(12, 10, rng.integers(0, 256, size=120, dtype=np.uint8))
        if bilateral_plane(plane, params) != oracle_bilateral(plane, params):
            return False, f"fast filter differs from the reference loop for {params}"
    return True, ""


def _check_bilateral_constant_preservation(rng) -> tuple[bool, str]:
    params = BilateralParams(sigma_spatial=2.0, sigma_range=15.0, radius=5)
    for value in (0, 77, 255):
        plane = Plane(9, 6, np.full(54, value, dtype=np.uint8))
        if bilateral_plane(plane, params) != plane:
            return False, f"constant plane {value} was not preserved"
    return True, ""


def _check_bilateral_window_containment(rng) -> tuple[bool, str]:
    params = BilateralParams(sigma_spatial=1.5, sigma_range=40.0, radius=2)
    plane = Plane(14, 11, rng.integers(0, 256, size=154, dtype=np.uint8))
    rows = plane.rows.astype(np.int16)
    out = bilateral_plane(plane, params).rows.astype(np.int16)
    r = params.radius
    padded = np.pad(rows, r, mode="edge")
    for y in range(plane.height):
        for x in range(plane.width):
            window = padded[y : y + 2 * r + 1, x : x + 2 * r + 1]
            if not window.min() - 1 <= out[y, x] <= window.max() + 1:
                return False, f"output at ({x}, {y}) escaped its window range"
    return True, ""


_PROPERTIES = [
    ("membership_bounded", _check_membership_bounded),
    ("membership_coverage_under_defaults", _check_coverage_under_defaults),
    ("quantize_codomain", _check_quantize_codomain),
    ("lut_matches_scalar_oracle", _check_lut_equivalence),
    ("quantize_idempotent_under_defaults", _check_idempotence_under_defaults),
    ("quantize_monotone_under_defaults", _check_monotonicity_under_defaults),
    ("blend_betweenness", _check_blend_betweenness),
    ("min_max_lattice", _check_min_max_lattice),
    ("posterize_thread_determinism", _check_thread_determinism),
    ("pnm_roundtrip", _check_pnm_roundtrip),
    ("split_merge_roundtrip", _check_split_merge_roundtrip),
    ("raw_output_color_bound", _check_raw_color_bound),
    ("bilateral_matches_oracle", _check_bilateral_matches_oracle),
    ("bilateral_constant_preservation", _check_bilateral_constant_preservation),
    ("bilateral_window_containment", _check_bilateral_window_containment),
]


def run_property_suite(seed: int = DEFAULT_SEED) -> list[PropertyResult]:
    """Run every invariant check over fixed seeds; one result per property."""
    results = []
    for offset, (name, check) in enumerate(_PROPERTIES):
        rng = np.random.default_rng(seed + offset)
        try:
            passed, detail = check(rng)
        except Exception as exc:  # a crashing property is a failing property
            passed, detail = False, f"raised {type(exc).__name__}: {exc}"
        results.append(PropertyResult(name, passed, detail))
    return results


def main(argv: list[str] | None = None) -> int:
    results = run_property_suite()
    for result in results:
        if result.passed:
            print(f"PASS {result.name}")
        else:
            print(f"FAIL {result.name}: {result.detail}")
    failures = sum(1 for r in results if not r.passed)
    print(f"{len(results) - failures}/{len(results)} properties passed")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
