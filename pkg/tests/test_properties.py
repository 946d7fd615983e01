"""Randomized invariants, driven by hypothesis."""

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from tritone.effects import Effect, EffectKind, apply_effect
from tritone.fuzzy import MembershipParams, build_lut, mu_bright, mu_dark, mu_gray, quantize_value
from tritone.image import ImageU8, merge_channels, read_pnm, split_channels, write_pnm
from tritone.testkit import oracle_quantize_value


@st.composite
def membership_params(draw):
    anchors = [draw(st.floats(0.0, 255.0)) for _ in range(3)]
    widths = [draw(st.floats(1.0, 128.0)) for _ in range(3)]
    outputs = draw(st.lists(st.integers(0, 255), min_size=3, max_size=3, unique=True))
    return MembershipParams(
        a_dr=anchors[0],
        b_dr=widths[0],
        a_g=anchors[1],
        b_g=widths[1],
        a_br=anchors[2],
        b_br=widths[2],
        v_dr=float(outputs[0]),
        v_g=float(outputs[1]),
        v_br=float(outputs[2]),
    )


@st.composite
def images(draw, channels=None):
    width = draw(st.integers(1, 16))
    height = draw(st.integers(1, 16))
    if channels is None:
        channels = draw(st.sampled_from([1, 3]))
    n = width * height * channels
    data = draw(st.binary(min_size=n, max_size=n))
    return ImageU8(width, height, channels, np.frombuffer(data, dtype=np.uint8))


@given(membership_params(), st.integers(0, 255))
def test_membership_degrees_bounded(params, p):
    for mu in (mu_dark, mu_gray, mu_bright):
        assert 0.0 <= mu(p, params) <= 1.0


@given(membership_params(), st.integers(0, 255))
def test_quantize_codomain(params, p):
    assert quantize_value(p, params) in set(params.outputs())


@settings(max_examples=40)
@given(membership_params())
def test_lut_always_matches_scalar_oracle(params):
    lut = build_lut(params)
    for p in range(256):
        assert int(lut.table[p]) == oracle_quantize_value(p, params)


@given(images())
def test_split_merge_roundtrip(img):
    assert merge_channels(split_channels(img)) == img


@given(images())
def test_pnm_roundtrip(img):
    assert read_pnm(write_pnm(img)) == img


@given(images(channels=3), st.floats(0.0, 1.0))
def test_blend_betweenness(original, alpha):
    rng = np.random.default_rng(314)
    other = ImageU8(
        original.width,
        original.height,
        3,
        rng.integers(0, 256, size=original.data.size, dtype=np.uint8),
    )
    blended = apply_effect(original, other, Effect(EffectKind.BLEND, alpha=alpha))
    assert np.all(blended.data >= np.minimum(original.data, other.data))
    assert np.all(blended.data <= np.maximum(original.data, other.data))
