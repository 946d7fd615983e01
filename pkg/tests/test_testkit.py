import dataclasses

import numpy as np
import pytest

from tritone.bilateral import BilateralParams
from tritone.fuzzy import DEFAULT_MEMBERSHIP, QuantizeLut, build_lut
from tritone.image import Plane
from tritone.testkit import (
    lut_mismatches,
    main,
    oracle_bilateral,
    oracle_quantize_value,
    run_property_suite,
)


class TestScalarOracle:
    @pytest.mark.parametrize("p,expected", [(100, 0), (127, 127), (0, 0), (255, 255), (150, 127)])
    def test_reference_values(self, p, expected):
        assert oracle_quantize_value(p, DEFAULT_MEMBERSHIP) == expected

    def test_covers_fallback_for_gapped_params(self):
        gappy = dataclasses.replace(
            DEFAULT_MEMBERSHIP, a_dr=10.0, b_dr=5.0, a_g=128.0, b_g=5.0, a_br=250.0, b_br=5.0
        )
        assert oracle_quantize_value(60, gappy) == 0
        assert oracle_quantize_value(200, gappy) == 255


class TestLutSensitivity:
    def test_clean_lut_has_no_mismatches(self):
        assert lut_mismatches(build_lut(DEFAULT_MEMBERSHIP)) == []

    def test_single_mutated_entry_is_detected(self):
        table = build_lut(DEFAULT_MEMBERSHIP).table.copy()
        table[60] = 255  # still a legal rule output, but the wrong one
        corrupted = QuantizeLut(DEFAULT_MEMBERSHIP, table)
        assert lut_mismatches(corrupted) == [60]


class TestNaiveBilateral:
    def test_constant_plane_unchanged(self):
        plane = Plane(5, 4, [130] * 20)
        params = BilateralParams(sigma_spatial=2.0, sigma_range=20.0, radius=3)
        assert oracle_bilateral(plane, params) == plane

    def test_single_pixel_unchanged(self):
        plane = Plane(1, 1, [42])
        params = BilateralParams(sigma_spatial=1.0, sigma_range=10.0, radius=2)
        assert oracle_bilateral(plane, params) == plane

    def test_two_pixel_average_matches_hand_computation(self):
        # 1x2 plane [0, 2], sigma_range huge so range weights are ~1:
        # with radius 1 and replication the left pixel sees [0, 0, 2].
        plane = Plane(2, 1, [0, 2])
        params = BilateralParams(sigma_spatial=100.0, sigma_range=10000.0, radius=1)
        result = oracle_bilateral(plane, params)
        assert result.data.tolist() == [1, 1]  # means 2/3 and 4/3 round to 1


class TestGoldenLoader:
    def _write_case(self, case_dir, config_text, digest=None):
        import hashlib

        from tritone.image import ImageU8, write_pnm

        case_dir.mkdir()
        expected = write_pnm(ImageU8(2, 2, 1, [0, 127, 255, 0]))
        (case_dir / "config.txt").write_text(config_text)
        (case_dir / "input.pnm").write_bytes(write_pnm(ImageU8(2, 2, 1, [10, 60, 150, 230])))
        (case_dir / "expected.pnm").write_bytes(expected)
        digest = digest or hashlib.sha256(expected).hexdigest()
        (case_dir / "expected.sha256").write_text(digest + "\n")

    def test_loads_extended_config_keys(self, tmp_path):
        from tritone.effects import EffectKind
        from tritone.testkit import load_golden_case

        case = tmp_path / "case_a"
        self._write_case(case, "radius = 2\neffect = blend\nalpha = 0.25\nskip_blur = true\n")
        loaded = load_golden_case(case)
        assert loaded.config.effect.kind is EffectKind.BLEND
        assert loaded.config.effect.alpha == 0.25
        assert loaded.config.skip_blur
        assert loaded.config.bilateral.radius == 2

    def test_rejects_stale_digest(self, tmp_path):
        from tritone.testkit import load_golden_case

        case = tmp_path / "case_b"
        self._write_case(case, "effect = raw\n", digest="0" * 64)
        with pytest.raises(ValueError, match="digest"):
            load_golden_case(case)

    def test_rejects_unknown_config_key(self, tmp_path):
        from tritone.testkit import load_golden_case

        case = tmp_path / "case_c"
        self._write_case(case, "shininess = 3\n")
        with pytest.raises(ValueError, match="unknown parameter"):
            load_golden_case(case)


class TestPropertySuite:
    def test_all_properties_pass(self):
        results = run_property_suite()
        failed = [r for r in results if not r.passed]
        assert not failed, failed

    def test_main_prints_one_line_per_property(self, capsys):
        assert main() == 0
        out = capsys.readouterr().out.splitlines()
        assert len(out) == len(run_property_suite()) + 1
        assert all(line.startswith("PASS") for line in out[:-1])
