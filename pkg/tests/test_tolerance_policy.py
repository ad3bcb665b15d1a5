"""Tests for the YAML tolerance profile."""

import pytest
import yaml

from jointri.errors import ConfigError
from jointri.multicast import OptimizerOptions
from jointri.tolerance_policy import PROFILE_PATH, ToleranceProfile


@pytest.fixture
def profile():
    return ToleranceProfile.load()


@pytest.fixture
def minimal():
    return {
        "profile_version": "test",
        "tolerances": {
            "reconstruction": 1e-9, "unitarity": 1e-10, "ratio": 1e-9,
            "majorization": 1e-9, "proposition": 1e-8, "rank": 1e-12,
            "mixed_boundary": 1e-12, "feasibility": 1e-8,
        },
    }


class TestLoading:
    def test_bundled_profile(self, profile):
        assert profile.version == "1.0.0"
        assert profile.source == PROFILE_PATH

    def test_bundled_values(self, profile):
        assert profile.reconstruction == 1e-9
        assert profile.unitarity == 1e-10
        assert profile.proposition == 1e-8
        assert profile.rank == 1e-12
        assert profile.mixed_boundary == 1e-12
        assert profile.gamma_points == 201
        assert profile.significant_digits == 12

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigError):
            ToleranceProfile.load(tmp_path / "absent.yaml")

    def test_not_a_mapping(self, tmp_path):
        path = tmp_path / "list.yaml"
        path.write_text("- 1\n- 2\n")
        with pytest.raises(ConfigError):
            ToleranceProfile.load(path)

    def test_bad_yaml(self, tmp_path):
        path = tmp_path / "bad.yaml"
        path.write_text("tolerances: [unclosed\n")
        with pytest.raises(ConfigError):
            ToleranceProfile.load(path)

    def test_schema_violation(self, minimal):
        minimal["tolerances"]["ratio"] = -1.0
        with pytest.raises(ConfigError, match="tolerances/ratio"):
            ToleranceProfile(minimal)

    def test_unknown_section(self, minimal):
        minimal["extra"] = {}
        with pytest.raises(ConfigError):
            ToleranceProfile(minimal)

    def test_defaults_fill_sections(self, minimal, tmp_path):
        path = tmp_path / "min.yaml"
        path.write_text(yaml.safe_dump(minimal))
        profile = ToleranceProfile.load(path)
        assert profile.batch_size == 100_000
        assert not profile.should_audit()
        assert profile.optimizer == OptimizerOptions()


class TestOverrides:
    def test_override_applies(self, profile):
        tightened = profile.with_overrides({"recon": 1e-6, "iterations": 50})
        assert tightened.reconstruction == 1e-6
        assert tightened.optimizer.iterations == 50
        assert profile.reconstruction == 1e-9

    def test_none_values_ignored(self, profile):
        assert profile.with_overrides({"recon": None}).reconstruction == 1e-9

    def test_unknown_key(self, profile):
        with pytest.raises(ConfigError, match="Unknown tolerance override"):
            profile.with_overrides({"speed": 1})

    def test_invalid_value(self, profile):
        with pytest.raises(ConfigError):
            profile.with_overrides({"gamma_points": 1})

    def test_unknown_tolerance_name(self, profile):
        with pytest.raises(ConfigError):
            profile.tolerance("nope")


class TestSummary:
    def test_summary_mentions_version(self, profile):
        text = profile.summary()
        assert "Profile Version: 1.0.0" in text
        assert "reconstruction" in text

    def test_snapshot_is_a_copy(self, profile):
        snap = profile.snapshot()
        snap["tolerances"]["reconstruction"] = 1.0
        assert profile.reconstruction == 1e-9
