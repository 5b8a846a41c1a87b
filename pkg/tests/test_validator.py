"""
Tests for the maneuver acceptance checks.
"""

import json
import math

import pytest

from navsim.dynamics.params import params_from_dict
from navsim.errors import ParameterError
from navsim.validation.validator import MAX_FIRST_OVERSHOOT_DEG, ManeuverValidator, rk4_order, validate_file


@pytest.fixture(scope="module")
def shipped_validator(params):
    validator = ManeuverValidator(params)
    validator.validate()
    return validator


class TestShippedParameters:
    """The shipped parameter set must pass every check."""

    def test_passes(self, shipped_validator):
        assert shipped_validator.errors == []
        assert shipped_validator.get_summary()["passed"] is True

    def test_measurements(self, shipped_validator):
        m = shipped_validator.measurements
        assert m["straight_run_speed_drift"] < 1e-5
        assert m["mirror_max_deviation"] <= 1e-10
        assert m["rk4_order_scalar"] >= 3.9
        assert m["rk4_order_model"] >= 3.9
        assert m["turning_steady_r"] < 0.0
        assert 0.0 < m["turning_tactical_diameter"] < 10.0
        for key in ("zigzag_overshoot_1_deg", "zigzag_overshoot_2_deg"):
            assert math.isfinite(m[key]) and m[key] > 0.0
        assert m["zigzag_overshoot_1_deg"] <= MAX_FIRST_OVERSHOOT_DEG

    def test_summary_is_json_serializable(self, shipped_validator):
        doc = json.loads(json.dumps(shipped_validator.get_summary()))
        assert doc["parameter_set"] == "kcs_like"
        assert doc["error_count"] == 0


class TestBrokenParameters:
    def test_flipped_sway_damping_fails(self, params_doc):
        params_doc["hull"]["Yv"] = abs(params_doc["hull"]["Yv"])
        validator = ManeuverValidator(params_from_dict(params_doc))
        assert validator.validate() is False
        assert any("Yv" in e for e in validator.errors)

    def test_unstable_hull_fails_on_maneuvers(self, params_doc, monkeypatch):
        """The sign rule is skipped so only the simulated maneuvers can reject the hull."""
        monkeypatch.setattr(ManeuverValidator, "_check_hull_signs", lambda self: None)
        params_doc["hull"]["Yv"] = abs(params_doc["hull"]["Yv"])
        validator = ManeuverValidator(params_from_dict(params_doc))
        assert validator.validate() is False
        assert not any("Yv" in e for e in validator.errors)
        assert any("zigzag" in e for e in validator.errors)

    def test_missing_file(self, tmp_path):
        with pytest.raises(ParameterError):
            validate_file(tmp_path / "absent.json")


def test_scalar_rk4_order():
    assert rk4_order() >= 3.9
