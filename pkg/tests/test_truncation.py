"""
Tests for the truncated (co)homology drivers with coefficients in E.
"""
import sys
from pathlib import Path

import pytest

# Adds the project root to the path to allow importing 'complexes'
sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

# pylint: disable=wrong-import-position
from algebra.algebra_data import BimoduleSpec
from algebra.catalog import fx_dual
from complexes.small_complexes import XBarComplex
from complexes.truncation import COHOMOLOGY, HOMOLOGY, default_shift, stabilize, truncated_betti


def test_dual_center_is_one_dimensional():
    """Tests that H^0 of FX-DUAL with M = E has residual 1 at caps 4, 5 and 6."""
    report = truncated_betti(fx_dual(), BimoduleSpec.regular_module(), 0, [4, 5, 6])
    levels = report.degrees[0].levels
    assert [level.cap for level in levels] == [4, 5, 6]
    assert [level.residual for level in levels] == [1, 1, 1]
    assert report.degrees[0].stable


def test_report_shape():
    """Tests the serialized report and the default shift."""
    complex_ = XBarComplex.from_data(fx_dual(), BimoduleSpec.regular_module())
    assert default_shift(complex_) == 2
    report = stabilize(complex_, 1, [3, 2], HOMOLOGY)
    as_dict = report.to_dict()
    assert as_dict["direction"] == HOMOLOGY
    assert as_dict["shift"] == 2
    assert [level["cap"] for level in as_dict["degrees"][0]["levels"]] == [2, 3]
    assert len(report.residuals()) == 2


def test_lower_bound_is_running_maximum():
    """Tests that the lower bound never decreases across caps."""
    report = truncated_betti(fx_dual(), BimoduleSpec.regular_module(), 1, [2, 3, 4], COHOMOLOGY)
    for bounds in report.degrees:
        lows = [level.lower_bound for level in bounds.levels]
        assert lows == sorted(lows)


def test_finite_module_is_refused():
    """Tests that the truncated driver needs M = E."""
    data = fx_dual()
    with pytest.raises(ValueError, match="REGULAR"):
        truncated_betti(data, BimoduleSpec.algebra_itself(data), 1, [2])


def test_bad_direction_and_caps():
    """Tests that unknown directions and empty or negative caps are refused."""
    complex_ = XBarComplex.from_data(fx_dual(), BimoduleSpec.regular_module())
    with pytest.raises(ValueError, match="Unknown direction"):
        stabilize(complex_, 0, [2], "sideways")
    with pytest.raises(ValueError, match="At least one cap"):
        stabilize(complex_, 0, [])
    with pytest.raises(ValueError, match="too small"):
        stabilize(complex_, 0, [-1])
