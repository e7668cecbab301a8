"""
Tests for the confluence check of the presentation and the bimodule validator.
"""
import random
import sys
from pathlib import Path

import pytest

# Adds the project root to the path to allow importing 'algebra'
sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

# pylint: disable=wrong-import-position
from algebra.algebra_data import BimoduleSpec
from algebra.catalog import (
    augmentation, bad_cocycle, fx_ab2, fx_dual, fx_heis, heisenberg_lie, inner_fixture, lie_only, non_derivation,
    random_fixture, t2_relative
)
from algebra.presentation import validate_all, validate_bimodule, validate_presentation
from linalg.exact_linalg import RATIONALS, ScalarField


def test_named_fixtures_are_confluent():
    """Tests that the named valid rings resolve every overlap."""
    for data in (fx_heis(), fx_dual(), fx_ab2(), t2_relative()):
        assert validate_presentation(data).ok


def test_rejected_cocycle_names_the_triple():
    """Tests that f(y, z) = 1 with [x, y] = y fails on (x, y, z)."""
    report = validate_all(bad_cocycle())
    assert not report.ok
    failure = report.failures[0]
    assert failure.check == "confluence_generators"
    assert failure.witness == "(x, y, z)"


def test_validate_all_stops_at_the_action():
    """Tests that a non-derivation is reported before any overlap check."""
    report = validate_all(non_derivation())
    assert report.checks() == ["leibniz"]


def test_trivial_module_over_heisenberg():
    """Tests that k with zero generators is a bimodule over U(Heisenberg)."""
    data = lie_only(heisenberg_lie())
    assert validate_bimodule(data, augmentation(data)).ok


def test_trivial_module_over_sridharan_fails():
    """Tests that k cannot carry [x, y] = h + 1 with zero generators."""
    data = fx_heis()
    report = validate_bimodule(data, augmentation(data))
    assert "left_bracket" in report.checks()


def test_regular_module_delegates():
    """Tests that M = E is valid exactly when the presentation is."""
    assert validate_bimodule(fx_heis(), BimoduleSpec.regular_module()).ok
    assert not validate_bimodule(bad_cocycle(), BimoduleSpec.regular_module()).ok


def test_random_fixtures_validate():
    """Tests that every random draw satisfies all axioms with its module."""
    rng = random.Random(3)
    for _ in range(20):
        data, m = random_fixture(rng)
        assert validate_all(data, m).ok


@pytest.mark.parametrize("fld", [RATIONALS, ScalarField(10007)], ids=["rationals", "fp10007"])
def test_inner_fixtures_validate(fld: ScalarField):
    """Tests that inner-derivation draws validate, with some over upper triangular A and nonabelian g."""
    rng = random.Random(21)
    noncommutative = 0
    for _ in range(40):
        data, m = inner_fixture(rng, fld)
        assert validate_all(data, m).ok
        if data.algebra.labels == ("1", "e12", "e22") and data.lie.brackets and any(data.action.matrices):
            noncommutative += 1
    assert noncommutative > 0
