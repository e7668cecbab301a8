"""
Tests for the independent Chevalley-Eilenberg and bar oracles.
"""
import sys
from pathlib import Path

import pytest

# Adds the project root to the path to allow importing 'comparison'
sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

# pylint: disable=wrong-import-position
from algebra.algebra_data import BimoduleSpec
from algebra.catalog import (
    abelian_lie, augmentation, bar_only, dual_numbers, fx_heis, heisenberg_lie, lie_only, sl2_lie, split_algebra
)
from comparison.oracles import (
    bar_cochain_matrix, bar_oracle_betti, bar_oracle_homology_betti, ce_chain_matrix, ce_cochain_matrix,
    ce_oracle_betti, ce_oracle_homology_betti, centralizer_dimension
)
from complexes.small_complexes import XBarComplex
from linalg.exact_linalg import ScalarField


@pytest.mark.parametrize("lie, expected", [
    (abelian_lie(3), [1, 3, 3, 1]),
    (sl2_lie(), [1, 0, 0, 1]),
    (heisenberg_lie(), [1, 2, 2, 1]),
])
def test_ce_oracle(lie, expected):
    """Tests the Chevalley-Eilenberg Betti numbers in both directions."""
    assert ce_oracle_betti(lie, 3) == expected
    assert ce_oracle_homology_betti(lie, 3) == expected


def test_ce_matrices_match_small_complex():
    """Tests that the small complex of U(g) with M = k has the oracle's differentials entry by entry."""
    for lie in (sl2_lie(), heisenberg_lie()):
        data = lie_only(lie)
        complex_ = XBarComplex.from_data(data, augmentation(data))
        for n in range(3):
            assert complex_.cochain_matrix(n) == ce_cochain_matrix(lie, n)
            assert complex_.chain_matrix(n + 1) == ce_chain_matrix(lie, n + 1)


@pytest.mark.parametrize("fld", [ScalarField(), ScalarField(10007)])
def test_bar_oracle_dual_numbers(fld: ScalarField):
    """Tests HH of k[ε]/(ε²) with M = A over both fields."""
    data = bar_only(dual_numbers(fld))
    m = BimoduleSpec.algebra_itself(data)
    assert bar_oracle_betti(data.algebra, m, 3) == [2, 1, 1, 1]
    assert bar_oracle_homology_betti(data.algebra, m, 3) == [2, 1, 1, 1]


def test_bar_oracle_split_algebra():
    """Tests that k×k is separable."""
    data = bar_only(split_algebra())
    m = BimoduleSpec.algebra_itself(data)
    assert bar_oracle_betti(data.algebra, m, 3) == [2, 0, 0, 0]


def test_bar_matrices_compose_to_zero():
    """Tests d∘d = 0 in the bar oracle."""
    data = bar_only(dual_numbers())
    m = BimoduleSpec.algebra_itself(data)
    for n in range(3):
        assert bar_cochain_matrix(data.algebra, m, n + 1).matmul(bar_cochain_matrix(data.algebra, m, n)).is_zero()


def test_bar_oracle_refuses_regular():
    """Tests that the bar oracle needs a finite M."""
    with pytest.raises(ValueError, match="finite-dimensional"):
        bar_oracle_betti(dual_numbers(), BimoduleSpec.regular_module(), 1)


def test_centralizer_dimension():
    """Tests the centralizer of M in E for M = A and M = k."""
    data = bar_only(dual_numbers())
    assert centralizer_dimension(data, BimoduleSpec.algebra_itself(data)) == 2
    heis = lie_only(heisenberg_lie())
    assert centralizer_dimension(heis, augmentation(heis)) == 1
    with pytest.raises(ValueError, match="finite-dimensional"):
        centralizer_dimension(fx_heis(), BimoduleSpec.regular_module())
