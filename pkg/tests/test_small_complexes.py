"""
Tests for the small (co)chain complexes and their exact Betti numbers.
"""
import random
import sys
from pathlib import Path

import pytest

# Adds the project root to the path to allow importing 'complexes'
sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

# pylint: disable=wrong-import-position
from algebra.algebra_data import AlgebraData, BimoduleSpec
from algebra.catalog import (
    abelian_lie, augmentation, bar_only, dual_numbers, fx_dual, heisenberg_lie, lie_only, random_fixture,
    sl2_lie, split_algebra, t2_relative
)
from algebra.crossed_product import CrossedProduct
from complexes.modules import RegularModule
from complexes.small_complexes import (
    BarQuotient, ChainElement, Cochain, XBarComplex, betti_cohomology, betti_homology, enumerate_cochain_basis,
    normalize_wedge
)
from linalg.exact_linalg import ScalarField


def _trivial(data: AlgebraData) -> BimoduleSpec:
    return augmentation(data)


@pytest.fixture
def dual_regular() -> XBarComplex:
    """FX-DUAL with coefficients in E."""
    return XBarComplex.from_data(fx_dual(), BimoduleSpec.regular_module())


def test_normalize_wedge():
    """Tests signs of wedge reordering and vanishing on repeats."""
    assert normalize_wedge((2, 0, 1)) == (1, (0, 1, 2))
    assert normalize_wedge((1, 0)) == (-1, (0, 1))
    assert normalize_wedge((1, 1))[0] == 0


def test_abelian_lie_cohomology():
    """Tests Betti numbers (1, 3, 3, 1) for abelian g of dimension 3."""
    data = lie_only(abelian_lie(3))
    assert betti_cohomology(data, _trivial(data), 3) == [1, 3, 3, 1]
    assert betti_homology(data, _trivial(data), 3) == [1, 3, 3, 1]


def test_sl2_cohomology():
    """Tests Betti numbers (1, 0, 0, 1) for sl2."""
    data = lie_only(sl2_lie())
    assert betti_cohomology(data, _trivial(data), 3) == [1, 0, 0, 1]
    assert betti_homology(data, _trivial(data), 3) == [1, 0, 0, 1]


def test_heisenberg_cohomology():
    """Tests Betti numbers (1, 2, 2, 1) for the Heisenberg Lie algebra."""
    data = lie_only(heisenberg_lie())
    assert betti_cohomology(data, _trivial(data), 3) == [1, 2, 2, 1]
    assert betti_homology(data, _trivial(data), 3) == [1, 2, 2, 1]


@pytest.mark.parametrize("fld", [ScalarField(), ScalarField(10007)])
def test_dual_numbers_hochschild(fld: ScalarField):
    """Tests HH^n and HH_n of k[ε]/(ε²) with M = A over both fields."""
    data = bar_only(dual_numbers(fld))
    m = BimoduleSpec.algebra_itself(data)
    assert betti_cohomology(data, m, 3) == [2, 1, 1, 1]
    assert betti_homology(data, m, 3) == [2, 1, 1, 1]


def test_split_algebra_is_separable():
    """Tests that k×k has Hochschild cohomology only in degree 0."""
    data = bar_only(split_algebra())
    assert betti_cohomology(data, BimoduleSpec.algebra_itself(data), 3) == [2, 0, 0, 0]


def test_relative_upper_triangular():
    """Tests T2 relative to its diagonal: H^* = (1, 0, 0) and H_* = (2, 0)."""
    data = t2_relative()
    m = BimoduleSpec.algebra_itself(data)
    assert betti_cohomology(data, m, 2) == [1, 0, 0]
    assert betti_homology(data, m, 1) == [2, 0]


def test_relative_cochain_space_is_constrained():
    """Tests that K-balanced 0-cochains of T2 form the centralizer of K in A."""
    data = t2_relative()
    space = enumerate_cochain_basis(0, 0, data, BimoduleSpec.algebra_itself(data))
    assert space.dimension == 2


def test_regular_module_has_no_basis():
    """Tests that M = E cochains cannot be enumerated."""
    with pytest.raises(ValueError, match="no enumerated basis"):
        enumerate_cochain_basis(0, 0, fx_dual(), BimoduleSpec.regular_module())


def test_regular_module_needs_ground_k():
    """Tests that M = E relative to a larger K is refused."""
    data = t2_relative()
    ring = CrossedProduct.from_data(data)
    with pytest.raises(ValueError, match="only supported"):
        XBarComplex(ring, RegularModule(ring), BarQuotient.for_data(data, ring.coefficients))


def test_dual_coboundary_of_generator(dual_regular: XBarComplex):
    """Tests that the 0-cochain 1#x has coboundary ε -> -ε, x -> 0."""
    # pylint: disable=redefined-outer-name
    ring = dual_regular.ring
    phi = Cochain(0, {((), ()): ring.generator(0)})
    d_phi = dual_regular.coboundary(phi)
    assert d_phi.values == {((1,), ()): -ring.monomial(1)}


def test_dual_boundaries(dual_regular: XBarComplex):
    """Tests the boundaries of (ε#1) ⊗ x and (1#x) ⊗ ε."""
    # pylint: disable=redefined-outer-name
    ring = dual_regular.ring
    eps = ring.monomial(1)
    assert dual_regular.boundary(ChainElement(1, {((), (0,)): eps})).values == {((), ()): -eps}
    assert dual_regular.boundary(ChainElement(1, {((1,), ()): ring.generator(0)})).values == {((), ()): eps}


def test_differentials_square_to_zero():
    """Tests d∘d = 0 up to degree 4 on 100 random valid fixtures for both complexes."""
    rng = random.Random(5)
    for _ in range(100):
        data, m = random_fixture(rng)
        assert XBarComplex.from_data(data, m).assemble(4).squares_to_zero()


def test_regular_coboundary_squares_to_zero(dual_regular: XBarComplex):
    """Tests d∘d = 0 on a random E-valued cochain of FX-DUAL."""
    # pylint: disable=redefined-outer-name
    rng = random.Random(8)
    ring = dual_regular.ring
    for degree in range(3):
        phi = Cochain(degree, {inp: ring.random_element(rng, 2) for inp in dual_regular.inputs(degree)})
        assert not dual_regular.coboundary(dual_regular.coboundary(phi)).values
