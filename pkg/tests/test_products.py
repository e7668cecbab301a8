"""
Tests for the cup and cap products on the small complexes.
"""
import random
import sys
from pathlib import Path

import pytest

# Adds the project root to the path to allow importing 'products'
sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

# pylint: disable=wrong-import-position
from algebra.algebra_data import BimoduleSpec
from algebra.catalog import fx_ab2, fx_dual, fx_heis
from complexes.small_complexes import ChainElement, Cochain, XBarComplex
from products.products import cap, cup, signed_subsets


def _complex(data) -> XBarComplex:
    return XBarComplex.from_data(data, BimoduleSpec.regular_module())


def _random_cochain(complex_: XBarComplex, rng: random.Random, degree: int) -> Cochain:
    values = {}
    for inp in complex_.inputs(degree):
        value = complex_.ring.random_element(rng, 1, terms=2)
        if value:
            values[inp] = value
    return Cochain(degree, values)


def _add(complex_: XBarComplex, first: Cochain, second: Cochain, factor) -> dict:
    zero = complex_.ring.zero()
    total = {inp: first.at(inp, zero) + second.at(inp, zero).scale(factor)
             for inp in set(first.values) | set(second.values)}
    return {inp: value for inp, value in total.items() if value}


@pytest.fixture
def ab2() -> XBarComplex:
    """A = k, g abelian of dimension 2, M = E."""
    return _complex(fx_ab2())


def test_signed_subsets():
    """Tests subset signs (-1)^{Σ(j_u - u)} and the extra exponent."""
    signs = {index.subset: index.sign for index in signed_subsets(3, 1)}
    assert signs == {(0,): 1, (1,): -1, (2,): 1}
    assert [index.sign for index in signed_subsets(2, 1, 1)] == [-1, 1]
    assert not list(signed_subsets(2, 3))


def test_cup_of_generators(ab2: XBarComplex):
    """Tests that (x1 -> x1)•(x2 -> x2) takes x1∧x2 to x1x2."""
    # pylint: disable=redefined-outer-name
    ring = ab2.ring
    phi = Cochain(1, {((), (0,)): ring.generator(0)})
    phi2 = Cochain(1, {((), (1,)): ring.generator(1)})
    product = cup(ab2, phi, phi2)
    assert product.values == {((), (0, 1)): ring.monomial(0, (1, 1))}


def test_cap_with_generator(ab2: XBarComplex):
    """Tests that (1 ⊗ x1∧x2)•(x1 -> x1) = x1 ⊗ x2."""
    # pylint: disable=redefined-outer-name
    ring = ab2.ring
    c = ChainElement(2, {((), (0, 1)): ring.one()})
    phi2 = Cochain(1, {((), (0,)): ring.generator(0)})
    assert cap(ab2, c, phi2).values == {((), (1,)): ring.generator(0)}


def test_cap_degree_underflow(ab2: XBarComplex):
    """Tests that capping with a cochain of larger degree is refused."""
    # pylint: disable=redefined-outer-name
    c = ChainElement(0, {((), ()): ab2.ring.one()})
    phi2 = Cochain(1, {((), (0,)): ab2.ring.one()})
    with pytest.raises(ValueError, match="Degree underflow"):
        cap(ab2, c, phi2)


def test_cup_needs_regular_module():
    """Tests that cup refuses finite coefficient modules."""
    data = fx_dual()
    complex_ = XBarComplex.from_data(data, BimoduleSpec.algebra_itself(data))
    phi = Cochain(0, {((), ()): {0: data.field.one}})
    with pytest.raises(ValueError, match="REGULAR"):
        cup(complex_, phi, phi)


@pytest.mark.parametrize("make", [fx_dual, fx_heis])
def test_cup_laws(make):
    """Tests unit, associativity and the Leibniz rule on random cochains."""
    complex_ = _complex(make())
    rng = random.Random(21)
    one = Cochain(0, {((), ()): complex_.ring.one()})
    for p, q in ((0, 1), (1, 0), (1, 1)):
        phi, phi2 = _random_cochain(complex_, rng, p), _random_cochain(complex_, rng, q)
        phi3 = _random_cochain(complex_, rng, 0)
        assert cup(complex_, one, phi) == phi
        assert cup(complex_, phi, one) == phi
        assert cup(complex_, cup(complex_, phi, phi2), phi3) == cup(complex_, phi, cup(complex_, phi2, phi3))
        lhs = complex_.coboundary(cup(complex_, phi, phi2))
        expected = _add(complex_, cup(complex_, complex_.coboundary(phi), phi2),
                        cup(complex_, phi, complex_.coboundary(phi2)), complex_.field(-1 if p % 2 else 1))
        assert lhs.values == expected


def test_cap_unit():
    """Tests c•1 = c for a chain of FX-DUAL."""
    complex_ = _complex(fx_dual())
    ring = complex_.ring
    one = Cochain(0, {((), ()): ring.one()})
    c = ChainElement(2, {((1,), (0,)): ring.generator(0), ((1, 1), ()): ring.monomial(1)})
    assert cap(complex_, c, one) == c
