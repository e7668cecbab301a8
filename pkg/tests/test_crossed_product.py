"""
Tests for PBW normal-form arithmetic in A #_f U(g).
"""
import random
import sys
from pathlib import Path

import pytest

# Adds the project root to the path to allow importing 'algebra'
sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

# pylint: disable=wrong-import-position
from algebra.catalog import fx_dual, fx_heis, inner_fixture, lie_only, random_fixture, sl2_lie
from algebra.crossed_product import CrossedProduct
from linalg.exact_linalg import RATIONALS, ScalarField
from symmetric.symmetric_algebra import fx_weyl, symmetric_ring


@pytest.fixture
def heis() -> CrossedProduct:
    """The Sridharan ring with f(x, y) = 1."""
    return CrossedProduct.from_data(fx_heis())


@pytest.fixture
def dual() -> CrossedProduct:
    """k[ε]/(ε²) with x acting by the Euler derivation."""
    return CrossedProduct.from_data(fx_dual())


def test_heisenberg_reordering(heis: CrossedProduct):
    """Tests (1#y)(1#x) = xy - h - 1."""
    # pylint: disable=redefined-outer-name
    x, y, h = heis.generator(0), heis.generator(1), heis.generator(2)
    expected = heis.monomial(0, (1, 1, 0)) - h - heis.one()
    assert y * x == expected
    assert heis.commutator(x, y) == h + heis.one()


def test_dual_numbers_action(dual: CrossedProduct):
    """Tests (1#x)(ε#1) = εx + ε and (εx)² = 0."""
    # pylint: disable=redefined-outer-name
    x = dual.generator(0)
    eps = dual.monomial(1)
    eps_x = dual.monomial(1, (1,))
    assert x * eps == eps_x + eps
    assert eps_x * eps_x == dual.zero()


def test_weyl_relation():
    """Tests [y, v] = 1 in the Weyl algebra."""
    ring = symmetric_ring(fx_weyl())
    v = ring.monomial((1,))
    y = ring.generator(0)
    assert ring.commutator(y, v) == ring.one()


def test_sl2_bracket_is_commutator():
    """Tests that the commutator of generators realises the Lie bracket of sl2."""
    ring = CrossedProduct.from_data(lie_only(sl2_lie()))
    e, f, h = (ring.generator(i) for i in range(3))
    assert ring.commutator(e, f) == h
    assert ring.commutator(h, e) == e.scale(RATIONALS(2))
    assert ring.commutator(h, f) == f.scale(RATIONALS(-2))


def test_associativity_on_random_fixtures():
    """Tests (uv)w = u(vw) on 200 random triples for each of several random valid rings."""
    rng = random.Random(11)
    for _ in range(4):
        data, _ = random_fixture(rng)
        ring = CrossedProduct.from_data(data)
        for _ in range(200):
            u, v, w = (ring.random_element(rng, 2, terms=2) for _ in range(3))
            assert (u * v) * w == u * (v * w)


@pytest.mark.parametrize("fld", [RATIONALS, ScalarField(10007)], ids=["rationals", "fp10007"])
def test_associativity_on_noncommutative_coefficients(fld: ScalarField):
    """Tests (uv)w = u(vw) on 200 triples of a ring over upper triangular matrices with g nonabelian."""
    rng = random.Random(17)
    data, _ = inner_fixture(rng, fld)
    while data.algebra.labels != ("1", "e12", "e22") or not data.lie.brackets or not any(data.action.matrices):
        data, _ = inner_fixture(rng, fld)
    ring = CrossedProduct.from_data(data)
    for _ in range(200):
        u, v, w = (ring.random_element(rng, 1, terms=3) for _ in range(3))
        assert (u * v) * w == u * (v * w)



def test_prime_field_arithmetic():
    """Tests that arithmetic over F_p matches the reduction of the rational answer."""
    ring = CrossedProduct.from_data(fx_heis(ScalarField(10007)))
    y, x = ring.generator(1), ring.generator(0)
    product = y * x
    assert product.terms[next(m for m in product.terms if m.exponents == (0, 0, 0))] == ring.field(-1)


def test_filtration_and_truncation(dual: CrossedProduct):
    """Tests filtration degrees, the monomial basis and truncation."""
    # pylint: disable=redefined-outer-name
    eps_x2 = dual.monomial(1, (2,))
    assert eps_x2.degree == 3
    assert [dual.monomial_degree(m) for m in dual.monomials_up_to(1)] == [0, 1, 1]
    assert dual.truncate(eps_x2 + dual.one(), 2) == dual.one()


def test_negative_cap(dual: CrossedProduct):
    """Tests that a negative cap is refused."""
    # pylint: disable=redefined-outer-name
    with pytest.raises(ValueError, match="too small"):
        dual.monomials_up_to(-1)


def test_exponent_length(dual: CrossedProduct):
    """Tests that exponent vectors must match the number of generators."""
    # pylint: disable=redefined-outer-name
    with pytest.raises(ValueError, match="Dimension mismatch"):
        dual.monomial(0, (1, 0))


def test_rendering(heis: CrossedProduct):
    """Tests canonical text of an element."""
    # pylint: disable=redefined-outer-name
    assert heis.render(heis.zero()) == "0"
    assert str(heis.generator(1) * heis.generator(0)) == "-(1)#1 + -(1)#h + (1)#x*y"
