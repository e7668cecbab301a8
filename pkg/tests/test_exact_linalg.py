"""
Tests for the exact scalar fields and the sparse linear algebra.
"""
import random
import sys
from fractions import Fraction
from pathlib import Path

import pytest
from sympy import Matrix

# Adds the project root to the path to allow importing 'linalg'
sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

# pylint: disable=wrong-import-position
from linalg.exact_linalg import (
    RATIONALS, ScalarField, SparseMatrix, SparseVector, accumulate, kernel_basis, quotient_dimension,
    rank, row_reduce, solve
)


@pytest.fixture
def f7() -> ScalarField:
    """The prime field with seven elements."""
    return ScalarField(7)


def test_parse_fields():
    """Tests that both field spellings parse and keep their names."""
    assert ScalarField.parse("rationals") == RATIONALS
    assert ScalarField.parse("fp:10007").name == "fp:10007"
    assert ScalarField.parse(" FP:7 ").characteristic == 7


def test_parse_rejects_composite():
    """Tests that a composite modulus is refused with 'not prime'."""
    with pytest.raises(ValueError, match="not prime"):
        ScalarField.parse("fp:4")


def test_parse_rejects_unknown():
    """Tests that an unknown field name is refused."""
    with pytest.raises(ValueError, match="Unknown field"):
        ScalarField.parse("reals")


def test_fraction_strings():
    """Tests that 'p/q' strings are exact rationals."""
    assert RATIONALS("3/6") == RATIONALS(Fraction(1, 2))
    assert RATIONALS.render(RATIONALS("-4/6")) == "-2/3"
    assert RATIONALS.render(RATIONALS(5)) == "5"


def test_prime_field_arithmetic(f7: ScalarField):
    """Tests residues and inverses in F_7."""
    # pylint: disable=redefined-outer-name
    assert f7.render(f7(-1)) == "6"
    assert f7("1/3") * f7(3) == f7.one
    with pytest.raises(ZeroDivisionError):
        f7("1/7")


def test_accumulate_drops_cancellations():
    """Tests that accumulate removes entries summing to zero."""
    target = {0: RATIONALS(1), 1: RATIONALS(2)}
    accumulate(target, {0: RATIONALS(1)}, RATIONALS(-1))
    assert target == {1: RATIONALS(2)}


def test_sparse_vector_range():
    """Tests that out-of-range indices are rejected."""
    with pytest.raises(ValueError, match="out of range"):
        SparseVector.from_mapping({3: RATIONALS.one}, 3)


def test_rank_and_kernel():
    """Tests rank and kernel of a rank-one matrix."""
    m = SparseMatrix.from_dense([[1, 2, 3], [2, 4, 6]], RATIONALS)
    assert rank(m) == 1
    kernel = kernel_basis(m)
    assert len(kernel) == 2
    for vector in kernel:
        assert m.matvec(vector.to_dict()) == {}


def test_rank_depends_on_field(f7: ScalarField):
    """Tests that a matrix singular mod 7 loses rank over F_7."""
    # pylint: disable=redefined-outer-name
    rows = [[1, 2], [3, 13]]
    assert rank(SparseMatrix.from_dense(rows, RATIONALS)) == 2
    assert rank(SparseMatrix.from_dense(rows, f7)) == 1


@pytest.mark.parametrize("prime", [1009, 10007])
def test_random_ranks_over_both_fields(prime: int):
    """Tests rank over F_p <= rank over Q on 200 random matrices, with equality when no minor can reach p."""
    rng = random.Random(prime)
    fp = ScalarField(prime)
    for _ in range(200):
        rows = [[rng.randint(-5, 5) for _ in range(rng.randint(1, 6))]]
        rows += [[rng.randint(-5, 5) for _ in rows[0]] for _ in range(rng.randint(0, 5))]
        rational = rank(SparseMatrix.from_dense(rows, RATIONALS))
        modular = rank(SparseMatrix.from_dense(rows, fp))
        assert rational == Matrix(rows).rank()
        assert modular <= rational
        # Minors of size at most 3 with entries in [-5, 5] stay below 650 in absolute value.
        if min(len(rows), len(rows[0])) <= 3:
            assert modular == rational



def test_row_reduce_normalises_pivots():
    """Tests that echelon rows start with 1 and reduce vectors to canonical form."""
    echelon = row_reduce(SparseMatrix.from_dense([[2, 4], [0, 3]], RATIONALS))
    assert echelon.pivots == (0, 1)
    assert all(row[pivot] == RATIONALS.one for row, pivot in zip(echelon.rows, echelon.pivots))
    assert echelon.reduce({0: RATIONALS(5), 1: RATIONALS(1)}) == {}


def test_solve_consistent_and_inconsistent():
    """Tests that solve returns a solution or None."""
    m = SparseMatrix.from_dense([[1, 1], [1, 1]], RATIONALS)
    b = SparseVector.from_mapping({0: RATIONALS(2), 1: RATIONALS(2)}, 2)
    x = solve(m, b)
    assert x is not None and m.matvec(x.to_dict()) == b.to_dict()
    assert solve(m, SparseVector.from_mapping({0: RATIONALS(1)}, 2)) is None


def test_solve_dimension_mismatch():
    """Tests that a right-hand side of the wrong length is refused."""
    m = SparseMatrix.identity(2, RATIONALS)
    with pytest.raises(ValueError, match="Dimension mismatch"):
        solve(m, SparseVector.from_mapping({}, 3))


def test_quotient_dimension():
    """Tests the dimension of a quotient by dependent relations."""
    relations = [{0: RATIONALS(1)}, {0: RATIONALS(2)}, {1: RATIONALS(1), 2: RATIONALS(-1)}]
    assert quotient_dimension(3, relations, RATIONALS) == 1
