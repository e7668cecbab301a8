"""
Named example rings and coefficient modules, plus random families of
inputs that satisfy every axiom by construction.
"""
# Standard library imports
import itertools
import random
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

# Local application imports
from algebra.algebra_data import (
    ActionSpec, AlgebraData, AlgebraSpec, BimoduleSpec, CocycleSpec, LieAlgebraSpec, SubalgebraSpec,
    Vector
)
from linalg.exact_linalg import RATIONALS, Scalar, ScalarField, accumulate


def _unital(fld: ScalarField, labels: Sequence[str], products: Mapping[Tuple[int, int], Mapping[int, int]],
            degrees: Optional[Tuple[int, ...]] = None) -> AlgebraSpec:
    """An algebra with unit at index 0; only products of non-unit basis elements are listed."""
    table: Dict[Tuple[int, int], Dict[int, Scalar]] = {}
    for i in range(len(labels)):
        table[(0, i)] = {i: fld.one}
        table[(i, 0)] = {i: fld.one}
    for key, vector in products.items():
        table[key] = {k: fld(c) for k, c in vector.items() if c}
    return AlgebraSpec(fld, len(labels), 0, table, tuple(labels), degrees)


def ground_algebra(fld: ScalarField = RATIONALS) -> AlgebraSpec:
    return _unital(fld, ["1"], {}, (0,))


def dual_numbers(fld: ScalarField = RATIONALS) -> AlgebraSpec:
    """k[ε]/(ε²), graded with deg ε = 1."""
    return _unital(fld, ["1", "ε"], {}, (0, 1))


def split_algebra(fld: ScalarField = RATIONALS) -> AlgebraSpec:
    """k×k with basis 1 and the idempotent e."""
    return _unital(fld, ["1", "e"], {(1, 1): {1: 1}}, (0, 0))


def truncated_polynomials(length: int, fld: ScalarField = RATIONALS) -> AlgebraSpec:
    """k[t]/(t^length) on the monomial basis."""
    labels = ["1"] + ["t" if p == 1 else f"t^{p}" for p in range(1, length)]
    products = {(p, q): {p + q: 1} for p in range(1, length) for q in range(1, length) if p + q < length}
    return _unital(fld, labels, products, tuple(range(length)))


def upper_triangular(fld: ScalarField = RATIONALS) -> AlgebraSpec:
    """T2 on the basis 1, e12, e22."""
    return _unital(fld, ["1", "e12", "e22"], {(1, 2): {1: 1}, (2, 2): {2: 1}}, (0, 0, 0))


def _vectors(fld: ScalarField, table: Mapping[Tuple[int, int], Mapping[int, int]]) -> Dict[Tuple[int, int], Vector]:
    return {key: {k: fld(c) for k, c in vector.items()} for key, vector in table.items()}


def abelian_lie(dimension: int, fld: ScalarField = RATIONALS,
                labels: Sequence[str] = ()) -> LieAlgebraSpec:
    return LieAlgebraSpec.abelian(fld, dimension, labels)


def sl2_lie(fld: ScalarField = RATIONALS) -> LieAlgebraSpec:
    """sl2 on the ordered basis e < f < h."""
    return LieAlgebraSpec.from_upper(fld, 3, _vectors(fld, {(0, 1): {2: 1}, (2, 0): {0: 2}, (2, 1): {1: -2}}),
                                     ("e", "f", "h"))


def broken_sl2_lie(fld: ScalarField = RATIONALS) -> LieAlgebraSpec:
    """sl2 with the sign of [h, f] flipped; Jacobi fails."""
    return LieAlgebraSpec.from_upper(fld, 3, _vectors(fld, {(0, 1): {2: 1}, (2, 0): {0: 2}, (2, 1): {1: 2}}),
                                     ("e", "f", "h"))


def heisenberg_lie(fld: ScalarField = RATIONALS) -> LieAlgebraSpec:
    """[x, y] = h with h central, ordered x < y < h."""
    return LieAlgebraSpec.from_upper(fld, 3, _vectors(fld, {(0, 1): {2: 1}}), ("x", "y", "h"))


def affine_lie(fld: ScalarField = RATIONALS) -> LieAlgebraSpec:
    """The two-dimensional non-abelian Lie algebra, [x, y] = y."""
    return LieAlgebraSpec.from_upper(fld, 2, _vectors(fld, {(0, 1): {1: 1}}), ("x", "y"))


def fx_dual(fld: ScalarField = RATIONALS) -> AlgebraData:
    """A = k[ε]/(ε²), g = <x> acting by the Euler derivation ε^x = ε, f = 0."""
    return AlgebraData(dual_numbers(fld), abelian_lie(1, fld, ("x",)),
                       action=ActionSpec(({1: {1: fld.one}},)))


def fx_heis(fld: ScalarField = RATIONALS) -> AlgebraData:
    """The Sridharan algebra over the Heisenberg Lie algebra with f(x, y) = 1."""
    return AlgebraData(ground_algebra(fld), heisenberg_lie(fld),
                       cocycle=CocycleSpec({(0, 1): {0: fld.one}}))


def fx_ab2(fld: ScalarField = RATIONALS) -> AlgebraData:
    """A = k, g abelian of dimension 2, f = 0."""
    return AlgebraData(ground_algebra(fld), abelian_lie(2, fld, ("x1", "x2")))


def lie_only(lie: LieAlgebraSpec) -> AlgebraData:
    """A = k and f = 0: E is the enveloping algebra of g."""
    return AlgebraData(ground_algebra(lie.field), lie)


def bar_only(algebra: AlgebraSpec) -> AlgebraData:
    """g = 0: E is A itself."""
    return AlgebraData(algebra, abelian_lie(0, algebra.field))


def bad_cocycle(fld: ScalarField = RATIONALS) -> AlgebraData:
    """[x, y] = y, z central, f(y, z) = 1: the cocycle condition fails on (x, y, z)."""
    lie = LieAlgebraSpec.from_upper(fld, 3, _vectors(fld, {(0, 1): {1: 1}}), ("x", "y", "z"))
    return AlgebraData(ground_algebra(fld), lie, cocycle=CocycleSpec({(1, 2): {0: fld.one}}))


def non_derivation(fld: ScalarField = RATIONALS) -> AlgebraData:
    """A = k[ε]/(ε²) with ε^x = 1, which breaks the Leibniz rule."""
    return AlgebraData(dual_numbers(fld), abelian_lie(1, fld, ("x",)),
                       action=ActionSpec(({1: {0: fld.one}},)))


def t2_relative(fld: ScalarField = RATIONALS) -> AlgebraData:
    """A = T2 relative to K = span{1, e22}, g = 0."""
    algebra = upper_triangular(fld)
    k_sub = SubalgebraSpec(({0: fld.one}, {2: fld.one}))
    return AlgebraData(algebra, abelian_lie(0, fld), subalgebra=k_sub)


def augmentation(data: AlgebraData, chi: Optional[Sequence[Scalar]] = None,
                 left_gen: Optional[Sequence[Scalar]] = None,
                 right_gen: Optional[Sequence[Scalar]] = None) -> BimoduleSpec:
    """M = k through chi (default: 1 -> 1, other basis elements -> 0); generators act by the given scalars or 0."""
    fld = data.field
    if chi is None:
        chi = [fld.one if i == data.algebra.unit else fld.zero for i in range(data.algebra.dimension)]
    return BimoduleSpec.character(data, chi, left_gen, right_gen)


# Random families. Every draw satisfies the axioms by construction.

_COMMUTATIVE = ("ground", "dual", "split", "cubic")


def _commutative_algebra(name: str, fld: ScalarField) -> Tuple[AlgebraSpec, Dict[int, Dict[int, Scalar]], List[int]]:
    """An algebra, one derivation of it, and the basis indices spanning its augmentation ideal."""
    if name == "ground":
        return ground_algebra(fld), {}, []
    if name == "dual":
        return dual_numbers(fld), {1: {1: fld.one}}, [1]
    if name == "split":
        return split_algebra(fld), {}, [1]
    algebra = truncated_polynomials(3, fld)
    return algebra, {1: {1: fld.one}, 2: {2: fld(2)}}, [1, 2]


def _random_scalar(rng: random.Random, fld: ScalarField) -> Scalar:
    return fld(rng.choice((-2, -1, 0, 0, 1, 2, 3)))


def _random_vector(rng: random.Random, fld: ScalarField, support: Sequence[int]) -> Dict[int, Scalar]:
    out = {}
    for index in support:
        value = _random_scalar(rng, fld)
        if value:
            out[index] = value
    return out


def random_fixture(rng: random.Random, fld: ScalarField = RATIONALS) -> Tuple[AlgebraData, BimoduleSpec]:
    """
    Draws a valid (data, M) pair. Half of the draws come from inner_fixture;
    the rest from three commutative families: abelian g of dimension at
    most 2 acting through multiples of one derivation, abelian g of
    dimension 3 acting by zero, and sl2 or Heisenberg acting by zero. A
    character module comes with a cocycle valued in the augmentation
    ideal; M = A comes with zero action and f = 0.
    """
    if rng.random() < 0.5:
        return inner_fixture(rng, fld)
    name = rng.choice(_COMMUTATIVE)
    algebra, derivation, ideal = _commutative_algebra(name, fld)
    family = rng.choice(("proportional", "abelian3", "nonabelian"))
    if family == "proportional":
        d = rng.randint(0, 2)
        lie = abelian_lie(d, fld)
        scales = [_random_scalar(rng, fld) for _ in range(d)]
        action = ActionSpec(tuple({col: {row: v * c for row, v in image.items()} for col, image in derivation.items()}
                                  if c else {} for c in scales))
    elif family == "abelian3":
        lie = abelian_lie(3, fld)
        action = ActionSpec.zero(lie)
    else:
        lie = rng.choice((sl2_lie, heisenberg_lie))(fld)
        action = ActionSpec.zero(lie)
    if rng.random() < 0.5:
        return data_with_character(rng, algebra, lie, action, ideal, family != "nonabelian")
    data = AlgebraData(algebra, lie)
    return data, BimoduleSpec.algebra_itself(data)


def data_with_character(rng: random.Random, algebra: AlgebraSpec, lie: LieAlgebraSpec, action: ActionSpec,
                        ideal: Sequence[int], abelian: bool) -> Tuple[AlgebraData, BimoduleSpec]:
    """Adds a cocycle valued in the augmentation ideal and a character module with random generator scalars."""
    fld = algebra.field
    cocycle_values: Dict[Tuple[int, int], Dict[int, Scalar]] = {}
    if abelian:
        for i, j in itertools.combinations(range(lie.dimension), 2):
            vector = _random_vector(rng, fld, ideal)
            if vector:
                cocycle_values[(i, j)] = vector
    data = AlgebraData(algebra, lie, action=action, cocycle=CocycleSpec(cocycle_values))

    def scalars() -> List[Scalar]:
        return [_random_scalar(rng, fld) if abelian else fld.zero for _ in range(lie.dimension)]

    return data, augmentation(data, left_gen=scalars(), right_gen=scalars())


_CHARACTERS = {
    "triangular": ((1, 0, 0), (1, 0, 1)),
    "dual": ((1, 0),),
    "split": ((1, 0), (1, 1)),
    "cubic": ((1, 0, 0),),
}


def _lie_with_abelianization(rng: random.Random, fld: ScalarField) -> Tuple[LieAlgebraSpec, Tuple[int, ...]]:
    """A Lie algebra and the generators outside its derived algebra."""
    return rng.choice((
        (abelian_lie(1, fld), (0,)),
        (abelian_lie(2, fld), (0, 1)),
        (affine_lie(fld), (0,)),
        (heisenberg_lie(fld), (0, 1)),
        (sl2_lie(fld), ()),
    ))


def inner_fixture(rng: random.Random, fld: ScalarField = RATIONALS) -> Tuple[AlgebraData, BimoduleSpec]:
    """
    Draws anchors a_i in A and lets g_i act by the inner derivation
    [a_i, -], with f(g_i, g_j) = [a_i, a_j] - a_{[g_i, g_j]}. Then
    g_i - a_i spans a copy of U(g) commuting with A, so every axiom holds;
    A is upper triangular in most draws, so f and the action are
    non-central.

    M is either a character chi of A with g_i acting by chi(a_i) plus a
    character of g on each side, or A itself with g_i acting on the left
    by multiplication with a_i (plus a character of g) and E acting on the
    right through chi.
    """
    name = rng.choice(("triangular", "triangular", "triangular", "dual", "split", "cubic"))
    algebra = upper_triangular(fld) if name == "triangular" else _commutative_algebra(name, fld)[0]
    lie, outside = _lie_with_abelianization(rng, fld)
    n, d = algebra.dimension, lie.dimension
    anchors = [_random_vector(rng, fld, range(n)) for _ in range(d)]

    def commutator(u: Vector, v: Vector) -> Dict[int, Scalar]:
        return accumulate(algebra.multiply(u, v), algebra.multiply(v, u), -fld.one)

    matrices = []
    for anchor in anchors:
        images = {p: commutator(anchor, algebra.basis_vector(p)) for p in range(n)}
        matrices.append({p: image for p, image in images.items() if image})
    cocycle_values: Dict[Tuple[int, int], Dict[int, Scalar]] = {}
    for i, j in itertools.combinations(range(d), 2):
        value = commutator(anchors[i], anchors[j])
        for l, c in lie.bracket(i, j).items():
            accumulate(value, anchors[l], -c)
        if value:
            cocycle_values[(i, j)] = value
    data = AlgebraData(algebra, lie, action=ActionSpec(tuple(matrices)), cocycle=CocycleSpec(cocycle_values))

    chi = [fld(c) for c in rng.choice(_CHARACTERS[name])]
    chi_of_anchor = [sum((chi[k] * c for k, c in anchor.items()), fld.zero) for anchor in anchors]

    def shifted() -> List[Scalar]:
        """chi(a_i) plus a random character of g."""
        return [value + _random_scalar(rng, fld) if i in outside else value
                for i, value in enumerate(chi_of_anchor)]

    if rng.random() < 0.5:
        return data, augmentation(data, chi, shifted(), shifted())

    def scalar_matrix(c: Scalar) -> Dict[int, Dict[int, Scalar]]:
        return {col: {col: c} for col in range(n)} if c else {}

    gen_left = []
    for i, (anchor, value) in enumerate(zip(anchors, shifted())):
        shift = value - chi_of_anchor[i]
        matrix = {}
        for col in range(n):
            image = accumulate(algebra.multiply(anchor, algebra.basis_vector(col)), {col: shift})
            if image:
                matrix[col] = image
        gen_left.append(matrix)
    module = BimoduleSpec(n, BimoduleSpec.algebra_itself(data).left, tuple(scalar_matrix(c) for c in chi),
                          tuple(gen_left), tuple(scalar_matrix(c) for c in shifted()))
    return data, module
