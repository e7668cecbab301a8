"""
Coefficient bimodules as the complexes see them: a value type with
addition, scaling and the four elementary actions (left or right, by an
A-basis element or by a generator 1#g_i).
"""
# Standard library imports
from typing import Dict, Hashable, NamedTuple, Optional, Union

# Local application imports
from algebra.algebra_data import BimoduleSpec, ColumnMatrix, apply_matrix, render_vector
from algebra.crossed_product import CrossedProduct, Element
from linalg.exact_linalg import Scalar, ScalarField, accumulate, scaled

LEFT = "left"
RIGHT = "right"
COEFFICIENT = "coefficient"
GENERATOR = "generator"


class Op(NamedTuple):
    """One elementary action on M; a missing Op (None) is the identity."""
    side: str
    kind: str
    payload: Hashable


def left_coefficient(key: Hashable) -> Op:
    return Op(LEFT, COEFFICIENT, key)


def right_coefficient(key: Hashable) -> Op:
    return Op(RIGHT, COEFFICIENT, key)


def left_generator(i: int) -> Op:
    return Op(LEFT, GENERATOR, i)


def right_generator(i: int) -> Op:
    return Op(RIGHT, GENERATOR, i)


class FiniteModule:
    """A finite-dimensional M given by action matrices; values are sparse vectors."""

    regular = False

    def __init__(self, spec: BimoduleSpec, fld: ScalarField):
        if spec.regular:
            raise ValueError("FiniteModule needs action matrices, got the REGULAR marker.")
        self.spec = spec
        self.field = fld
        self.dimension = spec.dimension
        self._identity = {j: {j: fld.one} for j in range(spec.dimension)}

    def op_matrix(self, op: Optional[Op]) -> ColumnMatrix:
        if op is None:
            return self._identity
        table = {
            (LEFT, COEFFICIENT): self.spec.left, (RIGHT, COEFFICIENT): self.spec.right,
            (LEFT, GENERATOR): self.spec.gen_left, (RIGHT, GENERATOR): self.spec.gen_right,
        }[(op.side, op.kind)]
        return table[op.payload]

    def act(self, op: Optional[Op], value: Dict[int, Scalar]) -> Dict[int, Scalar]:
        if op is None:
            return dict(value)
        return apply_matrix(self.op_matrix(op), value)

    def zero(self) -> Dict[int, Scalar]:
        return {}

    def basis(self, j: int) -> Dict[int, Scalar]:
        return {j: self.field.one}

    def add(self, x: Dict[int, Scalar], y: Dict[int, Scalar], factor: Optional[Scalar] = None) -> Dict[int, Scalar]:
        return accumulate(dict(x), y, factor)

    def scale(self, x: Dict[int, Scalar], factor: Scalar) -> Dict[int, Scalar]:
        return scaled(x, factor)

    def is_zero(self, x: Dict[int, Scalar]) -> bool:
        return not x

    def right_action(self, value: Dict[int, Scalar], element: Element) -> Dict[int, Scalar]:
        """m·u for u in E, acting through m·(a y^e) = ((m·a)·y_0^{e_0})···."""
        out: Dict[int, Scalar] = {}
        for monomial, c in element.items():
            current = apply_matrix(self.spec.right[monomial.coefficient], value)
            for i, power in enumerate(monomial.exponents):
                for _ in range(power):
                    current = apply_matrix(self.spec.gen_right[i], current)
            accumulate(out, current, c)
        return out

    def render(self, value: Dict[int, Scalar]) -> str:
        return render_vector(value, [f"m{j}" for j in range(self.dimension)], self.field)


class RegularModule:
    """M = E; values are Elements and actions are multiplication in E."""

    regular = True
    dimension = None

    def __init__(self, ring: CrossedProduct):
        self.ring = ring
        self.field = ring.field
        self._factors: Dict[Op, Element] = {}

    def factor(self, op: Op) -> Element:
        cached = self._factors.get(op)
        if cached is None:
            if op.kind == COEFFICIENT:
                cached = self.ring.monomial(op.payload)
            else:
                cached = self.ring.generator(op.payload)
            self._factors[op] = cached
        return cached

    def act(self, op: Optional[Op], value: Element) -> Element:
        if op is None:
            return value
        if op.side == LEFT:
            return self.factor(op) * value
        return value * self.factor(op)

    def zero(self) -> Element:
        return self.ring.zero()

    def add(self, x: Element, y: Element, factor: Optional[Scalar] = None) -> Element:
        return x + (y if factor is None else y.scale(factor))

    def scale(self, x: Element, factor: Scalar) -> Element:
        return x.scale(factor)

    def is_zero(self, x: Element) -> bool:
        return not x

    def right_action(self, value: Element, element: Element) -> Element:
        return value * element

    def render(self, value: Element) -> str:
        return str(value)


CoefficientModule = Union[FiniteModule, RegularModule]


def module_for(spec: BimoduleSpec, ring: CrossedProduct) -> CoefficientModule:
    """The module object behind a BimoduleSpec over the ring E."""
    if spec.regular:
        return RegularModule(ring)
    return FiniteModule(spec, ring.field)
