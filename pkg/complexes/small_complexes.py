"""
The small cochain complex Hom_{K^e}(Ā^r ⊗ ∧^s g, M) and the small chain
complex (M ⊗ Ā^r)/[M ⊗ Ā^r, K] ⊗ ∧^s g of E = A #_f U(g), with their
differentials written as stencils and their exact (co)homology.

A stencil lists, for one input (an Ā-word and an increasing wedge of
generator indices), the terms c·op(value at another input) making up the
differential there. Cochains pull through the stencil of their target;
chains push through the stencil of their source, with left and right
actions exchanged.
"""
# Standard library imports
import itertools
import logging
from dataclasses import dataclass, field
from typing import (
    Any, Callable, Dict, Hashable, Iterable, List, Mapping, NamedTuple, Optional, Sequence, Tuple
)

# Third-party imports
from sympy.combinatorics import Permutation

# Local application imports
from algebra.algebra_data import AlgebraData, BimoduleSpec, ColumnMatrix, Vector
from algebra.crossed_product import CoefficientAlgebra, CrossedProduct, Key
from complexes.modules import (
    LEFT, RIGHT, CoefficientModule, Op, left_coefficient, left_generator, module_for,
    right_coefficient, right_generator
)
from linalg.exact_linalg import (
    EchelonForm, Scalar, ScalarField, SparseMatrix, SparseVector, accumulate, kernel_basis,
    rank, rank_of_vectors, row_reduce
)

logger = logging.getLogger(__name__)

Input = Tuple[Tuple[Hashable, ...], Tuple[int, ...]]

# Stencil components
HORIZONTAL = "horizontal"
VERTICAL = "vertical"
ACTION = "action"
COCYCLE = "cocycle"
ALL_COMPONENTS = (HORIZONTAL, VERTICAL, ACTION, COCYCLE)


def sign(fld: ScalarField, exponent: int) -> Scalar:
    return fld.one if exponent % 2 == 0 else -fld.one


def normalize_wedge(indices: Sequence[int]) -> Tuple[int, Tuple[int, ...]]:
    """(sign, sorted indices) of a wedge monomial; sign 0 when an index repeats."""
    if len(set(indices)) < len(indices):
        return 0, ()
    if len(indices) < 2:
        return 1, tuple(indices)
    order = sorted(range(len(indices)), key=indices.__getitem__)
    return Permutation(order).signature(), tuple(indices[k] for k in order)


def input_degree(inp: Input) -> int:
    return len(inp[0]) + len(inp[1])


class Term(NamedTuple):
    """c·op(value at input), tagged with the differential component it belongs to."""
    coefficient: Scalar
    op: Optional[Op]
    input: Input
    component: str


@dataclass(frozen=True)
class Cochain:
    """A cochain of total degree n stored on normalized inputs."""
    degree: int
    values: Mapping[Input, Any] = field(default_factory=dict)

    def at(self, inp: Input, zero: Any) -> Any:
        return self.values.get(inp, zero)


@dataclass(frozen=True)
class LazyCochain:
    """A cochain given by an evaluator; used where the input set is infinite."""
    degree: int
    evaluator: Callable[[Input], Any]

    def at(self, inp: Input, zero: Any) -> Any:
        return self.evaluator(inp)


@dataclass(frozen=True)
class ChainElement:
    """Σ m_input ⊗ input of total degree n."""
    degree: int
    values: Mapping[Input, Any] = field(default_factory=dict)


@dataclass(frozen=True)
class DegreeLayout:
    """Coordinates of a finite cochain or chain space: input position times dim M, M index innermost."""
    degree: int
    inputs: Tuple[Input, ...]
    width: int

    def __post_init__(self):
        object.__setattr__(self, "_index", {inp: k for k, inp in enumerate(self.inputs)})

    @property
    def size(self) -> int:
        return len(self.inputs) * self.width

    def position(self, inp: Input) -> int:
        return self._index[inp]

    def __contains__(self, inp: Input) -> bool:
        return inp in self._index

    def coordinate(self, inp: Input, j: int) -> int:
        return self._index[inp] * self.width + j

    def to_vector(self, values: Mapping[Input, Mapping[int, Scalar]]) -> Dict[int, Scalar]:
        out = {}
        for inp, value in values.items():
            for j, c in value.items():
                if c:
                    out[self.coordinate(inp, j)] = c
        return out

    def from_vector(self, vector: Mapping[int, Scalar]) -> Dict[Input, Dict[int, Scalar]]:
        out: Dict[Input, Dict[int, Scalar]] = {}
        for coordinate, c in vector.items():
            if c:
                position, j = divmod(coordinate, self.width)
                out.setdefault(self.inputs[position], {})[j] = c
        return out


@dataclass(frozen=True)
class CochainSpace:
    """An enumerated basis of the cochains of bidegree (r, s)."""
    r: int
    s: int
    layout: DegreeLayout
    basis: Tuple[SparseVector, ...]

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def cochain(self, k: int) -> Cochain:
        return Cochain(self.r + self.s, self.layout.from_vector(self.basis[k].to_dict()))

    def cochains(self) -> List[Cochain]:
        return [self.cochain(k) for k in range(self.dimension)]


@dataclass(frozen=True)
class ComplexAssembly:
    """Per-degree layouts and the assembled total differentials up to n_max."""
    n_max: int
    layouts: Tuple[DegreeLayout, ...]
    coboundaries: Tuple[SparseMatrix, ...]
    boundaries: Tuple[SparseMatrix, ...]

    def squares_to_zero(self) -> bool:
        """Both composites d∘d vanish in every assembled degree."""
        for n in range(self.n_max):
            if not self.coboundaries[n + 1].matmul(self.coboundaries[n]).is_zero():
                return False
            if not self.boundaries[n].matmul(self.boundaries[n + 1]).is_zero():
                return False
        return True


class BarQuotient:
    """
    Ā = A/K through a fixed complement: the A-basis keys outside the span
    of K after Gaussian reduction. For an infinite A only K = k is
    supported and the complement is not enumerated.
    """

    def __init__(self, coefficients: CoefficientAlgebra, complement: Optional[List[Key]],
                 echelon: Optional[EchelonForm] = None, spanning: Sequence[Vector] = ()):
        self.coefficients = coefficients
        self.complement = complement
        self.echelon = echelon
        self.spanning = tuple(spanning)

    @classmethod
    def for_data(cls, data: AlgebraData, coefficients: CoefficientAlgebra) -> "BarQuotient":
        k_sub = data.subalgebra
        if k_sub.is_ground_field:
            complement = [i for i in range(data.algebra.dimension) if i != data.algebra.unit]
            return cls(coefficients, complement)
        echelon = k_sub.echelon(data.algebra)
        return cls(coefficients, echelon.free_columns(), echelon, k_sub.spanning)

    @classmethod
    def ground(cls, coefficients: CoefficientAlgebra) -> "BarQuotient":
        return cls(coefficients, None)

    @property
    def is_ground(self) -> bool:
        return self.echelon is None

    def project(self, vector: Mapping[Key, Scalar]) -> Dict[Key, Scalar]:
        if self.echelon is None:
            unit = self.coefficients.unit
            return {k: c for k, c in vector.items() if k != unit and c}
        return self.echelon.reduce(vector)

    def product(self, a: Key, b: Key) -> Dict[Key, Scalar]:
        return self.project(self.coefficients.multiply(a, b))

    def derive(self, i: int, a: Key) -> Dict[Key, Scalar]:
        return self.project(self.coefficients.derive(i, a))

    def f_hat(self, i: int, j: int) -> Dict[Key, Scalar]:
        return self.project(self.coefficients.f_hat(i, j))


class StencilComplex:
    """
    Shared machinery for complexes whose inputs are pairs of tuples and
    whose differentials are stencils. Subclasses supply blocks,
    block_inputs, stencil and raise_degree.
    """

    def __init__(self, ring: CrossedProduct, module: CoefficientModule):
        self.ring = ring
        self.module = module
        self.field = ring.field
        self._layouts: Dict[int, DegreeLayout] = {}
        self._coboundaries: Dict[Tuple[int, Tuple[str, ...]], SparseMatrix] = {}
        self._boundaries: Dict[Tuple[int, Tuple[str, ...]], SparseMatrix] = {}

    # Subclass interface

    def blocks(self, n: int) -> List[Tuple[int, int]]:
        raise NotImplementedError

    def block_inputs(self, r: int, s: int) -> List[Input]:
        raise NotImplementedError

    def stencil(self, inp: Input, chain: bool) -> List[Term]:
        raise NotImplementedError

    def raise_degree(self) -> int:
        """Largest filtration degree of an element the differentials multiply by."""
        raise NotImplementedError

    # Stencils

    def cochain_terms(self, target: Input) -> List[Term]:
        return self.stencil(target, chain=False)

    def chain_terms(self, source: Input) -> List[Term]:
        return self.stencil(source, chain=True)

    @staticmethod
    def _swap(op: Op, chain: bool) -> Op:
        """Chains see the actions of the cochain stencil from the other side."""
        if chain:
            return Op(RIGHT if op.side == LEFT else LEFT, op.kind, op.payload)
        return op

    # Layouts

    def inputs(self, n: int) -> List[Input]:
        out: List[Input] = []
        for r, s in self.blocks(n):
            out.extend(self.block_inputs(r, s))
        return out

    def layout(self, n: int) -> DegreeLayout:
        cached = self._layouts.get(n)
        if cached is None:
            cached = DegreeLayout(n, tuple(self.inputs(n)) if n >= 0 else (), self._width())
            self._layouts[n] = cached
        return cached

    def _width(self) -> int:
        if self.module.regular:
            raise ValueError("M = E has no finite basis; use the truncated drivers.")
        return self.module.dimension

    # Differentials on elements

    def coboundary_at(self, phi, target: Input) -> Any:
        """(d phi)(target)."""
        module = self.module
        total = module.zero()
        zero = module.zero()
        for term in self.cochain_terms(target):
            value = phi.at(term.input, zero)
            if module.is_zero(value):
                continue
            total = module.add(total, module.act(term.op, value), term.coefficient)
        return total

    def coboundary(self, phi):
        """d phi as a Cochain over every input of degree n+1, or lazily when those are infinite."""
        n = phi.degree + 1
        if not self.enumerable:
            return LazyCochain(n, lambda target: self.coboundary_at(phi, target))
        values = {}
        for target in self.inputs(n):
            value = self.coboundary_at(phi, target)
            if not self.module.is_zero(value):
                values[target] = value
        return Cochain(n, values)

    def boundary(self, c: ChainElement) -> ChainElement:
        """d c, pushed through the stencil of every source input."""
        module = self.module
        values: Dict[Input, Any] = {}
        for source, value in c.values.items():
            if module.is_zero(value):
                continue
            for term in self.chain_terms(source):
                image = module.act(term.op, value)
                current = values.get(term.input, module.zero())
                values[term.input] = module.add(current, image, term.coefficient)
        return ChainElement(c.degree - 1, {k: v for k, v in values.items() if not module.is_zero(v)})

    @property
    def enumerable(self) -> bool:
        return True

    # Matrices for finite M

    def cochain_matrix(self, n: int, components: Iterable[str] = ALL_COMPONENTS) -> SparseMatrix:
        """d: C^n -> C^{n+1} in layout coordinates."""
        components = tuple(sorted(components))
        key = (n, components)
        cached = self._coboundaries.get(key)
        if cached is not None:
            return cached
        source, target = self.layout(n), self.layout(n + 1)
        data: Dict[int, Dict[int, Scalar]] = {}
        for t in target.inputs:
            for term in self.cochain_terms(t):
                if term.component not in components:
                    continue
                matrix = self.module.op_matrix(term.op)
                for j, image in matrix.items():
                    column = source.coordinate(term.input, j)
                    for i, value in image.items():
                        row = data.setdefault(target.coordinate(t, i), {})
                        accumulate(row, {column: value}, term.coefficient)
        result = SparseMatrix(target.size, source.size, self.field, data)
        self._coboundaries[key] = result
        return result

    def chain_matrix(self, n: int, components: Iterable[str] = ALL_COMPONENTS) -> SparseMatrix:
        """d: C_n -> C_{n-1} in layout coordinates."""
        components = tuple(sorted(components))
        key = (n, components)
        cached = self._boundaries.get(key)
        if cached is not None:
            return cached
        source, target = self.layout(n), self.layout(n - 1)
        data: Dict[int, Dict[int, Scalar]] = {}
        if n > 0:
            for s_inp in source.inputs:
                for term in self.chain_terms(s_inp):
                    if term.component not in components:
                        continue
                    matrix = self.module.op_matrix(term.op)
                    for j, image in matrix.items():
                        column = source.coordinate(s_inp, j)
                        for i, value in image.items():
                            row = data.setdefault(target.coordinate(term.input, i), {})
                            accumulate(row, {column: value}, term.coefficient)
        result = SparseMatrix(target.size, source.size, self.field, data)
        self._boundaries[key] = result
        return result

    def assemble(self, n_max: int) -> ComplexAssembly:
        layouts = tuple(self.layout(n) for n in range(n_max + 1))
        coboundaries = tuple(self.cochain_matrix(n) for n in range(n_max + 1))
        boundaries = tuple(self.chain_matrix(n) for n in range(n_max + 1))
        return ComplexAssembly(n_max, layouts, coboundaries, boundaries)

    # Exact (co)homology for finite M and K = k

    def betti_cohomology(self, n_max: int) -> List[int]:
        bettis = []
        for n in range(n_max + 1):
            size = self.layout(n).size
            outgoing = rank(self.cochain_matrix(n))
            incoming = rank(self.cochain_matrix(n - 1)) if n > 0 else 0
            logger.debug("H^%d: dim %d, rank out %d, rank in %d", n, size, outgoing, incoming)
            bettis.append(size - outgoing - incoming)
        return bettis

    def betti_homology(self, n_max: int) -> List[int]:
        bettis = []
        for n in range(n_max + 1):
            size = self.layout(n).size
            outgoing = rank(self.chain_matrix(n))
            incoming = rank(self.chain_matrix(n + 1))
            logger.debug("H_%d: dim %d, rank out %d, rank in %d", n, size, outgoing, incoming)
            bettis.append(size - outgoing - incoming)
        return bettis


class XBarComplex(StencilComplex):
    """The small complexes of A #_f U(g) relative to K with coefficients in M."""

    def __init__(self, ring: CrossedProduct, module: CoefficientModule, quotient: BarQuotient,
                 m_spec: Optional[BimoduleSpec] = None, data: Optional[AlgebraData] = None):
        super().__init__(ring, module)
        self.quotient = quotient
        self.lie = ring.lie
        self.m_spec = m_spec
        self.data = data
        if not quotient.is_ground and module.regular:
            raise ValueError("M = E is only supported relative to K = k.")

    @classmethod
    def from_data(cls, data: AlgebraData, m_spec: BimoduleSpec) -> "XBarComplex":
        ring = CrossedProduct.from_data(data)
        return cls(ring, module_for(m_spec, ring), BarQuotient.for_data(data, ring.coefficients), m_spec, data)

    @property
    def enumerable(self) -> bool:
        return self.quotient.complement is not None

    def blocks(self, n: int) -> List[Tuple[int, int]]:
        return [(r, n - r) for r in range(n + 1) if n - r <= self.lie.dimension]

    def block_inputs(self, r: int, s: int) -> List[Input]:
        if self.quotient.complement is None:
            raise ValueError("The complement of K is infinite; inputs cannot be enumerated.")
        words = itertools.product(self.quotient.complement, repeat=r)
        wedges = list(itertools.combinations(range(self.lie.dimension), s))
        return [(word, wedge) for word in words for wedge in wedges]

    def raise_degree(self) -> int:
        degrees = [self.ring.coefficients.degree(a) for a in self.quotient.complement or ()]
        if self.lie.dimension:
            degrees.append(1)
        return max(degrees, default=0)

    def stencil(self, inp: Input, chain: bool) -> List[Term]:
        word, wedge = inp
        r, s = len(word), len(wedge)
        fld, quotient = self.field, self.quotient
        one = fld.one
        terms: List[Term] = []
        if r:
            terms.append(Term(one, self._swap(left_coefficient(word[0]), chain),
                              (word[1:], wedge), HORIZONTAL))
            for i in range(1, r):
                for b, c in quotient.product(word[i - 1], word[i]).items():
                    terms.append(Term(sign(fld, i) * c, None,
                                      (word[:i - 1] + (b,) + word[i + 1:], wedge), HORIZONTAL))
            terms.append(Term(sign(fld, r), self._swap(right_coefficient(word[-1]), chain),
                              (word[:-1], wedge), HORIZONTAL))
        for i in range(1, s + 1):
            x = wedge[i - 1]
            rest = wedge[:i - 1] + wedge[i:]
            outer = sign(fld, i + r)
            terms.append(Term(outer, self._swap(right_generator(x), chain), (word, rest), VERTICAL))
            terms.append(Term(-outer, self._swap(left_generator(x), chain), (word, rest), VERTICAL))
            for h in range(r):
                for b, c in quotient.derive(x, word[h]).items():
                    terms.append(Term(outer * c, None, (word[:h] + (b,) + word[h + 1:], rest), ACTION))
            for j in range(i + 1, s + 1):
                y = wedge[j - 1]
                rest_ij = tuple(w for k, w in enumerate(wedge) if k not in (i - 1, j - 1))
                for l, c in self.lie.bracket(x, y).items():
                    wedge_sign, normalized = normalize_wedge((l,) + rest_ij)
                    if wedge_sign:
                        terms.append(Term(sign(fld, i + j + r) * c * fld(wedge_sign), None,
                                          (word, normalized), VERTICAL))
                for b, c in quotient.f_hat(x, y).items():
                    for h in range(r + 1):
                        terms.append(Term(sign(fld, i + j + h) * c, None,
                                          (word[:h] + (b,) + word[h:], rest_ij), COCYCLE))
        return terms

    # Relative K

    def _k_conditions(self, inp: Input, chain: bool) -> List[List[Tuple[Scalar, Optional[ColumnMatrix], Input]]]:
        """
        K-balancing conditions at one input as lists of (c, matrix, input):
        Σ c·matrix(φ(input)) = 0 for cochains, and for chains the relation
        Σ c·matrix(m) ⊗ input with left and right exchanged.
        """
        word, wedge = inp
        r = len(word)
        quotient, m_spec = self.quotient, self.m_spec
        one = self.field.one
        left_side, right_side = (m_spec.right_vector, m_spec.left_vector) if chain else \
            (m_spec.left_vector, m_spec.right_vector)
        conditions = []
        for lam in quotient.spanning:
            if r == 0:
                conditions.append([(one, left_side(lam), inp), (-one, right_side(lam), inp)])
                continue
            first = quotient.project(self.data.algebra.multiply(lam, {word[0]: one}))
            condition = [(one, left_side(lam), inp)]
            condition += [(-c, None, ((b,) + word[1:], wedge)) for b, c in first.items()]
            conditions.append(condition)
            last = quotient.project(self.data.algebra.multiply({word[-1]: one}, lam))
            condition = [(one, right_side(lam), inp)]
            condition += [(-c, None, (word[:-1] + (b,), wedge)) for b, c in last.items()]
            conditions.append(condition)
            for i in range(1, r):
                before = quotient.project(self.data.algebra.multiply({word[i - 1]: one}, lam))
                after = quotient.project(self.data.algebra.multiply(lam, {word[i]: one}))
                condition = [(c, None, (word[:i - 1] + (b,) + word[i:], wedge)) for b, c in before.items()]
                condition += [(-c, None, (word[:i] + (b,) + word[i + 1:], wedge)) for b, c in after.items()]
                conditions.append(condition)
        return conditions

    def _identity_or(self, matrix: Optional[ColumnMatrix]) -> ColumnMatrix:
        return self.module.op_matrix(None) if matrix is None else matrix

    def cochain_constraints(self, layout: DegreeLayout) -> SparseMatrix:
        """Rows cutting the K-bimodule maps out of all k-linear cochains on the layout."""
        rows: List[Dict[int, Scalar]] = []
        for inp in layout.inputs:
            for condition in self._k_conditions(inp, chain=False):
                by_output: Dict[int, Dict[int, Scalar]] = {}
                for c, matrix, source in condition:
                    for j, image in self._identity_or(matrix).items():
                        for i, value in image.items():
                            accumulate(by_output.setdefault(i, {}),
                                       {layout.coordinate(source, j): value}, c)
                rows.extend(row for row in by_output.values() if row)
        return SparseMatrix(len(rows), layout.size, self.field, dict(enumerate(rows)))

    def chain_relations(self, layout: DegreeLayout) -> List[Dict[int, Scalar]]:
        """Spanning vectors of the commutator subspace [M ⊗ Ā^r, K] ⊗ ∧g on the layout."""
        relations = []
        for inp in layout.inputs:
            for condition in self._k_conditions(inp, chain=True):
                for j in range(layout.width):
                    vector: Dict[int, Scalar] = {}
                    for c, matrix, target in condition:
                        image = self._identity_or(matrix).get(j, {})
                        for i, value in image.items():
                            accumulate(vector, {layout.coordinate(target, i): value}, c)
                    if vector:
                        relations.append(vector)
        return relations

    def _constraint_basis(self, layout: DegreeLayout) -> List[SparseVector]:
        if self.quotient.is_ground:
            return [SparseVector.from_mapping({k: self.field.one}, layout.size) for k in range(layout.size)]
        return kernel_basis(self.cochain_constraints(layout))

    def cochain_space(self, r: int, s: int) -> CochainSpace:
        """Basis of the cochains of bidegree (r, s)."""
        if self.module.regular:
            raise ValueError("M = E cochains are function-valued and have no enumerated basis.")
        layout = DegreeLayout(r + s, tuple(self.block_inputs(r, s)), self._width())
        return CochainSpace(r, s, layout, tuple(self._constraint_basis(layout)))

    def reduce_chain(self, c: ChainElement) -> ChainElement:
        """Canonical representative of c modulo the commutator subspace."""
        if self.quotient.is_ground or not c.values:
            return c
        layout = self.layout(c.degree)
        relations = self.chain_relations(layout)
        if not relations:
            return c
        echelon = row_reduce(SparseMatrix(len(relations), layout.size, self.field, dict(enumerate(relations))))
        reduced = echelon.reduce(layout.to_vector(c.values))
        return ChainElement(c.degree, layout.from_vector(reduced))

    def betti_cohomology(self, n_max: int) -> List[int]:
        if self.quotient.is_ground:
            return super().betti_cohomology(n_max)
        bases = [self._constraint_basis(self.layout(n)) for n in range(n_max + 1)]
        restricted = []
        for n in range(n_max + 1):
            matrix = self.cochain_matrix(n)
            restricted.append(rank_of_vectors((matrix.matvec(b.to_dict()) for b in bases[n]),
                                              matrix.rows, self.field))
        bettis = []
        for n in range(n_max + 1):
            incoming = restricted[n - 1] if n > 0 else 0
            bettis.append(len(bases[n]) - restricted[n] - incoming)
        return bettis

    def betti_homology(self, n_max: int) -> List[int]:
        if self.quotient.is_ground:
            return super().betti_homology(n_max)
        relations = {n: self.chain_relations(self.layout(n)) for n in range(-1, n_max + 2)}
        relation_rank = {n: rank_of_vectors(relations[n], self.layout(n).size, self.field)
                         for n in relations}

        def induced_rank(n: int) -> int:
            if n <= 0:
                return 0
            matrix = self.chain_matrix(n)
            columns = matrix.columns() + relations[n - 1]
            return rank_of_vectors(columns, matrix.rows, self.field) - relation_rank[n - 1]

        return [self.layout(n).size - relation_rank[n] - induced_rank(n) - induced_rank(n + 1)
                for n in range(n_max + 1)]


def _complex(data: AlgebraData, m: BimoduleSpec) -> XBarComplex:
    return XBarComplex.from_data(data, m)


def enumerate_cochain_basis(r: int, s: int, data: AlgebraData, m: BimoduleSpec) -> CochainSpace:
    """Deterministic basis of the (r, s) cochains; REGULAR M is rejected."""
    if m.regular:
        raise ValueError("M = E cochains are function-valued and have no enumerated basis.")
    return _complex(data, m).cochain_space(r, s)


def coboundary(phi, data: AlgebraData, m: BimoduleSpec):
    return _complex(data, m).coboundary(phi)


def boundary(c: ChainElement, data: AlgebraData, m: BimoduleSpec) -> ChainElement:
    return _complex(data, m).boundary(c)


def betti_cohomology(data: AlgebraData, m: BimoduleSpec, n_max: int) -> List[int]:
    """dim H^n for 0 <= n <= n_max, exactly."""
    return _complex(data, m).betti_cohomology(n_max)


def betti_homology(data: AlgebraData, m: BimoduleSpec, n_max: int) -> List[int]:
    """dim H_n for 0 <= n <= n_max, exactly."""
    return _complex(data, m).betti_homology(n_max)
