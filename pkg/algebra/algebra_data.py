"""
Declarative descriptions of the input of a differential operator ring
E = A #_f U(g): the algebra A, a subalgebra K, the Lie algebra g, the
action of g on A by derivations, the cocycle f and coefficient bimodules.

Validators return a ValidationReport; failures are data, not exceptions.
"""
# Standard library imports
import itertools
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

# Local application imports
from linalg.exact_linalg import (
    EchelonForm, Scalar, ScalarField, SparseMatrix, accumulate, row_reduce, scaled
)

Vector = Mapping[int, Scalar]
ColumnMatrix = Mapping[int, Vector]


def apply_matrix(matrix: ColumnMatrix, vector: Vector) -> Dict[int, Scalar]:
    """Applies a matrix stored as column images (source index -> image vector)."""
    out: Dict[int, Scalar] = {}
    for index, coefficient in vector.items():
        image = matrix.get(index)
        if image:
            accumulate(out, image, coefficient)
    return out


def render_vector(vector: Vector, labels: Sequence[str], fld: ScalarField) -> str:
    """Text such as '2·e12 + 1' for a sparse vector over a labelled basis."""
    if not vector:
        return "0"
    parts = []
    for index in sorted(vector):
        coefficient = vector[index]
        if coefficient == fld.one:
            parts.append(labels[index])
        else:
            parts.append(f"{fld.render(coefficient)}·{labels[index]}")
    return " + ".join(parts)


@dataclass(frozen=True)
class ValidationFailure:
    """One failed axiom instance."""
    check: str
    witness: str
    expected: str
    got: str

    def to_dict(self) -> Dict[str, str]:
        return {"check": self.check, "witness": self.witness,
                "expected": self.expected, "got": self.got}


@dataclass(frozen=True)
class ValidationReport:
    """Structured list of failures; valid iff empty."""
    failures: Tuple[ValidationFailure, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.failures

    def merge(self, *others: "ValidationReport") -> "ValidationReport":
        merged = list(self.failures)
        for other in others:
            merged.extend(other.failures)
        return ValidationReport(tuple(merged))

    def checks(self) -> List[str]:
        return sorted({failure.check for failure in self.failures})

    def to_dict(self) -> Dict[str, object]:
        return {"ok": self.ok, "failures": [f.to_dict() for f in self.failures]}


@dataclass(frozen=True)
class AlgebraSpec:
    """A finite-dimensional associative algebra by structure constants."""
    field: ScalarField
    dimension: int
    unit: int
    products: Mapping[Tuple[int, int], Vector]
    labels: Tuple[str, ...] = ()
    degrees: Optional[Tuple[int, ...]] = None

    def __post_init__(self):
        if not self.labels:
            names = ["1" if i == self.unit else f"e{i}" for i in range(self.dimension)]
            object.__setattr__(self, "labels", tuple(names))

    def product(self, i: int, j: int) -> Vector:
        return self.products.get((i, j), {})

    def multiply(self, u: Vector, v: Vector) -> Dict[int, Scalar]:
        out: Dict[int, Scalar] = {}
        for i, a in u.items():
            for j, b in v.items():
                accumulate(out, self.product(i, j), a * b)
        return out

    def basis_vector(self, i: int) -> Dict[int, Scalar]:
        return {i: self.field.one}

    def unit_vector(self) -> Dict[int, Scalar]:
        return self.basis_vector(self.unit)

    def degree(self, i: int) -> int:
        return self.degrees[i] if self.degrees is not None else 0

    def render(self, vector: Vector) -> str:
        return render_vector(vector, self.labels, self.field)


@dataclass(frozen=True)
class SubalgebraSpec:
    """The subalgebra K, given by spanning vectors of A."""
    spanning: Tuple[Vector, ...]
    is_ground_field: bool = False

    @classmethod
    def ground(cls, algebra: AlgebraSpec) -> "SubalgebraSpec":
        return cls((algebra.unit_vector(),), True)

    def echelon(self, algebra: AlgebraSpec) -> EchelonForm:
        """Row-reduced spanning set; pivots mark the basis vectors K absorbs."""
        return row_reduce(SparseMatrix(len(self.spanning), algebra.dimension, algebra.field,
                                       dict(enumerate(self.spanning))))


@dataclass(frozen=True)
class LieAlgebraSpec:
    """A Lie algebra with ordered basis g_0 < ... < g_{d-1} and bracket constants."""
    field: ScalarField
    dimension: int
    brackets: Mapping[Tuple[int, int], Vector]
    labels: Tuple[str, ...] = ()

    def __post_init__(self):
        if not self.labels:
            object.__setattr__(self, "labels", tuple(f"x{i}" for i in range(self.dimension)))

    @classmethod
    def from_upper(cls, fld: ScalarField, dimension: int,
                   upper: Mapping[Tuple[int, int], Vector],
                   labels: Sequence[str] = ()) -> "LieAlgebraSpec":
        """Fills [g_j, g_i] = -[g_i, g_j] from the given entries."""
        brackets: Dict[Tuple[int, int], Dict[int, Scalar]] = {}
        for (i, j), vector in upper.items():
            brackets[(i, j)] = dict(vector)
            if (j, i) not in upper:
                brackets[(j, i)] = scaled(vector, -fld.one)
        return cls(fld, dimension, brackets, tuple(labels))

    @classmethod
    def abelian(cls, fld: ScalarField, dimension: int,
                labels: Sequence[str] = ()) -> "LieAlgebraSpec":
        return cls(fld, dimension, {}, tuple(labels))

    def bracket(self, i: int, j: int) -> Vector:
        return self.brackets.get((i, j), {})

    def bracket_vectors(self, u: Vector, v: Vector) -> Dict[int, Scalar]:
        out: Dict[int, Scalar] = {}
        for i, a in u.items():
            for j, b in v.items():
                accumulate(out, self.bracket(i, j), a * b)
        return out

    def render(self, vector: Vector) -> str:
        return render_vector(vector, self.labels, self.field)


@dataclass(frozen=True)
class ActionSpec:
    """For each generator g_i, the map a -> a^{g_i} as column images on the A-basis."""
    matrices: Tuple[ColumnMatrix, ...]

    @classmethod
    def zero(cls, lie: LieAlgebraSpec) -> "ActionSpec":
        return cls(tuple({} for _ in range(lie.dimension)))

    def image(self, i: int, basis_index: int) -> Vector:
        return self.matrices[i].get(basis_index, {})

    def apply(self, i: int, vector: Vector) -> Dict[int, Scalar]:
        return apply_matrix(self.matrices[i], vector)


@dataclass(frozen=True)
class CocycleSpec:
    """The table f(g_i, g_j) in A; only the antisymmetrisation f_hat is consumed."""
    values: Mapping[Tuple[int, int], Vector] = field(default_factory=dict)

    def value(self, i: int, j: int) -> Vector:
        return self.values.get((i, j), {})

    def f_hat(self, i: int, j: int) -> Dict[int, Scalar]:
        out = dict(self.value(i, j))
        return accumulate(out, {k: -v for k, v in self.value(j, i).items()})


@dataclass(frozen=True)
class AlgebraData:
    """The full input of a differential operator ring A #_f U(g)."""
    algebra: AlgebraSpec
    lie: LieAlgebraSpec
    subalgebra: Optional[SubalgebraSpec] = None
    action: Optional[ActionSpec] = None
    cocycle: CocycleSpec = field(default_factory=CocycleSpec)

    def __post_init__(self):
        if self.subalgebra is None:
            object.__setattr__(self, "subalgebra", SubalgebraSpec.ground(self.algebra))
        if self.action is None:
            object.__setattr__(self, "action", ActionSpec.zero(self.lie))
        if len(self.action.matrices) != self.lie.dimension:
            raise ValueError(f"Dimension mismatch: {len(self.action.matrices)} action matrices "
                             f"for a Lie algebra of dimension {self.lie.dimension}.")
        if self.algebra.field != self.lie.field:
            raise ValueError("The algebra and the Lie algebra are over different fields.")

    @property
    def field(self) -> ScalarField:
        return self.algebra.field

    def f_hat(self, i: int, j: int) -> Dict[int, Scalar]:
        return self.cocycle.f_hat(i, j)

    def f_hat_is_zero(self) -> bool:
        d = self.lie.dimension
        return all(not self.f_hat(i, j) for i in range(d) for j in range(d))


@dataclass(frozen=True)
class BimoduleSpec:
    """
    A coefficient bimodule M. Finite ones carry column-image matrices for the
    left and right action of every A-basis element and every generator 1#g_i;
    the REGULAR marker stands for M = E.
    """
    dimension: int = 0
    left: Tuple[ColumnMatrix, ...] = ()
    right: Tuple[ColumnMatrix, ...] = ()
    gen_left: Tuple[ColumnMatrix, ...] = ()
    gen_right: Tuple[ColumnMatrix, ...] = ()
    regular: bool = False

    @classmethod
    def regular_module(cls) -> "BimoduleSpec":
        return cls(regular=True)

    @classmethod
    def character(cls, data: AlgebraData, chi: Sequence[Scalar],
                  left_gen: Optional[Sequence[Scalar]] = None,
                  right_gen: Optional[Sequence[Scalar]] = None) -> "BimoduleSpec":
        """One-dimensional M on which a acts by chi(a) and 1#g_i by scalars."""
        d = data.lie.dimension
        left_gen = left_gen or [data.field.zero] * d
        right_gen = right_gen or [data.field.zero] * d

        def scalars(c: Scalar) -> ColumnMatrix:
            return {0: {0: c}} if c else {}

        acting = tuple(scalars(c) for c in chi)
        return cls(1, acting, acting, tuple(scalars(c) for c in left_gen),
                   tuple(scalars(c) for c in right_gen))

    @classmethod
    def algebra_itself(cls, data: AlgebraData) -> "BimoduleSpec":
        """M = A by multiplication, generators acting by zero."""
        a = data.algebra
        left = tuple({j: dict(a.product(i, j)) for j in range(a.dimension)}
                     for i in range(a.dimension))
        right = tuple({j: dict(a.product(j, i)) for j in range(a.dimension)}
                      for i in range(a.dimension))
        zero = tuple({} for _ in range(data.lie.dimension))
        return cls(a.dimension, left, right, zero, zero)

    def left_vector(self, vector: Vector) -> Dict[int, Dict[int, Scalar]]:
        """Column images of the left action of an A-vector."""
        return _combine_matrices(self.left, vector, self.dimension)

    def right_vector(self, vector: Vector) -> Dict[int, Dict[int, Scalar]]:
        return _combine_matrices(self.right, vector, self.dimension)


def _combine_matrices(matrices: Sequence[ColumnMatrix], vector: Vector,
                      dimension: int) -> Dict[int, Dict[int, Scalar]]:
    out: Dict[int, Dict[int, Scalar]] = {}
    for column in range(dimension):
        image: Dict[int, Scalar] = {}
        for index, coefficient in vector.items():
            accumulate(image, matrices[index].get(column, {}), coefficient)
        if image:
            out[column] = image
    return out


def validate_algebra(a: AlgebraSpec) -> ValidationReport:
    """Unit and associativity on all basis elements and triples."""
    failures = []
    n = a.dimension
    if not 0 <= a.unit < n:
        return ValidationReport((ValidationFailure("unit", f"unit index {a.unit}",
                                                   f"index in [0, {n})", str(a.unit)),))
    for i in range(n):
        basis = a.basis_vector(i)
        for side, got in (("left", a.product(a.unit, i)), ("right", a.product(i, a.unit))):
            if dict(got) != basis:
                witness = f"1·{a.labels[i]}" if side == "left" else f"{a.labels[i]}·1"
                failures.append(ValidationFailure(f"unit_{side}", witness,
                                                  a.render(basis), a.render(got)))
    for i, j, k in itertools.product(range(n), repeat=3):
        left = a.multiply(a.product(i, j), a.basis_vector(k))
        right = a.multiply(a.basis_vector(i), a.product(j, k))
        if left != right:
            witness = f"({a.labels[i]}, {a.labels[j]}, {a.labels[k]})"
            failures.append(ValidationFailure("associativity", witness,
                                              a.render(left), a.render(right)))
    return ValidationReport(tuple(failures))


def validate_lie(g: LieAlgebraSpec) -> ValidationReport:
    """Antisymmetry and the Jacobi identity on all basis triples."""
    failures = []
    d = g.dimension
    for i in range(d):
        if g.bracket(i, i):
            failures.append(ValidationFailure("antisymmetry", f"[{g.labels[i]}, {g.labels[i]}]",
                                              "0", g.render(g.bracket(i, i))))
    for i, j in itertools.combinations(range(d), 2):
        total = accumulate(dict(g.bracket(i, j)), g.bracket(j, i))
        if total:
            failures.append(ValidationFailure(
                "antisymmetry", f"[{g.labels[i]}, {g.labels[j]}] + [{g.labels[j]}, {g.labels[i]}]",
                "0", g.render(total)))
    for i, j, k in itertools.combinations(range(d), 3):
        total: Dict[int, Scalar] = {}
        for p, q, r in ((i, j, k), (j, k, i), (k, i, j)):
            accumulate(total, g.bracket_vectors(g.bracket(p, q), {r: g.field.one}))
        if total:
            failures.append(ValidationFailure(
                "jacobi", f"({g.labels[i]}, {g.labels[j]}, {g.labels[k]})", "0", g.render(total)))
    return ValidationReport(tuple(failures))


def validate_subalgebra(a: AlgebraSpec, k_sub: SubalgebraSpec) -> ValidationReport:
    """K contains the unit and is closed under multiplication."""
    failures = []
    echelon = k_sub.echelon(a)
    if echelon.reduce(a.unit_vector()):
        failures.append(ValidationFailure("subalgebra_unit", "1", "1 ∈ K", "1 ∉ K"))
    for u, v in itertools.product(k_sub.spanning, repeat=2):
        product = a.multiply(u, v)
        if echelon.reduce(product):
            failures.append(ValidationFailure("subalgebra_closure",
                                              f"({a.render(u)})·({a.render(v)})",
                                              "element of K", a.render(product)))
    return ValidationReport(tuple(failures))


def validate_action(a: AlgebraSpec, g: LieAlgebraSpec, act: ActionSpec,
                    k_sub: SubalgebraSpec) -> ValidationReport:
    """
    Leibniz rule on every (basis pair, generator) and stability of K.
    A Lie homomorphism x -> D_x is not required: weak actions are allowed.
    """
    failures = []
    for i in range(g.dimension):
        for p, q in itertools.product(range(a.dimension), repeat=2):
            lhs = act.apply(i, a.product(p, q))
            rhs = a.multiply(act.image(i, p), a.basis_vector(q))
            accumulate(rhs, a.multiply(a.basis_vector(p), act.image(i, q)))
            if lhs != rhs:
                failures.append(ValidationFailure(
                    "leibniz", f"({a.labels[p]}·{a.labels[q]})^{g.labels[i]}",
                    a.render(rhs), a.render(lhs)))
    echelon = k_sub.echelon(a)
    for i in range(g.dimension):
        for vector in k_sub.spanning:
            image = act.apply(i, vector)
            if echelon.reduce(image):
                failures.append(ValidationFailure(
                    "k_stability", f"({a.render(vector)})^{g.labels[i]}",
                    "element of K", a.render(image)))
    return ValidationReport(tuple(failures))
