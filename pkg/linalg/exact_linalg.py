"""
Exact scalar fields and sparse linear algebra over them.

Scalars are sympy domain elements: ``QQ`` for the rationals and a
non-symmetric ``GF(p)`` for prime fields. Elimination is delegated to
sympy's ``DomainMatrix`` so every rank and kernel is exact.
"""
# Standard library imports
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, Hashable, Iterable, List, Mapping, Optional, Sequence, Tuple

# Third-party imports
from sympy import GF, QQ, isprime
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.sdm import SDM

logger = logging.getLogger(__name__)

PRIME_LIMIT = 2 ** 31

Scalar = Any


class ScalarField:
    """The ground field k: either the rationals or a prime field F_p."""

    def __init__(self, prime: Optional[int] = None):
        if prime is None:
            self.domain = QQ
        else:
            if isinstance(prime, bool) or not isinstance(prime, int):
                raise ValueError(f"The characteristic must be an integer, got {prime!r}.")
            if not 2 <= prime < PRIME_LIMIT:
                raise ValueError(f"The prime {prime} is outside the range [2, 2^31).")
            if not isprime(prime):
                raise ValueError(f"{prime} is not prime.")
            self.domain = GF(prime, symmetric=False)
        self.prime = prime
        self.zero = self.domain.zero
        self.one = self.domain.one

    @classmethod
    def parse(cls, text: str) -> "ScalarField":
        """Parses 'rationals' or 'fp:<p>'."""
        cleaned = text.strip().lower()
        if cleaned in ("rationals", "q", "qq"):
            return cls()
        if cleaned.startswith("fp:"):
            digits = cleaned[3:].strip()
            if not digits.isdigit():
                raise ValueError(f"Invalid prime field '{text}'.")
            return cls(int(digits))
        raise ValueError(f"Unknown field '{text}': use 'rationals' or 'fp:<p>'.")

    @property
    def name(self) -> str:
        return "rationals" if self.prime is None else f"fp:{self.prime}"

    @property
    def characteristic(self) -> int:
        return 0 if self.prime is None else self.prime

    def __call__(self, value: Any) -> Scalar:
        """Converts an int, a Fraction, a 'p/q' string or a field element."""
        if isinstance(value, str):
            value = Fraction(value.strip())
        if isinstance(value, bool):
            value = int(value)
        if isinstance(value, int):
            return self.domain(value)
        if isinstance(value, Fraction):
            if self.prime is not None and value.denominator % self.prime == 0:
                raise ZeroDivisionError(
                    f"The coefficient {value} has a denominator divisible by {self.prime}."
                )
            return self.domain(value.numerator) / self.domain(value.denominator)
        return self.domain.convert(value)

    def render(self, value: Scalar) -> str:
        """Canonical text of a scalar: 'p/q' or an integer residue in [0, p)."""
        if self.prime is None:
            numerator, denominator = int(value.numerator), int(value.denominator)
            return str(numerator) if denominator == 1 else f"{numerator}/{denominator}"
        return str(int(self.domain.to_int(value)) % self.prime)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, ScalarField) and other.prime == self.prime

    def __hash__(self) -> int:
        return hash(("ScalarField", self.prime))

    def __repr__(self) -> str:
        return f"ScalarField({self.name})"


RATIONALS = ScalarField()


def accumulate(target: Dict[Hashable, Scalar], source: Mapping[Hashable, Scalar],
               factor: Optional[Scalar] = None) -> Dict[Hashable, Scalar]:
    """Adds factor·source into target in place, dropping entries that cancel."""
    for key, value in source.items():
        if factor is not None:
            value = value * factor
        current = target.get(key)
        total = value if current is None else current + value
        if total:
            target[key] = total
        else:
            target.pop(key, None)
    return target


def scaled(source: Mapping[Hashable, Scalar], factor: Scalar) -> Dict[Hashable, Scalar]:
    """Returns factor·source as a fresh sparse dictionary."""
    if not factor:
        return {}
    return {key: value * factor for key, value in source.items() if value * factor}


@dataclass(frozen=True)
class SparseVector:
    """A vector with strictly increasing indices and no stored zeros."""
    entries: Tuple[Tuple[int, Scalar], ...]
    length: int

    @classmethod
    def from_mapping(cls, mapping: Mapping[int, Scalar], length: int) -> "SparseVector":
        for index in mapping:
            if not 0 <= index < length:
                raise ValueError(f"Index {index} out of range for length {length}.")
        return cls(tuple(sorted((i, c) for i, c in mapping.items() if c)), length)

    def to_dict(self) -> Dict[int, Scalar]:
        return dict(self.entries)

    def __getitem__(self, index: int) -> Scalar:
        for i, c in self.entries:
            if i == index:
                return c
        raise KeyError(index)

    def get(self, index: int, default: Scalar = None) -> Scalar:
        for i, c in self.entries:
            if i == index:
                return c
        return default

    def __len__(self) -> int:
        return self.length


class SparseMatrix:
    """Row-major sparse matrix over a ScalarField; immutable after construction."""

    __slots__ = ("rows", "cols", "field", "_data")

    def __init__(self, rows: int, cols: int, field: ScalarField,
                 data: Optional[Mapping[int, Mapping[int, Scalar]]] = None):
        cleaned: Dict[int, Dict[int, Scalar]] = {}
        for i, row in (data or {}).items():
            if not 0 <= i < rows:
                raise ValueError(f"Row index {i} out of range for {rows} rows.")
            kept = {}
            for j, value in row.items():
                if not 0 <= j < cols:
                    raise ValueError(f"Column index {j} out of range for {cols} columns.")
                if value:
                    kept[j] = value
            if kept:
                cleaned[i] = kept
        self.rows = rows
        self.cols = cols
        self.field = field
        self._data = cleaned

    @classmethod
    def from_columns(cls, columns: Sequence[Mapping[int, Scalar]], rows: int,
                     field: ScalarField) -> "SparseMatrix":
        data: Dict[int, Dict[int, Scalar]] = {}
        for j, column in enumerate(columns):
            for i, value in column.items():
                data.setdefault(i, {})[j] = value
        return cls(rows, len(columns), field, data)

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence[Any]], field: ScalarField) -> "SparseMatrix":
        ncols = len(rows[0]) if rows else 0
        data = {i: {j: field(v) for j, v in enumerate(row)} for i, row in enumerate(rows)}
        return cls(len(rows), ncols, field, data)

    @classmethod
    def identity(cls, size: int, field: ScalarField) -> "SparseMatrix":
        return cls(size, size, field, {i: {i: field.one} for i in range(size)})

    @property
    def shape(self) -> Tuple[int, int]:
        return self.rows, self.cols

    def row(self, i: int) -> Dict[int, Scalar]:
        return dict(self._data.get(i, {}))

    def to_dod(self) -> Dict[int, Dict[int, Scalar]]:
        return {i: dict(row) for i, row in self._data.items()}

    def columns(self) -> List[Dict[int, Scalar]]:
        cols: List[Dict[int, Scalar]] = [{} for _ in range(self.cols)]
        for i, row in self._data.items():
            for j, value in row.items():
                cols[j][i] = value
        return cols

    def nnz(self) -> int:
        return sum(len(row) for row in self._data.values())

    def is_zero(self) -> bool:
        return not self._data

    def matvec(self, vector: Mapping[int, Scalar]) -> Dict[int, Scalar]:
        out: Dict[int, Scalar] = {}
        for i, row in self._data.items():
            total = self.field.zero
            for j, value in row.items():
                x = vector.get(j)
                if x:
                    total += value * x
            if total:
                out[i] = total
        return out

    def matmul(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.cols != other.rows:
            raise ValueError(f"Dimension mismatch: {self.shape} times {other.shape}.")
        columns = [self.matvec(column) for column in other.columns()]
        return SparseMatrix.from_columns(columns, self.rows, self.field)

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, SparseMatrix) and self.shape == other.shape
                and self._data == other._data)

    def __repr__(self) -> str:
        return f"SparseMatrix({self.rows}x{self.cols}, nnz={self.nnz()}, {self.field.name})"


class EchelonForm:
    """Reduced row echelon form of a matrix, with the pivot column of each row."""

    def __init__(self, rows: List[Dict[int, Scalar]], pivots: Tuple[int, ...], cols: int,
                 field: ScalarField):
        self.rows = rows
        self.pivots = pivots
        self.cols = cols
        self.field = field

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def free_columns(self) -> List[int]:
        pivot_set = set(self.pivots)
        return [j for j in range(self.cols) if j not in pivot_set]

    def reduce(self, vector: Mapping[int, Scalar]) -> Dict[int, Scalar]:
        """Canonical representative of vector modulo the row space."""
        out = dict(vector)
        for row, pivot in zip(self.rows, self.pivots):
            coefficient = out.get(pivot)
            if coefficient:
                accumulate(out, row, -coefficient)
        return out


def _domain_matrix(m: SparseMatrix) -> DomainMatrix:
    rep = SDM(m.to_dod(), m.shape, m.field.domain)
    return DomainMatrix.from_rep(rep)


def row_reduce(m: SparseMatrix) -> EchelonForm:
    """Row-reduces m exactly; pivot rows are normalised to a leading 1."""
    if m.is_zero():
        return EchelonForm([], (), m.cols, m.field)
    method = "FF" if m.field.prime is None else "GJ"
    reduced, pivots = _domain_matrix(m).rref(method=method)
    sdm = reduced.to_sdm()
    rows: List[Dict[int, Scalar]] = []
    for i, pivot in enumerate(pivots):
        row = dict(sdm.get(i, {}))
        lead = row[pivot]
        if lead != m.field.one:
            inverse = m.field.one / lead
            row = {j: value * inverse for j, value in row.items()}
        rows.append(row)
    logger.debug("row_reduce %s -> rank %d", m, len(pivots))
    return EchelonForm(rows, tuple(pivots), m.cols, m.field)


def rank(m: SparseMatrix) -> int:
    """Rank of m over its field."""
    return row_reduce(m).rank


def kernel_basis(m: SparseMatrix) -> List[SparseVector]:
    """A basis of ker(m), one vector per free column, in column order."""
    echelon = row_reduce(m)
    basis = []
    for free in echelon.free_columns():
        vector = {free: m.field.one}
        for row, pivot in zip(echelon.rows, echelon.pivots):
            value = row.get(free)
            if value:
                vector[pivot] = -value
        basis.append(SparseVector.from_mapping(vector, m.cols))
    return basis


def solve(m: SparseMatrix, b: SparseVector) -> Optional[SparseVector]:
    """Some x with m·x = b, or None when the system is inconsistent."""
    if b.length != m.rows:
        raise ValueError(f"Dimension mismatch: right-hand side of length {b.length} "
                         f"for a matrix with {m.rows} rows.")
    augmented = m.to_dod()
    for i, value in b.entries:
        augmented.setdefault(i, {})[m.cols] = value
    echelon = row_reduce(SparseMatrix(m.rows, m.cols + 1, m.field, augmented))
    if echelon.pivots and echelon.pivots[-1] == m.cols:
        return None
    solution = {}
    for row, pivot in zip(echelon.rows, echelon.pivots):
        value = row.get(m.cols)
        if value:
            solution[pivot] = value
    if m.matvec(solution) != b.to_dict():
        raise ArithmeticError("Back-substitution check failed.")
    return SparseVector.from_mapping(solution, m.cols)


def rank_of_vectors(vectors: Iterable[Mapping[int, Scalar]], length: int,
                    field: ScalarField) -> int:
    """Dimension of the span of the given sparse vectors."""
    columns = list(vectors)
    if not columns:
        return 0
    return rank(SparseMatrix.from_columns(columns, length, field))


def quotient_dimension(ambient: int, relations: Sequence[Mapping[int, Scalar]],
                       field: ScalarField) -> int:
    """dim(k^ambient / span(relations))."""
    return ambient - rank_of_vectors(relations, ambient, field)
