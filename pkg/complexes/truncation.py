"""
Desk-scale (co)homology with coefficients in E itself: cochains and chains
are restricted to values of filtration degree at most a cap, cycles are
solved for exactly, and the part of them hit by (co)boundaries of values
up to cap + shift is subtracted. Results are bounds with a stabilization
flag, never exact infinite-dimensional Betti numbers.
"""
# Standard library imports
import logging
from dataclasses import dataclass
from typing import Dict, Hashable, List, Optional, Sequence, Tuple

# Local application imports
from algebra.algebra_data import AlgebraData, BimoduleSpec
from complexes.small_complexes import StencilComplex, XBarComplex
from linalg.exact_linalg import Scalar, SparseMatrix, accumulate, kernel_basis, rank, rank_of_vectors

logger = logging.getLogger(__name__)

COHOMOLOGY = "cohomology"
HOMOLOGY = "homology"


@dataclass(frozen=True)
class TruncationLevel:
    """Counts at one cap."""
    cap: int
    cycles: int
    boundaries: int
    residual: int
    lower_bound: int
    stable: bool

    def to_dict(self) -> Dict[str, object]:
        return {"cap": self.cap, "cycles": self.cycles, "boundaries": self.boundaries,
                "residual": self.residual, "lower_bound": self.lower_bound, "stable": self.stable}


@dataclass(frozen=True)
class DegreeBounds:
    degree: int
    levels: Tuple[TruncationLevel, ...]

    @property
    def residual(self) -> int:
        return self.levels[-1].residual

    @property
    def lower_bound(self) -> int:
        return self.levels[-1].lower_bound

    @property
    def stable(self) -> bool:
        return self.levels[-1].stable

    def to_dict(self) -> Dict[str, object]:
        return {"degree": self.degree, "residual": self.residual, "lower_bound": self.lower_bound,
                "stable": self.stable, "levels": [level.to_dict() for level in self.levels]}


@dataclass(frozen=True)
class StabilizationReport:
    direction: str
    shift: int
    degrees: Tuple[DegreeBounds, ...]

    def residuals(self) -> List[int]:
        return [bounds.residual for bounds in self.degrees]

    def to_dict(self) -> Dict[str, object]:
        return {"direction": self.direction, "shift": self.shift,
                "degrees": [bounds.to_dict() for bounds in self.degrees]}


class _KeyIndex:
    """Assigns consecutive row numbers to (input, monomial) keys on first sight."""

    def __init__(self):
        self.positions: Dict[Hashable, int] = {}

    def __call__(self, key: Hashable) -> int:
        position = self.positions.get(key)
        if position is None:
            position = len(self.positions)
            self.positions[key] = position
        return position

    def __len__(self) -> int:
        return len(self.positions)


def default_shift(complex_: StencilComplex) -> int:
    return 1 + max(0, complex_.raise_degree())


def _columns(complex_: StencilComplex, n: int, cap: int,
             chain: bool) -> Tuple[List[Hashable], List[Dict[Hashable, Scalar]]]:
    """
    The differential out of degree n on values of filtration at most cap,
    one column per (input, monomial), images keyed by (input, monomial).
    """
    ring, module = complex_.ring, complex_.module
    monomials = ring.monomials_up_to(cap)
    sources = complex_.inputs(n) if n >= 0 else []
    routes: Dict[Hashable, List[Tuple]] = {src: [] for src in sources}
    if chain:
        for src in sources:
            routes[src] = [(term.input, term.coefficient, term.op) for term in complex_.chain_terms(src)]
    else:
        for target in complex_.inputs(n + 1):
            for term in complex_.cochain_terms(target):
                routes[term.input].append((target, term.coefficient, term.op))
    keys, columns = [], []
    for src in sources:
        for monomial in monomials:
            value = ring.monomial(monomial.coefficient, monomial.exponents)
            column: Dict[Hashable, Scalar] = {}
            for other, c, op in routes[src]:
                image = module.act(op, value)
                accumulate(column, {(other, m): coeff for m, coeff in image.items()}, c)
            keys.append((src, monomial))
            columns.append(column)
    return keys, columns


def _indexed(columns: Sequence[Dict[Hashable, Scalar]], index: _KeyIndex) -> List[Dict[int, Scalar]]:
    return [{index(key): c for key, c in column.items()} for column in columns]


def _level(complex_: StencilComplex, n: int, cap: int, shift: int, direction: str) -> Tuple[int, int]:
    """(dim of truncated cycles, dim of their intersection with the boundaries)."""
    chain = direction == HOMOLOGY
    fld = complex_.field
    keys, columns = _columns(complex_, n, cap, chain)
    if not keys:
        return 0, 0
    target_index = _KeyIndex()
    image = _indexed(columns, target_index)
    matrix = SparseMatrix.from_columns(image, len(target_index), fld)
    cycles = [vector.to_dict() for vector in kernel_basis(matrix)]
    if not cycles:
        return 0, 0
    previous = n + 1 if chain else n - 1
    if previous < 0:
        return len(cycles), 0
    _, incoming = _columns(complex_, previous, cap + shift, chain)
    shared = _KeyIndex()
    cycle_vectors = [{shared(keys[k]): c for k, c in vector.items()} for vector in cycles]
    boundary_vectors = [vector for vector in _indexed(incoming, shared) if vector]
    if not boundary_vectors:
        return len(cycles), 0
    size = len(shared)
    boundary_rank = rank(SparseMatrix.from_columns(boundary_vectors, size, fld))
    joint_rank = rank_of_vectors(cycle_vectors + boundary_vectors, size, fld)
    return len(cycles), len(cycles) + boundary_rank - joint_rank


def stabilize(complex_: StencilComplex, n_max: int, caps: Sequence[int], direction: str = COHOMOLOGY,
              shift: Optional[int] = None) -> StabilizationReport:
    """Truncated (co)homology of a complex with M = E, at every cap in ascending order."""
    if not complex_.module.regular:
        raise ValueError("Truncated drivers need M = E; use the exact Betti numbers for finite M.")
    if direction not in (COHOMOLOGY, HOMOLOGY):
        raise ValueError(f"Unknown direction '{direction}'.")
    if not caps:
        raise ValueError("At least one cap is required.")
    ordered = sorted(set(caps))
    if ordered[0] < 0:
        raise ValueError(f"The cap {ordered[0]} is too small to contain the unit.")
    shift = default_shift(complex_) if shift is None else shift
    degrees = []
    for n in range(n_max + 1):
        levels: List[TruncationLevel] = []
        best = 0
        for cap in ordered:
            cycles, hit = _level(complex_, n, cap, shift, direction)
            residual = cycles - hit
            best = max(best, residual)
            stable = bool(levels) and levels[-1].residual == residual
            levels.append(TruncationLevel(cap, cycles, hit, residual, best, stable))
            logger.info("%s degree %d cap %d: cycles %d, hit %d, residual %d",
                        direction, n, cap, cycles, hit, residual)
        degrees.append(DegreeBounds(n, tuple(levels)))
    return StabilizationReport(direction, shift, tuple(degrees))


def truncated_betti(data: AlgebraData, m: BimoduleSpec, n_max: int, caps: Sequence[int],
                    direction: str = COHOMOLOGY, shift: Optional[int] = None) -> StabilizationReport:
    """Truncated H^*(E, E) or H_*(E, E) through the small complex of a finite A."""
    if not m.regular:
        raise ValueError("Truncated drivers need the REGULAR module M = E.")
    return stabilize(XBarComplex.from_data(data, m), n_max, caps, direction, shift)
