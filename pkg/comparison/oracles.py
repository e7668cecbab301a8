"""
Independent reference complexes for the two classical reductions of the
small complexes: the Chevalley-Eilenberg complex of g with trivial
coefficients (A = k, f = 0, M = k) and the normalized bar complex of a
finite-dimensional A (g = 0). Nothing here goes through the stencil code.
"""
# Standard library imports
import itertools
import logging
from typing import Dict, List, Sequence, Tuple

# Local application imports
from algebra.algebra_data import AlgebraData, AlgebraSpec, BimoduleSpec, LieAlgebraSpec, apply_matrix
from linalg.exact_linalg import Scalar, SparseMatrix, accumulate, rank

logger = logging.getLogger(__name__)


def _sorted_with_sign(indices: Sequence[int]) -> Tuple[int, Tuple[int, ...]]:
    """Bubble-sorts a wedge monomial, counting transpositions; 0 on a repeat."""
    items = list(indices)
    swaps = 0
    for end in range(len(items) - 1, 0, -1):
        for k in range(end):
            if items[k] == items[k + 1]:
                return 0, ()
            if items[k] > items[k + 1]:
                items[k], items[k + 1] = items[k + 1], items[k]
                swaps += 1
    if len(items) != len(set(items)):
        return 0, ()
    return (-1 if swaps % 2 else 1), tuple(items)


def _bracket_terms(lie: LieAlgebraSpec, wedge: Tuple[int, ...]) -> Dict[Tuple[int, ...], Scalar]:
    """Σ_{i<j} (-1)^{i+j} [x_i, x_j] ∧ x_1..x̂_i..x̂_j..x_n, positions counted from 1."""
    fld = lie.field
    out: Dict[Tuple[int, ...], Scalar] = {}
    for p, q in itertools.combinations(range(len(wedge)), 2):
        rest = wedge[:p] + wedge[p + 1:q] + wedge[q + 1:]
        outer = fld.one if (p + q) % 2 == 0 else -fld.one
        for l, c in lie.bracket(wedge[p], wedge[q]).items():
            wedge_sign, key = _sorted_with_sign((l,) + rest)
            if wedge_sign:
                accumulate(out, {key: outer * c * fld(wedge_sign)})
    return out


def ce_cochain_matrix(lie: LieAlgebraSpec, n: int) -> SparseMatrix:
    """d: Hom(∧^n g, k) -> Hom(∧^{n+1} g, k) on combinations-ordered bases."""
    sources = list(itertools.combinations(range(lie.dimension), n))
    targets = list(itertools.combinations(range(lie.dimension), n + 1))
    column_of = {wedge: k for k, wedge in enumerate(sources)}
    data = {}
    for row, wedge in enumerate(targets):
        entries = {column_of[key]: c for key, c in _bracket_terms(lie, wedge).items()}
        if entries:
            data[row] = entries
    return SparseMatrix(len(targets), len(sources), lie.field, data)


def ce_chain_matrix(lie: LieAlgebraSpec, n: int) -> SparseMatrix:
    """∂: ∧^n g -> ∧^{n-1} g on combinations-ordered bases."""
    sources = list(itertools.combinations(range(lie.dimension), n))
    targets = list(itertools.combinations(range(lie.dimension), n - 1)) if n > 0 else []
    row_of = {wedge: k for k, wedge in enumerate(targets)}
    columns = []
    for wedge in sources:
        columns.append({row_of[key]: c for key, c in _bracket_terms(lie, wedge).items()})
    return SparseMatrix.from_columns(columns, len(targets), lie.field)


def _betti(sizes: List[int], ranks_out: List[int], ranks_in: List[int]) -> List[int]:
    return [size - out - inc for size, out, inc in zip(sizes, ranks_out, ranks_in)]


def ce_oracle_betti(lie: LieAlgebraSpec, n_max: int) -> List[int]:
    """dim H^n(g, k) for 0 <= n <= n_max."""
    ranks = [rank(ce_cochain_matrix(lie, n)) for n in range(n_max + 1)]
    sizes = [len(list(itertools.combinations(range(lie.dimension), n))) for n in range(n_max + 1)]
    return _betti(sizes, ranks, [0] + ranks[:-1])


def ce_oracle_homology_betti(lie: LieAlgebraSpec, n_max: int) -> List[int]:
    """dim H_n(g, k) for 0 <= n <= n_max."""
    ranks = [rank(ce_chain_matrix(lie, n)) for n in range(n_max + 2)]
    sizes = [len(list(itertools.combinations(range(lie.dimension), n))) for n in range(n_max + 1)]
    return _betti(sizes, ranks[:n_max + 1], ranks[1:])


class _NormalizedBar:
    """Words over the non-unit basis of A; coordinates word position times dim M, M index innermost."""

    def __init__(self, algebra: AlgebraSpec, m: BimoduleSpec):
        if m.regular:
            raise ValueError("The bar oracle needs a finite-dimensional M.")
        self.algebra = algebra
        self.m = m
        self.letters = [i for i in range(algebra.dimension) if i != algebra.unit]

    def words(self, n: int) -> List[Tuple[int, ...]]:
        if n < 0:
            return []
        return list(itertools.product(self.letters, repeat=n))

    def reduced_product(self, a: int, b: int) -> Dict[int, Scalar]:
        return {k: c for k, c in self.algebra.product(a, b).items() if k != self.algebra.unit}

    def faces(self, word: Tuple[int, ...]) -> List[Tuple[str, Scalar, Tuple[int, ...], int]]:
        """(action, coefficient, shorter word, acting letter) for the Hochschild faces of a word."""
        fld = self.algebra.field
        n = len(word)
        out = [("first", fld.one, word[1:], word[0])]
        for i in range(1, n):
            sgn = fld.one if i % 2 == 0 else -fld.one
            for b, c in self.reduced_product(word[i - 1], word[i]).items():
                out.append(("none", sgn * c, word[:i - 1] + (b,) + word[i + 1:], -1))
        out.append(("last", fld.one if n % 2 == 0 else -fld.one, word[:-1], word[-1]))
        return out


def bar_cochain_matrix(algebra: AlgebraSpec, m: BimoduleSpec, n: int) -> SparseMatrix:
    """(dφ)(a_1..a_{n+1}) = a_1 φ(a_2..) + Σ (-1)^i φ(..a_i a_{i+1}..) + (-1)^{n+1} φ(a_1..a_n) a_{n+1}."""
    bar = _NormalizedBar(algebra, m)
    width = m.dimension
    sources = {word: k for k, word in enumerate(bar.words(n))}
    targets = bar.words(n + 1)
    data: Dict[int, Dict[int, Scalar]] = {}
    for row_block, word in enumerate(targets):
        for kind, c, shorter, letter in bar.faces(word):
            base = sources[shorter] * width
            for j in range(width):
                if kind == "first":
                    image = m.left[letter].get(j, {})
                elif kind == "last":
                    image = m.right[letter].get(j, {})
                else:
                    image = {j: algebra.field.one}
                for i, value in image.items():
                    accumulate(data.setdefault(row_block * width + i, {}), {base + j: value}, c)
    return SparseMatrix(len(targets) * width, len(sources) * width, algebra.field, data)


def bar_chain_matrix(algebra: AlgebraSpec, m: BimoduleSpec, n: int) -> SparseMatrix:
    """b(m ⊗ a_1..a_n) = m a_1 ⊗ a_2.. + Σ (-1)^i m ⊗ ..a_i a_{i+1}.. + (-1)^n a_n m ⊗ a_1..a_{n-1}."""
    bar = _NormalizedBar(algebra, m)
    width = m.dimension
    sources = bar.words(n)
    targets = {word: k for k, word in enumerate(bar.words(n - 1))}
    columns = []
    for word in sources:
        for j in range(width):
            column: Dict[int, Scalar] = {}
            if n > 0:
                for kind, c, shorter, letter in bar.faces(word):
                    if kind == "first":
                        image = apply_matrix(m.right[letter], {j: algebra.field.one})
                    elif kind == "last":
                        image = apply_matrix(m.left[letter], {j: algebra.field.one})
                    else:
                        image = {j: algebra.field.one}
                    base = targets[shorter] * width
                    accumulate(column, {base + i: value for i, value in image.items()}, c)
            columns.append(column)
    return SparseMatrix.from_columns(columns, len(targets) * width, algebra.field)


def bar_oracle_betti(algebra: AlgebraSpec, m: BimoduleSpec, n_max: int) -> List[int]:
    """Hochschild cohomology dimensions of A with coefficients in M."""
    bar = _NormalizedBar(algebra, m)
    ranks = [rank(bar_cochain_matrix(algebra, m, n)) for n in range(n_max + 1)]
    sizes = [len(bar.words(n)) * m.dimension for n in range(n_max + 1)]
    return _betti(sizes, ranks, [0] + ranks[:-1])


def bar_oracle_homology_betti(algebra: AlgebraSpec, m: BimoduleSpec, n_max: int) -> List[int]:
    """Hochschild homology dimensions of A with coefficients in M."""
    bar = _NormalizedBar(algebra, m)
    ranks = [rank(bar_chain_matrix(algebra, m, n)) for n in range(n_max + 2)]
    sizes = [len(bar.words(n)) * m.dimension for n in range(n_max + 1)]
    return _betti(sizes, ranks[:n_max + 1], ranks[1:])


def centralizer_dimension(data: AlgebraData, m: BimoduleSpec) -> int:
    """dim {m : a·m = m·a for every A-basis a, (1#g_i)·m = m·(1#g_i) for every i}."""
    if m.regular:
        raise ValueError("The centralizer is only computed for a finite-dimensional M.")
    width = m.dimension
    blocks = list(zip(m.left, m.right)) + list(zip(m.gen_left, m.gen_right))
    rows: Dict[int, Dict[int, Scalar]] = {}
    for block, (left, right) in enumerate(blocks):
        for j in range(width):
            difference = accumulate(dict(left.get(j, {})), right.get(j, {}), -data.field.one)
            for i, value in difference.items():
                rows.setdefault(block * width + i, {})[j] = value
    matrix = SparseMatrix(len(blocks) * width, width, data.field, rows)
    return width - rank(matrix)
