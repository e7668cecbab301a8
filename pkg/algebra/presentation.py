"""
Confluence of the rewriting system that presents E, and the defining
relations of E acting on a finite coefficient bimodule.
"""
# Standard library imports
import itertools
import logging
from typing import Dict, Iterable, List, Optional, Sequence

# Local application imports
from algebra.algebra_data import (
    AlgebraData, BimoduleSpec, ColumnMatrix, ValidationFailure, ValidationReport,
    apply_matrix, validate_action, validate_algebra, validate_lie, validate_subalgebra
)
from algebra.crossed_product import CrossedProduct, Element, Key
from linalg.exact_linalg import Scalar, accumulate

logger = logging.getLogger(__name__)


def overlap_report(ring: CrossedProduct, letters: Sequence[Key]) -> ValidationReport:
    """
    Resolves every critical overlap of the rewriting rules both ways:
    y_i y_j y_k (i > j > k), y_i y_j a (i > j) and y_i a b, where a and b
    run over the given coefficient letters.
    """
    failures: List[ValidationFailure] = []
    labels = ring.lie.labels
    label = ring.coefficients.label
    gens = [ring.generator(i) for i in range(ring.rank)]
    coeffs = {a: ring.monomial(a) for a in letters}

    def record(check: str, witness: str, left: Element, right: Element) -> None:
        if left != right:
            failures.append(ValidationFailure(check, witness, str(left), str(right)))

    for k, j, i in itertools.combinations(range(ring.rank), 3):
        record("confluence_generators", f"({labels[k]}, {labels[j]}, {labels[i]})",
               (gens[i] * gens[j]) * gens[k], gens[i] * (gens[j] * gens[k]))
    for j, i in itertools.combinations(range(ring.rank), 2):
        for a in letters:
            record("confluence_generators_coefficient",
                   f"({labels[j]}, {labels[i]}, {label(a)})",
                   (gens[i] * gens[j]) * coeffs[a], gens[i] * (gens[j] * coeffs[a]))
    for i in range(ring.rank):
        for a, b in itertools.product(letters, repeat=2):
            record("confluence_coefficients", f"({labels[i]}, {label(a)}, {label(b)})",
                   (gens[i] * coeffs[a]) * coeffs[b], gens[i] * (coeffs[a] * coeffs[b]))
    logger.debug("overlap check over %d generators: %d failures", ring.rank, len(failures))
    return ValidationReport(tuple(failures))


def validate_presentation(data: AlgebraData) -> ValidationReport:
    """Diamond-lemma check of the PBW presentation of A #_f U(g)."""
    ring = CrossedProduct.from_data(data)
    return overlap_report(ring, ring.coefficients.presentation_letters())


def _compose(outer: ColumnMatrix, inner: ColumnMatrix, dimension: int) -> Dict[int, Dict[int, Scalar]]:
    out = {}
    for column in range(dimension):
        image = apply_matrix(outer, inner.get(column, {}))
        if image:
            out[column] = image
    return out


def _identity(dimension: int, one: Scalar) -> Dict[int, Dict[int, Scalar]]:
    return {column: {column: one} for column in range(dimension)}


def _combine(terms: Iterable[tuple], dimension: int) -> Dict[int, Dict[int, Scalar]]:
    """Sum of coefficient·matrix over (coefficient, matrix) pairs."""
    out: Dict[int, Dict[int, Scalar]] = {}
    for coefficient, matrix in terms:
        for column in range(dimension):
            image = matrix.get(column)
            if image:
                merged = accumulate(out.setdefault(column, {}), image, coefficient)
                if not merged:
                    del out[column]
    return out


def _render_matrix(matrix: ColumnMatrix, data: AlgebraData) -> str:
    render = data.field.render
    cells = [f"{column}->{{" + ", ".join(f"{row}: {render(value)}" for row, value in sorted(image.items())) + "}"
             for column, image in sorted(matrix.items())]
    return "[" + "; ".join(cells) + "]"


def validate_bimodule(data: AlgebraData, m: BimoduleSpec) -> ValidationReport:
    """
    Checks that the left and right actions of a finite M respect every
    defining relation of E and commute with each other. REGULAR M is
    valid whenever the presentation is.
    """
    if m.regular:
        return validate_presentation(data)
    a, g, fld = data.algebra, data.lie, data.field
    n, dim = a.dimension, m.dimension
    failures: List[ValidationFailure] = []
    sizes = ((len(m.left), n, "left"), (len(m.right), n, "right"),
             (len(m.gen_left), g.dimension, "gen_left"), (len(m.gen_right), g.dimension, "gen_right"))
    for got, expected, name in sizes:
        if got != expected:
            failures.append(ValidationFailure("shape", name, f"{expected} matrices", f"{got} matrices"))
    if failures:
        return ValidationReport(tuple(failures))
    one, minus = fld.one, -fld.one
    identity = _identity(dim, one)

    def record(check: str, witness: str, lhs: ColumnMatrix, rhs: ColumnMatrix) -> None:
        if dict(lhs) != dict(rhs):
            failures.append(ValidationFailure(check, witness, _render_matrix(rhs, data),
                                              _render_matrix(lhs, data)))

    def compose(p: ColumnMatrix, q: ColumnMatrix) -> Dict[int, Dict[int, Scalar]]:
        return _compose(p, q, dim)

    def commutator(p: ColumnMatrix, q: ColumnMatrix) -> Dict[int, Dict[int, Scalar]]:
        return _combine(((one, compose(p, q)), (minus, compose(q, p))), dim)

    left, right, x_ops, y_ops = m.left, m.right, m.gen_left, m.gen_right
    record("left_unit", "1·m", left[a.unit], identity)
    record("right_unit", "m·1", right[a.unit], identity)
    for p, q in itertools.product(range(n), repeat=2):
        product = a.product(p, q)
        record("left_multiplicative", f"({a.labels[p]}·{a.labels[q]})·m",
               compose(left[p], left[q]), m.left_vector(product))
        record("right_multiplicative", f"m·({a.labels[p]}·{a.labels[q]})",
               compose(right[q], right[p]), m.right_vector(product))
    for i in range(g.dimension):
        for p in range(n):
            derived = data.action.image(i, p)
            record("left_derivation", f"[{g.labels[i]}, {a.labels[p]}]·m",
                   commutator(x_ops[i], left[p]), m.left_vector(derived))
            record("right_derivation", f"m·[{g.labels[i]}, {a.labels[p]}]",
                   commutator(right[p], y_ops[i]), m.right_vector(derived))
    for i, j in itertools.combinations(range(g.dimension), 2):
        f_hat = data.f_hat(i, j)
        bracket = g.bracket(i, j)
        left_rhs = _combine([(c, x_ops[l]) for l, c in bracket.items()]
                            + [(one, m.left_vector(f_hat))], dim)
        right_rhs = _combine([(c, y_ops[l]) for l, c in bracket.items()]
                             + [(one, m.right_vector(f_hat))], dim)
        record("left_bracket", f"[{g.labels[i]}, {g.labels[j]}]·m",
               commutator(x_ops[i], x_ops[j]), left_rhs)
        record("right_bracket", f"m·[{g.labels[i]}, {g.labels[j]}]",
               commutator(y_ops[j], y_ops[i]), right_rhs)
    lefts = [(a.labels[p], left[p]) for p in range(n)] + [(lbl, x_ops[i]) for i, lbl in enumerate(g.labels)]
    rights = [(a.labels[p], right[p]) for p in range(n)] + [(lbl, y_ops[i]) for i, lbl in enumerate(g.labels)]
    for (lname, lop), (rname, rop) in itertools.product(lefts, rights):
        record("commuting_actions", f"({lname}·m)·{rname}", compose(rop, lop), compose(lop, rop))
    return ValidationReport(tuple(failures))


def validate_all(data: AlgebraData, m: Optional[BimoduleSpec] = None) -> ValidationReport:
    """Every validator in dependency order; later checks run only on valid components."""
    report = validate_algebra(data.algebra).merge(validate_lie(data.lie))
    if not report.ok:
        return report
    report = report.merge(validate_subalgebra(data.algebra, data.subalgebra),
                          validate_action(data.algebra, data.lie, data.action, data.subalgebra))
    if not report.ok:
        return report
    report = report.merge(validate_presentation(data))
    if report.ok and m is not None and not m.regular:
        report = report.merge(validate_bimodule(data, m))
    return report
