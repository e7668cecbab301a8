"""
A = S(V), the symmetric algebra on a finite-dimensional V, with g acting
through affine derivations v^x = c(v, x)·1 + w(v, x) and an affine
cocycle f(x, y) ∈ k ⊕ V.

PolynomialCoefficients plugs S(V) into the crossed-product engine: keys
are exponent tuples over the basis of V and the unit is the zero tuple.
"""
# Standard library imports
import itertools
import random
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

# Local application imports
from algebra.algebra_data import LieAlgebraSpec, ValidationFailure, ValidationReport, Vector
from algebra.crossed_product import CrossedProduct
from algebra.presentation import overlap_report
from linalg.exact_linalg import RATIONALS, Scalar, ScalarField, accumulate

Exponents = Tuple[int, ...]


@dataclass(frozen=True)
class SymmetricModeSpec:
    """
    Affine data on S(V). action_constant[(i, k)] and action_linear[(i, k)]
    give v_k^{x_i}; cocycle_constant[(i, j)] and cocycle_linear[(i, j)]
    give f(x_i, x_j). Missing entries are zero.
    """
    field: ScalarField
    dim_v: int
    lie: LieAlgebraSpec
    action_constant: Mapping[Tuple[int, int], Scalar] = field(default_factory=dict)
    action_linear: Mapping[Tuple[int, int], Vector] = field(default_factory=dict)
    cocycle_constant: Mapping[Tuple[int, int], Scalar] = field(default_factory=dict)
    cocycle_linear: Mapping[Tuple[int, int], Vector] = field(default_factory=dict)
    v_labels: Tuple[str, ...] = ()

    def __post_init__(self):
        if not self.v_labels:
            names = ("v",) if self.dim_v == 1 else tuple(f"v{k}" for k in range(self.dim_v))
            object.__setattr__(self, "v_labels", names)
        if self.field != self.lie.field:
            raise ValueError("The symmetric data and the Lie algebra are over different fields.")

    def letter(self, k: int) -> Exponents:
        """The key of v_k in S(V)."""
        return tuple(1 if p == k else 0 for p in range(self.dim_v))

    def v_component(self, i: int, k: int) -> Vector:
        """The V-part of v_k^{x_i}."""
        return self.action_linear.get((i, k), {})

    def v_image(self, i: int, k: int) -> Dict[Exponents, Scalar]:
        """v_k^{x_i} as a polynomial."""
        out: Dict[Exponents, Scalar] = {}
        constant = self.action_constant.get((i, k))
        if constant:
            out[(0,) * self.dim_v] = constant
        for l, c in self.v_component(i, k).items():
            accumulate(out, {self.letter(l): c})
        return out

    def f_value(self, i: int, j: int) -> Dict[Exponents, Scalar]:
        out: Dict[Exponents, Scalar] = {}
        constant = self.cocycle_constant.get((i, j))
        if constant:
            out[(0,) * self.dim_v] = constant
        for l, c in self.cocycle_linear.get((i, j), {}).items():
            accumulate(out, {self.letter(l): c})
        return out

    def f_hat_v(self, i: int, j: int) -> Dict[int, Scalar]:
        """V-part of f(x_i, x_j) - f(x_j, x_i)."""
        out = dict(self.cocycle_linear.get((i, j), {}))
        return accumulate(out, self.cocycle_linear.get((j, i), {}), -self.field.one)


class PolynomialCoefficients:
    """S(V) as a coefficient algebra for the rewriting engine."""

    def __init__(self, spec: SymmetricModeSpec):
        self.spec = spec
        self.field = spec.field
        self.lie = spec.lie
        self.unit: Exponents = (0,) * spec.dim_v
        self._derivatives: Dict[Tuple[int, Exponents], Dict[Exponents, Scalar]] = {}

    def multiply(self, a: Exponents, b: Exponents) -> Mapping[Exponents, Scalar]:
        return {tuple(p + q for p, q in zip(a, b)): self.field.one}

    def derive(self, i: int, a: Exponents) -> Mapping[Exponents, Scalar]:
        """Leibniz extension: (v^e)^x = Σ_k e_k v^{e - 1_k} v_k^x."""
        key = (i, a)
        cached = self._derivatives.get(key)
        if cached is not None:
            return cached
        out: Dict[Exponents, Scalar] = {}
        for k, e in enumerate(a):
            if not e:
                continue
            lowered = tuple(p - 1 if q == k else p for q, p in enumerate(a))
            for term, c in self.spec.v_image(i, k).items():
                accumulate(out, self.multiply(lowered, term), c * self.field(e))
        self._derivatives[key] = out
        return out

    def f_hat(self, i: int, j: int) -> Mapping[Exponents, Scalar]:
        out = self.spec.f_value(i, j)
        return accumulate(out, self.spec.f_value(j, i), -self.field.one)

    def degree(self, a: Exponents) -> int:
        return sum(a)

    def sort_key(self, a: Exponents) -> Tuple:
        return tuple(-e for e in a)

    def label(self, a: Exponents) -> str:
        parts = []
        for name, e in zip(self.spec.v_labels, a):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts) if parts else "1"

    def basis_up_to(self, degree: int) -> List[Exponents]:
        keys = [a for a in itertools.product(range(degree + 1), repeat=self.spec.dim_v) if sum(a) <= degree]
        return sorted(keys, key=lambda a: (sum(a), self.sort_key(a)))

    def presentation_letters(self) -> List[Exponents]:
        return [self.spec.letter(k) for k in range(self.spec.dim_v)]


def symmetric_ring(spec: SymmetricModeSpec) -> CrossedProduct:
    """E = S(V) #_f U(g)."""
    return CrossedProduct(PolynomialCoefficients(spec))


def _index_failures(spec: SymmetricModeSpec) -> List[ValidationFailure]:
    failures = []
    d, n = spec.lie.dimension, spec.dim_v
    tables = (("action_constant", spec.action_constant, n), ("action_linear", spec.action_linear, n),
              ("cocycle_constant", spec.cocycle_constant, d), ("cocycle_linear", spec.cocycle_linear, d))
    for name, table, second in tables:
        for (i, k), value in table.items():
            if not (0 <= i < d and 0 <= k < second):
                failures.append(ValidationFailure("index_range", f"{name}[{i}, {k}]",
                                                  f"indices below ({d}, {second})", f"({i}, {k})"))
            if isinstance(value, Mapping) and any(not 0 <= l < n for l in value):
                failures.append(ValidationFailure("index_range", f"{name}[{i}, {k}]",
                                                  f"V-indices below {n}", str(sorted(value))))
    return failures


def validate_symmetric(spec: SymmetricModeSpec, cap: int = 2) -> ValidationReport:
    """
    Index sanity, the derivation law of each x on all monomial pairs of
    total degree at most cap, and confluence with the letters of V.
    """
    failures = _index_failures(spec)
    if failures:
        return ValidationReport(tuple(failures))
    coefficients = PolynomialCoefficients(spec)
    labels = spec.lie.labels
    monomials = coefficients.basis_up_to(cap)
    for i in range(spec.lie.dimension):
        for a, b in itertools.product(monomials, repeat=2):
            if sum(a) + sum(b) > cap:
                continue
            product = next(iter(coefficients.multiply(a, b)))
            lhs = dict(coefficients.derive(i, product))
            rhs: Dict[Exponents, Scalar] = {}
            for term, c in coefficients.derive(i, a).items():
                accumulate(rhs, coefficients.multiply(term, b), c)
            for term, c in coefficients.derive(i, b).items():
                accumulate(rhs, coefficients.multiply(a, term), c)
            if lhs != rhs:
                failures.append(ValidationFailure(
                    "leibniz", f"({coefficients.label(a)}·{coefficients.label(b)})^{labels[i]}",
                    str(sorted(rhs.items())), str(sorted(lhs.items()))))
    ring = CrossedProduct(coefficients)
    return ValidationReport(tuple(failures)).merge(overlap_report(ring, coefficients.presentation_letters()))


# Named examples

def fx_weyl(fld: ScalarField = RATIONALS) -> SymmetricModeSpec:
    """The first Weyl algebra: V = <v>, g = <x>, v^x = 1, f = 0."""
    return SymmetricModeSpec(fld, 1, LieAlgebraSpec.abelian(fld, 1, ("x",)),
                             action_constant={(0, 0): fld.one})


def euler(fld: ScalarField = RATIONALS) -> SymmetricModeSpec:
    """V = <v>, g = <x> acting by v^x = v."""
    return SymmetricModeSpec(fld, 1, LieAlgebraSpec.abelian(fld, 1, ("x",)),
                             action_linear={(0, 0): {0: fld.one}})


def polynomial(fld: ScalarField = RATIONALS) -> SymmetricModeSpec:
    """k[v] ⊗ k[x]: zero action and zero cocycle."""
    return SymmetricModeSpec(fld, 1, LieAlgebraSpec.abelian(fld, 1, ("x",)))


def _draw(rng: random.Random, fld: ScalarField) -> Scalar:
    return fld(rng.choice((-2, -1, 0, 0, 1, 2)))


def random_symmetric(rng: random.Random, fld: ScalarField = RATIONALS,
                     dim_v: Optional[int] = None, dim_g: Optional[int] = None) -> SymmetricModeSpec:
    """
    dim V and dim g at most 2, g abelian, x_1 acting as t times the action
    of x_0 so the two derivations commute, and an arbitrary affine cocycle.
    """
    dim_v = rng.randint(1, 2) if dim_v is None else dim_v
    dim_g = rng.randint(0, 2) if dim_g is None else dim_g
    lie = LieAlgebraSpec.abelian(fld, dim_g, ("x", "y")[:dim_g] if dim_g else ())
    constants = [_draw(rng, fld) for _ in range(dim_v)]
    linear = [{l: c for l in range(dim_v) if (c := _draw(rng, fld))} for _ in range(dim_v)]
    factors = [fld.one, _draw(rng, fld)][:dim_g]
    action_constant: Dict[Tuple[int, int], Scalar] = {}
    action_linear: Dict[Tuple[int, int], Dict[int, Scalar]] = {}
    for i, t in enumerate(factors):
        for k in range(dim_v):
            if constants[k] * t:
                action_constant[(i, k)] = constants[k] * t
            image = {l: c * t for l, c in linear[k].items() if c * t}
            if image:
                action_linear[(i, k)] = image
    cocycle_constant: Dict[Tuple[int, int], Scalar] = {}
    cocycle_linear: Dict[Tuple[int, int], Dict[int, Scalar]] = {}
    for i, j in itertools.permutations(range(dim_g), 2):
        constant = _draw(rng, fld)
        if constant:
            cocycle_constant[(i, j)] = constant
        vector = {l: c for l in range(dim_v) if (c := _draw(rng, fld))}
        if vector:
            cocycle_linear[(i, j)] = vector
    return SymmetricModeSpec(fld, dim_v, lie, action_constant, action_linear,
                             cocycle_constant, cocycle_linear)


def v_labels_of(spec: SymmetricModeSpec, indices: Sequence[int]) -> str:
    return "∧".join(spec.v_labels[k] for k in indices) or "1"
