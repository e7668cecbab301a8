"""
The Z-complexes of E = S(V) #_f U(g) with coefficients in E: cochains on
∧^r V ⊗ ∧^s g and chains E ⊗ ∧^r V ⊗ ∧^s g, the antisymmetrization maps
Γ̄ from and to the X̄ complexes, the ★ products and the truncated drivers.

Inputs are pairs (increasing V-indices, increasing g-indices). The
horizontal part of the differential uses the same sign convention as the
X̄ complexes, δ̄_0 φ(v_1..v_r ⊗ x) = Σ_i (-1)^{i+1} [v_i, φ(..v̂_i.. ⊗ x)],
so that Γ̄ commutes with the differentials on the nose.
"""
# Standard library imports
import itertools
import logging
import random
from typing import Any, Dict, List, Optional, Sequence, Tuple

# Third-party imports
from sympy.combinatorics import Permutation

# Local application imports
from complexes.modules import (
    RegularModule, left_coefficient, left_generator, right_coefficient, right_generator
)
from complexes.small_complexes import (
    ACTION, COCYCLE, HORIZONTAL, VERTICAL, BarQuotient, ChainElement, Cochain, Input, StencilComplex,
    Term, XBarComplex, normalize_wedge, sign
)
from complexes.truncation import HOMOLOGY, StabilizationReport, stabilize
from products.products import signed_subsets
from symmetric.symmetric_algebra import SymmetricModeSpec, symmetric_ring, v_labels_of

logger = logging.getLogger(__name__)


def _permutation_sign(order: Sequence[int]) -> int:
    return Permutation(list(order)).signature() if len(order) > 1 else 1


class ZComplex(StencilComplex):
    """Z̄^*(E) and Z̄_*(E) for one SymmetricModeSpec, plus the X̄ complex they compare with."""

    def __init__(self, spec: SymmetricModeSpec):
        ring = symmetric_ring(spec)
        super().__init__(ring, RegularModule(ring))
        self.spec = spec
        self.lie = spec.lie
        self.xbar = XBarComplex(ring, self.module, BarQuotient.ground(ring.coefficients))

    def blocks(self, n: int) -> List[Tuple[int, int]]:
        return [(r, n - r) for r in range(n + 1) if r <= self.spec.dim_v and n - r <= self.lie.dimension]

    def block_inputs(self, r: int, s: int) -> List[Input]:
        v_wedges = itertools.combinations(range(self.spec.dim_v), r)
        x_wedges = list(itertools.combinations(range(self.lie.dimension), s))
        return [(vw, xw) for vw in v_wedges for xw in x_wedges]

    def raise_degree(self) -> int:
        return 1 if self.spec.dim_v or self.lie.dimension else 0

    def stencil(self, inp: Input, chain: bool) -> List[Term]:
        v_wedge, x_wedge = inp
        r, s = len(v_wedge), len(x_wedge)
        fld, spec = self.field, self.spec
        terms: List[Term] = []
        for i in range(1, r + 1):
            letter = spec.letter(v_wedge[i - 1])
            rest = (v_wedge[:i - 1] + v_wedge[i:], x_wedge)
            c = sign(fld, i + 1)
            terms.append(Term(c, self._swap(left_coefficient(letter), chain), rest, HORIZONTAL))
            terms.append(Term(-c, self._swap(right_coefficient(letter), chain), rest, HORIZONTAL))
        for i in range(1, s + 1):
            x = x_wedge[i - 1]
            rest = x_wedge[:i - 1] + x_wedge[i:]
            outer = sign(fld, i + r)
            terms.append(Term(outer, self._swap(right_generator(x), chain), (v_wedge, rest), VERTICAL))
            terms.append(Term(-outer, self._swap(left_generator(x), chain), (v_wedge, rest), VERTICAL))
            for h in range(r):
                for l, c in spec.v_component(x, v_wedge[h]).items():
                    wedge_sign, normalized = normalize_wedge(v_wedge[:h] + (l,) + v_wedge[h + 1:])
                    if wedge_sign:
                        terms.append(Term(outer * c * fld(wedge_sign), None, (normalized, rest), ACTION))
            for j in range(i + 1, s + 1):
                y = x_wedge[j - 1]
                rest_ij = tuple(w for k, w in enumerate(x_wedge) if k not in (i - 1, j - 1))
                for l, c in self.lie.bracket(x, y).items():
                    wedge_sign, normalized = normalize_wedge((l,) + rest_ij)
                    if wedge_sign:
                        terms.append(Term(sign(fld, i + j + r) * c * fld(wedge_sign), None,
                                          (v_wedge, normalized), VERTICAL))
                for l, c in spec.f_hat_v(x, y).items():
                    wedge_sign, normalized = normalize_wedge((l,) + v_wedge)
                    if wedge_sign:
                        terms.append(Term(sign(fld, i + j) * c * fld(wedge_sign), None,
                                          (normalized, rest_ij), COCYCLE))
        return terms

    def word(self, v_indices: Sequence[int]) -> Tuple:
        """The Ā-word v_{i_1} ⊗ ... ⊗ v_{i_r} of the X̄ complex."""
        return tuple(self.spec.letter(k) for k in v_indices)

    def render_input(self, inp: Input) -> str:
        v_wedge, x_wedge = inp
        gens = "∧".join(self.lie.labels[i] for i in x_wedge) or "1"
        return f"{v_labels_of(self.spec, v_wedge)} ⊗ {gens}"


def z_coboundary(phi, spec: SymmetricModeSpec) -> Cochain:
    """δ̄φ for a Z-cochain with values in E."""
    return ZComplex(spec).coboundary(phi)


def z_boundary(c: ChainElement, spec: SymmetricModeSpec) -> ChainElement:
    """δ̄c for a Z-chain with coefficients in E."""
    return ZComplex(spec).boundary(c)


def gamma_bar_cochain(complex_: ZComplex, phi) -> Cochain:
    """Γ̄(φ)(v_1∧..∧v_r ⊗ x) = Σ_σ sg(σ) φ(v_σ(1) ⊗ .. ⊗ v_σ(r) ⊗ x) for an X̄ cochain φ."""
    zero = complex_.module.zero()
    values = {}
    for v_wedge, x_wedge in complex_.inputs(phi.degree):
        total = zero
        for order in itertools.permutations(range(len(v_wedge))):
            value = phi.at((complex_.word(v_wedge[k] for k in order), x_wedge), zero)
            if value:
                total = total + value.scale(complex_.field(_permutation_sign(order)))
        if total:
            values[(v_wedge, x_wedge)] = total
    return Cochain(phi.degree, values)


def gamma_bar_chain(complex_: ZComplex, z: ChainElement) -> ChainElement:
    """Γ̄(m ⊗ v_1∧..∧v_r ⊗ x) = Σ_σ sg(σ) m ⊗ v_σ(1) ⊗ .. ⊗ v_σ(r) ⊗ x, an X̄ chain."""
    values: Dict[Input, Any] = {}
    zero = complex_.module.zero()
    for (v_wedge, x_wedge), m in z.values.items():
        for order in itertools.permutations(range(len(v_wedge))):
            target = (complex_.word(v_wedge[k] for k in order), x_wedge)
            values[target] = values.get(target, zero) + m.scale(complex_.field(_permutation_sign(order)))
    return ChainElement(z.degree, {k: v for k, v in values.items() if v})


def evaluate_star_cup(complex_: ZComplex, phi, phi2, target: Input) -> Any:
    """(φ★φ′)(target), summed over every bidegree split of φ."""
    fld = complex_.field
    v_wedge, x_wedge = target
    zero = complex_.module.zero()
    total = zero
    for r in range(len(v_wedge) + 1):
        s = phi.degree - r
        r2, s2 = len(v_wedge) - r, len(x_wedge) - s
        if s < 0 or s2 < 0 or r2 + s2 != phi2.degree:
            continue
        for v_split in signed_subsets(len(v_wedge), r, r2 * s):
            v_first, v_second = v_split.pick(v_wedge)
            for x_split in signed_subsets(len(x_wedge), s):
                x_first, x_second = x_split.pick(x_wedge)
                left = phi.at((v_first, x_first), zero)
                if not left:
                    continue
                right = phi2.at((v_second, x_second), zero)
                if right:
                    total = total + (left * right).scale(fld(v_split.sign * x_split.sign))
    return total


def star_cup(complex_: ZComplex, phi, phi2) -> Cochain:
    """φ★φ′ on every Z-input of degree |φ| + |φ′|."""
    degree = phi.degree + phi2.degree
    values = {}
    for target in complex_.inputs(degree):
        value = evaluate_star_cup(complex_, phi, phi2, target)
        if value:
            values[target] = value
    return Cochain(degree, values)


def star_cap(complex_: ZComplex, c: ChainElement, phi2) -> ChainElement:
    """
    (m ⊗ v ⊗ x)★φ′: φ′ on an r′-subset of the V-wedge and an s′-subset of
    the g-wedge, multiplied into m on the right, with sign
    (-1)^{rs′ + r′s′ + Σ(i_u - u) + Σ(j_u - u)}.
    """
    if phi2.degree > c.degree:
        raise ValueError(f"Degree underflow: cannot cap a chain of degree {c.degree} "
                         f"with a cochain of degree {phi2.degree}.")
    fld = complex_.field
    zero = complex_.module.zero()
    values: Dict[Input, Any] = {}
    for (v_wedge, x_wedge), m in c.values.items():
        r, s = len(v_wedge), len(x_wedge)
        for r2 in range(min(r, phi2.degree) + 1):
            s2 = phi2.degree - r2
            if s2 > s:
                continue
            for v_split in signed_subsets(r, r2, r * s2 + r2 * s2):
                v_chosen, v_rest = v_split.pick(v_wedge)
                for x_split in signed_subsets(s, s2):
                    x_chosen, x_rest = x_split.pick(x_wedge)
                    value = phi2.at((v_chosen, x_chosen), zero)
                    if not value:
                        continue
                    target = (v_rest, x_rest)
                    values[target] = values.get(target, zero) + (m * value).scale(fld(v_split.sign * x_split.sign))
    return ChainElement(c.degree - phi2.degree, {k: v for k, v in values.items() if v})


def random_z_cochain(complex_: ZComplex, rng: random.Random, degree: int, cap: int = 1) -> Cochain:
    values = {}
    for inp in complex_.inputs(degree):
        value = complex_.ring.random_element(rng, cap, terms=2)
        if value:
            values[inp] = value
    return Cochain(degree, values)


def random_z_chain(complex_: ZComplex, rng: random.Random, degree: int, cap: int = 1) -> ChainElement:
    inputs = complex_.inputs(degree)
    values = {}
    for inp in rng.sample(inputs, min(2, len(inputs))):
        value = complex_.ring.random_element(rng, cap, terms=2)
        if value:
            values[inp] = value
    return ChainElement(degree, values)


def random_xbar_cochain(complex_: ZComplex, rng: random.Random, degree: int, cap: int = 1) -> Cochain:
    """A random X̄ cochain supported on words of V-letters."""
    values = {}
    for r, s in complex_.blocks(degree):
        for v_indices in itertools.product(range(complex_.spec.dim_v), repeat=r):
            for x_wedge in itertools.combinations(range(complex_.lie.dimension), s):
                value = complex_.ring.random_element(rng, cap, terms=2)
                if value:
                    values[(complex_.word(v_indices), x_wedge)] = value
    return Cochain(degree, values)


def weyl_homology_driver(spec: SymmetricModeSpec, n_max: int, caps: Sequence[int],
                         direction: str = HOMOLOGY, shift: Optional[int] = None) -> StabilizationReport:
    """Truncated H_*(E, E) (or H^*(E, E)) through the Z-complexes."""
    complex_ = ZComplex(spec)
    logger.info("Z-complex driver: dim V %d, dim g %d, %s up to degree %d",
                spec.dim_v, spec.lie.dimension, direction, n_max)
    return stabilize(complex_, n_max, caps, direction, shift)
