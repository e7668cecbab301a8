"""
Cup product • of E-valued small cochains and the cap product of small
chains against E-valued small cochains, from their closed formulas.
"""
# Standard library imports
import itertools
from dataclasses import dataclass
from typing import Any, Dict, Iterator, Tuple

# Local application imports
from complexes.small_complexes import (
    ChainElement, Cochain, Input, LazyCochain, StencilComplex
)


@dataclass(frozen=True)
class SignedShuffleIndex:
    """A subset of wedge positions, its complement, and the sign of pulling the subset to the front."""
    subset: Tuple[int, ...]
    complement: Tuple[int, ...]
    sign: int

    def pick(self, wedge: Tuple[int, ...]) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
        return tuple(wedge[p] for p in self.subset), tuple(wedge[p] for p in self.complement)


def signed_subsets(total: int, size: int, extra_exponent: int = 0) -> Iterator[SignedShuffleIndex]:
    """Every size-subset of range(total) with sign (-1)^{extra + Σ(j_u - u)}."""
    if not 0 <= size <= total:
        return
    for subset in itertools.combinations(range(total), size):
        exponent = extra_exponent + sum(j - u for u, j in enumerate(subset))
        complement = tuple(p for p in range(total) if p not in subset)
        yield SignedShuffleIndex(subset, complement, -1 if exponent % 2 else 1)


def _require_regular(complex_: StencilComplex) -> None:
    if not complex_.module.regular:
        raise ValueError("The cup product needs cochains valued in E (the REGULAR module).")


def evaluate_cup(complex_: StencilComplex, phi, phi2, target: Input) -> Any:
    """(φ•φ′)(target): split the word at r, sum over signed wedge subsets, multiply in E."""
    _require_regular(complex_)
    ring, fld = complex_.ring, complex_.field
    word, wedge = target
    total = ring.zero()
    zero = ring.zero()
    for r in range(len(word) + 1):
        s = phi.degree - r
        r2 = len(word) - r
        s2 = len(wedge) - s
        if s < 0 or s2 < 0 or r2 + s2 != phi2.degree:
            continue
        for index in signed_subsets(len(wedge), s, r2 * s):
            first, second = index.pick(wedge)
            left = phi.at((word[:r], first), zero)
            if not left:
                continue
            right = phi2.at((word[r:], second), zero)
            if not right:
                continue
            total = total + (left * right).scale(fld(index.sign))
    return total


def cup(complex_: StencilComplex, phi, phi2):
    """φ•φ′ on every input of degree |φ| + |φ′|, or lazily when inputs are infinite."""
    _require_regular(complex_)
    degree = phi.degree + phi2.degree
    if not complex_.enumerable:
        return LazyCochain(degree, lambda target: evaluate_cup(complex_, phi, phi2, target))
    values = {}
    for target in complex_.inputs(degree):
        value = evaluate_cup(complex_, phi, phi2, target)
        if value:
            values[target] = value
    return Cochain(degree, values)


def cap(complex_: StencilComplex, c: ChainElement, phi2) -> ChainElement:
    """
    c•φ′: for each m ⊗ a_1..a_r ⊗ x_1..x_s, evaluate φ′ on the leading r′
    letters and an s′-subset of the wedge, multiply into m on the right
    and keep the rest, with sign (-1)^{rs′ + r′s′ + Σ(j_u - u)}.
    """
    if phi2.degree > c.degree:
        raise ValueError(f"Degree underflow: cannot cap a chain of degree {c.degree} "
                         f"with a cochain of degree {phi2.degree}.")
    module, ring, fld = complex_.module, complex_.ring, complex_.field
    zero = ring.zero()
    values: Dict[Input, Any] = {}
    for (word, wedge), m in c.values.items():
        r, s = len(word), len(wedge)
        for r2 in range(min(r, phi2.degree) + 1):
            s2 = phi2.degree - r2
            if s2 > s:
                continue
            for index in signed_subsets(s, s2, r * s2 + r2 * s2):
                chosen, rest = index.pick(wedge)
                value = phi2.at((word[:r2], chosen), zero)
                if not value:
                    continue
                image = module.scale(module.right_action(m, value), fld(index.sign))
                target = (word[r2:], rest)
                values[target] = module.add(values.get(target, module.zero()), image)
    return ChainElement(c.degree - phi2.degree,
                        {k: v for k, v in values.items() if not module.is_zero(v)})
