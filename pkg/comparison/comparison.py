"""
Comparison maps between the small complexes and the normalized bar
complex, restricted to special tensors: tensors whose entries are either
classes of A-basis elements or generators 1#g_i.

The bar-level cup and cap products here exist to cross-check the closed
formulas in products.products.
"""
# Standard library imports
import itertools
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Hashable, Mapping, NamedTuple, Optional, Tuple

# Third-party imports
from sympy.combinatorics import Permutation

# Local application imports
from complexes.small_complexes import ChainElement, Cochain, Input, LazyCochain, StencilComplex

COEFFICIENT_ENTRY = "a"
GENERATOR_ENTRY = "g"


class TensorEntry(NamedTuple):
    """One tensor factor: an Ā-basis key or the index of a generator."""
    kind: str
    payload: Hashable


SpecialTensor = Tuple[TensorEntry, ...]


def coefficient_entry(key: Hashable) -> TensorEntry:
    return TensorEntry(COEFFICIENT_ENTRY, key)


def generator_entry(i: int) -> TensorEntry:
    return TensorEntry(GENERATOR_ENTRY, i)


def _parity(exponent: int) -> int:
    return -1 if exponent % 2 else 1


def _check_entries(complex_: StencilComplex, tensor: SpecialTensor) -> None:
    complement = getattr(complex_, "quotient", None)
    allowed = None if complement is None else complement.complement
    for entry in tensor:
        if entry.kind == GENERATOR_ENTRY:
            if not 0 <= entry.payload < complex_.ring.rank:
                raise ValueError(f"Generator index {entry.payload} out of range.")
        elif entry.kind == COEFFICIENT_ENTRY:
            if allowed is not None and entry.payload not in allowed:
                raise ValueError(f"{entry.payload!r} is not a basis class of A/K.")
        else:
            raise ValueError(f"{entry!r} is not a special tensor entry.")


def is_ordered_special(tensor: SpecialTensor) -> Optional[Input]:
    """(Ā-word, wedge) when generators come first with strictly increasing indices, else None."""
    s = 0
    while s < len(tensor) and tensor[s].kind == GENERATOR_ENTRY:
        s += 1
    gens = tuple(entry.payload for entry in tensor[:s])
    if any(entry.kind != COEFFICIENT_ENTRY for entry in tensor[s:]):
        return None
    if any(a >= b for a, b in zip(gens, gens[1:])):
        return None
    return tuple(entry.payload for entry in tensor[s:]), gens


@dataclass(frozen=True)
class BarCochainView:
    """A bar cochain known only through its values on special tensors."""
    degree: int
    evaluator: Callable[[SpecialTensor], Any]

    def __call__(self, tensor: SpecialTensor) -> Any:
        if len(tensor) != self.degree:
            raise ValueError(f"Length mismatch: a degree {self.degree} cochain got {len(tensor)} entries.")
        return self.evaluator(tensor)


@dataclass(frozen=True)
class BarChain:
    """Σ m_t ⊗ t over special tensors t of one length."""
    degree: int
    values: Mapping[SpecialTensor, Any] = field(default_factory=dict)


def _shuffles(word: Tuple, wedge: Tuple[int, ...]):
    """
    Every term of Σ_τ sg(τ) (1#x_τ(1) ⊗ ... ⊗ 1#x_τ(s)) * (a_1 ⊗ ... ⊗ a_r)
    as (sign, special tensor).
    """
    r, s = len(word), len(wedge)
    for order in itertools.permutations(range(s)):
        tau = Permutation(list(order)).signature() if s > 1 else 1
        gens = [generator_entry(wedge[k]) for k in order]
        for positions in itertools.combinations(range(r + s), s):
            shuffle = _parity(sum(p - u for u, p in enumerate(positions)))
            tensor, g_iter, a_iter = [], iter(gens), iter(word)
            chosen = set(positions)
            for p in range(r + s):
                tensor.append(next(g_iter) if p in chosen else coefficient_entry(next(a_iter)))
            yield tau * shuffle, tuple(tensor)


def theta_bar(complex_: StencilComplex, psi: BarCochainView, inp: Input) -> Any:
    """θ̄(ψ)(a_1..a_r ⊗ x_1..x_s) = Σ_τ (-1)^{rs} sg(τ) ψ((1#x_τ ⊗ ...) * a_1..a_r)."""
    module = complex_.module
    word, wedge = inp
    outer = _parity(len(word) * len(wedge))
    total = module.zero()
    for sgn, tensor in _shuffles(word, wedge):
        value = psi(tensor)
        if not module.is_zero(value):
            total = module.add(total, value, complex_.field(outer * sgn))
    return total


def theta_bar_cochain(complex_: StencilComplex, psi: BarCochainView):
    """θ̄(ψ) as a small cochain on every input of its degree."""
    if not complex_.enumerable:
        return LazyCochain(psi.degree, lambda inp: theta_bar(complex_, psi, inp))
    values = {}
    for inp in complex_.inputs(psi.degree):
        value = theta_bar(complex_, psi, inp)
        if not complex_.module.is_zero(value):
            values[inp] = value
    return Cochain(psi.degree, values)


def vartheta_bar(complex_: StencilComplex, phi) -> BarCochainView:
    """ϑ̄(φ): (-1)^{rs} φ(a-word ⊗ gens) on ordered-special tensors, 0 on the others."""
    module = complex_.module

    def evaluate(tensor: SpecialTensor) -> Any:
        _check_entries(complex_, tensor)
        ordered = is_ordered_special(tensor)
        if ordered is None:
            return module.zero()
        word, gens = ordered
        value = phi.at((word, gens), module.zero())
        return module.scale(value, complex_.field(_parity(len(word) * len(gens))))

    return BarCochainView(phi.degree, evaluate)


def theta_chain(complex_: StencilComplex, c: ChainElement) -> BarChain:
    """Σ_τ (-1)^{rs} sg(τ) m ⊗ (1#x_τ ⊗ ...) * a_1..a_r for each term of c."""
    module = complex_.module
    values: Dict[SpecialTensor, Any] = {}
    for (word, wedge), m in c.values.items():
        outer = _parity(len(word) * len(wedge))
        for sgn, tensor in _shuffles(word, wedge):
            values[tensor] = module.add(values.get(tensor, module.zero()), m, complex_.field(outer * sgn))
    return BarChain(c.degree, {t: v for t, v in values.items() if not module.is_zero(v)})


def vartheta_chain(complex_: StencilComplex, chain: BarChain) -> ChainElement:
    """(-1)^{s(n-s)} m ⊗ a-word ⊗ gens on ordered-special tensors; the rest maps to 0."""
    module = complex_.module
    values: Dict[Input, Any] = {}
    n = chain.degree
    for tensor, m in chain.values.items():
        _check_entries(complex_, tensor)
        ordered = is_ordered_special(tensor)
        if ordered is None:
            continue
        s = len(ordered[1])
        values[ordered] = module.add(values.get(ordered, module.zero()), m,
                                     complex_.field(_parity(s * (n - s))))
    return ChainElement(n, {k: v for k, v in values.items() if not module.is_zero(v)})


def bar_cup_eval(psi: BarCochainView, psi2: BarCochainView, tensor: SpecialTensor) -> Any:
    """(ψ ⌣ ψ′)(t) = ψ(t_1..t_m)·ψ′(t_{m+1}..t_{m+n}), multiplied in E."""
    if len(tensor) != psi.degree + psi2.degree:
        raise ValueError(f"Length mismatch: {len(tensor)} entries for degrees {psi.degree} + {psi2.degree}.")
    left = psi(tensor[:psi.degree])
    if not left:
        return left
    return left * psi2(tensor[psi.degree:])


def bar_cup(psi: BarCochainView, psi2: BarCochainView) -> BarCochainView:
    return BarCochainView(psi.degree + psi2.degree, lambda tensor: bar_cup_eval(psi, psi2, tensor))


def bar_cap_eval(complex_: StencilComplex, chain: BarChain, psi2: BarCochainView) -> BarChain:
    """(m ⊗ c_1..c_p) ⌢ ψ′ = m·ψ′(c_1..c_q) ⊗ c_{q+1}..c_p."""
    q = psi2.degree
    if q > chain.degree:
        raise ValueError(f"Degree underflow: cannot cap a degree {chain.degree} chain "
                         f"with a degree {q} cochain.")
    module = complex_.module
    values: Dict[SpecialTensor, Any] = {}
    for tensor, m in chain.values.items():
        value = psi2(tensor[:q])
        if not value:
            continue
        tail = tensor[q:]
        values[tail] = module.add(values.get(tail, module.zero()), module.right_action(m, value))
    return BarChain(chain.degree - q, {t: v for t, v in values.items() if not module.is_zero(v)})
