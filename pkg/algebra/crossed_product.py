"""
Exact arithmetic in E = A #_f U(g).

Elements are finite sums of PBW monomials a·y^e (an A-basis key on the
left, an ordered monomial in the generators on the right). Products are
brought to normal form by the rewriting rules

    y_i a   -> a y_i + a^{g_i}
    y_i y_j -> y_j y_i + [g_i, g_j] + f_hat(g_i, g_j)      (i > j)

applied through memoised left multiplication by a single generator.
"""
# Standard library imports
import itertools
import logging
import random
from typing import Dict, Hashable, Iterable, List, Mapping, NamedTuple, Optional, Protocol, Tuple

# Local application imports
from algebra.algebra_data import AlgebraData, LieAlgebraSpec
from linalg.exact_linalg import Scalar, ScalarField, accumulate

logger = logging.getLogger(__name__)

Key = Hashable


class CoefficientAlgebra(Protocol):
    """What the rewriting engine needs to know about A."""
    field: ScalarField
    lie: LieAlgebraSpec
    unit: Key

    def multiply(self, a: Key, b: Key) -> Mapping[Key, Scalar]: ...

    def derive(self, i: int, a: Key) -> Mapping[Key, Scalar]: ...

    def f_hat(self, i: int, j: int) -> Mapping[Key, Scalar]: ...

    def degree(self, a: Key) -> int: ...

    def sort_key(self, a: Key) -> Tuple: ...

    def label(self, a: Key) -> str: ...

    def basis_up_to(self, degree: int) -> List[Key]: ...

    def presentation_letters(self) -> List[Key]: ...


class FiniteCoefficients:
    """A finite-dimensional A given by structure constants; keys are basis indices."""

    def __init__(self, data: AlgebraData):
        self.data = data
        self.field = data.field
        self.lie = data.lie
        self.unit = data.algebra.unit

    def multiply(self, a: int, b: int) -> Mapping[int, Scalar]:
        return self.data.algebra.product(a, b)

    def derive(self, i: int, a: int) -> Mapping[int, Scalar]:
        return self.data.action.image(i, a)

    def f_hat(self, i: int, j: int) -> Mapping[int, Scalar]:
        return self.data.f_hat(i, j)

    def degree(self, a: int) -> int:
        return self.data.algebra.degree(a)

    def sort_key(self, a: int) -> Tuple:
        return (a,)

    def label(self, a: int) -> str:
        return self.data.algebra.labels[a]

    def basis_up_to(self, degree: int) -> List[int]:
        return [a for a in range(self.data.algebra.dimension) if self.degree(a) <= degree]

    def presentation_letters(self) -> List[int]:
        return [a for a in range(self.data.algebra.dimension) if a != self.unit]


class PBWMonomial(NamedTuple):
    """a·y_0^{e_0}···y_{d-1}^{e_{d-1}} with a an A-basis key."""
    coefficient: Key
    exponents: Tuple[int, ...]


def _bump(exponents: Tuple[int, ...], index: int, step: int) -> Tuple[int, ...]:
    bumped = list(exponents)
    bumped[index] += step
    return tuple(bumped)


class Element:
    """A finitely supported combination of PBW monomials with exact coefficients."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: "CrossedProduct", terms: Optional[Mapping[PBWMonomial, Scalar]] = None):
        self.ring = ring
        self.terms: Dict[PBWMonomial, Scalar] = {m: c for m, c in (terms or {}).items() if c}

    def __add__(self, other: "Element") -> "Element":
        return Element(self.ring, accumulate(dict(self.terms), other.terms))

    def __sub__(self, other: "Element") -> "Element":
        return Element(self.ring, accumulate(dict(self.terms), other.terms, -self.ring.field.one))

    def __neg__(self) -> "Element":
        return Element(self.ring, {m: -c for m, c in self.terms.items()})

    def __mul__(self, other: "Element") -> "Element":
        return self.ring.multiply(self, other)

    def scale(self, factor: Scalar) -> "Element":
        if not factor:
            return self.ring.zero()
        return Element(self.ring, {m: c * factor for m, c in self.terms.items()})

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Element) and self.terms == other.terms

    __hash__ = None

    def __bool__(self) -> bool:
        return bool(self.terms)

    def items(self) -> Iterable[Tuple[PBWMonomial, Scalar]]:
        return self.terms.items()

    @property
    def degree(self) -> int:
        return self.ring.filtration_degree(self)

    def __str__(self) -> str:
        return self.ring.render(self)

    def __repr__(self) -> str:
        return f"Element({self.ring.render(self)})"


class CrossedProduct:
    """The ring E = A #_f U(g) over a coefficient algebra."""

    def __init__(self, coefficients: CoefficientAlgebra):
        self.coefficients = coefficients
        self.field = coefficients.field
        self.lie = coefficients.lie
        self.rank = coefficients.lie.dimension
        self._word_cache: Dict[Tuple[int, Tuple[int, ...]], Dict[PBWMonomial, Scalar]] = {}
        self._monomial_cache: Dict[Tuple[int, PBWMonomial], Dict[PBWMonomial, Scalar]] = {}
        self._product_cache: Dict[Tuple[PBWMonomial, PBWMonomial], Dict[PBWMonomial, Scalar]] = {}

    @classmethod
    def from_data(cls, data: AlgebraData) -> "CrossedProduct":
        return cls(FiniteCoefficients(data))

    # Constructors

    def zero(self) -> Element:
        return Element(self)

    def one(self) -> Element:
        return self.monomial(self.coefficients.unit)

    def scalar(self, value: Scalar) -> Element:
        return self.one().scale(self.field(value))

    def monomial(self, key: Key, exponents: Optional[Tuple[int, ...]] = None,
                 coefficient: Optional[Scalar] = None) -> Element:
        exponents = tuple(exponents) if exponents is not None else (0,) * self.rank
        if len(exponents) != self.rank:
            raise ValueError(f"Dimension mismatch: exponent vector of length {len(exponents)} "
                             f"for {self.rank} generators.")
        value = self.field.one if coefficient is None else self.field(coefficient)
        return Element(self, {PBWMonomial(key, exponents): value})

    def generator(self, i: int) -> Element:
        return self.monomial(self.coefficients.unit, _bump((0,) * self.rank, i, 1))

    def coefficient(self, vector: Mapping[Key, Scalar]) -> Element:
        """The element a#1 for an A-vector a."""
        empty = (0,) * self.rank
        return Element(self, {PBWMonomial(key, empty): c for key, c in vector.items()})

    def lie_element(self, vector: Mapping[int, Scalar]) -> Element:
        """The element 1#x for a g-vector x."""
        out = self.zero()
        for i, c in vector.items():
            out = out + self.generator(i).scale(c)
        return out

    # Rewriting

    def _gen_times_word(self, i: int, word: Tuple[int, ...]) -> Dict[PBWMonomial, Scalar]:
        """Normal form of y_i·y^word; the returned dict is cached and must not be mutated."""
        key = (i, word)
        cached = self._word_cache.get(key)
        if cached is not None:
            return cached
        unit = self.coefficients.unit
        first = next((index for index, e in enumerate(word) if e), None)
        if first is None or first >= i:
            result = {PBWMonomial(unit, _bump(word, i, 1)): self.field.one}
        else:
            rest = _bump(word, first, -1)
            result: Dict[PBWMonomial, Scalar] = {}
            accumulate(result, self._gen_times_terms(first, self._gen_times_word(i, rest)))
            for l, c in self.lie.bracket(i, first).items():
                accumulate(result, self._gen_times_word(l, rest), c)
            for a, c in self.coefficients.f_hat(i, first).items():
                accumulate(result, {PBWMonomial(a, rest): c})
        self._word_cache[key] = result
        return result

    def _gen_times_monomial(self, i: int, monomial: PBWMonomial) -> Dict[PBWMonomial, Scalar]:
        """Normal form of y_i·(a y^e) = a^{g_i} y^e + a·(y_i y^e)."""
        key = (i, monomial)
        cached = self._monomial_cache.get(key)
        if cached is not None:
            return cached
        a, exponents = monomial
        result: Dict[PBWMonomial, Scalar] = {}
        for b, c in self.coefficients.derive(i, a).items():
            accumulate(result, {PBWMonomial(b, exponents): c})
        for term, c in self._gen_times_word(i, exponents).items():
            for p, c2 in self.coefficients.multiply(a, term.coefficient).items():
                accumulate(result, {PBWMonomial(p, term.exponents): c * c2})
        self._monomial_cache[key] = result
        return result

    def _gen_times_terms(self, i: int, terms: Mapping[PBWMonomial, Scalar]) -> Dict[PBWMonomial, Scalar]:
        result: Dict[PBWMonomial, Scalar] = {}
        for monomial, c in terms.items():
            accumulate(result, self._gen_times_monomial(i, monomial), c)
        return result

    def _monomial_product(self, left: PBWMonomial, right: PBWMonomial) -> Dict[PBWMonomial, Scalar]:
        key = (left, right)
        cached = self._product_cache.get(key)
        if cached is not None:
            return cached
        terms: Dict[PBWMonomial, Scalar] = {right: self.field.one}
        for index in reversed(range(self.rank)):
            for _ in range(left.exponents[index]):
                terms = self._gen_times_terms(index, terms)
        result: Dict[PBWMonomial, Scalar] = {}
        for term, c in terms.items():
            for p, c2 in self.coefficients.multiply(left.coefficient, term.coefficient).items():
                accumulate(result, {PBWMonomial(p, term.exponents): c * c2})
        self._product_cache[key] = result
        return result

    def multiply(self, u: Element, v: Element) -> Element:
        """Exact normal form of u·v."""
        result: Dict[PBWMonomial, Scalar] = {}
        for left, a in u.terms.items():
            for right, b in v.terms.items():
                accumulate(result, self._monomial_product(left, right), a * b)
        return Element(self, result)

    def commutator(self, u: Element, v: Element) -> Element:
        """[u, v] = uv - vu."""
        return self.multiply(u, v) - self.multiply(v, u)

    # Filtration

    def monomial_degree(self, monomial: PBWMonomial) -> int:
        return self.coefficients.degree(monomial.coefficient) + sum(monomial.exponents)

    def filtration_degree(self, u: Element) -> int:
        return max((self.monomial_degree(m) for m in u.terms), default=0)

    def monomials_up_to(self, cap: int) -> List[PBWMonomial]:
        """All PBW monomials of filtration degree at most cap, in sorted order."""
        if cap < 0:
            raise ValueError(f"The cap {cap} is too small to contain the unit.")
        monomials = []
        for key in self.coefficients.basis_up_to(cap):
            budget = cap - self.coefficients.degree(key)
            for exponents in itertools.product(range(budget + 1), repeat=self.rank):
                if sum(exponents) <= budget:
                    monomials.append(PBWMonomial(key, exponents))
        return sorted(monomials, key=self._sort_key)

    def truncate(self, u: Element, cap: int) -> Element:
        return Element(self, {m: c for m, c in u.terms.items() if self.monomial_degree(m) <= cap})

    def random_element(self, rng: random.Random, cap: int, terms: int = 3) -> Element:
        """A random element supported on monomials of degree at most cap."""
        pool = self.monomials_up_to(cap)
        out: Dict[PBWMonomial, Scalar] = {}
        for monomial in rng.sample(pool, min(terms, len(pool))):
            out[monomial] = self.field(rng.choice([-3, -2, -1, 1, 2, 3]))
        return Element(self, out)

    # Rendering

    def _sort_key(self, monomial: PBWMonomial) -> Tuple:
        return (self.monomial_degree(monomial), monomial.exponents,
                self.coefficients.sort_key(monomial.coefficient))

    def render_monomial(self, monomial: PBWMonomial) -> str:
        parts = []
        for label, e in zip(self.lie.labels, monomial.exponents):
            if e == 1:
                parts.append(label)
            elif e > 1:
                parts.append(f"{label}^{e}")
        word = "*".join(parts) if parts else "1"
        return f"({self.coefficients.label(monomial.coefficient)})#{word}"

    def render(self, u: Element) -> str:
        """Canonical text, e.g. '3·(ε)#x^2', sorted by (degree, exponents)."""
        if not u.terms:
            return "0"
        pieces = []
        for monomial in sorted(u.terms, key=self._sort_key):
            c = u.terms[monomial]
            text = self.render_monomial(monomial)
            if c == self.field.one:
                pieces.append(text)
            elif c == -self.field.one and self.field.prime is None:
                pieces.append(f"-{text}")
            else:
                pieces.append(f"{self.field.render(c)}·{text}")
        return " + ".join(pieces)
