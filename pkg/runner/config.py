"""
Problem descriptions: a single JSON document validated by pydantic, then
cross-checked (indices against declared dimensions) and turned into the
algebra objects the computations consume.
"""
# Standard library imports
import json
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Literal, Optional, Sequence, Tuple, Union

# Third-party imports
from dotenv import load_dotenv
from pydantic import BaseModel, ConfigDict, Field, StrictInt, ValidationError, field_validator

# Local application imports
from algebra.algebra_data import (
    ActionSpec, AlgebraData, AlgebraSpec, BimoduleSpec, CocycleSpec, LieAlgebraSpec, SubalgebraSpec
)
from algebra.catalog import augmentation
from linalg.exact_linalg import ScalarField, accumulate
from symmetric.symmetric_algebra import SymmetricModeSpec

load_dotenv()

SCHEMA_VERSION = 1
COMMANDS = ("validate", "cohomology", "homology", "cup", "cap", "compare", "symmetric")

Coefficient = Union[StrictInt, str]
Entry3 = Tuple[StrictInt, StrictInt, Coefficient]
Entry4 = Tuple[StrictInt, StrictInt, StrictInt, Coefficient]


class ConfigError(ValueError):
    """A config that cannot be parsed; carries (location, message) pairs."""

    def __init__(self, errors: Sequence[Tuple[str, str]]):
        self.errors = list(errors)
        super().__init__("; ".join(f"{loc}: {msg}" for loc, msg in self.errors))


# pylint: disable=too-few-public-methods
class StrictModel(BaseModel):
    """Base for every config block: unknown keys are errors."""
    model_config = ConfigDict(extra="forbid")


# pylint: disable=too-few-public-methods
class AlgebraBlock(StrictModel):
    """A finite-dimensional A by structure constants."""
    labels: List[str] = Field(min_length=1, description="Basis labels; the length is dim A.")
    unit: StrictInt = Field(default=0, description="Index of the unit.")
    products: List[Entry4] = Field(default_factory=list,
                                   description="[i, j, k, c]: e_i·e_j has coefficient c on e_k.")
    degrees: Optional[List[StrictInt]] = Field(default=None, description="Filtration degree per basis element.")


# pylint: disable=too-few-public-methods
class SubalgebraBlock(StrictModel):
    """K as spanning vectors of A, each a list of [index, c]."""
    spanning: List[List[Tuple[StrictInt, Coefficient]]] = Field(min_length=1)


# pylint: disable=too-few-public-methods
class LieBlock(StrictModel):
    """g by bracket constants on an ordered basis."""
    dimension: StrictInt = Field(ge=0)
    labels: Optional[List[str]] = None
    brackets: List[Entry4] = Field(default_factory=list,
                                   description="[i, j, k, c]: [g_i, g_j] has coefficient c on g_k.")
    complete_antisymmetry: bool = Field(default=True,
                                        description="Fill [g_j, g_i] = -[g_i, g_j] for missing entries.")


# pylint: disable=too-few-public-methods
class SymmetricBlock(StrictModel):
    """A = S(V) with affine action and affine cocycle."""
    dim_v: StrictInt = Field(ge=1)
    v_labels: Optional[List[str]] = None
    action_constant: List[Entry3] = Field(default_factory=list, description="[i, k, c]: v_k^{x_i} ∋ c·1.")
    action_linear: List[Entry4] = Field(default_factory=list, description="[i, k, l, c]: v_k^{x_i} ∋ c·v_l.")
    cocycle_constant: List[Entry3] = Field(default_factory=list, description="[i, j, c]: f(x_i, x_j) ∋ c·1.")
    cocycle_linear: List[Entry4] = Field(default_factory=list, description="[i, j, l, c]: f(x_i, x_j) ∋ c·v_l.")


# pylint: disable=too-few-public-methods
class ModuleBlock(StrictModel):
    """The coefficient bimodule M."""
    kind: Literal["regular", "algebra", "augmentation", "character", "matrices"] = "augmentation"
    chi: Optional[List[Coefficient]] = None
    left_gen: Optional[List[Coefficient]] = None
    right_gen: Optional[List[Coefficient]] = None
    dimension: Optional[StrictInt] = None
    left: List[Entry4] = Field(default_factory=list, description="[a, col, row, c] for a·m.")
    right: List[Entry4] = Field(default_factory=list, description="[a, col, row, c] for m·a.")
    gen_left: List[Entry4] = Field(default_factory=list, description="[i, col, row, c] for (1#g_i)·m.")
    gen_right: List[Entry4] = Field(default_factory=list, description="[i, col, row, c] for m·(1#g_i).")


# pylint: disable=too-few-public-methods
class Parameters(StrictModel):
    """Command parameters."""
    n_max: StrictInt = Field(default=2, ge=0)
    caps: List[StrictInt] = Field(default_factory=lambda: [4, 6, 8], min_length=1)
    shift: Optional[StrictInt] = Field(default=None, ge=1)
    seed: Optional[StrictInt] = Field(default=None, ge=0)
    samples: StrictInt = Field(default=3, ge=1, description="Random instances per product or comparison check.")
    direction: Literal["cohomology", "homology", "both"] = "both"
    check_oracles: bool = True
    include_timing: bool = False


# pylint: disable=too-few-public-methods
class ProblemConfig(StrictModel):
    """A full problem description."""
    schema_version: Literal[1] = SCHEMA_VERSION
    field: Optional[str] = None
    command: Optional[Literal["validate", "cohomology", "homology", "cup", "cap", "compare", "symmetric"]] = None
    algebra: Optional[AlgebraBlock] = None
    subalgebra: Optional[SubalgebraBlock] = None
    lie: LieBlock = Field(default_factory=lambda: LieBlock(dimension=0))
    action: List[Entry4] = Field(default_factory=list, description="[i, a, b, c]: e_a^{g_i} has coefficient c on e_b.")
    cocycle: List[Entry4] = Field(default_factory=list, description="[i, j, k, c]: f(g_i, g_j) has coefficient c on e_k.")
    symmetric: Optional[SymmetricBlock] = None
    module: ModuleBlock = Field(default_factory=ModuleBlock)
    parameters: Parameters = Field(default_factory=Parameters)

    @field_validator("field")
    @classmethod
    def _known_field(cls, value: Optional[str]) -> Optional[str]:
        if value is not None:
            ScalarField.parse(value)
        return value


@dataclass(frozen=True)
class Problem:
    """A config turned into algebra objects; exactly one of data and symmetric is set."""
    config: ProblemConfig
    field: ScalarField
    data: Optional[AlgebraData]
    symmetric: Optional[SymmetricModeSpec]
    module: BimoduleSpec

    @property
    def parameters(self) -> Parameters:
        return self.config.parameters

    @property
    def is_symmetric(self) -> bool:
        return self.symmetric is not None


def parse_config(text: str) -> ProblemConfig:
    """JSON text to a schema-valid, cross-checked ProblemConfig."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError([("$", f"malformed JSON: {exc.msg} (line {exc.lineno}, column {exc.colno})")]) from exc
    try:
        config = ProblemConfig.model_validate(raw)
    except ValidationError as exc:
        raise ConfigError([(".".join(str(part) for part in error["loc"]) or "$", error["msg"])
                           for error in exc.errors()]) from exc
    errors = _cross_check(config)
    if errors:
        raise ConfigError(errors)
    return config


def _coefficient_error(value: Coefficient) -> Optional[str]:
    if isinstance(value, int):
        return None
    try:
        Fraction(value.strip())
    except (ValueError, ZeroDivisionError):
        return f"'{value}' is not a decimal integer or p/q"
    return None


def _check_entries(errors: List[Tuple[str, str]], location: str, entries: Sequence[tuple],
                   bounds: Sequence[Tuple[str, int]]) -> None:
    """Each entry's leading indices against (name, dimension) bounds, and its trailing coefficient."""
    for n, entry in enumerate(entries):
        for (name, bound), index in zip(bounds, entry):
            if not 0 <= index < bound:
                errors.append((f"{location}.{n}", f"index {index} out of range for {name} {bound}"))
        problem = _coefficient_error(entry[-1])
        if problem:
            errors.append((f"{location}.{n}", problem))


def _check_list(errors: List[Tuple[str, str]], location: str, values: Optional[Sequence[Coefficient]],
                length: int) -> None:
    if values is None:
        return
    if len(values) != length:
        errors.append((location, f"expected {length} coefficients, got {len(values)}"))
    for n, value in enumerate(values):
        problem = _coefficient_error(value)
        if problem:
            errors.append((f"{location}.{n}", problem))


def _cross_check(config: ProblemConfig) -> List[Tuple[str, str]]:
    errors: List[Tuple[str, str]] = []
    d = config.lie.dimension
    if config.lie.labels is not None and len(config.lie.labels) != d:
        errors.append(("lie.labels", f"{len(config.lie.labels)} labels for dimension {d}"))
    _check_entries(errors, "lie.brackets", config.lie.brackets, [("dimension", d)] * 3)
    if config.symmetric is not None:
        for name in ("algebra", "subalgebra"):
            if getattr(config, name) is not None:
                errors.append((name, "not allowed together with a symmetric block"))
        for name in ("action", "cocycle"):
            if getattr(config, name):
                errors.append((name, "not allowed together with a symmetric block"))
        if config.module.kind != "regular":
            errors.append(("module.kind", "a symmetric block needs the regular module"))
        sym = config.symmetric
        n = sym.dim_v
        if sym.v_labels is not None and len(sym.v_labels) != n:
            errors.append(("symmetric.v_labels", f"{len(sym.v_labels)} labels for dim V {n}"))
        _check_entries(errors, "symmetric.action_constant", sym.action_constant, [("dim g", d), ("dim V", n)])
        _check_entries(errors, "symmetric.action_linear", sym.action_linear,
                       [("dim g", d), ("dim V", n), ("dim V", n)])
        _check_entries(errors, "symmetric.cocycle_constant", sym.cocycle_constant, [("dim g", d)] * 2)
        _check_entries(errors, "symmetric.cocycle_linear", sym.cocycle_linear,
                       [("dim g", d), ("dim g", d), ("dim V", n)])
        return errors
    n = len(config.algebra.labels) if config.algebra is not None else 1
    if config.algebra is not None:
        block = config.algebra
        if not 0 <= block.unit < n:
            errors.append(("algebra.unit", f"index {block.unit} out of range for dimension {n}"))
        if block.degrees is not None and len(block.degrees) != n:
            errors.append(("algebra.degrees", f"{len(block.degrees)} degrees for dimension {n}"))
        _check_entries(errors, "algebra.products", block.products, [("dimension", n)] * 3)
    if config.subalgebra is not None:
        for v, vector in enumerate(config.subalgebra.spanning):
            _check_entries(errors, f"subalgebra.spanning.{v}", vector, [("dimension", n)])
    _check_entries(errors, "action", config.action, [("dim g", d), ("dim A", n), ("dim A", n)])
    _check_entries(errors, "cocycle", config.cocycle, [("dim g", d), ("dim g", d), ("dim A", n)])
    module = config.module
    if module.kind == "character":
        if module.chi is None:
            errors.append(("module.chi", "a character module needs chi"))
        _check_list(errors, "module.chi", module.chi, n)
    if module.kind in ("character", "augmentation"):
        _check_list(errors, "module.left_gen", module.left_gen, d)
        _check_list(errors, "module.right_gen", module.right_gen, d)
    if module.kind == "matrices":
        if module.dimension is None or module.dimension < 1:
            errors.append(("module.dimension", "a matrix module needs a positive dimension"))
        else:
            m = module.dimension
            for name, acting in (("left", ("dim A", n)), ("right", ("dim A", n)),
                                 ("gen_left", ("dim g", d)), ("gen_right", ("dim g", d))):
                _check_entries(errors, f"module.{name}", getattr(module, name),
                               [acting, ("dim M", m), ("dim M", m)])
    return errors


# Building

def resolve_field(config: ProblemConfig, override: Optional[str] = None) -> ScalarField:
    """CLI flag, then config, then DIFFOP_FIELD, then the rationals."""
    text = override or config.field or os.getenv("DIFFOP_FIELD") or "rationals"
    try:
        return ScalarField.parse(text)
    except ValueError as exc:
        raise ConfigError([("field", str(exc))]) from exc


def resolve_seed(config: ProblemConfig, override: Optional[int] = None) -> int:
    """CLI flag, then config, then DIFFOP_SEED, then 0."""
    if override is not None:
        return override
    if config.parameters.seed is not None:
        return config.parameters.seed
    env = os.getenv("DIFFOP_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError as exc:
            raise ConfigError([("DIFFOP_SEED", f"'{env}' is not an integer")]) from exc
    return 0


def _table(fld: ScalarField, entries: Sequence[tuple]) -> Dict[tuple, Dict[int, object]]:
    """[p, q, k, c] entries to {(p, q): {k: c}}."""
    out: Dict[tuple, Dict[int, object]] = {}
    for *head, k, c in entries:
        accumulate(out.setdefault(tuple(head), {}), {k: fld(c)})
    return out


def _matrices(fld: ScalarField, entries: Sequence[tuple], count: int) -> Tuple[Dict[int, Dict[int, object]], ...]:
    """[a, col, row, c] entries to per-a column-image matrices."""
    matrices = [dict() for _ in range(count)]
    for a, col, row, c in entries:
        accumulate(matrices[a].setdefault(col, {}), {row: fld(c)})
    return tuple(matrices)


def _lie(config: ProblemConfig, fld: ScalarField) -> LieAlgebraSpec:
    block = config.lie
    labels = tuple(block.labels or ())
    upper = _table(fld, block.brackets)
    if block.complete_antisymmetry:
        return LieAlgebraSpec.from_upper(fld, block.dimension, upper, labels)
    return LieAlgebraSpec(fld, block.dimension, upper, labels)


def _algebra(config: ProblemConfig, fld: ScalarField) -> AlgebraSpec:
    block = config.algebra
    if block is None:
        return AlgebraSpec(fld, 1, 0, {(0, 0): {0: fld.one}}, ("1",), (0,))
    n = len(block.labels)
    products = _table(fld, block.products)
    for i in range(n):
        products.setdefault((block.unit, i), {i: fld.one})
        products.setdefault((i, block.unit), {i: fld.one})
    degrees = tuple(block.degrees) if block.degrees is not None else None
    return AlgebraSpec(fld, n, block.unit, products, tuple(block.labels), degrees)


def _symmetric(config: ProblemConfig, fld: ScalarField, lie: LieAlgebraSpec) -> SymmetricModeSpec:
    block = config.symmetric
    constant = {(i, k): fld(c) for i, k, c in block.action_constant}
    cocycle_constant = {(i, j): fld(c) for i, j, c in block.cocycle_constant}
    return SymmetricModeSpec(fld, block.dim_v, lie, constant, _table(fld, block.action_linear),
                             cocycle_constant, _table(fld, block.cocycle_linear),
                             tuple(block.v_labels or ()))


def _module(config: ProblemConfig, data: AlgebraData) -> BimoduleSpec:
    block, fld = config.module, data.field
    kind = block.kind

    def scalars(values: Optional[List[Coefficient]]) -> Optional[List[object]]:
        return None if values is None else [fld(c) for c in values]

    if kind == "regular":
        return BimoduleSpec.regular_module()
    if kind == "algebra":
        return BimoduleSpec.algebra_itself(data)
    if kind in ("augmentation", "character"):
        return augmentation(data, scalars(block.chi), scalars(block.left_gen), scalars(block.right_gen))
    n, d = data.algebra.dimension, data.lie.dimension
    return BimoduleSpec(block.dimension, _matrices(fld, block.left, n), _matrices(fld, block.right, n),
                        _matrices(fld, block.gen_left, d), _matrices(fld, block.gen_right, d))


def build_problem(config: ProblemConfig, field_override: Optional[str] = None) -> Problem:
    """The algebra objects behind a parsed config."""
    fld = resolve_field(config, field_override)
    try:
        lie = _lie(config, fld)
        if config.symmetric is not None:
            return Problem(config, fld, None, _symmetric(config, fld, lie), BimoduleSpec.regular_module())
        algebra = _algebra(config, fld)
        d = lie.dimension
        subalgebra = None
        if config.subalgebra is not None:
            spanning = tuple({k: fld(c) for k, c in vector} for vector in config.subalgebra.spanning)
            subalgebra = SubalgebraSpec(spanning)
        action = ActionSpec(_matrices(fld, config.action, d))
        cocycle = CocycleSpec(_table(fld, config.cocycle))
        data = AlgebraData(algebra, lie, subalgebra, action, cocycle)
        return Problem(config, fld, data, None, _module(config, data))
    except ZeroDivisionError as exc:
        raise ConfigError([("field", str(exc))]) from exc
