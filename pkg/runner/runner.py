"""
Runs one command against a built Problem and assembles the report.

Every command validates first. A failed validation or a failed check
gives exit code 1; an unsupported combination of config and command is a
config error (exit code 2).
"""
# Standard library imports
import logging
import random
import time
from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Optional, Tuple

# Local application imports
from algebra.algebra_data import BimoduleSpec, ValidationReport
from algebra.presentation import validate_all
from comparison.comparison import (
    bar_cap_eval, bar_cup, theta_bar_cochain, theta_chain, vartheta_bar, vartheta_chain
)
from comparison.oracles import (
    bar_oracle_betti, bar_oracle_homology_betti, ce_oracle_betti, ce_oracle_homology_betti,
    centralizer_dimension
)
from complexes.small_complexes import ChainElement, Cochain, XBarComplex
from complexes.truncation import COHOMOLOGY, HOMOLOGY, truncated_betti
from products.products import cap, cup
from runner.config import ConfigError, Problem
from symmetric.symmetric_algebra import validate_symmetric
from symmetric.symmetric_special import (
    ZComplex, gamma_bar_chain, gamma_bar_cochain, random_xbar_cochain, random_z_chain, random_z_cochain,
    star_cap, star_cup, weyl_homology_driver
)

logger = logging.getLogger(__name__)

PASS = "pass"
FAIL = "fail"
SKIPPED = "skipped"


@dataclass(frozen=True)
class CheckResult:
    """One named cross-check."""
    name: str
    status: str
    detail: str = ""

    @classmethod
    def of(cls, name: str, passed: bool, detail: str = "") -> "CheckResult":
        return cls(name, PASS if passed else FAIL, detail)

    def to_dict(self) -> Dict[str, str]:
        out = {"name": self.name, "status": self.status}
        if self.detail:
            out["detail"] = self.detail
        return out


@dataclass(frozen=True)
class RunOutcome:
    report: Dict[str, Any]
    exit_code: int


class ProblemRunner:
    """Executes validate | cohomology | homology | cup | cap | compare | symmetric."""

    def __init__(self, problem: Problem, seed: int = 0, n_max: Optional[int] = None,
                 caps: Optional[List[int]] = None):
        self.problem = problem
        self.seed = seed
        params = problem.parameters
        self.n_max = params.n_max if n_max is None else n_max
        self.caps = sorted(set(caps if caps else params.caps))
        self.commands: Dict[str, Callable[[], Tuple[Dict[str, Any], List[CheckResult]]]] = {
            "cohomology": self._cohomology,
            "homology": self._homology,
            "cup": self._cup,
            "cap": self._cap,
            "compare": self._compare,
            "symmetric": self._symmetric,
        }

    # Entry point

    def run(self, command: str) -> RunOutcome:
        if command != "validate" and command not in self.commands:
            raise ConfigError([("command", f"unknown command '{command}'")])
        started = time.perf_counter()
        report: Dict[str, Any] = {
            "schema_version": 1,
            "command": command,
            "field": self.problem.field.name,
            "seed": self.seed,
        }
        validation = self.validate()
        report["validation"] = validation.to_dict()
        exit_code = 0 if validation.ok else 1
        if validation.ok and command != "validate":
            try:
                result, checks = self.commands[command]()
            except ValueError as exc:
                raise ConfigError([("command", str(exc))]) from exc
            report["result"] = result
            report["checks"] = [check.to_dict() for check in checks]
            if any(check.status == FAIL for check in checks):
                exit_code = 1
        if self.problem.parameters.include_timing:
            report["timing"] = {"seconds": round(time.perf_counter() - started, 3)}
        logger.info("command %s finished with exit code %d", command, exit_code)
        return RunOutcome(report, exit_code)

    def validate(self) -> ValidationReport:
        if self.problem.is_symmetric:
            return validate_symmetric(self.problem.symmetric, cap=max(2, self.n_max))
        return validate_all(self.problem.data, self.problem.module)

    # Shared helpers

    def _rng(self, salt: str) -> random.Random:
        return random.Random(f"{self.seed}:{salt}")

    @property
    def _module(self) -> BimoduleSpec:
        return self.problem.module

    def _xbar(self, module: Optional[BimoduleSpec] = None) -> XBarComplex:
        return XBarComplex.from_data(self.problem.data, module or self._module)

    def _zcomplex(self) -> ZComplex:
        return ZComplex(self.problem.symmetric)

    def _is_ce_reduction(self) -> bool:
        data, m = self.problem.data, self._module
        if data.algebra.dimension != 1 or not data.f_hat_is_zero() or m.regular or m.dimension != 1:
            return False
        return not any(m.gen_left) and not any(m.gen_right)

    def _is_bar_reduction(self) -> bool:
        data = self.problem.data
        return data.lie.dimension == 0 and data.subalgebra.is_ground_field and not self._module.regular

    def _truncated(self, direction: str) -> Dict[str, Any]:
        shift = self.problem.parameters.shift
        if self.problem.is_symmetric:
            report = weyl_homology_driver(self.problem.symmetric, self.n_max, self.caps, direction, shift)
        else:
            report = truncated_betti(self.problem.data, self._module, self.n_max, self.caps, direction, shift)
        return report.to_dict()

    def _random_value(self, complex_: XBarComplex, rng: random.Random):
        if complex_.module.regular:
            return complex_.ring.random_element(rng, 1, terms=2)
        fld = complex_.field
        return {j: fld(c) for j in range(complex_.module.dimension) if (c := rng.choice((-2, -1, 0, 1, 2)))}

    def _random_cochain(self, complex_: XBarComplex, rng: random.Random, degree: int) -> Cochain:
        values = {}
        for inp in complex_.inputs(degree):
            value = self._random_value(complex_, rng)
            if not complex_.module.is_zero(value):
                values[inp] = value
        return Cochain(degree, values)

    def _random_chain(self, complex_: XBarComplex, rng: random.Random, degree: int) -> ChainElement:
        inputs = complex_.inputs(degree)
        values = {}
        for inp in rng.sample(inputs, min(3, len(inputs))):
            value = self._random_value(complex_, rng)
            if not complex_.module.is_zero(value):
                values[inp] = value
        return ChainElement(degree, values)

    # Commands

    def _betti(self, direction: str) -> Tuple[Dict[str, Any], List[CheckResult]]:
        if self.problem.is_symmetric or self._module.regular:
            return {"truncated": self._truncated(direction)}, []
        complex_ = self._xbar()
        cohomology = direction == COHOMOLOGY
        betti = complex_.betti_cohomology(self.n_max) if cohomology else complex_.betti_homology(self.n_max)
        checks: List[CheckResult] = []
        if self.problem.parameters.check_oracles:
            checks = self._oracle_checks(complex_, betti, cohomology)
        return {"betti": betti}, checks

    def _oracle_checks(self, complex_: XBarComplex, betti: List[int], cohomology: bool) -> List[CheckResult]:
        data, m = self.problem.data, self._module
        checks = []
        if data.subalgebra.is_ground_field:
            checks.append(CheckResult.of("squares_to_zero", complex_.assemble(self.n_max).squares_to_zero()))
        if self._is_ce_reduction():
            oracle = ce_oracle_betti(data.lie, self.n_max) if cohomology else \
                ce_oracle_homology_betti(data.lie, self.n_max)
            checks.append(CheckResult.of("chevalley_eilenberg", oracle == betti, f"oracle {oracle}"))
        if self._is_bar_reduction():
            oracle = bar_oracle_betti(data.algebra, m, self.n_max) if cohomology else \
                bar_oracle_homology_betti(data.algebra, m, self.n_max)
            checks.append(CheckResult.of("bar", oracle == betti, f"oracle {oracle}"))
        if cohomology and data.subalgebra.is_ground_field:
            center = centralizer_dimension(data, m)
            checks.append(CheckResult.of("centralizer", center == betti[0], f"centralizer {center}"))
        if not checks:
            logger.warning("no oracle applies to this problem; Betti numbers are unchecked")
        return checks

    def _cohomology(self):
        return self._betti(COHOMOLOGY)

    def _homology(self):
        return self._betti(HOMOLOGY)

    def _cup(self):
        if self.problem.is_symmetric:
            return self._star_cup()
        complex_ = self._xbar(BimoduleSpec.regular_module())
        rng = self._rng("cup")
        one = Cochain(0, {((), ()): complex_.ring.one()})
        checks, table = [], {}
        for sample in range(self.problem.parameters.samples):
            p, q = rng.randint(0, 1), rng.randint(0, 1)
            phi, phi2 = self._random_cochain(complex_, rng, p), self._random_cochain(complex_, rng, q)
            product = cup(complex_, phi, phi2)
            checks.append(CheckResult.of(f"unit[{sample}]", cup(complex_, one, phi) == phi
                                         and cup(complex_, phi, one) == phi))
            phi3 = self._random_cochain(complex_, rng, 0)
            checks.append(CheckResult.of(f"associativity[{sample}]",
                                         cup(complex_, product, phi3) == cup(complex_, phi, cup(complex_, phi2, phi3))))
            lhs = complex_.coboundary(product)
            sign = complex_.field(-1 if p % 2 else 1)
            rhs_first = cup(complex_, complex_.coboundary(phi), phi2)
            rhs_second = cup(complex_, phi, complex_.coboundary(phi2))
            expected = {inp: rhs_first.values.get(inp, complex_.ring.zero())
                        + rhs_second.values.get(inp, complex_.ring.zero()).scale(sign)
                        for inp in set(rhs_first.values) | set(rhs_second.values)}
            checks.append(CheckResult.of(f"leibniz[{sample}]",
                                         lhs.values == {k: v for k, v in expected.items() if v}))
            if self.problem.parameters.check_oracles:
                oracle = theta_bar_cochain(complex_, bar_cup(vartheta_bar(complex_, phi), vartheta_bar(complex_, phi2)))
                checks.append(CheckResult.of(f"bar_cup[{sample}]", oracle == product))
            if sample == 0:
                table = {"degrees": [p, q], "values": self._render_values(complex_, product.values)}
        return {"first_product": table}, checks

    def _cap(self):
        if self.problem.is_symmetric:
            return self._star_cap()
        complex_ = self._xbar(BimoduleSpec.regular_module())
        rng = self._rng("cap")
        one = Cochain(0, {((), ()): complex_.ring.one()})
        checks, table = [], {}
        for sample in range(self.problem.parameters.samples):
            q = rng.randint(0, 1)
            degree = q + rng.randint(0, 1)
            c = self._random_chain(complex_, rng, degree)
            phi2 = self._random_cochain(complex_, rng, q)
            product = cap(complex_, c, phi2)
            checks.append(CheckResult.of(f"unit[{sample}]", cap(complex_, c, one) == c))
            if self.problem.parameters.check_oracles:
                bar = bar_cap_eval(complex_, theta_chain(complex_, c), vartheta_bar(complex_, phi2))
                checks.append(CheckResult.of(f"bar_cap[{sample}]", vartheta_chain(complex_, bar) == product))
            if sample == 0:
                table = {"degrees": [degree, q], "values": self._render_values(complex_, product.values)}
        return {"first_product": table}, checks

    def _compare(self):
        if self.problem.is_symmetric:
            raise ValueError("The 'compare' command works on finite-dimensional A; use 'symmetric'.")
        data = self.problem.data
        complex_ = self._xbar()
        rng = self._rng("compare")
        checks: List[CheckResult] = []
        if not data.subalgebra.is_ground_field:
            logger.warning("round trips are only checked relative to K = k")
            checks.append(CheckResult("round_trip", SKIPPED, "relative K"))
        else:
            for sample in range(self.problem.parameters.samples):
                degree = rng.randint(0, min(3, self.n_max))
                phi = self._random_cochain(complex_, rng, degree)
                checks.append(CheckResult.of(f"cochain_round_trip[{sample}]",
                                             theta_bar_cochain(complex_, vartheta_bar(complex_, phi)) == phi))
                c = self._random_chain(complex_, rng, degree)
                checks.append(CheckResult.of(f"chain_round_trip[{sample}]",
                                             vartheta_chain(complex_, theta_chain(complex_, c)) == c))
        result: Dict[str, Any] = {}
        if not self._module.regular:
            betti = complex_.betti_cohomology(self.n_max)
            homology = complex_.betti_homology(self.n_max)
            result = {"betti": betti, "homology_betti": homology}
            checks += self._oracle_checks(complex_, betti, True)
            checks += [check for check in self._oracle_checks(complex_, homology, False)
                       if check.name != "squares_to_zero"]
        return result, checks

    def _symmetric(self):
        if not self.problem.is_symmetric:
            raise ValueError("The 'symmetric' command needs a symmetric block.")
        complex_ = self._zcomplex()
        rng = self._rng("symmetric")
        checks = []
        for sample in range(self.problem.parameters.samples):
            degree = rng.randint(0, max(0, self.n_max - 1))
            phi = random_z_cochain(complex_, rng, degree)
            twice = complex_.coboundary(complex_.coboundary(phi))
            checks.append(CheckResult.of(f"cochain_squares_to_zero[{sample}]", not twice.values))
            z = random_z_chain(complex_, rng, degree + 1)
            checks.append(CheckResult.of(f"chain_squares_to_zero[{sample}]",
                                         not complex_.boundary(complex_.boundary(z)).values))
            psi = random_xbar_cochain(complex_, rng, degree)
            checks.append(CheckResult.of(
                f"gamma_cochain_map[{sample}]",
                gamma_bar_cochain(complex_, complex_.xbar.coboundary(psi))
                == complex_.coboundary(gamma_bar_cochain(complex_, psi))))
            checks.append(CheckResult.of(
                f"gamma_chain_map[{sample}]",
                complex_.xbar.boundary(gamma_bar_chain(complex_, z))
                == gamma_bar_chain(complex_, complex_.boundary(z))))
        result = {}
        direction = self.problem.parameters.direction
        if direction in ("cohomology", "both"):
            result["cohomology"] = self._truncated(COHOMOLOGY)
        if direction in ("homology", "both"):
            result["homology"] = self._truncated(HOMOLOGY)
        return result, checks

    def _star_cup(self):
        complex_ = self._zcomplex()
        rng = self._rng("star_cup")
        one = Cochain(0, {((), ()): complex_.ring.one()})
        checks, table = [], {}
        for sample in range(self.problem.parameters.samples):
            p, q = rng.randint(0, 1), rng.randint(0, 1)
            phi, phi2 = random_z_cochain(complex_, rng, p), random_z_cochain(complex_, rng, q)
            product = star_cup(complex_, phi, phi2)
            checks.append(CheckResult.of(f"unit[{sample}]", star_cup(complex_, one, phi) == phi
                                         and star_cup(complex_, phi, one) == phi))
            psi, psi2 = random_xbar_cochain(complex_, rng, p), random_xbar_cochain(complex_, rng, q)
            lhs = gamma_bar_cochain(complex_, cup(complex_.xbar, psi, psi2))
            rhs = star_cup(complex_, gamma_bar_cochain(complex_, psi), gamma_bar_cochain(complex_, psi2))
            checks.append(CheckResult.of(f"gamma_cup[{sample}]", lhs == rhs))
            if sample == 0:
                table = {"degrees": [p, q], "values": self._render_z(complex_, product.values)}
        return {"first_product": table}, checks

    def _star_cap(self):
        complex_ = self._zcomplex()
        rng = self._rng("star_cap")
        one = Cochain(0, {((), ()): complex_.ring.one()})
        checks, table = [], {}
        for sample in range(self.problem.parameters.samples):
            q = rng.randint(0, 1)
            degree = q + rng.randint(0, 1)
            z = random_z_chain(complex_, rng, degree)
            phi2 = random_z_cochain(complex_, rng, q)
            product = star_cap(complex_, z, phi2)
            checks.append(CheckResult.of(f"unit[{sample}]", star_cap(complex_, z, one) == z))
            psi2 = random_xbar_cochain(complex_, rng, q)
            lhs = cap(complex_.xbar, gamma_bar_chain(complex_, z), psi2)
            rhs = gamma_bar_chain(complex_, star_cap(complex_, z, gamma_bar_cochain(complex_, psi2)))
            checks.append(CheckResult.of(f"gamma_cap[{sample}]", lhs == rhs))
            if sample == 0:
                table = {"degrees": [degree, q], "values": self._render_z(complex_, product.values)}
        return {"first_product": table}, checks

    # Rendering

    @staticmethod
    def _render_values(complex_: XBarComplex, values) -> Dict[str, str]:
        ring, module = complex_.ring, complex_.module
        out = {}
        for (word, wedge), value in values.items():
            letters = " ⊗ ".join(ring.coefficients.label(a) for a in word) or "1"
            gens = "∧".join(ring.lie.labels[i] for i in wedge) or "1"
            out[f"{letters} | {gens}"] = module.render(value)
        return dict(sorted(out.items()))

    @staticmethod
    def _render_z(complex_: ZComplex, values) -> Dict[str, str]:
        return dict(sorted((complex_.render_input(inp), str(value)) for inp, value in values.items()))
