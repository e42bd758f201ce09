"""
Verification suites for the quantum Minkowski engine.
Each suite returns a SuiteResult with per-case verdicts; the CLI maps a failed
suite to a nonzero exit status.
"""

import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import sympy as sp

import classical_maxwell as cm
from coeff_ring import PRESETS, LaurentPoly, get_preset
from config import (
    CONFLUENCE_PRESET,
    GOLDEN_DIR,
    GOLDEN_RELATIONS,
    GOLDEN_SPECIALIZED,
    MAX_LEN,
    OMEGA_PRESETS,
    SEED,
    STATUS_FAIL,
    STATUS_PASS,
    SUITE_ALIASES,
    SUITES,
    TRIALS,
    TRUNCATE_DEGREE,
)
from flag_algebra import (
    FlagAlgebra,
    Generator,
    NCPoly,
    WordPoly,
    decreasing_triples,
    format_word,
    random_monomial,
    random_word,
    specialize,
)
from performance_optimizer import performance_optimizer
from qoperators import (
    DegreeContractError,
    classical_limit_triple,
    evaluate_at_one,
    hat_I_pm_n,
    monomials_up_to,
    quantum_hierarchy_apply,
)
from repr_spaces import HierarchyTemplate, make_hierarchy_element, signature_for_level, validate
from utils import parse_expr

logger = logging.getLogger(__name__)

OMEGA_SAMPLES = 200
MAX_LEVEL = 5
MAX_SIGNATURE_LEVEL = 10
MAX_SPIN_DEGREE = 4


@dataclass
class CaseResult:
    name: str
    passed: bool
    detail: str = ''

    def to_dict(self) -> Dict[str, Any]:
        return {'name': self.name, 'passed': self.passed, 'detail': self.detail}


@dataclass
class SuiteResult:
    suite: str
    cases: List[CaseResult] = field(default_factory=list)
    seed: Optional[int] = None
    details: Dict[str, Any] = field(default_factory=dict)
    notes: List[str] = field(default_factory=list)
    caveat: str = ''

    @property
    def passed(self) -> bool:
        return bool(self.cases) and all(c.passed for c in self.cases)

    @property
    def failures(self) -> List[CaseResult]:
        return [c for c in self.cases if not c.passed]

    def add(self, name: str, passed: bool, detail: str = '') -> None:
        self.cases.append(CaseResult(name, bool(passed), detail))

    def to_dict(self) -> Dict[str, Any]:
        return {
            'suite': self.suite,
            'passed': self.passed,
            'seed': self.seed,
            'case_count': len(self.cases),
            'failure_count': len(self.failures),
            'cases': [c.to_dict() for c in self.cases],
            'details': self.details,
            'notes': self.notes,
            'caveat': self.caveat,
        }

    def summary_lines(self, verbose: bool = False) -> List[str]:
        marker = STATUS_PASS if self.passed else STATUS_FAIL
        lines = [f"{marker} {self.suite}: {len(self.cases) - len(self.failures)}/{len(self.cases)} cases passed"
                 + (f" (seed {self.seed})" if self.seed is not None else '')
                 + (f" [{self.caveat}]" if self.caveat else '')]
        shown = self.cases if verbose else self.failures[:20]
        for case in shown:
            case_marker = STATUS_PASS if case.passed else STATUS_FAIL
            lines.append(f"   {case_marker} {case.name}" + (f": {case.detail}" if case.detail else ''))
        lines.extend(f"   {note}" for note in self.notes)
        return lines


def resolve_golden_dir(golden_dir: Optional[str] = None) -> Path:
    path = Path(golden_dir or GOLDEN_DIR)
    if not path.is_absolute() and not path.exists():
        path = Path(__file__).resolve().parent / path
    return path


def load_golden(path: Path) -> List[Tuple[int, str, str]]:
    """(line number, lhs, rhs) for every non-comment line ``lhs = rhs``."""
    relations = []
    with open(path, 'r', encoding='utf-8') as f:
        for lineno, line in enumerate(f, 1):
            text = line.split('#', 1)[0].strip()
            if not text:
                continue
            if text.count('=') != 1:
                raise ValueError(f"{path}:{lineno}: expected exactly one '='")
            lhs, rhs = (part.strip() for part in text.split('='))
            relations.append((lineno, lhs, rhs))
    return relations


def _inversions(p: WordPoly) -> List[Tuple]:
    return [w for w in p.terms if len(w) == 2 and w[0] > w[1]]


def _random_coefficient(rng: random.Random) -> LaurentPoly:
    value = rng.choice([1, -1, 2, -3, Fraction(1, 2)])
    return LaurentPoly.monomial(value, q=rng.randint(-2, 2), q12=rng.randint(-1, 1))


def random_ncpoly(rng: random.Random, max_degree: int = 3, max_terms: int = 3) -> NCPoly:
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        terms[random_monomial(rng, max_degree)] = _random_coefficient(rng)
    return NCPoly(terms)


class VerificationRunner:
    """Runs the named suites against one rule table."""

    def __init__(self, algebra: Optional[FlagAlgebra] = None, seed: int = SEED, trials: int = TRIALS,
                 max_len: int = MAX_LEN, truncate_degree: int = TRUNCATE_DEGREE,
                 preset: Optional[str] = None, golden_dir: Optional[str] = None):
        self.algebra = algebra or FlagAlgebra()
        self.seed = seed
        self.trials = trials
        self.max_len = max_len
        self.truncate_degree = truncate_degree
        self.preset = preset
        self.golden_dir = resolve_golden_dir(golden_dir)
        self._suites: Dict[str, Callable[[], SuiteResult]] = {
            'relations': self.suite_relations,
            'confluence': self.suite_confluence,
            'relations-omega': self.suite_relations_omega,
            'specialization': self.suite_specialization,
            'classical-maxwell': self.suite_classical_maxwell,
            'operator-identity': self.suite_operator_identity,
            'q-limit': self.suite_q_limit,
            'degrees': self.suite_degrees,
        }

    @staticmethod
    def expand_suite_names(names: Sequence[str]) -> List[str]:
        expanded: List[str] = []
        for name in names:
            for suite in SUITE_ALIASES.get(name, [name]):
                if suite not in SUITES:
                    raise KeyError(f"Unknown suite '{suite}'. Available: {', '.join(SUITES + list(SUITE_ALIASES))}")
                if suite not in expanded:
                    expanded.append(suite)
        return expanded

    def run(self, name: str) -> SuiteResult:
        if name not in self._suites:
            raise KeyError(f"Unknown suite '{name}'")
        logger.info("Running suite %s", name)
        result = performance_optimizer.timed(f"suite:{name}")(self._suites[name])()
        logger.info("Suite %s finished: %s", name, 'pass' if result.passed else 'FAIL')
        return result

    def run_all(self, names: Sequence[str]) -> List[SuiteResult]:
        return [self.run(name) for name in self.expand_suite_names(names)]

    # -- algebra suites -----------------------------------------------------

    def _check_golden(self, result: SuiteResult, filename: str, preset: str) -> None:
        algebra = self.algebra.specialized(get_preset(preset))
        path = self.golden_dir / filename
        covered = set()
        for lineno, lhs, rhs in load_golden(path):
            relation = parse_expr(lhs) - parse_expr(rhs)
            covered.update(_inversions(parse_expr(lhs)))
            residual = algebra.normal_order(relation)
            result.add(f"{filename}:{lineno} {lhs} = {rhs}", residual.is_zero(),
                       '' if residual.is_zero() else f"residual {residual}")
        missing = [format_word(p) for p in self.algebra.rules if p not in covered]
        result.add(f"{filename} covers all 15 rules", not missing,
                   f"missing {', '.join(missing)}" if missing else '')

    def suite_relations(self) -> SuiteResult:
        result = SuiteResult('relations')
        filename, preset = GOLDEN_RELATIONS
        self._check_golden(result, filename, preset)
        return result

    def suite_confluence(self) -> SuiteResult:
        preset = self.preset or CONFLUENCE_PRESET
        result = SuiteResult('confluence', seed=self.seed)
        report = self.algebra.confluence_check(self.trials, self.max_len, self.seed, get_preset(preset))
        failed = {f.word for f in report.failures if f.kind == 'overlap'}
        for word in decreasing_triples():
            result.add(f"overlap {format_word(word)}", word not in failed)
        random_failures = [f for f in report.failures if f.kind == 'random']
        detail = ''
        if random_failures:
            first = random_failures[0]
            detail = f"{len(random_failures)} words disagree, first {format_word(first.word)}: {first.difference()}"
        result.add(f"{report.words_checked} random words up to length {self.max_len} under {report.substitution}",
                   not random_failures, detail)
        result.details['confluence'] = report.to_dict()

        obstructions = {w: d for w, d in self.algebra.overlap_obstructions().items() if not d.is_zero()}
        result.details['generic_obstructions'] = {format_word(w): str(d) for w, d in obstructions.items()}
        if obstructions:
            result.caveat = f"checked under {preset}; generic table leaves {len(obstructions)} overlaps unresolved"
            result.notes.append(f"generic table: {len(obstructions)} overlaps do not resolve "
                                f"({', '.join(format_word(w) for w in obstructions)})")
        return result

    def suite_relations_omega(self) -> SuiteResult:
        presets = [self.preset] if self.preset else list(OMEGA_PRESETS)
        result = SuiteResult('relations-omega', seed=self.seed)
        rng = random.Random(self.seed)
        for preset in presets:
            s = get_preset(preset)
            algebra = self.algebra.specialized(s)
            for rule in self.algebra.relation_table():
                residual = self.algebra.relation_residual(rule, s)
                result.add(f"{preset}: omega preserves {format_word(rule.pattern)}", residual.is_zero(),
                           '' if residual.is_zero() else f"residual {residual}")

            bad_involution = []
            for _ in range(OMEGA_SAMPLES):
                p = random_ncpoly(rng)
                if algebra.omega(algebra.omega(p)) != p:
                    bad_involution.append(str(p))
            result.add(f"{preset}: omega^2 = id on {OMEGA_SAMPLES} random elements", not bad_involution,
                       f"first failure {bad_involution[0]}" if bad_involution else '')

            bad_anti = []
            for _ in range(OMEGA_SAMPLES):
                a = NCPoly.monomial(random_monomial(rng, 3))
                b = NCPoly.monomial(random_monomial(rng, 3))
                left = algebra.omega(algebra.multiply(a, b))
                right = algebra.multiply(algebra.omega(b), algebra.omega(a))
                if left != right:
                    bad_anti.append(f"a={a}, b={b}")
            result.add(f"{preset}: omega(ab) = omega(b)omega(a) on {OMEGA_SAMPLES} monomial pairs", not bad_anti,
                       f"first failure {bad_anti[0]}" if bad_anti else '')
        return result

    def suite_specialization(self) -> SuiteResult:
        result = SuiteResult('specialization', seed=self.seed)
        filename, preset = GOLDEN_SPECIALIZED
        self._check_golden(result, filename, preset)

        z, v, vb, zb = Generator.Z, Generator.V, Generator.VB, Generator.ZB
        splitz = get_preset('conj-2param')
        relq = get_preset('relq')
        for label, s, pattern in (('conj-2param', splitz, (zb, z)),
                                  ('conj-2param', splitz, (vb, v)),
                                  ('relq', relq, (zb, z))):
            coeff = s(self.algebra.rules[pattern].swap_coefficient)
            result.add(f"{label}: {format_word(pattern)} swap coefficient is 1", coeff.is_one(), f"got {coeff}")

        rng = random.Random(self.seed)
        words = [random_word(rng, self.max_len) for _ in range(min(self.trials, 200))]
        for name, s in PRESETS.items():
            specialized = self.algebra.specialized(s)
            bad = [w for w in words if specialize(self.algebra.normal_order(w), s) != specialized.normal_order(w)]
            result.add(f"{name}: specialization commutes with normal ordering on {len(words)} words", not bad,
                       f"first failure {format_word(bad[0])}" if bad else '')
        return result

    # -- classical suites ---------------------------------------------------

    def suite_classical_maxwell(self) -> SuiteResult:
        result = SuiteResult('classical-maxwell')
        residuals = {}
        for sign in cm.SIGNS:
            raw = cm.maxwell_residual(sign)
            residuals[sign] = raw
            expected = cm.expected_residual(sign)
            for label, r, e in zip(cm.RESIDUAL_LABELS, raw, expected):
                result.add(f"[{sign}] coefficient of {label} matches component equations",
                           cm.is_identically_zero(r - e), str(r))
            for label, raw_r, imposed in cm.residual_report(sign):
                result.add(f"[{sign}] residual of {label} with component equations imposed = {imposed}",
                           cm.is_identically_zero(imposed))

        plus = cm.op_I_pm_n_direct('+', 0, cm.build_F_plus()) - cm.build_J()
        minus = cm.op_I_pm_n_direct('-', 0, cm.build_F_minus()) - cm.build_J()
        result.add("conjugation exchanges the + and - equations",
                   cm.is_identically_zero(cm.conjugate_swap(plus) - minus.to_expr()))

        zero_fields = [sp.Integer(0)] * 3
        bare = cm.op_I_pm_n_direct('+', 0, cm.build_F_plus(zero_fields)) - cm.build_J()
        result.add("F = 0 leaves -J", bare == cm.build_J().scale(-1))
        result.details['residuals'] = {sign: {label: str(r) for label, r in zip(cm.RESIDUAL_LABELS, rs)}
                                       for sign, rs in residuals.items()}
        return result

    def suite_operator_identity(self) -> SuiteResult:
        result = SuiteResult('operator-identity')
        coefficients = cm.generic_coefficients(self.truncate_degree)
        c = sp.symbols(f"c0:{len(coefficients)}")
        # independent symbolic weights make one check per (i, j) equivalent to one per coefficient
        generic = sp.Add(*(ck * coeff for ck, coeff in zip(c, coefficients)))
        cases = [(sign, n, i, j) for sign in cm.SIGNS for n in range(MAX_LEVEL + 1)
                 for i in range(MAX_SPIN_DEGREE + 1) for j in range(MAX_SPIN_DEGREE + 1)]

        def check(case):
            sign, n, i, j = case
            f = cm.SpinPoly.monomial(i, j, generic)
            diff = cm.op_I_pm_n_direct(sign, n, f) - cm.op_I_pm_n_factored(sign, n, f)
            return case, diff.is_zero()

        for (sign, n, i, j), ok in performance_optimizer.batch_process(check, cases):
            result.add(f"I{sign}{n} direct = factored on z^{i} zb^{j}", ok)

        for sign in cm.SIGNS:
            bad = [(i, j) for i in range(MAX_SPIN_DEGREE + 1) for j in range(MAX_SPIN_DEGREE + 1)
                   if not (cm.commutator(sign, cm.SpinPoly.monomial(i, j, generic))
                           == cm.commutator_rhs(sign, cm.SpinPoly.monomial(i, j, generic)))]
            name = '[I1, I2] = zb d+ + dv' if sign == '+' else '[I3, I2] = z d+ + dvb'
            result.add(name, not bad, f"fails on {bad}" if bad else '')
        return result

    def suite_q_limit(self) -> SuiteResult:
        result = SuiteResult('q-limit')
        I1, I2, I3 = classical_limit_triple(self.algebra)
        monomials = monomials_up_to(MAX_SPIN_DEGREE)

        for a, op in ((1, I1), (2, I2), (3, I3)):
            bad = [m for m in monomials
                   if cm.commutative_image(op(NCPoly.monomial(m))) != cm.op_I(a, cm.commutative_image(NCPoly.monomial(m)))]
            result.add(f"I{a} at parameters 1 matches the classical operator on {len(monomials)} monomials",
                       not bad, f"first failure {bad[0]}" if bad else '')

        levels = [(sign, n) for sign in cm.SIGNS for n in range(MAX_LEVEL + 1)]

        def check(level):
            sign, n = level
            op = hat_I_pm_n(sign, n, I1, I2, I3)
            bad = []
            for m in monomials:
                quantum = cm.commutative_image(evaluate_at_one(op(NCPoly.monomial(m))), evaluate=False)
                classical = cm.op_I_pm_n_factored(sign, n, cm.commutative_image(NCPoly.monomial(m)))
                if quantum != classical:
                    bad.append(m)
            return level, bad

        for (sign, n), bad in performance_optimizer.batch_process(check, levels):
            result.add(f"I{sign}{n} at parameters 1 matches classical on {len(monomials)} monomials",
                       not bad, f"first failure {bad[0]}" if bad else '')
        return result

    def suite_degrees(self) -> SuiteResult:
        result = SuiteResult('degrees')
        for n in range(MAX_SIGNATURE_LEVEL + 1):
            plus, minus, zero = (signature_for_level(n, k) for k in ('+', '-', '0'))
            ok = ((plus.n1, plus.n2, plus.d) == (n + 2, n, 2)
                  and (minus.n1, minus.n2, minus.d) == (n, n + 2, 2)
                  and (zero.n1, zero.n2, zero.d) == (n + 1, n + 1, 3)
                  and plus.swapped() == minus)
            result.add(f"signatures at level {n}: {plus} {minus} {zero}", ok)
            bad = [k for k in ('+', '-', '0')
                   if not validate(make_hierarchy_element(n, k, self.truncate_degree).element)]
            result.add(f"templates at level {n} validate", not bad, f"failed kinds {bad}" if bad else '')

        relq_algebra = self.algebra.specialized(get_preset('relq'))
        relq_triple = classical_limit_triple(relq_algebra)
        degree = min(self.truncate_degree, 1)
        for n in range(MAX_LEVEL + 1):
            for sign in ('+', '-'):
                template = make_hierarchy_element(n, sign, degree)
                failures = degree_contract_failures(sign, n, relq_triple, template)
                result.add(f"degree contract I{sign}{n} on {template.describe()} (relq)", not failures,
                           f"{failures[0][0]}: {failures[0][1]}" if failures else '')

        generic = degree_contract_failures('+', 0, classical_limit_triple(self.algebra), make_hierarchy_element(0, '+', 1))
        if generic:
            label, error = generic[0]
            result.notes.append(f"generic table: {label}: {error}")
        else:
            result.notes.append("generic table: degree contract held for I+0")
        return result


def degree_contract_failures(sign: str, n: int, triple, template: HierarchyTemplate) -> List[Tuple[str, DegreeContractError]]:
    """Apply the hierarchy to each μ-coefficient monomial of ``template`` on its own."""
    failures = []
    for mono in template.basis():
        try:
            quantum_hierarchy_apply(sign, n, *triple, NCPoly.monomial(mono))
        except DegreeContractError as e:
            failures.append((template.labels[mono], e))
    return failures


def run_suites(names: Sequence[str], **kwargs) -> List[SuiteResult]:
    return VerificationRunner(**kwargs).run_all(names)
