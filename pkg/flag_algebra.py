"""
Flag Algebra Module for the quantum Minkowski engine
Noncommutative coordinate algebra of the quantum flag manifold: the six
generators, the fifteen oriented commutation rules, normal ordering to the
z^i v^j x-^k x+^l vb^m zb^n basis, specializations and the conjugation ω.
"""

import heapq
import logging
import random
from dataclasses import dataclass, field
from enum import IntEnum
from typing import Callable, Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple, Union

from coeff_ring import (
    EMPTY_SUBSTITUTION,
    ONE,
    ZERO,
    LaurentPoly,
    ParamSubstitution,
    conj,
    get_preset,
    lambda_const,
    substitute,
)
from config import INJECT_RULE_FAULT

logger = logging.getLogger(__name__)


class Generator(IntEnum):
    """The six flag-manifold coordinates; the value is the normal-order rank."""
    Z = 0
    V = 1
    XM = 2
    XP = 3
    VB = 4
    ZB = 5

    @property
    def label(self) -> str:
        return GENERATOR_NAMES[self]

    def __str__(self) -> str:
        return self.label

    def __format__(self, spec: str) -> str:
        return format(self.label, spec)


GENERATORS: Tuple[Generator, ...] = tuple(Generator)
GENERATOR_NAMES: Tuple[str, ...] = ('z', 'v', 'xm', 'xp', 'vb', 'zb')
GENERATOR_BY_NAME: Dict[str, Generator] = {name: Generator(i) for i, name in enumerate(GENERATOR_NAMES)}

Word = Tuple[Generator, ...]

LEFTMOST = 'leftmost'
RIGHTMOST = 'rightmost'
STRATEGIES = (LEFTMOST, RIGHTMOST)

# ω: z <-> zb, v <-> vb, x± fixed
OMEGA_MAP: Dict[Generator, Generator] = {
    Generator.Z: Generator.ZB,
    Generator.V: Generator.VB,
    Generator.XM: Generator.XM,
    Generator.XP: Generator.XP,
    Generator.VB: Generator.V,
    Generator.ZB: Generator.Z,
}


class RewriteBoundExceeded(RuntimeError):
    """Raised when normal ordering takes more steps than the deglex bound allows."""


class NormalMonomial(NamedTuple):
    """Exponents (i, j, k, l, m, n) of z^i v^j xm^k xp^l vb^m zb^n."""
    z: int = 0
    v: int = 0
    xm: int = 0
    xp: int = 0
    vb: int = 0
    zb: int = 0

    @classmethod
    def from_word(cls, word: Sequence[Generator]) -> 'NormalMonomial':
        exponents = [0] * 6
        previous = -1
        for g in word:
            if g < previous:
                raise ValueError(f"Word {format_word(word)} is not normally ordered")
            exponents[g] += 1
            previous = g
        return cls(*exponents)

    @classmethod
    def of(cls, g: Generator, power: int = 1) -> 'NormalMonomial':
        exponents = [0] * 6
        exponents[g] = power
        return cls(*exponents)

    def to_word(self) -> Word:
        word: List[Generator] = []
        for g, power in zip(GENERATORS, self):
            word.extend([g] * power)
        return tuple(word)

    def degree(self) -> int:
        return sum(self)

    def spin_degrees(self) -> Tuple[int, int]:
        """(z-degree, zb-degree)."""
        return self.z, self.zb

    def is_unit(self) -> bool:
        return not any(self)

    def with_exponent(self, g: Generator, power: int) -> 'NormalMonomial':
        exponents = list(self)
        exponents[g] = power
        return NormalMonomial(*exponents)

    def __str__(self) -> str:
        factors = []
        for name, power in zip(GENERATOR_NAMES, self):
            if power == 1:
                factors.append(name)
            elif power > 1:
                factors.append(f"{name}^{power}")
        return '*'.join(factors) if factors else '1'


UNIT_MONOMIAL = NormalMonomial()


def format_word(word: Sequence[Generator]) -> str:
    return '*'.join(GENERATOR_NAMES[g] for g in word) if word else '1'


def _graded_key(mono: NormalMonomial):
    return (-mono.degree(), tuple(-e for e in mono))


def _accumulate(terms: Dict, key, coeff: LaurentPoly) -> None:
    total = terms.get(key, ZERO) + coeff
    if total.is_zero():
        terms.pop(key, None)
    else:
        terms[key] = total


class NCPoly:
    """Normally ordered element: NormalMonomial -> nonzero LaurentPoly."""

    __slots__ = ('_terms', '_hash')

    def __init__(self, terms: Optional[Dict[NormalMonomial, LaurentPoly]] = None):
        self._terms: Dict[NormalMonomial, LaurentPoly] = {
            NormalMonomial(*mono): coeff for mono, coeff in (terms or {}).items() if not coeff.is_zero()
        }
        self._hash: Optional[int] = None

    @classmethod
    def monomial(cls, mono: NormalMonomial, coeff: LaurentPoly = ONE) -> 'NCPoly':
        return cls({mono: coeff})

    @classmethod
    def generator(cls, g: Generator, coeff: LaurentPoly = ONE) -> 'NCPoly':
        return cls({NormalMonomial.of(g): coeff})

    @classmethod
    def scalar(cls, coeff: LaurentPoly) -> 'NCPoly':
        return cls({UNIT_MONOMIAL: coeff})

    @property
    def terms(self) -> Dict[NormalMonomial, LaurentPoly]:
        return self._terms

    def items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def coefficient(self, mono: NormalMonomial) -> LaurentPoly:
        return self._terms.get(NormalMonomial(*mono), ZERO)

    def degree(self) -> int:
        return max((m.degree() for m in self._terms), default=0)

    def spin_degree_bounds(self) -> Tuple[int, int]:
        return (max((m.z for m in self._terms), default=0),
                max((m.zb for m in self._terms), default=0))

    def map_coefficients(self, fn: Callable[[LaurentPoly], LaurentPoly]) -> 'NCPoly':
        return NCPoly({mono: fn(coeff) for mono, coeff in self._terms.items()})

    def to_word_poly(self) -> 'WordPoly':
        return WordPoly({mono.to_word(): coeff for mono, coeff in self._terms.items()})

    def __add__(self, other: 'NCPoly') -> 'NCPoly':
        terms = dict(self._terms)
        for mono, coeff in other._terms.items():
            _accumulate(terms, mono, coeff)
        return NCPoly(terms)

    def __neg__(self) -> 'NCPoly':
        return NCPoly({mono: -coeff for mono, coeff in self._terms.items()})

    def __sub__(self, other: 'NCPoly') -> 'NCPoly':
        return self + (-other)

    def scale(self, c: LaurentPoly) -> 'NCPoly':
        return NCPoly({mono: c * coeff for mono, coeff in self._terms.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, NCPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def sorted_terms(self) -> List[Tuple[NormalMonomial, LaurentPoly]]:
        return sorted(self._terms.items(), key=lambda item: _graded_key(item[0]))

    def __str__(self) -> str:
        if not self._terms:
            return '0'
        items = self.sorted_terms()
        if len(items) == 1 and items[0][0].is_unit():
            return str(items[0][1])
        pieces = []
        for mono, coeff in items:
            if mono.is_unit():
                pieces.append('1' if coeff.is_one() else f"({coeff})")
            elif coeff.is_one():
                pieces.append(str(mono))
            else:
                pieces.append(f"({coeff}) * {mono}")
        return ' + '.join(pieces)

    def __repr__(self) -> str:
        return f"NCPoly({str(self)!r})"


class WordPoly:
    """Free-algebra element: words (not necessarily normal) with LaurentPoly coefficients."""

    __slots__ = ('_terms',)

    def __init__(self, terms: Optional[Dict[Word, LaurentPoly]] = None):
        self._terms: Dict[Word, LaurentPoly] = {
            tuple(Generator(g) for g in word): coeff for word, coeff in (terms or {}).items() if not coeff.is_zero()
        }

    @classmethod
    def from_word(cls, word: Sequence[Generator], coeff: LaurentPoly = ONE) -> 'WordPoly':
        return cls({tuple(word): coeff})

    @classmethod
    def scalar(cls, coeff: LaurentPoly) -> 'WordPoly':
        return cls({(): coeff})

    @property
    def terms(self) -> Dict[Word, LaurentPoly]:
        return self._terms

    def is_zero(self) -> bool:
        return not self._terms

    def is_scalar(self) -> bool:
        return all(not word for word in self._terms)

    def degree(self) -> int:
        return max((len(w) for w in self._terms), default=0)

    def __add__(self, other: 'WordPoly') -> 'WordPoly':
        terms = dict(self._terms)
        for word, coeff in other._terms.items():
            _accumulate(terms, word, coeff)
        return WordPoly(terms)

    def __neg__(self) -> 'WordPoly':
        return WordPoly({w: -c for w, c in self._terms.items()})

    def __sub__(self, other: 'WordPoly') -> 'WordPoly':
        return self + (-other)

    def __mul__(self, other: 'WordPoly') -> 'WordPoly':
        terms: Dict[Word, LaurentPoly] = {}
        for w1, c1 in self._terms.items():
            for w2, c2 in other._terms.items():
                _accumulate(terms, w1 + w2, c1 * c2)
        return WordPoly(terms)

    def scale(self, c: LaurentPoly) -> 'WordPoly':
        return WordPoly({w: c * coeff for w, coeff in self._terms.items()})

    def map_coefficients(self, fn: Callable[[LaurentPoly], LaurentPoly]) -> 'WordPoly':
        return WordPoly({w: fn(c) for w, c in self._terms.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, WordPoly):
            return NotImplemented
        return self._terms == other._terms

    def __str__(self) -> str:
        if not self._terms:
            return '0'
        pieces = []
        for word, coeff in sorted(self._terms.items(), key=lambda item: (-len(item[0]), item[0])):
            if not word:
                pieces.append('1' if coeff.is_one() else f"({coeff})")
            elif coeff.is_one():
                pieces.append(format_word(word))
            else:
                pieces.append(f"({coeff}) * {format_word(word)}")
        return ' + '.join(pieces)


Expr = Union[Sequence[Generator], WordPoly, NCPoly]


def _as_word_poly(expr: Expr) -> WordPoly:
    if isinstance(expr, WordPoly):
        return expr
    if isinstance(expr, NCPoly):
        return expr.to_word_poly()
    return WordPoly.from_word(tuple(expr))


@dataclass(frozen=True)
class RewriteRule:
    """Oriented relation ``left*right -> replacement`` with rank(left) > rank(right)."""
    left: Generator
    right: Generator
    replacement: NCPoly

    def __post_init__(self):
        if self.left <= self.right:
            raise ValueError(f"Rule pattern {self.left}*{self.right} is not an inversion")

    @property
    def pattern(self) -> Word:
        return (self.left, self.right)

    @property
    def swap_monomial(self) -> NormalMonomial:
        return NormalMonomial.from_word((self.right, self.left))

    @property
    def swap_coefficient(self) -> LaurentPoly:
        return self.replacement.coefficient(self.swap_monomial)

    @property
    def extra_terms(self) -> NCPoly:
        return self.replacement - NCPoly.monomial(self.swap_monomial, self.swap_coefficient)

    def as_relation(self) -> WordPoly:
        """LHS − RHS as a free-algebra element."""
        return WordPoly.from_word(self.pattern) - self.replacement.to_word_poly()

    def specialized(self, s: ParamSubstitution) -> 'RewriteRule':
        return RewriteRule(self.left, self.right, self.replacement.map_coefficients(s))

    def __str__(self) -> str:
        return f"{format_word(self.pattern)} -> {self.replacement}"


def _c(coeff=1, **powers) -> LaurentPoly:
    return LaurentPoly.monomial(coeff, **powers)


def _defining_relations():
    lam = lambda_const()
    G = Generator
    # x+ x- is given implicitly: (q q24/(q23 q34)) x+x- = (q12 q24/(q q14)) x-x+ + λ v vb
    implicit_left = _c(q=1, q24=1, q23=-1, q34=-1)
    implicit_right = _c(q=-1, q12=1, q24=1, q14=-1)
    solved = implicit_left.inverse()
    return [
        (G.XP, G.V, _c(q23=1, q34=1, q24=-1), ()),
        (G.VB, G.XP, _c(q14=1, q12=-1, q24=-1), ()),
        (G.XM, G.V, _c(q13=1, q12=-1, q23=-1), ()),
        (G.VB, G.XM, _c(q13=1, q34=1, q14=-1), ()),
        (G.VB, G.V, _c(q13=1, q34=1, q12=-1, q24=-1), ()),
        (G.XP, G.XM, implicit_right * solved, ((lam * solved, (G.V, G.VB)),)),
        (G.ZB, G.Z, _c(q13=1, q24=1, q14=-1, q23=-1), ()),
        (G.ZB, G.XP, _c(q13=1, q34=1, q14=-1), ()),
        (G.ZB, G.XM, _c(q=-2, q23=1, q34=1, q24=-1), ((lam, (G.VB,)),)),
        (G.ZB, G.VB, _c(q23=1, q34=1, q24=-1), ()),
        (G.ZB, G.V, _c(q=-2, q13=1, q34=1, q14=-1), ((lam, (G.XP,)),)),
        (G.XP, G.Z, _c(q14=1, q12=-1, q24=-1), ()),
        (G.XM, G.Z, _c(q=2, q13=1, q12=-1, q23=-1), ((-lam, (G.V,)),)),
        (G.V, G.Z, _c(q13=1, q12=-1, q23=-1), ()),
        (G.VB, G.Z, _c(q=2, q14=1, q12=-1, q24=-1), ((-lam, (G.XP,)),)),
    ]


def parse_fault(spec: str) -> Optional[Tuple[Generator, Generator]]:
    """Parse an injected-fault spec such as ``"xp,v"``; empty means no fault."""
    spec = (spec or '').strip()
    if not spec:
        return None
    names = [part.strip() for part in spec.split(',')]
    if len(names) != 2 or any(n not in GENERATOR_BY_NAME for n in names):
        raise ValueError(f"Bad rule fault spec '{spec}', expected e.g. 'xp,v'")
    return GENERATOR_BY_NAME[names[0]], GENERATOR_BY_NAME[names[1]]


def relation_table(inject_fault: Optional[str] = INJECT_RULE_FAULT) -> List[RewriteRule]:
    """The fifteen oriented rules, one per unordered generator pair."""
    fault = parse_fault(inject_fault) if inject_fault else None
    rules = []
    for left, right, swap, extras in _defining_relations():
        if fault == (left, right):
            logger.warning("Injecting fault into rule %s*%s (swap coefficient times q)", left, right)
            swap = swap * LaurentPoly.param('q')
        terms = {NormalMonomial.from_word((right, left)): swap}
        for coeff, word in extras:
            terms[NormalMonomial.from_word(word)] = coeff
        rules.append(RewriteRule(left, right, NCPoly(terms)))
    return rules


def deglex_key(word: Sequence[Generator]):
    """Degree-lexicographic key; every rule replacement is smaller than its pattern."""
    return (len(word), tuple(int(g) for g in word))


def rewrite_bound(degree: int) -> int:
    """Number of words of length <= degree; caps the steps of one normal ordering."""
    return sum(len(GENERATORS) ** k for k in range(degree + 1))


def _find_inversion(word: Word, strategy: str) -> Optional[int]:
    positions = range(len(word) - 1)
    if strategy == RIGHTMOST:
        positions = reversed(positions)
    for i in positions:
        if word[i] > word[i + 1]:
            return i
    return None


@dataclass
class ConfluenceFailure:
    word: Word
    first: NCPoly
    second: NCPoly
    kind: str = 'random'

    def difference(self) -> NCPoly:
        return self.first - self.second

    def to_dict(self) -> Dict[str, str]:
        return {
            'kind': self.kind,
            'word': format_word(self.word),
            'first': str(self.first),
            'second': str(self.second),
            'difference': str(self.difference()),
        }


@dataclass
class ConfluenceReport:
    passed: bool
    trials: int
    max_len: int
    seed: int
    substitution: str
    overlaps_checked: int = 0
    words_checked: int = 0
    failures: List[ConfluenceFailure] = field(default_factory=list)

    @property
    def counterexample(self) -> Optional[ConfluenceFailure]:
        return self.failures[0] if self.failures else None

    def to_dict(self) -> Dict:
        return {
            'passed': self.passed,
            'trials': self.trials,
            'max_len': self.max_len,
            'seed': self.seed,
            'substitution': self.substitution,
            'overlaps_checked': self.overlaps_checked,
            'words_checked': self.words_checked,
            'failures': [f.to_dict() for f in self.failures[:20]],
            'failure_count': len(self.failures),
        }


class FlagAlgebra:
    """Quotient of the free algebra on the six generators by the rule table."""

    def __init__(self, rules: Optional[Iterable[RewriteRule]] = None,
                 substitution: ParamSubstitution = EMPTY_SUBSTITUTION):
        rule_list = list(rules) if rules is not None else relation_table()
        self.rules: Dict[Tuple[Generator, Generator], RewriteRule] = {r.pattern: r for r in rule_list}
        if len(self.rules) != 15:
            raise ValueError(f"Rule table must have 15 rules, got {len(self.rules)}")
        self.substitution = substitution
        self._specialized: Dict[ParamSubstitution, 'FlagAlgebra'] = {}

    def relation_table(self) -> List[RewriteRule]:
        return sorted(self.rules.values(), key=lambda r: (r.left, r.right))

    def rule(self, left: Generator, right: Generator) -> RewriteRule:
        return self.rules[(left, right)]

    def specialized(self, s: ParamSubstitution) -> 'FlagAlgebra':
        """Same algebra with every rule coefficient pushed through ``s``."""
        if not s.assignment:
            return self
        if s not in self._specialized:
            rules = [rule.specialized(s) for rule in self.rules.values()]
            combined = self.substitution.compose(s) if self.substitution.assignment else s
            self._specialized[s] = FlagAlgebra(rules, combined)
        return self._specialized[s]

    # -- rewriting ----------------------------------------------------------

    def rewrite_at(self, word: Sequence[Generator], position: int) -> WordPoly:
        """Apply the rule at ``position`` once (the pair there must be inverted)."""
        word = tuple(word)
        rule = self.rules[(word[position], word[position + 1])]
        prefix, suffix = word[:position], word[position + 2:]
        return WordPoly({prefix + mono.to_word() + suffix: coeff
                         for mono, coeff in rule.replacement.items()})

    def normal_order(self, expr: Expr, strategy: str = LEFTMOST) -> NCPoly:
        """Rewrite to the normal-ordered basis.

        Pending words are processed deglex-largest first; every rewrite only
        produces smaller words, so a popped word never comes back and the loop
        runs at most ``rewrite_bound(degree)`` times.
        """
        if strategy not in STRATEGIES:
            raise ValueError(f"Unknown strategy '{strategy}'")
        source = _as_word_poly(expr)
        pending: Dict[Word, LaurentPoly] = {}
        heap: List = []

        def push(word: Word, coeff: LaurentPoly) -> None:
            if word not in pending:
                pending[word] = coeff
                length, letters = deglex_key(word)
                heapq.heappush(heap, ((-length, tuple(-g for g in letters)), word))
            else:
                pending[word] = pending[word] + coeff

        for word, coeff in source.terms.items():
            push(word, coeff)

        bound = rewrite_bound(source.degree())
        result: Dict[NormalMonomial, LaurentPoly] = {}
        steps = 0
        while heap:
            _, word = heapq.heappop(heap)
            coeff = pending.pop(word)
            if coeff.is_zero():
                continue
            position = _find_inversion(word, strategy)
            if position is None:
                _accumulate(result, NormalMonomial.from_word(word), coeff)
                continue
            steps += 1
            if steps > bound:
                raise RewriteBoundExceeded(f"More than {bound} rewrite steps for degree {source.degree()}")
            rule = self.rules[(word[position], word[position + 1])]
            prefix, suffix = word[:position], word[position + 2:]
            for mono, rcoeff in rule.replacement.items():
                push(prefix + mono.to_word() + suffix, coeff * rcoeff)
        logger.debug("normal_order: %d rewrite steps (%s)", steps, strategy)
        return NCPoly(result)

    def multiply(self, a: Expr, b: Expr) -> NCPoly:
        return self.normal_order(_as_word_poly(a) * _as_word_poly(b))

    # -- conjugation --------------------------------------------------------

    @staticmethod
    def omega_words(expr: Expr) -> WordPoly:
        """Anti-linear order reversal with z<->zb, v<->vb, before normal ordering."""
        terms: Dict[Word, LaurentPoly] = {}
        for word, coeff in _as_word_poly(expr).terms.items():
            image = tuple(OMEGA_MAP[g] for g in reversed(word))
            _accumulate(terms, image, conj(coeff))
        return WordPoly(terms)

    def omega(self, expr: Expr) -> NCPoly:
        return self.normal_order(self.omega_words(expr))

    def relation_residual(self, rule: RewriteRule, s: ParamSubstitution = EMPTY_SUBSTITUTION) -> NCPoly:
        """normal_order(ω(LHS − RHS)) with the substitution applied after ω."""
        image = self.omega_words(rule.as_relation()).map_coefficients(s)
        return self.specialized(s).normal_order(image)

    def check_relation_preserved(self, rule: RewriteRule, s: ParamSubstitution = EMPTY_SUBSTITUTION) -> bool:
        return self.relation_residual(rule, s).is_zero()

    # -- confluence ---------------------------------------------------------

    def overlap_obstructions(self) -> Dict[Word, NCPoly]:
        """Difference of the two resolutions of every strictly decreasing triple."""
        obstructions: Dict[Word, NCPoly] = {}
        for word in decreasing_triples():
            first = self.normal_order(self.rewrite_at(word, 0))
            second = self.normal_order(self.rewrite_at(word, 1))
            obstructions[word] = first - second
        return obstructions

    def confluence_check(self, trials: int, max_len: int, seed: int,
                         substitution: Optional[ParamSubstitution] = None) -> ConfluenceReport:
        if trials < 1:
            raise ValueError("trials must be >= 1")
        if max_len < 2:
            raise ValueError("max_len must be >= 2")
        algebra = self.specialized(substitution) if substitution is not None else self
        report = ConfluenceReport(True, trials, max_len, seed, algebra.substitution.name or 'generic')

        for word, difference in algebra.overlap_obstructions().items():
            report.overlaps_checked += 1
            if not difference.is_zero():
                first = algebra.normal_order(algebra.rewrite_at(word, 0))
                second = algebra.normal_order(algebra.rewrite_at(word, 1))
                report.failures.append(ConfluenceFailure(word, first, second, 'overlap'))

        rng = random.Random(seed)
        for _ in range(trials):
            word = random_word(rng, max_len)
            first = algebra.normal_order(word, LEFTMOST)
            second = algebra.normal_order(word, RIGHTMOST)
            report.words_checked += 1
            if first != second:
                report.failures.append(ConfluenceFailure(word, first, second, 'random'))

        report.passed = not report.failures
        if report.failures:
            logger.warning("Confluence fails under %s: %d failures, first at %s",
                           report.substitution, len(report.failures), format_word(report.failures[0].word))
        return report


def decreasing_triples() -> List[Word]:
    """All 20 words c*b*a with rank(c) > rank(b) > rank(a)."""
    return [(c, b, a) for c in GENERATORS for b in GENERATORS for a in GENERATORS if c > b > a]


def random_word(rng: random.Random, max_len: int, min_len: int = 1) -> Word:
    length = rng.randint(min_len, max_len)
    return tuple(rng.choice(GENERATORS) for _ in range(length))


def random_monomial(rng: random.Random, max_degree: int) -> NormalMonomial:
    word = sorted(random_word(rng, max_degree, min_len=0) if max_degree else ())
    return NormalMonomial.from_word(word)


default_algebra = FlagAlgebra()


def normal_order(w: Expr, strategy: str = LEFTMOST) -> NCPoly:
    return default_algebra.normal_order(w, strategy)


def multiply(a: Expr, b: Expr) -> NCPoly:
    return default_algebra.multiply(a, b)


def specialize(p: NCPoly, s: Union[ParamSubstitution, str]) -> NCPoly:
    if isinstance(s, str):
        s = get_preset(s)
    return p.map_coefficients(lambda c: substitute(c, s))


def omega(p: Expr) -> NCPoly:
    return default_algebra.omega(p)


def check_relation_preserved(rule: RewriteRule, s: ParamSubstitution = EMPTY_SUBSTITUTION) -> bool:
    return default_algebra.check_relation_preserved(rule, s)


def confluence_check(trials: int, max_len: int, seed: int,
                     substitution: Optional[ParamSubstitution] = None) -> ConfluenceReport:
    return default_algebra.confluence_check(trials, max_len, seed, substitution)


def overlap_obstructions(algebra: Optional[FlagAlgebra] = None) -> Dict[Word, NCPoly]:
    return (algebra or default_algebra).overlap_obstructions()
