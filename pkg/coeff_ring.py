"""
Coefficient Ring Module for the quantum Minkowski engine
Exact Laurent polynomials over the rationals in the seven deformation
parameters, with specialization homomorphisms, conjugation and q-integers.
"""

from fractions import Fraction
from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, Mapping, NamedTuple, Optional, Tuple, Union

# Fixed slot order; serialization and ParamExponent fields follow it.
PARAMETERS: Tuple[str, ...] = ('q', 'q12', 'q13', 'q14', 'q23', 'q24', 'q34')
PARAMETER_INDEX: Dict[str, int] = {name: i for i, name in enumerate(PARAMETERS)}

Scalar = Union[int, Fraction]


class NonUnitAssignmentError(ValueError):
    """Raised when a substitution assigns something that is not a single monomial."""


class NegativeQIntegerError(ValueError):
    """Raised when a q-integer is requested for a negative argument."""


class ParamExponent(NamedTuple):
    """Integer exponent vector of a parameter monomial (Laurent, so may be negative)."""
    q: int = 0
    q12: int = 0
    q13: int = 0
    q14: int = 0
    q23: int = 0
    q24: int = 0
    q34: int = 0

    def times(self, other: 'ParamExponent') -> 'ParamExponent':
        return ParamExponent(*(a + b for a, b in zip(self, other)))

    def scaled(self, k: int) -> 'ParamExponent':
        return ParamExponent(*(a * k for a in self))

    def inverse(self) -> 'ParamExponent':
        return ParamExponent(*(-a for a in self))

    def is_identity(self) -> bool:
        return not any(self)

    def degree(self) -> int:
        return sum(self)

    def __str__(self) -> str:
        return _format_monomial(self)


IDENTITY_EXPONENT = ParamExponent()


def _format_monomial(exponent: ParamExponent) -> str:
    # positive powers first, then negative ones, each in slot order
    factors = []
    for want_positive in (True, False):
        for name, power in zip(PARAMETERS, exponent):
            if power == 0 or (power > 0) != want_positive:
                continue
            factors.append(name if power == 1 else f"{name}^{power}")
    return '*'.join(factors)


def _format_scalar(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


class LaurentPoly:
    """Immutable rational Laurent polynomial in q, q12, ..., q34.

    Terms are kept canonical (no zero coefficients), so equality and hashing
    are plain comparisons of the term sets.
    """

    __slots__ = ('_terms', '_hash')

    def __init__(self, terms: Optional[Mapping[ParamExponent, Scalar]] = None):
        canonical: Dict[ParamExponent, Fraction] = {}
        for exponent, coeff in (terms or {}).items():
            value = Fraction(coeff)
            if value != 0:
                canonical[ParamExponent(*exponent)] = value
        self._terms = canonical
        self._hash: Optional[int] = None

    # -- constructors -------------------------------------------------------

    @classmethod
    def constant(cls, value: Scalar) -> 'LaurentPoly':
        return cls({IDENTITY_EXPONENT: value})

    @classmethod
    def monomial(cls, coeff: Scalar = 1, **powers: int) -> 'LaurentPoly':
        """Build ``coeff * q^a * q12^b ...`` from keyword powers."""
        unknown = set(powers) - set(PARAMETERS)
        if unknown:
            raise KeyError(f"Unknown parameters: {sorted(unknown)}")
        return cls({ParamExponent(**powers): coeff})

    @classmethod
    def param(cls, name: str, power: int = 1) -> 'LaurentPoly':
        return cls.monomial(1, **{name: power})

    @classmethod
    def _raw(cls, terms: Dict[ParamExponent, Fraction]) -> 'LaurentPoly':
        # trusted path: caller guarantees canonical terms
        poly = cls.__new__(cls)
        poly._terms = terms
        poly._hash = None
        return poly

    # -- inspection ---------------------------------------------------------

    @property
    def terms(self) -> Mapping[ParamExponent, Fraction]:
        return self._terms

    def items(self) -> Iterator[Tuple[ParamExponent, Fraction]]:
        return iter(self._terms.items())

    def is_zero(self) -> bool:
        return not self._terms

    def is_one(self) -> bool:
        return self._terms == {IDENTITY_EXPONENT: Fraction(1)}

    def is_unit(self) -> bool:
        """True for a single monomial with nonzero rational coefficient."""
        return len(self._terms) == 1

    def is_constant(self) -> bool:
        return all(e.is_identity() for e in self._terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        return self._terms.get(IDENTITY_EXPONENT, Fraction(0))

    def unit_parts(self) -> Tuple[Fraction, ParamExponent]:
        if not self.is_unit():
            raise NonUnitAssignmentError(f"{self} is not a unit")
        (exponent, coeff), = self._terms.items()
        return coeff, exponent

    def evaluate_at_one(self) -> Fraction:
        """Value with every parameter set to 1 (the classical limit)."""
        return sum(self._terms.values(), Fraction(0))

    # -- arithmetic ---------------------------------------------------------

    @staticmethod
    def _coerce(other) -> Optional['LaurentPoly']:
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentPoly.constant(other)
        return None

    def __add__(self, other) -> 'LaurentPoly':
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = dict(self._terms)
        for exponent, coeff in other._terms.items():
            total = terms.get(exponent, 0) + coeff
            if total:
                terms[exponent] = total
            else:
                terms.pop(exponent, None)
        return LaurentPoly._raw(terms)

    __radd__ = __add__

    def __neg__(self) -> 'LaurentPoly':
        return LaurentPoly._raw({e: -c for e, c in self._terms.items()})

    def __sub__(self, other) -> 'LaurentPoly':
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> 'LaurentPoly':
        return (-self) + other

    def __mul__(self, other) -> 'LaurentPoly':
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms: Dict[ParamExponent, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                exponent = e1.times(e2)
                total = terms.get(exponent, 0) + c1 * c2
                if total:
                    terms[exponent] = total
                else:
                    terms.pop(exponent, None)
        return LaurentPoly._raw(terms)

    __rmul__ = __mul__

    def inverse(self) -> 'LaurentPoly':
        coeff, exponent = self.unit_parts()
        return LaurentPoly._raw({exponent.inverse(): 1 / coeff})

    def __pow__(self, power: int) -> 'LaurentPoly':
        if power < 0:
            return self.inverse() ** (-power)
        if self.is_unit():
            coeff, exponent = self.unit_parts()
            return LaurentPoly._raw({exponent.scaled(power): coeff ** power})
        result = ONE
        base = self
        while power:
            if power & 1:
                result = result * base
            base = base * base
            power >>= 1
        return result

    # -- comparison / display -----------------------------------------------

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def sorted_terms(self) -> Iterable[Tuple[ParamExponent, Fraction]]:
        return sorted(self._terms.items(), key=lambda item: (-item[0].degree(), tuple(-a for a in item[0])))

    def __str__(self) -> str:
        if not self._terms:
            return '0'
        pieces = []
        for exponent, coeff in self.sorted_terms():
            sign = '-' if coeff < 0 else '+'
            magnitude = abs(coeff)
            mono = _format_monomial(exponent)
            if not mono:
                body = _format_scalar(magnitude)
            elif magnitude == 1:
                body = mono
            else:
                body = f"{_format_scalar(magnitude)}*{mono}"
            pieces.append((sign, body))
        first_sign, first_body = pieces[0]
        text = ('-' if first_sign == '-' else '') + first_body
        for sign, body in pieces[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self) -> str:
        return f"LaurentPoly({str(self)!r})"


ZERO = LaurentPoly()
ONE = LaurentPoly.constant(1)


def add(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a + b


def mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a * b


def lambda_const() -> LaurentPoly:
    """The deformation constant λ = q − q⁻¹."""
    return LaurentPoly({ParamExponent(q=1): 1, ParamExponent(q=-1): -1})


def q_int(n: int) -> LaurentPoly:
    """Symmetric q-integer [n]_q = Σ_{k=0}^{n-1} q^{n-1-2k}."""
    if n < 0:
        raise NegativeQIntegerError(f"q-integer needs n >= 0, got {n}")
    terms: Dict[ParamExponent, Fraction] = {}
    for k in range(n):
        terms[ParamExponent(q=n - 1 - 2 * k)] = Fraction(1)
    return LaurentPoly._raw(terms)


def conj(a: LaurentPoly) -> LaurentPoly:
    """Conjugation for phase-valued parameters: every exponent is negated."""
    return LaurentPoly._raw({e.inverse(): c for e, c in a.terms.items()})


@dataclass(frozen=True)
class ParamSubstitution:
    """Assignment of parameter slots to units (single monomials).

    Stored as a sorted tuple of (slot, value) pairs so substitutions are
    hashable and can key caches of specialized rule tables.
    """
    assignment: Tuple[Tuple[int, LaurentPoly], ...] = ()
    name: str = ''

    def __post_init__(self):
        cleaned = []
        for slot, value in self.assignment:
            if isinstance(slot, str):
                if slot not in PARAMETER_INDEX:
                    raise KeyError(f"Unknown parameter '{slot}'")
                slot = PARAMETER_INDEX[slot]
            if not isinstance(value, LaurentPoly):
                value = LaurentPoly.constant(value)
            if not value.is_unit():
                raise NonUnitAssignmentError(
                    f"{PARAMETERS[slot]} must be assigned a unit monomial, got {value}")
            cleaned.append((slot, value))
        object.__setattr__(self, 'assignment', tuple(sorted(cleaned, key=lambda pair: pair[0])))

    @classmethod
    def from_mapping(cls, mapping: Mapping[Union[str, int], Union[LaurentPoly, Scalar]], name: str = '') -> 'ParamSubstitution':
        return cls(tuple(mapping.items()), name)

    def as_dict(self) -> Dict[int, LaurentPoly]:
        return dict(self.assignment)

    def value_of(self, slot: int) -> LaurentPoly:
        return self.as_dict().get(slot, LaurentPoly.param(PARAMETERS[slot]))

    def compose(self, then: 'ParamSubstitution') -> 'ParamSubstitution':
        """Substitution equal to applying ``self`` first and ``then`` second."""
        combined: Dict[int, LaurentPoly] = {}
        for slot in range(len(PARAMETERS)):
            value = substitute(self.value_of(slot), then)
            if value != LaurentPoly.param(PARAMETERS[slot]):
                combined[slot] = value
        label = f"{self.name}+{then.name}" if self.name and then.name else self.name or then.name
        return ParamSubstitution(tuple(combined.items()), label)

    def __call__(self, a: LaurentPoly) -> LaurentPoly:
        return substitute(a, self)

    def __str__(self) -> str:
        body = ', '.join(f"{PARAMETERS[slot]} -> {value}" for slot, value in self.assignment)
        return f"{self.name or 'substitution'}{{{body}}}"


def substitute(a: LaurentPoly, s: ParamSubstitution) -> LaurentPoly:
    """Ring homomorphism sending each assigned parameter to its unit value."""
    if not s.assignment:
        return a
    images = {slot: value.unit_parts() for slot, value in s.assignment}
    terms: Dict[ParamExponent, Fraction] = {}
    for exponent, coeff in a.terms.items():
        new_exponent = list(exponent)
        new_coeff = coeff
        for slot, (unit_coeff, unit_exponent) in images.items():
            power = exponent[slot]
            if not power:
                continue
            new_exponent[slot] -= power
            for i, e in enumerate(unit_exponent):
                new_exponent[i] += e * power
            new_coeff *= unit_coeff ** power
        key = ParamExponent(*new_exponent)
        total = terms.get(key, 0) + new_coeff
        if total:
            terms[key] = total
        else:
            terms.pop(key, None)
    return LaurentPoly._raw(terms)


def _unit(coeff: Scalar = 1, **powers: int) -> LaurentPoly:
    return LaurentPoly.monomial(coeff, **powers)


# Named presets, parameters on the left exactly as the relations are written.
PRESETS: Dict[str, ParamSubstitution] = {
    'one-param': ParamSubstitution.from_mapping(
        {name: _unit(q=1) for name in PARAMETERS[1:]}, 'one-param'),
    # q12 = q^3/(q13 q14), q23 = q^4/(q13 q14 q24), q34 = q^3/(q14 q24)
    'sl4-split': ParamSubstitution.from_mapping({
        'q12': _unit(q=3, q13=-1, q14=-1),
        'q23': _unit(q=4, q13=-1, q14=-1, q24=-1),
        'q34': _unit(q=3, q14=-1, q24=-1),
    }, 'sl4-split'),
    # q12 = q23 = q34 = q^2/q14, q13 = q24 = q
    'conj-2param': ParamSubstitution.from_mapping({
        'q12': _unit(q=2, q14=-1),
        'q23': _unit(q=2, q14=-1),
        'q34': _unit(q=2, q14=-1),
        'q13': _unit(q=1),
        'q24': _unit(q=1),
    }, 'conj-2param'),
    # q13 = q12 q24/q34, q14 = q12 q24^2/(q23 q34)
    'relq': ParamSubstitution.from_mapping({
        'q13': _unit(q12=1, q24=1, q34=-1),
        'q14': _unit(q12=1, q24=2, q23=-1, q34=-1),
    }, 'relq'),
    'classical': ParamSubstitution.from_mapping(
        {name: ONE for name in PARAMETERS}, 'classical'),
}

PRESET_ALIASES: Dict[str, str] = {
    'split': 'sl4-split',
    'splitz': 'conj-2param',
    'all-ones': 'classical',
}

EMPTY_SUBSTITUTION = ParamSubstitution((), 'generic')


def get_preset(name: Optional[str]) -> ParamSubstitution:
    """Look up a preset by name; None or 'generic' gives the empty substitution."""
    if name is None or name in ('', 'generic', 'none'):
        return EMPTY_SUBSTITUTION
    key = PRESET_ALIASES.get(name, name)
    if key not in PRESETS:
        raise KeyError(f"Unknown preset '{name}'. Available: {', '.join(sorted(PRESETS))}")
    return PRESETS[key]


def evaluate_at_one(a: LaurentPoly) -> Fraction:
    return a.evaluate_at_one()
