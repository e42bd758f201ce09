"""
Classical Maxwell Module for the quantum Minkowski engine
Light-cone coordinates, the operators I1, I2, I3 and I±n acting on
polynomials in the spin variables z, zb, and the symbolic check that the two
scalar equations I±F± = J reproduce the eight component Maxwell equations.
Field components are sympy undefined functions of (xp, xm, v, vb), so partial
derivatives commute and follow the Leibniz rule without extra bookkeeping.
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

import sympy as sp
from sympy.core.function import AppliedUndef

from flag_algebra import NCPoly

logger = logging.getLogger(__name__)

XP, XM, V, VB = sp.symbols('xp xm v vb')
COORDINATES: Tuple[sp.Symbol, ...] = (XP, XM, V, VB)
Z, ZB = sp.symbols('z zb')

# derivative directions, in multi-index order (∂+, ∂-, ∂v, ∂vb)
DIRECTIONS: Dict[str, sp.Symbol] = {'+': XP, '-': XM, 'v': V, 'vb': VB}
DIRECTION_ORDER: Tuple[str, ...] = ('+', '-', 'v', 'vb')

F_PLUS_NAMES = ('F1p', 'F2p', 'F3p')
F_MINUS_NAMES = ('F1m', 'F2m', 'F3m')
J_NAMES = ('J0', 'J1', 'J2', 'J3')
FIELD_NAMES = F_PLUS_NAMES + F_MINUS_NAMES + J_NAMES

_CONJUGATE_NAMES = dict(zip(F_PLUS_NAMES, F_MINUS_NAMES))
_CONJUGATE_NAMES.update({m: p for p, m in _CONJUGATE_NAMES.items()})

SIGNS = ('+', '-')

SpinKey = Tuple[int, int]


def field(name: str) -> sp.Expr:
    """The field component ``name`` as a function of the four light-cone coordinates."""
    return sp.Function(name)(*COORDINATES)


@dataclass(frozen=True)
class FieldSymbol:
    """A field component with a derivative multi-index over (∂+, ∂-, ∂v, ∂vb)."""
    name: str
    derivatives: Tuple[int, int, int, int] = (0, 0, 0, 0)

    def __post_init__(self):
        if len(self.derivatives) != 4 or any(k < 0 for k in self.derivatives):
            raise ValueError(f"Bad derivative multi-index {self.derivatives}")

    def expr(self) -> sp.Expr:
        base = field(self.name)
        counts = [(c, k) for c, k in zip(COORDINATES, self.derivatives) if k]
        return base.diff(*counts) if counts else base

    def differentiated(self, direction: str) -> 'FieldSymbol':
        slot = DIRECTION_ORDER.index(direction)
        derivatives = list(self.derivatives)
        derivatives[slot] += 1
        return FieldSymbol(self.name, tuple(derivatives))

    def conjugate(self) -> 'FieldSymbol':
        """F+ <-> F-, J fixed, ∂v <-> ∂vb."""
        plus, minus, dv, dvb = self.derivatives
        return FieldSymbol(_CONJUGATE_NAMES.get(self.name, self.name), (plus, minus, dvb, dv))

    @classmethod
    def from_expr(cls, expr: sp.Expr) -> Optional['FieldSymbol']:
        if isinstance(expr, AppliedUndef):
            return cls(expr.func.__name__)
        if isinstance(expr, sp.Derivative) and isinstance(expr.expr, AppliedUndef):
            counts = dict(expr.variable_count)
            return cls(expr.expr.func.__name__, tuple(int(counts.get(c, 0)) for c in COORDINATES))
        return None

    def __str__(self) -> str:
        if not any(self.derivatives):
            return self.name
        return f"{self.name}[{','.join(str(k) for k in self.derivatives)}]"


def partial(elem: sp.Expr, direction: str) -> sp.Expr:
    """Formal derivative ∂+, ∂-, ∂v or ∂vb; z and zb are constants for it."""
    if direction not in DIRECTIONS:
        raise ValueError(f"Unknown direction '{direction}', expected one of {DIRECTION_ORDER}")
    return sp.diff(elem, DIRECTIONS[direction])


class SpinPoly:
    """Polynomial in z, zb with coefficients in the differential ring."""

    __slots__ = ('_terms',)

    def __init__(self, terms: Optional[Mapping[SpinKey, sp.Expr]] = None):
        cleaned: Dict[SpinKey, sp.Expr] = {}
        for (i, j), coeff in (terms or {}).items():
            if i < 0 or j < 0:
                raise ValueError(f"Negative spin degree ({i}, {j})")
            coeff = sp.expand(coeff)
            if coeff != 0:
                cleaned[(i, j)] = coeff
        self._terms = cleaned

    @classmethod
    def from_expr(cls, expr: sp.Expr) -> 'SpinPoly':
        terms: Dict[SpinKey, sp.Expr] = {}
        for term in sp.Add.make_args(sp.expand(expr)):
            coeff, spin = term.as_independent(Z, ZB, as_Add=False)
            powers = spin.as_powers_dict()
            key = (int(powers.get(Z, 0)), int(powers.get(ZB, 0)))
            terms[key] = terms.get(key, sp.Integer(0)) + coeff
        return cls(terms)

    @classmethod
    def monomial(cls, i: int, j: int, coeff: sp.Expr = sp.Integer(1)) -> 'SpinPoly':
        return cls({(i, j): coeff})

    @property
    def terms(self) -> Dict[SpinKey, sp.Expr]:
        return self._terms

    def to_expr(self) -> sp.Expr:
        return sp.Add(*(coeff * Z ** i * ZB ** j for (i, j), coeff in self._terms.items()))

    def coefficient(self, i: int, j: int) -> sp.Expr:
        return self._terms.get((i, j), sp.Integer(0))

    def is_zero(self) -> bool:
        return not self._terms

    def degree_bounds(self) -> SpinKey:
        return (max((i for i, _ in self._terms), default=0),
                max((j for _, j in self._terms), default=0))

    def __add__(self, other: 'SpinPoly') -> 'SpinPoly':
        return SpinPoly.from_expr(self.to_expr() + other.to_expr())

    def __sub__(self, other: 'SpinPoly') -> 'SpinPoly':
        return SpinPoly.from_expr(self.to_expr() - other.to_expr())

    def scale(self, c) -> 'SpinPoly':
        return SpinPoly({key: c * coeff for key, coeff in self._terms.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, SpinPoly):
            return NotImplemented
        return (self - other).is_zero()

    def __str__(self) -> str:
        return str(self.to_expr()) if self._terms else '0'

    def __repr__(self) -> str:
        return f"SpinPoly({self})"


SpinLike = Union[SpinPoly, sp.Expr]


def _expr(f: SpinLike) -> sp.Expr:
    return f.to_expr() if isinstance(f, SpinPoly) else sp.sympify(f)


def _I1(e: sp.Expr) -> sp.Expr:
    return sp.diff(e, Z)


def _I2(e: sp.Expr) -> sp.Expr:
    return ZB * Z * partial(e, '+') + Z * partial(e, 'v') + ZB * partial(e, 'vb') + partial(e, '-')


def _I3(e: sp.Expr) -> sp.Expr:
    return sp.diff(e, ZB)


_OPERATORS = {1: _I1, 2: _I2, 3: _I3}


def op_I(a: int, f: SpinLike) -> SpinPoly:
    """I1 = ∂z, I2 = zb z ∂+ + z ∂v + zb ∂vb + ∂-, I3 = ∂zb."""
    if a not in _OPERATORS:
        raise ValueError(f"Operator index must be 1, 2 or 3, got {a}")
    return SpinPoly.from_expr(_OPERATORS[a](_expr(f)))


def _check_level(sign: str, n: int) -> None:
    if sign not in SIGNS:
        raise ValueError(f"Sign must be '+' or '-', got {sign!r}")
    if n < 0:
        raise ValueError(f"Level n must be >= 0, got {n}")


def op_I_pm_n_direct(sign: str, n: int, f: SpinLike) -> SpinPoly:
    """I±n as a first-order part minus half of I2 after ∂z (resp. ∂zb)."""
    _check_level(sign, n)
    e = _expr(f)
    half = sp.Rational(1, 2)
    if sign == '+':
        first = ZB * partial(e, '+') + partial(e, 'v')
        second = _I2(_I1(e))
    else:
        first = Z * partial(e, '+') + partial(e, 'vb')
        second = _I2(_I3(e))
    return SpinPoly.from_expr(sp.Rational(n + 2, 2) * first - half * second)


def op_I_pm_n_factored(sign: str, n: int, f: SpinLike) -> SpinPoly:
    """I±n = ((n+2) Ia I2 - (n+3) I2 Ia) / 2 with Ia = I1 for + and I3 for -."""
    _check_level(sign, n)
    e = _expr(f)
    Ia = _I1 if sign == '+' else _I3
    return SpinPoly.from_expr(sp.Rational(1, 2) * ((n + 2) * Ia(_I2(e)) - (n + 3) * _I2(Ia(e))))


def commutator_rhs(sign: str, f: SpinLike) -> SpinPoly:
    """Closed form of [I1, I2] (sign +) or [I3, I2] (sign -)."""
    e = _expr(f)
    if sign == '+':
        return SpinPoly.from_expr(ZB * partial(e, '+') + partial(e, 'v'))
    return SpinPoly.from_expr(Z * partial(e, '+') + partial(e, 'vb'))


def commutator(sign: str, f: SpinLike) -> SpinPoly:
    e = _expr(f)
    Ia = _I1 if sign == '+' else _I3
    return SpinPoly.from_expr(Ia(_I2(e)) - _I2(Ia(e)))


def build_F_plus(components: Optional[Sequence[sp.Expr]] = None) -> SpinPoly:
    """F+(z) = z^2 (F1 + iF2) - 2z F3 - (F1 - iF2)."""
    F1, F2, F3 = components if components is not None else [field(n) for n in F_PLUS_NAMES]
    return SpinPoly({
        (2, 0): F1 + sp.I * F2,
        (1, 0): -2 * F3,
        (0, 0): -(F1 - sp.I * F2),
    })


def build_F_minus(components: Optional[Sequence[sp.Expr]] = None) -> SpinPoly:
    """F-(zb) = zb^2 (F1 - iF2) - 2zb F3 - (F1 + iF2)."""
    F1, F2, F3 = components if components is not None else [field(n) for n in F_MINUS_NAMES]
    return SpinPoly({
        (0, 2): F1 - sp.I * F2,
        (0, 1): -2 * F3,
        (0, 0): -(F1 + sp.I * F2),
    })


def build_J(components: Optional[Sequence[sp.Expr]] = None) -> SpinPoly:
    """J(z, zb) = zb z (J0 + J3) + zb (J1 - iJ2) + z (J1 + iJ2) + (J0 - J3)."""
    J0, J1, J2, J3 = components if components is not None else [field(n) for n in J_NAMES]
    return SpinPoly({
        (1, 1): J0 + J3,
        (0, 1): J1 - sp.I * J2,
        (1, 0): J1 + sp.I * J2,
        (0, 0): J0 - J3,
    })


# residual coefficients are read off in this order
RESIDUAL_KEYS: Tuple[SpinKey, ...] = ((1, 1), (0, 1), (1, 0), (0, 0))
RESIDUAL_LABELS: Tuple[str, ...] = ('zb*z', 'zb', 'z', '1')


def maxwell_residual(sign: str, n: int = 0) -> List[sp.Expr]:
    """Coefficients of zb z, zb, z, 1 in I±F± - J."""
    _check_level(sign, n)
    F = build_F_plus() if sign == '+' else build_F_minus()
    residual = op_I_pm_n_direct(sign, n, F) - build_J()
    extra = [key for key in residual.terms if key not in RESIDUAL_KEYS]
    if extra:
        raise ValueError(f"Residual has unexpected spin degrees {extra}")
    return [residual.coefficient(*key) for key in RESIDUAL_KEYS]


def _d(mu: int, e: sp.Expr) -> sp.Expr:
    # Cartesian derivatives from x± = x0 ± x3, v = x1 - i x2, vb = x1 + i x2
    if mu == 0:
        return partial(e, '+') + partial(e, '-')
    if mu == 3:
        return partial(e, '+') - partial(e, '-')
    if mu == 1:
        return partial(e, 'v') + partial(e, 'vb')
    return sp.I * (partial(e, 'vb') - partial(e, 'v'))


def _levi_civita(k: int, l: int, m: int) -> int:
    return int(sp.LeviCivita(k, l, m))


def mxc_components(sign: str) -> List[sp.Expr]:
    """Left-hand sides of the component equations, index 0..3, in light-cone derivatives.

    Component 0 is the divergence of F±; component k is
    ∂0 F±k ± i ε_klm ∂l F±m.
    """
    _check_level(sign, 0)
    names = F_PLUS_NAMES if sign == '+' else F_MINUS_NAMES
    F = {k + 1: field(name) for k, name in enumerate(names)}
    s = 1 if sign == '+' else -1
    lhs = [sp.expand(sum(_d(k, F[k]) for k in (1, 2, 3)))]
    for k in (1, 2, 3):
        curl = sum(_levi_civita(k, l, m) * _d(l, F[m]) for l in (1, 2, 3) for m in (1, 2, 3))
        lhs.append(sp.expand(_d(0, F[k]) + s * sp.I * curl))
    return lhs


def expected_residual(sign: str) -> List[sp.Expr]:
    """The residual coefficients written through the component equations Mμ = LHSμ + 2Jμ."""
    lhs = mxc_components(sign)
    J = [field(name) for name in J_NAMES]
    M = [lhs[mu] + 2 * J[mu] for mu in range(4)]
    half = sp.Rational(1, 2)
    return [sp.expand(-half * combo) for combo in (
        M[0] + M[3],
        M[1] - sp.I * M[2],
        M[1] + sp.I * M[2],
        M[0] - M[3],
    )]


def impose_mxc(expr: sp.Expr, sign: str) -> sp.Expr:
    """Substitute each Jμ by -LHSμ/2, i.e. impose the component equations with J = -2J(z, zb) normalization."""
    lhs = mxc_components(sign)
    rules = {field(name): -sp.Rational(1, 2) * lhs[mu] for mu, name in enumerate(J_NAMES)}
    return sp.expand(sp.sympify(expr).xreplace(rules))


def conjugate_swap(expr: SpinLike) -> sp.Expr:
    """z <-> zb, v <-> vb, i -> -i and F+ <-> F- with ∂v/∂vb slots exchanged."""
    e = _expr(expr)
    rules: Dict[sp.Expr, sp.Expr] = {Z: ZB, ZB: Z, V: VB, VB: V, sp.I: -sp.I}
    for atom in e.atoms(sp.Derivative) | e.atoms(AppliedUndef):
        symbol = FieldSymbol.from_expr(atom)
        if symbol is not None:
            rules[atom] = symbol.conjugate().expr()
    return sp.expand(e.xreplace(rules))


def commutative_image(p: NCPoly, evaluate: bool = True) -> SpinPoly:
    """Image of a normal-ordered element in the commutative classical ring.

    With ``evaluate`` the Laurent coefficients are taken at all parameters 1;
    otherwise every coefficient must already be a rational constant.
    """
    total = sp.Integer(0)
    for mono, coeff in p.items():
        value = coeff.evaluate_at_one() if evaluate else coeff.constant_value()
        term = sp.Rational(value.numerator, value.denominator)
        for symbol, power in zip((Z, V, XM, XP, VB, ZB), mono):
            term *= symbol ** power
        total += term
    return SpinPoly.from_expr(total)


def is_identically_zero(expr: sp.Expr) -> bool:
    return sp.expand(expr) == 0


def residual_report(sign: str) -> List[Tuple[str, sp.Expr, sp.Expr]]:
    """(label, raw residual, residual with the component equations imposed) per coefficient."""
    return [(label, raw, impose_mxc(raw, sign))
            for label, raw in zip(RESIDUAL_LABELS, maxwell_residual(sign))]


def generic_coefficients(max_degree: int, with_field: bool = True) -> List[sp.Expr]:
    """Coordinate monomials of degree <= max_degree, optionally times a generic test field."""
    coefficients: List[sp.Expr] = []
    for monomial in sorted(sp.itermonomials(COORDINATES, max_degree), key=sp.default_sort_key):
        coefficients.append(monomial)
        if with_field:
            coefficients.append(monomial * field('G'))
    return coefficients

