"""
Deformed operator toolkit: linear operators on normally ordered elements
built from q-derivatives, exponent-dependent scalings and generator
multiplication, the hierarchy operators Î±n assembled from a triple
(Î1, Î2, Î3), and operator description files.
"""

import json
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement
from pathlib import Path
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Tuple, Union

from coeff_ring import ONE, ZERO, LaurentPoly, q_int
from flag_algebra import GENERATOR_BY_NAME, FlagAlgebra, Generator, NCPoly, NormalMonomial, default_algebra
from repr_spaces import CChiElement, require_valid, signature_for_level, validate
from utils import ParseError, parse_laurent

logger = logging.getLogger(__name__)

SIGNS = ('+', '-')
PRIMITIVE_KINDS = ('q_deriv', 'mult', 'scale', 'identity')

Weights = Mapping[Generator, LaurentPoly]


class OperatorSpecError(ValueError):
    """Invalid operator construction or operator description file."""


class DegreeContractError(RuntimeError):
    """Hierarchy output exceeds the (n+1, n+1) degree bounds of the current space."""


@dataclass(frozen=True, eq=False)
class LinearOperator:
    """Linear map given by its values on normal monomials."""
    name: str
    action: Callable[[NormalMonomial], NCPoly]

    def on_monomial(self, mono: NormalMonomial) -> NCPoly:
        return self.action(mono)

    def __call__(self, p: NCPoly) -> NCPoly:
        terms: Dict[NormalMonomial, LaurentPoly] = {}
        for mono, coeff in p.items():
            for out_mono, out_coeff in self.action(mono).items():
                terms[out_mono] = terms.get(out_mono, ZERO) + coeff * out_coeff
        return NCPoly(terms)

    def __str__(self) -> str:
        return self.name


def _cached(fn: Callable[[NormalMonomial], NCPoly]) -> Callable[[NormalMonomial], NCPoly]:
    return lru_cache(maxsize=None)(fn)


def _weight_factor(mono: NormalMonomial, weights: Weights, below: Optional[Generator] = None) -> LaurentPoly:
    factor = ONE
    for g, w in weights.items():
        if below is not None and g >= below:
            continue
        power = mono[g]
        if power:
            factor = factor * w ** power
    return factor


def _check_weights(weights: Optional[Weights], slot: Optional[Generator] = None) -> Dict[Generator, LaurentPoly]:
    cleaned: Dict[Generator, LaurentPoly] = {}
    for g, w in (weights or {}).items():
        g = Generator(g)
        if not isinstance(w, LaurentPoly):
            w = LaurentPoly.constant(w)
        if not w.is_unit():
            raise OperatorSpecError(f"Weight for {g} must be a unit monomial, got {w}")
        if slot is not None and g >= slot:
            raise OperatorSpecError(f"q-derivative in {slot} only takes weights on slots left of it, got {g}")
        cleaned[g] = w
    return cleaned


def _format_weights(weights: Dict[Generator, LaurentPoly]) -> str:
    return ','.join(f"{g}:{w}" for g, w in sorted(weights.items())) if weights else ''


def q_deriv(slot: Generator, weights: Optional[Weights] = None) -> LinearOperator:
    """q-derivative in ``slot``: lowers that exponent k by one with coefficient [k]_q.

    The coefficient is further multiplied by w_j ** e_j for every weighted slot
    j left of ``slot``, where e_j is the exponent of the input in slot j.
    """
    slot = Generator(slot)
    cleaned = _check_weights(weights, slot)

    @_cached
    def action(mono: NormalMonomial) -> NCPoly:
        k = mono[slot]
        if k == 0:
            return NCPoly()
        coeff = q_int(k) * _weight_factor(mono, cleaned, below=slot)
        return NCPoly.monomial(mono.with_exponent(slot, k - 1), coeff)

    suffix = f"[{_format_weights(cleaned)}]" if cleaned else ''
    return LinearOperator(f"D_{slot}{suffix}", action)


def q_scale(weights: Weights) -> LinearOperator:
    """Diagonal operator multiplying z^i ... zb^n by the product of w_j ** e_j."""
    cleaned = _check_weights(weights)

    @_cached
    def action(mono: NormalMonomial) -> NCPoly:
        return NCPoly.monomial(mono, _weight_factor(mono, cleaned))

    return LinearOperator(f"K[{_format_weights(cleaned)}]", action)


def mult_op(g: Generator, algebra: FlagAlgebra = default_algebra) -> LinearOperator:
    """Left multiplication by ``g`` followed by normal ordering."""
    g = Generator(g)

    @_cached
    def action(mono: NormalMonomial) -> NCPoly:
        return algebra.multiply((g,), mono.to_word())

    return LinearOperator(f"M_{g}", action)


def compose(a: LinearOperator, b: LinearOperator) -> LinearOperator:
    """(a ∘ b)(p) = a(b(p))."""

    @_cached
    def action(mono: NormalMonomial) -> NCPoly:
        return a(b.on_monomial(mono))

    return LinearOperator(f"{a.name}{b.name}", action)


def chain(*ops: LinearOperator) -> LinearOperator:
    if not ops:
        return identity()
    result = ops[-1]
    for op in reversed(ops[:-1]):
        result = compose(op, result)
    return result


def add(*ops: LinearOperator) -> LinearOperator:
    if not ops:
        return zero()

    @_cached
    def action(mono: NormalMonomial) -> NCPoly:
        total = NCPoly()
        for op in ops:
            total = total + op.on_monomial(mono)
        return total

    return LinearOperator(' + '.join(op.name for op in ops), action)


def scale(c: Union[LaurentPoly, int, Fraction], a: LinearOperator) -> LinearOperator:
    if not isinstance(c, LaurentPoly):
        c = LaurentPoly.constant(c)
    if c.is_zero():
        return zero()

    def action(mono: NormalMonomial) -> NCPoly:
        return a.on_monomial(mono).scale(c)

    return LinearOperator(f"({c})*({a.name})", action)


def identity() -> LinearOperator:
    return LinearOperator('id', NCPoly.monomial)


def zero() -> LinearOperator:
    return LinearOperator('0', lambda mono: NCPoly())


def _check_sign(sign: str, n: int) -> None:
    if sign not in SIGNS:
        raise OperatorSpecError(f"Sign must be '+' or '-', got {sign!r}")
    if n < 0:
        raise OperatorSpecError(f"Level n must be >= 0, got {n}")


def hat_I_pm_n(sign: str, n: int, I1: LinearOperator, I2: LinearOperator, I3: LinearOperator) -> LinearOperator:
    """½([n+2]_q Ia I2 - [n+3]_q I2 Ia) with Ia = I1 for + and I3 for -."""
    _check_sign(sign, n)
    Ia = I1 if sign == '+' else I3
    half = LaurentPoly.constant(Fraction(1, 2))
    op = scale(half, add(scale(q_int(n + 2), compose(Ia, I2)), scale(-q_int(n + 3), compose(I2, Ia))))
    return LinearOperator(f"I{sign}{n}", op.action)


def hierarchy_skeleton(sign: str, n: int) -> str:
    _check_sign(sign, n)
    a = 'I1' if sign == '+' else 'I3'
    return f"I{sign}{n} = 1/2 * (({q_int(n + 2)}) {a} I2 - ({q_int(n + 3)}) I2 {a})"


def quantum_hierarchy_apply(sign: str, n: int, I1: LinearOperator, I2: LinearOperator,
                            I3: LinearOperator, f: NCPoly) -> NCPoly:
    """Apply Î±n to an element of the F±n space and check the result lands in the Jn space."""
    _check_sign(sign, n)
    require_valid(CChiElement(signature_for_level(n, sign), f))
    result = hat_I_pm_n(sign, n, I1, I2, I3)(f)
    target = CChiElement(signature_for_level(n, '0'), result)
    if not validate(target):
        bounds = result.spin_degree_bounds()
        raise DegreeContractError(
            f"I{sign}{n} produced spin degrees {bounds}, outside {target.sig}; "
            f"the supplied operators do not respect the degree contract")
    return result


def classical_limit_triple(algebra: FlagAlgebra = default_algebra) -> Tuple[LinearOperator, LinearOperator, LinearOperator]:
    """Î1 = D_z, Î3 = D_zb and Î2 = zb z D_xp + z D_v + zb D_vb + D_xm with trivial weights."""
    G = Generator
    mz, mzb = mult_op(G.Z, algebra), mult_op(G.ZB, algebra)
    I1 = q_deriv(G.Z)
    I3 = q_deriv(G.ZB)
    I2 = add(
        chain(mzb, mz, q_deriv(G.XP)),
        compose(mz, q_deriv(G.V)),
        compose(mzb, q_deriv(G.VB)),
        q_deriv(G.XM),
    )
    return I1, I2, I3


def evaluate_at_one(p: NCPoly) -> NCPoly:
    """Take every coefficient at q = q_ij = 1."""
    return p.map_coefficients(lambda c: LaurentPoly.constant(c.evaluate_at_one()))


# -- operator description files ----------------------------------------------

def _slot(spec: Mapping, context: str) -> Generator:
    name = spec.get('slot')
    if name not in GENERATOR_BY_NAME:
        raise OperatorSpecError(f"{context}: unknown slot {name!r}")
    return GENERATOR_BY_NAME[name]


def _laurent(text, context: str) -> LaurentPoly:
    try:
        return parse_laurent(str(text))
    except ParseError as e:
        raise OperatorSpecError(f"{context}: bad coefficient {text!r}: {e}") from e


def _primitive(spec: Mapping, algebra: FlagAlgebra, context: str) -> LinearOperator:
    if not isinstance(spec, Mapping):
        raise OperatorSpecError(f"{context}: expected an object, got {type(spec).__name__}")
    kind = spec.get('kind')
    weights = {GENERATOR_BY_NAME.get(name, name): _laurent(value, context)
               for name, value in (spec.get('weights') or {}).items()}
    unknown = [name for name in weights if not isinstance(name, Generator)]
    if unknown:
        raise OperatorSpecError(f"{context}: unknown weight slots {unknown}")
    if kind == 'q_deriv':
        op = q_deriv(_slot(spec, context), weights)
    elif kind == 'mult':
        op = mult_op(_slot(spec, context), algebra)
    elif kind == 'scale':
        op = q_scale(weights)
    elif kind == 'identity':
        op = identity()
    else:
        raise OperatorSpecError(f"{context}: unknown kind {kind!r}, expected one of {PRIMITIVE_KINDS}")
    if 'scalar' in spec:
        op = scale(_laurent(spec['scalar'], context), op)
    return op


def _term(spec: Mapping, algebra: FlagAlgebra, context: str) -> LinearOperator:
    if isinstance(spec, Mapping) and 'factors' in spec:
        factors = [_primitive(f, algebra, f"{context}.factors[{i}]") for i, f in enumerate(spec['factors'])]
        op = chain(*factors)
        if 'scalar' in spec:
            op = scale(_laurent(spec['scalar'], context), op)
        return op
    return _primitive(spec, algebra, context)


def build_operator(name: str, terms: Iterable[Mapping], algebra: FlagAlgebra = default_algebra) -> LinearOperator:
    """Sum of terms; a term is a primitive or ``{"factors": [...], "scalar": ...}``."""
    if isinstance(terms, Mapping):
        terms = [terms]
    parts = [_term(t, algebra, f"{name}[{i}]") for i, t in enumerate(terms)]
    op = add(*parts)
    return LinearOperator(name, op.action)


def load_operator_file(path: Union[str, Path], algebra: FlagAlgebra = default_algebra) -> Dict[str, LinearOperator]:
    """Read ``{"operators": {name: [term, ...]}}`` from a JSON file."""
    try:
        with open(path, 'r', encoding='utf-8') as f:
            data = json.load(f)
    except json.JSONDecodeError as e:
        raise OperatorSpecError(f"{path}: invalid JSON: {e}") from e
    operators = data.get('operators') if isinstance(data, dict) else None
    if not isinstance(operators, dict) or not operators:
        raise OperatorSpecError(f"{path}: expected a non-empty 'operators' object")
    loaded = {name: build_operator(name, terms, algebra) for name, terms in operators.items()}
    logger.info("Loaded %d operators from %s", len(loaded), path)
    return loaded


def triple_from(operators: Mapping[str, LinearOperator]) -> Tuple[LinearOperator, LinearOperator, LinearOperator]:
    missing = [name for name in ('I1', 'I2', 'I3') if name not in operators]
    if missing:
        raise OperatorSpecError(f"Operator file lacks {', '.join(missing)}")
    return operators['I1'], operators['I2'], operators['I3']


def monomials_up_to(max_degree: int) -> List[NormalMonomial]:
    """All normal monomials of total degree <= max_degree."""
    result = []
    for degree in range(max_degree + 1):
        for letters in combinations_with_replacement(tuple(Generator), degree):
            result.append(NormalMonomial.from_word(sorted(letters)))
    return result
