"""
Representation-space bookkeeping: signatures [n1,n2;d], degree-bounded
elements of the representation spaces and the hierarchy templates for the
field strengths F±n and the currents Jn.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Dict, List, Tuple, Union

from coeff_ring import ONE
from config import TRUNCATE_DEGREE
from flag_algebra import FlagAlgebra, Generator, NCPoly, NormalMonomial, default_algebra
from utils import parse_expr

logger = logging.getLogger(__name__)

KINDS = ('+', '-', '0')
MINKOWSKI = (Generator.V, Generator.XM, Generator.XP, Generator.VB)


class DegreeBoundError(ValueError):
    """Raised when an element exceeds the (z, zb) degree bounds of its signature."""


@dataclass(frozen=True)
class Signature:
    """Lorentz labels n1, n2 (degrees in z, zb) and the conformal dimension d."""
    n1: int
    n2: int
    d: Fraction = Fraction(0)

    def __post_init__(self):
        if self.n1 < 0 or self.n2 < 0:
            raise ValueError(f"Signature labels must be non-negative, got [{self.n1},{self.n2}]")
        object.__setattr__(self, 'd', Fraction(self.d))

    def swapped(self) -> 'Signature':
        return Signature(self.n2, self.n1, self.d)

    def __str__(self) -> str:
        d = self.d.numerator if self.d.denominator == 1 else f"{self.d.numerator}/{self.d.denominator}"
        return f"[{self.n1},{self.n2};{d}]"

    @classmethod
    def parse(cls, text: str) -> 'Signature':
        body = text.strip()
        if not (body.startswith('[') and body.endswith(']')) or ';' not in body:
            raise ValueError(f"Bad signature '{text}', expected [n1,n2;d]")
        labels, d = body[1:-1].split(';', 1)
        n1, n2 = (int(part) for part in labels.split(','))
        return cls(n1, n2, Fraction(d.strip()))


def signature_for_level(n: int, kind: str) -> Signature:
    """χ+n = [n+2,n;2], χ-n = [n,n+2;2], χ0n = [n+1,n+1;3]."""
    if n < 0:
        raise ValueError(f"Level must be >= 0, got {n}")
    if kind == '+':
        return Signature(n + 2, n, 2)
    if kind == '-':
        return Signature(n, n + 2, 2)
    if kind == '0':
        return Signature(n + 1, n + 1, 3)
    raise ValueError(f"Unknown kind '{kind}', expected one of {KINDS}")


@dataclass(frozen=True)
class CChiElement:
    sig: Signature
    body: NCPoly

    def to_text(self) -> str:
        return f"{self.sig} | {self.body}"

    def to_dict(self) -> Dict:
        return {'signature': str(self.sig), 'body': str(self.body)}

    @classmethod
    def from_text(cls, text: str, algebra: FlagAlgebra = default_algebra) -> 'CChiElement':
        if '|' not in text:
            raise ValueError(f"Bad element '{text}', expected '[n1,n2;d] | body'")
        header, body = text.split('|', 1)
        return cls(Signature.parse(header), algebra.normal_order(parse_expr(body)))


def check_bounds(e: CChiElement) -> Tuple[bool, str]:
    for mono in e.body.terms:
        z_degree, zb_degree = mono.spin_degrees()
        if z_degree > e.sig.n1 or zb_degree > e.sig.n2:
            return False, f"Monomial {mono} exceeds bounds ({e.sig.n1}, {e.sig.n2}) of {e.sig}"
    return True, "Within bounds"


def validate(e: CChiElement) -> bool:
    return check_bounds(e)[0]


def require_valid(e: CChiElement) -> CChiElement:
    ok, message = check_bounds(e)
    if not ok:
        raise DegreeBoundError(message)
    return e


def minkowski_monomials(max_degree: int) -> List[NormalMonomial]:
    """Normal monomials in v, xm, xp, vb of total degree <= max_degree."""
    monomials = []
    for degree in range(max_degree + 1):
        for letters in combinations_with_replacement(MINKOWSKI, degree):
            monomials.append(NormalMonomial.from_word(sorted(letters)))
    return monomials


def mu_label(sig: Signature, mono: NormalMonomial) -> str:
    return f"mu[{sig.n1},{sig.n2};{','.join(str(e) for e in mono)}]"


@dataclass
class HierarchyTemplate:
    """Generic element with one placeholder coefficient μ per admissible monomial."""
    element: CChiElement
    labels: Dict[NormalMonomial, str] = field(default_factory=dict)
    truncate_degree: int = TRUNCATE_DEGREE

    @property
    def sig(self) -> Signature:
        return self.element.sig

    @property
    def body(self) -> NCPoly:
        return self.element.body

    def spin_pairs(self) -> List[Tuple[int, int]]:
        return sorted({(m.z, m.zb) for m in self.labels})

    def basis(self) -> List[NormalMonomial]:
        return list(self.labels)

    def describe(self) -> str:
        return f"{self.sig}: {len(self.labels)} coefficients up to Minkowski degree {self.truncate_degree}"


def make_hierarchy_element(n: int, kind: str, truncate_degree: Union[int, None] = None) -> HierarchyTemplate:
    """Template for F+n, F-n or Jn: every z^i ... zb^k with i <= n1, k <= n2."""
    degree = TRUNCATE_DEGREE if truncate_degree is None else truncate_degree
    if degree < 0:
        raise ValueError(f"Truncation degree must be >= 0, got {degree}")
    sig = signature_for_level(n, kind)
    labels: Dict[NormalMonomial, str] = {}
    for middle in minkowski_monomials(degree):
        for i in range(sig.n1 + 1):
            for k in range(sig.n2 + 1):
                mono = middle.with_exponent(Generator.Z, i).with_exponent(Generator.ZB, k)
                labels[mono] = mu_label(sig, mono)
    body = NCPoly({mono: ONE for mono in labels})
    logger.debug("Template %s with %d monomials", sig, len(labels))
    return HierarchyTemplate(CChiElement(sig, body), labels, degree)
