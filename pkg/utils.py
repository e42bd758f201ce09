"""
Expression front end: tokenizer, recursive-descent parser and printers for
noncommutative expressions and Laurent coefficients, plus logging setup.

Grammar (juxtaposition is noncommutative product, word order is kept):

    expr   := term (('+' | '-') term)*
    term   := unary (['*'] unary)*
    unary  := '-' unary | power
    power  := atom ['^' ['-'] INT]
    atom   := INT ['/' INT] | NAME | '(' expr ')'
"""

import logging
import re
from typing import List, NamedTuple, Optional

from coeff_ring import ONE, PARAMETERS, LaurentPoly, lambda_const
from config import LOG_FORMAT, LOG_LEVEL
from flag_algebra import GENERATOR_BY_NAME, FlagAlgebra, NCPoly, WordPoly, default_algebra

logger = logging.getLogger(__name__)

# Unicode spellings accepted on input
SYMBOL_ALIASES = {
    'z̄': 'zb',
    'v̄': 'vb',
    'x₊': 'xp',
    'x₋': 'xm',
    'λ': 'lambda',
}
OPERATOR_ALIASES = {'−': '-', '·': '*', '×': '*'}

_NAME = re.compile(r'[A-Za-z_][A-Za-z0-9_]*')
_INT = re.compile(r'\d+')


class ParseError(ValueError):
    """Syntax error in an expression; ``position`` is the 0-based character offset."""

    def __init__(self, message: str, position: int, text: str = ''):
        super().__init__(f"{message} at position {position}")
        self.message = message
        self.position = position
        self.text = text


class UnknownSymbolError(ParseError):
    """A name that is neither a generator nor a parameter."""


class Token(NamedTuple):
    kind: str
    value: str
    position: int


def tokenize(text: str) -> List[Token]:
    tokens: List[Token] = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        alias = next((a for a in SYMBOL_ALIASES if text.startswith(a, i)), None)
        if alias is not None:
            tokens.append(Token('name', SYMBOL_ALIASES[alias], i))
            i += len(alias)
            continue
        ch = OPERATOR_ALIASES.get(ch, ch)
        if ch in '+-*^/()':
            tokens.append(Token(ch, ch, i))
            i += 1
            continue
        match = _INT.match(text, i)
        if match:
            tokens.append(Token('int', match.group(), i))
            i = match.end()
            continue
        match = _NAME.match(text, i)
        if match:
            tokens.append(Token('name', match.group(), i))
            i = match.end()
            continue
        raise ParseError(f"Unexpected character {text[i]!r}", i, text)
    tokens.append(Token('end', '', len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, allow_generators: bool = True):
        self.text = text
        self.tokens = tokenize(text)
        self.index = 0
        self.allow_generators = allow_generators

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def advance(self) -> Token:
        token = self.current
        self.index += 1
        return token

    def expect(self, kind: str) -> Token:
        if self.current.kind != kind:
            found = self.current.value or 'end of input'
            raise ParseError(f"Expected '{kind}' but found '{found}'", self.current.position, self.text)
        return self.advance()

    def parse(self) -> WordPoly:
        if self.current.kind == 'end':
            raise ParseError("Empty expression", 0, self.text)
        result = self.expr()
        if self.current.kind != 'end':
            raise ParseError(f"Unexpected '{self.current.value}'", self.current.position, self.text)
        return result

    def expr(self) -> WordPoly:
        result = self.term()
        while self.current.kind in ('+', '-'):
            op = self.advance().kind
            right = self.term()
            result = result + right if op == '+' else result - right
        return result

    def term(self) -> WordPoly:
        result = self.unary()
        while True:
            if self.current.kind == '*':
                self.advance()
            elif self.current.kind not in ('int', 'name', '('):
                return result
            result = result * self.unary()

    def unary(self) -> WordPoly:
        if self.current.kind == '-':
            self.advance()
            return -self.unary()
        return self.power()

    def power(self) -> WordPoly:
        base = self.atom()
        if self.current.kind != '^':
            return base
        caret = self.advance()
        negative = False
        if self.current.kind == '-':
            self.advance()
            negative = True
        exponent = int(self.expect('int').value)
        if negative:
            if not base.is_scalar():
                raise ParseError("Negative powers are only allowed for parameter monomials", caret.position, self.text)
            coeff = base.terms.get((), LaurentPoly())
            if not coeff.is_unit():
                raise ParseError(f"Cannot invert non-monomial {coeff}", caret.position, self.text)
            return WordPoly.scalar(coeff ** (-exponent))
        result = WordPoly.scalar(ONE)
        for _ in range(exponent):
            result = result * base
        return result

    def atom(self) -> WordPoly:
        token = self.current
        if token.kind == 'int':
            self.advance()
            value = LaurentPoly.constant(int(token.value))
            if self.current.kind == '/':
                self.advance()
                denominator = self.expect('int')
                if int(denominator.value) == 0:
                    raise ParseError("Division by zero", denominator.position, self.text)
                value = value * LaurentPoly.constant(int(denominator.value)).inverse()
            return WordPoly.scalar(value)
        if token.kind == 'name':
            self.advance()
            return self.symbol(token)
        if token.kind == '(':
            self.advance()
            inner = self.expr()
            self.expect(')')
            return inner
        found = token.value or 'end of input'
        raise ParseError(f"Unexpected '{found}'", token.position, self.text)

    def symbol(self, token: Token) -> WordPoly:
        name = token.value
        if name in PARAMETERS:
            return WordPoly.scalar(LaurentPoly.param(name))
        if name == 'lambda':
            return WordPoly.scalar(lambda_const())
        if name in GENERATOR_BY_NAME and self.allow_generators:
            return WordPoly.from_word((GENERATOR_BY_NAME[name],))
        raise UnknownSymbolError(f"Unknown symbol '{name}'", token.position, self.text)


def parse_expr(text: str) -> WordPoly:
    """Parse into coefficient-word pairs without normal ordering."""
    return _Parser(text).parse()


def parse_laurent(text: str) -> LaurentPoly:
    """Parse a coefficient expression (parameters and rationals only)."""
    parsed = _Parser(text, allow_generators=False).parse()
    return parsed.terms.get((), LaurentPoly())


def canonical_form(text: str, algebra: Optional[FlagAlgebra] = None) -> str:
    """print(normal_order(parse(text))); a fixed point on its own output."""
    return str((algebra or default_algebra).normal_order(parse_expr(text)))


def format_ncpoly(p: NCPoly, fmt: str = 'text'):
    if fmt == 'json':
        return [{'monomial': list(mono), 'text': str(mono), 'coefficient': str(coeff)}
                for mono, coeff in p.sorted_terms()]
    return str(p)


def setup_logging(level: Optional[str] = None) -> None:
    """Configure the root handler once; later calls only change the level."""
    level_name = (level or LOG_LEVEL).upper()
    numeric = getattr(logging, level_name, None)
    if not isinstance(numeric, int):
        raise ValueError(f"Unknown log level '{level}'")
    root = logging.getLogger()
    if not root.handlers:
        logging.basicConfig(level=numeric, format=LOG_FORMAT)
    root.setLevel(numeric)
    logger.debug("Logging configured at %s", level_name)
