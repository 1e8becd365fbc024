"""Parser for class expressions such as ``(CP2,2w) - 3 CP1 X - 2 X^2``.

Atoms:

* ``CP(n)`` / ``CP(n,k)`` / ``(CPn,kw)``: projective space with the form ``k w``
* ``CPn``: the classical projective space (trivial line bundle)
* ``X``: the symplectic 2-torus; ``pt``: the point

Products are written with ``*`` or by juxtaposition, powers with ``^``, and
formal sums take integer or rational coefficients (``3/2 CP1``).  Whitespace
is ignored.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .models import ModelSum, classical_cp, cp, point, torus


class ExprSyntaxError(ValueError):
    def __init__(self, message: str, position: int, text: str = ""):
        super().__init__(f"{message} at position {position}")
        self.position = position
        self.text = text

    def caret(self) -> str:
        return f"{self.text}\n{' ' * self.position}^"


# -- AST ------------------------------------------------------------------------

@dataclass(frozen=True)
class Atom:
    kind: str  # "quantum", "classical", "torus", "point"
    n: int = 0
    k: int = 1


@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Power:
    base: object
    exponent: int


@dataclass(frozen=True)
class Product:
    factors: tuple


@dataclass(frozen=True)
class Sum:
    terms: tuple  # (sign, node) pairs


# -- tokenizer ----------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z]+)|(?P<sym>[-+*/^(),]))")


def tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        match = _TOKEN.match(text, pos)
        if match is None:
            bad = len(text[pos:]) - len(text[pos:].lstrip()) + pos
            raise ExprSyntaxError(f"unexpected character {text[bad]!r}", bad, text)
        kind = match.lastgroup
        start = match.start(kind)
        tokens.append((kind, match.group(kind), start))
        pos = match.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0

    def peek(self, offset: int = 0):
        return self.tokens[min(self.i + offset, len(self.tokens) - 1)]

    def error(self, message: str, token=None):
        token = token or self.peek()
        raise ExprSyntaxError(message, token[2], self.text)

    def take(self, kind: str, value: str | None = None):
        token = self.peek()
        if token[0] != kind or (value is not None and token[1] != value):
            want = value or kind
            found = token[1] or "end of input"
            self.error(f"expected {want!r}, found {found!r}")
        self.i += 1
        return token

    def at(self, kind: str, value: str | None = None) -> bool:
        token = self.peek()
        return token[0] == kind and (value is None or token[1] == value)

    def integer(self) -> int:
        return int(self.take("num")[1])

    def parse(self):
        node = self.sum()
        if not self.at("end"):
            self.error(f"unexpected {self.peek()[1]!r}")
        return node

    def sum(self):
        terms = []
        sign = 1
        if self.at("sym", "-") or self.at("sym", "+"):
            sign = -1 if self.take("sym")[1] == "-" else 1
        terms.append((sign, self.term()))
        while self.at("sym", "+") or self.at("sym", "-"):
            sign = -1 if self.take("sym")[1] == "-" else 1
            terms.append((sign, self.term()))
        if len(terms) == 1 and terms[0][0] == 1:
            return terms[0][1]
        return Sum(tuple(terms))

    def _starts_factor(self) -> bool:
        kind, value, _ = self.peek()
        return kind in ("num", "name") or (kind == "sym" and value == "(")

    def term(self):
        factors = [self.factor()]
        while True:
            if self.at("sym", "*"):
                self.take("sym")
                factors.append(self.factor())
            elif self._starts_factor():
                factors.append(self.factor())
            else:
                break
        return factors[0] if len(factors) == 1 else Product(tuple(factors))

    def factor(self):
        base = self.primary()
        if self.at("sym", "^"):
            self.take("sym")
            token = self.peek()
            exponent = self.integer()
            if exponent < 0:
                self.error("exponent must be non-negative", token)
            return Power(base, exponent)
        return base

    def primary(self):
        kind, value, pos = self.peek()
        if kind == "num":
            numerator = self.integer()
            if self.at("sym", "/"):
                self.take("sym")
                token = self.peek()
                denominator = self.integer()
                if denominator == 0:
                    self.error("division by zero", token)
                return Num(Fraction(numerator, denominator))
            return Num(Fraction(numerator))
        if kind == "name":
            return self.atom()
        if kind == "sym" and value == "(":
            if self.peek(1)[:2] == ("name", "CP") and self.peek(2)[0] == "num" \
                    and self.peek(3)[:2] == ("sym", ","):
                return self.quantum_pair()
            self.take("sym", "(")
            node = self.sum()
            self.take("sym", ")")
            return node
        self.error(f"unexpected {value or 'end of input'!r}")

    def quantum_pair(self):
        self.take("sym", "(")
        self.take("name", "CP")
        n = self.integer()
        self.take("sym", ",")
        k = 1
        token = self.peek()
        if self.at("num"):
            k = self.integer()
        self.take("name", "w")
        self.take("sym", ")")
        return self._quantum(n, k, token)

    def _quantum(self, n: int, k: int, token):
        if k < 1:
            self.error("form multiplier must be a positive integer", token)
        return Atom("quantum", n, k)

    def atom(self):
        token = self.take("name")
        name = token[1]
        if name == "X":
            return Atom("torus")
        if name == "pt":
            return Atom("point")
        if name != "CP":
            self.error(f"unknown atom {name!r}", token)
        if self.at("num"):
            return Atom("classical", self.integer())
        self.take("sym", "(")
        n = self.integer()
        k = 1
        k_token = self.peek()
        if self.at("sym", ","):
            self.take("sym")
            k_token = self.peek()
            k = self.integer()
        self.take("sym", ")")
        return self._quantum(n, k, k_token)


def parse_expr(text: str):
    """Parse a class expression into an AST; raises :class:`ExprSyntaxError`."""
    return _Parser(text).parse()


# -- printing and evaluation -----------------------------------------------------------

def format_expr(node) -> str:
    """Canonical text; ``parse_expr(format_expr(node)) == node``."""
    if isinstance(node, Atom):
        if node.kind == "quantum":
            return f"(CP{node.n},w)" if node.k == 1 else f"(CP{node.n},{node.k}w)"
        if node.kind == "classical":
            return f"CP{node.n}"
        return "X" if node.kind == "torus" else "pt"
    if isinstance(node, Num):
        return str(node.value)
    if isinstance(node, Power):
        return f"{_wrap(node.base, power=True)}^{node.exponent}"
    if isinstance(node, Product):
        return " ".join(_wrap(f) for f in node.factors)
    if isinstance(node, Sum):
        out = []
        for i, (sign, term) in enumerate(node.terms):
            text = format_expr(term)
            if i == 0:
                out.append(text if sign > 0 else f"-{text}")
            else:
                out.append(f" {'+' if sign > 0 else '-'} {text}")
        return "".join(out)
    raise TypeError(f"not an expression node: {node!r}")


def _wrap(node, power: bool = False) -> str:
    needs = isinstance(node, Sum) or (power and isinstance(node, (Product, Power))) \
        or (power and isinstance(node, Num) and node.value.denominator != 1)
    text = format_expr(node)
    return f"({text})" if needs else text


def evaluate(node) -> ModelSum:
    if isinstance(node, Atom):
        if node.kind == "quantum":
            return ModelSum.of(cp(node.n, node.k))
        if node.kind == "classical":
            return ModelSum.of(classical_cp(node.n))
        return ModelSum.of(torus() if node.kind == "torus" else point())
    if isinstance(node, Num):
        return ModelSum.of(point(), node.value)
    if isinstance(node, Power):
        base = evaluate(node.base)
        result = ModelSum.of(point())
        for _ in range(node.exponent):
            result = result * base
        return result
    if isinstance(node, Product):
        result = ModelSum.of(point())
        for f in node.factors:
            result = result * evaluate(f)
        return result
    if isinstance(node, Sum):
        total = ModelSum()
        for sign, term in node.terms:
            total = total + evaluate(term) * sign
        return total
    raise TypeError(f"not an expression node: {node!r}")


def parse_class(text: str) -> ModelSum:
    return evaluate(parse_expr(text))
