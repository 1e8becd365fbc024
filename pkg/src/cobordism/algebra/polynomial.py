"""Sparse graded polynomials with exact rational coefficients."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Union

Scalar = Union[int, Fraction]


@dataclass(frozen=True, order=True)
class Generator:
    """A named polynomial generator such as ``CP3`` (symbol ``CP``, index 3)."""

    symbol: str
    index: int
    grade: int

    @property
    def name(self) -> str:
        return f"{self.symbol}{self.index}"

    def __str__(self) -> str:
        return self.name


def cp_generator(n: int) -> Generator:
    return Generator("CP", n, 2 * n)


# a monomial is a sorted tuple of (generator, exponent) pairs with exponent > 0
Monomial = tuple


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    exps = dict(a)
    for g, e in b:
        exps[g] = exps.get(g, 0) + e
    return tuple(sorted(exps.items()))


def _mono_grade(m: Monomial) -> int:
    return sum(g.grade * e for g, e in m)


def format_scalar_term(c: Fraction, body: str, first: bool) -> str:
    """Render ``c * body`` as one summand of a canonical sum."""
    sign = "-" if c < 0 else "+"
    mag = -c if c < 0 else c
    if body and mag == 1:
        text = body
    elif body:
        text = f"{mag} {body}"
    else:
        text = str(mag)
    if first:
        return text if sign == "+" else f"-{text}"
    return f" {sign} {text}"


class GradedPolynomial:
    """Immutable sparse polynomial over :class:`Generator` symbols."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Scalar] | None = None):
        clean: dict[Monomial, Fraction] = {}
        for mono, c in (terms or {}).items():
            c = Fraction(c)
            if c != 0:
                key = tuple(sorted((g, e) for g, e in mono if e))
                clean[key] = clean.get(key, Fraction(0)) + c
        self._terms = {k: v for k, v in clean.items() if v != 0}
        self._hash = None

    @classmethod
    def constant(cls, c: Scalar) -> "GradedPolynomial":
        return cls({(): c})

    @classmethod
    def generator(cls, g: Generator) -> "GradedPolynomial":
        return cls({((g, 1),): 1})

    @classmethod
    def cp(cls, n: int) -> "GradedPolynomial":
        """The class ``CP_n``; ``CP_0`` is the unit."""
        return cls.constant(1) if n == 0 else cls.generator(cp_generator(n))

    @property
    def terms(self) -> dict[Monomial, Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def scalar(self) -> Fraction | None:
        """The value if this is a constant polynomial, else ``None``."""
        if not self._terms:
            return Fraction(0)
        if set(self._terms) == {()}:
            return self._terms[()]
        return None

    def grades(self) -> set[int]:
        return {_mono_grade(m) for m in self._terms}

    @property
    def grade(self) -> int:
        grades = self.grades()
        if len(grades) > 1:
            raise ValueError("polynomial is not homogeneous")
        return grades.pop() if grades else 0

    def is_homogeneous(self) -> bool:
        return len(self.grades()) <= 1

    def generators(self) -> set[Generator]:
        return {g for m in self._terms for g, _ in m}

    def __add__(self, other) -> "GradedPolynomial":
        other = _coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, Fraction(0)) + c
        return GradedPolynomial(out)

    __radd__ = __add__

    def __neg__(self) -> "GradedPolynomial":
        return GradedPolynomial({m: -c for m, c in self._terms.items()})

    def __sub__(self, other) -> "GradedPolynomial":
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "GradedPolynomial":
        return (-self) + other

    def __mul__(self, other) -> "GradedPolynomial":
        if isinstance(other, (int, Fraction)):
            return GradedPolynomial({m: c * other for m, c in self._terms.items()})
        other = _coerce(other)
        if other is NotImplemented:
            return other
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = _mono_mul(m1, m2)
                out[m] = out.get(m, Fraction(0)) + c1 * c2
        return GradedPolynomial(out)

    __rmul__ = __mul__

    def __truediv__(self, other: Scalar) -> "GradedPolynomial":
        return self * (1 / Fraction(other))

    def __pow__(self, n: int) -> "GradedPolynomial":
        if n < 0:
            raise ValueError("negative powers are not supported")
        result = GradedPolynomial.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return False
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def substitute(self, images: Callable[[Generator], object] | Mapping[Generator, object], one):
        """Evaluate in another ring; ``one`` is that ring's unit."""
        lookup = images.__getitem__ if isinstance(images, Mapping) else images
        powers: dict[tuple[Generator, int], object] = {}

        def power(g: Generator, e: int):
            key = (g, e)
            if key not in powers:
                powers[key] = lookup(g) if e == 1 else power(g, e - 1) * lookup(g)
            return powers[key]

        total = one * 0
        for mono, c in self._terms.items():
            term = one
            for g, e in mono:
                term = term * power(g, e)
            total = total + term * c
        return total

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        """Grade descending, then ascending generator-index sequences."""

        def key(item):
            mono = item[0]
            indices = tuple(g.index for g, e in mono for _ in range(e))
            return (-_mono_grade(mono), indices, tuple(g.symbol for g, _ in mono))

        return sorted(self._terms.items(), key=key)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for i, (mono, c) in enumerate(self.sorted_terms()):
            body = " ".join(g.name if e == 1 else f"{g.name}^{e}" for g, e in mono)
            parts.append(format_scalar_term(c, body, i == 0))
        return "".join(parts)

    def __repr__(self) -> str:
        return f"GradedPolynomial({self})"


def _coerce(x) -> GradedPolynomial:
    if isinstance(x, GradedPolynomial):
        return x
    if isinstance(x, (int, Fraction)):
        return GradedPolynomial.constant(x)
    return NotImplemented


def monomial_from_indices(symbol: str, indices: Iterable[int], grade_per_index: int = 2) -> Monomial:
    exps: dict[Generator, int] = {}
    for i in indices:
        g = Generator(symbol, i, grade_per_index * i)
        exps[g] = exps.get(g, 0) + 1
    return tuple(sorted(exps.items()))
