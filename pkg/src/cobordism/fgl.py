"""Mischenko's logarithm, its inverse and the formal group law of complex cobordism.

Series here are indexed by a *degree* ``N``: everything is exact through
``u^N`` inclusive (internally a :class:`TruncSeries` of order ``N + 1``).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .algebra.polynomial import GradedPolynomial
from .algebra.series import TruncSeries, series_compose, series_revert, substitute
from .classvector import ClassVector
from .models import cp_polynomial_vector

ONE = GradedPolynomial.constant(1)


class IntegralityError(ArithmeticError):
    def __init__(self, i: int, j: int, entry, value):
        super().__init__(f"a[{i},{j}] has non-integral coordinate {value} at {entry}")
        self.i, self.j, self.entry, self.value = i, j, entry, value


def _check_degree(N: int) -> None:
    if N < 2:
        raise ValueError("degree must be at least 2")


@lru_cache(maxsize=None)
def misc_log(N: int) -> TruncSeries:
    """``sum_{n>=0} CP_n u^(n+1) / (n+1)`` through ``u^N``."""
    _check_degree(N)
    coeffs = {(n + 1,): GradedPolynomial.cp(n) / (n + 1) for n in range(N)}
    return TruncSeries(coeffs, 1, N + 1, ONE)


@lru_cache(maxsize=None)
def exp_series(N: int) -> TruncSeries:
    """Compositional inverse of :func:`misc_log`."""
    return series_revert(misc_log(N))


@dataclass(frozen=True)
class FormalGroupLaw:
    degree: int
    coefficients: dict  # (i, j) -> GradedPolynomial, for i + j <= degree

    def a(self, i: int, j: int) -> GradedPolynomial:
        return self.coefficients.get((i, j), GradedPolynomial())

    def as_series(self) -> TruncSeries:
        return TruncSeries(self.coefficients, 2, self.degree + 1, ONE)

    def is_unital(self) -> bool:
        return all((self.a(i, 0) == int(i == 1)) and (self.a(0, i) == int(i == 1))
                   for i in range(self.degree + 1))

    def is_symmetric(self) -> bool:
        return all(self.a(i, j) == self.a(j, i) for i, j in self.coefficients)

    def is_associative(self) -> bool:
        """``F(F(u,v),w) == F(u,F(v,w))`` through total degree ``degree``."""
        F = self.as_series()
        u, v, w = (TruncSeries.variable(i, 3, F.order, ONE) for i in range(3))
        left = substitute(F, [substitute(F, [u, v]), w])
        right = substitute(F, [u, substitute(F, [v, w])])
        return left == right

    def items(self):
        return sorted(self.coefficients.items(), key=lambda kv: (sum(kv[0]), kv[0]))

    def __call__(self, u: TruncSeries, v: TruncSeries) -> TruncSeries:
        return substitute(self.as_series(), [u, v])


@lru_cache(maxsize=None)
def fgl(N: int) -> FormalGroupLaw:
    """``F(u, v) = Exp(log u + log v)`` through total degree ``N``."""
    log = misc_log(N)
    both = log.embed(0, 2) + log.embed(1, 2)
    F = series_compose(exp_series(N), both)
    return FormalGroupLaw(N, {e: c for e, c in F.items()})


@dataclass(frozen=True)
class IntegralityReport:
    degree: int
    entries: tuple  # ((i, j), polynomial, ClassVector)

    @property
    def passed(self) -> bool:
        return all(vec.is_integral() for _, _, vec in self.entries)


def coefficient_vector(poly: GradedPolynomial) -> ClassVector:
    """Coordinates of a polynomial in the classes ``CP_n``."""
    return cp_polynomial_vector(poly)


def integrality_report(N: int, strict: bool = True) -> IntegralityReport:
    """Coordinates of every ``a_ij`` with ``i + j <= N`` and ``i, j >= 1``.

    With ``strict`` the first non-integral coordinate raises :class:`IntegralityError`.
    """
    law = fgl(N)
    entries = []
    for (i, j), poly in law.items():
        if i == 0 or j == 0:
            continue
        vec = coefficient_vector(poly)
        if strict:
            for (part, ws), c in vec.sorted_items():
                if c.denominator != 1:
                    raise IntegralityError(i, j, ClassVector.format_key(part, ws), c)
        entries.append(((i, j), poly, vec))
    return IntegralityReport(N, tuple(entries))

