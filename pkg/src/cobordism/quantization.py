"""Functionals on prequantized classes: the hbar series, index polynomials, K-numbers.

A functional linear over the classical subring is a power series
``sum_i phi_i q^i`` in the hyperplane operator with classical coefficients;
convolution (the product dual to the diagonal) multiplies these series.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product as cartesian
from math import factorial
from typing import Iterable, Iterator

from .algebra.partitions import Partition, partitions
from .algebra.polynomial import format_scalar_term
from .algebra.series import TruncSeries
from .algebra.symfun import monomial_in_elementary
from .checks import CheckResult
from .classvector import ClassVector
from .fgl import exp_series
from .hopf import hyperplane
from .models import (CohomologyElement, ManifoldModel, ModelSum, classical_cp,
                     cp, cp_polynomial_vector, cp_vector, product, product_of, scale, torus)

# -- the hbar functional ------------------------------------------------------

def hbar(x: ManifoldModel | ModelSum) -> ClassVector:
    """``sum_{n>=1} (CP_(n-1) / n) q^n(x)`` in classical coordinates."""
    total = ClassVector.zero()
    for n in range(1, x.dim + 1):
        total = total + cp_vector(n - 1) * hyperplane(x, n) / n
    return total


def scaling_check(a: ManifoldModel, n: int) -> CheckResult:
    """``hbar(V, n w) == n hbar(V, w)``."""
    lhs, rhs = hbar(scale(a, n)), hbar(a) * n
    name = f"hbar scaling {a.label} n={n}"
    return CheckResult(name, lhs == rhs, None if lhs == rhs else f"{lhs} != {rhs}")


@dataclass(frozen=True)
class Functional:
    """``sum_i coefficients[i] * q^i`` with classical coefficient vectors."""

    name: str
    coefficients: tuple  # ClassVector per power of q

    def __call__(self, x: ManifoldModel | ModelSum) -> ClassVector:
        total = ClassVector.zero()
        for i, c in enumerate(self.coefficients):
            if not c.is_zero() and i <= x.dim:
                total = total + c * hyperplane(x, i)
        return total

    @property
    def order(self) -> int:
        return len(self.coefficients)

    def series(self) -> TruncSeries:
        return TruncSeries.from_list(self.coefficients, self.order, ClassVector.one())

    def __add__(self, other: "Functional") -> "Functional":
        n = max(self.order, other.order)
        a = self.coefficients + (ClassVector.zero(),) * (n - self.order)
        b = other.coefficients + (ClassVector.zero(),) * (n - other.order)
        return Functional(f"({self.name} + {other.name})", tuple(x + y for x, y in zip(a, b)))

    def __mul__(self, c) -> "Functional":
        return Functional(f"{c}*{self.name}", tuple(x * c for x in self.coefficients))


def hyperplane_functional(i: int, order: int) -> Functional:
    coefficients = [ClassVector.zero()] * order
    coefficients[i] = ClassVector.one()
    return Functional(f"q^{i}", tuple(coefficients))


def counit(order: int) -> Functional:
    """Reads the underlying classical class: ``q^0``."""
    return hyperplane_functional(0, order)


def hbar_functional(order: int) -> Functional:
    coefficients = [ClassVector.zero()] + [cp_vector(n - 1) / n for n in range(1, order)]
    return Functional("hbar", tuple(coefficients))


def convolve(phi: Functional, psi: Functional) -> Functional:
    """``(phi * psi)(V) = (phi (x) psi)(Delta V)``; on series this is the product."""
    order = max(phi.order, psi.order)
    out = [ClassVector.zero() for _ in range(order)]
    for a, x in enumerate(phi.coefficients):
        for b, y in enumerate(psi.coefficients):
            if a + b < order and not x.is_zero() and not y.is_zero():
                out[a + b] = out[a + b] + x * y
    return Functional(f"({phi.name} * {psi.name})", tuple(out))


def evaluate_on_diagonal(phi: Functional, psi: Functional, a: ManifoldModel) -> ClassVector:
    """``(phi (x) psi)(V, L, L)`` from the bivariate numbers ``q_1^i q_2^j (V, L, L)``.

    Both factors mark the same bundle, so the ``i + j``-fold zero locus of ``L``
    carries every such number; this route never forms the convolution series.
    """
    total = ClassVector.zero()
    for i, x in enumerate(phi.coefficients):
        for j, y in enumerate(psi.coefficients):
            if i + j <= a.dim and not x.is_zero() and not y.is_zero():
                total = total + x * y * hyperplane(a, i + j)
    return total


def exp_of(phi: Functional, order: int) -> Functional:
    """``Exp(phi) = sum_n e_n phi^{*n}`` with ``e_n`` the coefficients of Exp."""
    exp = exp_series(max(order - 1, 2))
    result = Functional("0", tuple(ClassVector.zero() for _ in range(order)))
    power = counit(order)
    for n in range(1, order):
        power = convolve(power, phi)
        result = result + power * cp_polynomial_vector(exp[n])
    return Functional(f"Exp({phi.name})", result.coefficients)


def basis_models(d: int) -> Iterator[ManifoldModel]:
    """Products ``prod (CP_(n_i), w) x X^j`` of complex dimension ``d``."""
    for j in range(d + 1):
        for part in partitions(d - j):
            yield product(product_of(cp(n) for n in part), product_of([torus()] * j))


def exp_hbar_check(dmax: int) -> CheckResult:
    """``Exp(hbar) == q^1`` on all basis models of real dimension at most ``dmax``."""
    top = dmax // 2
    order = top + 1
    lhs = exp_of(hbar_functional(order), order)
    q1 = hyperplane_functional(1, order)
    models = [m for d in range(1, top + 1) for m in basis_models(d)]
    models += [product(classical_cp(1), cp(1)), product(classical_cp(1), torus())]
    for m in models:
        if m.dim > top:
            continue
        left, right = lhs(m), q1(m)
        if left != right:
            return CheckResult(f"Exp(hbar) = q through dimension {dmax}", False,
                               f"{m.label}: {left} != {right}")
    return CheckResult(f"Exp(hbar) = q through dimension {dmax}", True,
                       details=tuple(m.label for m in models if m.dim <= top))


# -- genera and index polynomials ------------------------------------------------

@dataclass(frozen=True)
class GenusSeries:
    """``g(x) = sum coefficients[k] x^k`` with ``g(0) = 1``."""

    name: str
    coefficients: tuple

    def __post_init__(self):
        if self.coefficients[0] != 1:
            raise ValueError("a genus series has constant term 1")

    def __getitem__(self, k: int) -> Fraction:
        return self.coefficients[k] if k < len(self.coefficients) else Fraction(0)


def _fraction_series(coefficients, order: int) -> TruncSeries:
    return TruncSeries.from_list([Fraction(c) for c in coefficients], order, Fraction(1))


@lru_cache(maxsize=None)
def l_series(order: int = 17) -> GenusSeries:
    """``x / tanh x = cosh x * (sinh x / x)^-1``."""
    cosh = [Fraction(1, factorial(k)) if k % 2 == 0 else 0 for k in range(order)]
    sinh_over_x = [Fraction(1, factorial(k + 1)) if k % 2 == 0 else 0 for k in range(order)]
    s = _fraction_series(cosh, order) * _fraction_series(sinh_over_x, order).inverse()
    return GenusSeries("L", tuple(s.to_list()))


@lru_cache(maxsize=None)
def todd_series(order: int = 17) -> GenusSeries:
    """``x / (1 - e^-x) = ((1 - e^-x) / x)^-1``."""
    base = [Fraction((-1) ** k, factorial(k + 1)) for k in range(order)]
    return GenusSeries("Todd", tuple(_fraction_series(base, order).inverse().to_list()))


def genus_class(g: GenusSeries, a: ManifoldModel) -> CohomologyElement:
    """``prod g(x_i)`` over the Chern roots, via ``sum_lam g_lam m_lam`` in Chern classes."""
    ring = a.ring
    pieces = {r: a.chern_class(r) for r in range(1, a.dim + 1)}
    chern_products = {Partition(): ring.one()}
    total = ring.one()
    for w in range(1, a.dim + 1):
        for mu in partitions(w):
            chern_products[mu] = chern_products[Partition(mu[1:])] * pieces[mu[0]]
        for lam in partitions(w):
            coefficient = Fraction(1)
            for part in lam:
                coefficient *= g[part]
            if coefficient == 0:
                continue
            for mu, c in monomial_in_elementary(lam):
                total = total + chern_products[mu] * (c * coefficient)
    return total


def _exp_class(x: CohomologyElement, d: int) -> CohomologyElement:
    result, power = x.ring.one(), x.ring.one()
    for j in range(1, d + 1):
        power = power * x
        result = result + power * Fraction(1, factorial(j))
    return result


def twisted_index(x: ManifoldModel | ModelSum, n: int) -> Fraction:
    """``(ch(L^n) L(V))[V]`` for the marked bundle ``L``."""
    if isinstance(x, ModelSum):
        return sum((twisted_index(m, n) * c for m, c in x.items()), Fraction(0))
    chern_character = _exp_class(x.bundle_class * n, x.dim)
    return (chern_character * genus_class(l_series(), x)).integrate()


def interpolate(points: list[tuple[int, Fraction]]) -> list[Fraction]:
    """Coefficients (constant first) of the polynomial through ``points``."""
    n = len(points)
    xs = [Fraction(p[0]) for p in points]
    table = [Fraction(p[1]) for p in points]
    newton = [table[0]]
    for level in range(1, n):
        table = [(table[i + 1] - table[i]) / (xs[i + level] - xs[i]) for i in range(n - level)]
        newton.append(table[0])
    coefficients = [Fraction(0)] * n
    for k in range(n - 1, -1, -1):
        # coefficients <- coefficients * (x - xs[k]) + newton[k]
        shifted = [Fraction(0)] + coefficients[:-1]
        coefficients = [s - xs[k] * c for s, c in zip(shifted, coefficients)]
        coefficients[0] += newton[k]
    return coefficients


def evaluate_polynomial(coefficients: Iterable[Fraction], n) -> Fraction:
    total = Fraction(0)
    for c in reversed(list(coefficients)):
        total = total * n + c
    return total


class CertificationError(ArithmeticError):
    pass


def index_polynomial(x: ManifoldModel | ModelSum) -> tuple[Fraction, ...]:
    """Degree ``<= d`` polynomial through ``n = 0..d``, certified at ``n = d+1..2d``."""
    d = x.dim
    points = [(n, twisted_index(x, n)) for n in range(d + 1)]
    coefficients = interpolate(points)
    for n in range(d + 1, 2 * d + 1):
        if evaluate_polynomial(coefficients, n) != twisted_index(x, n):
            raise CertificationError(f"index of {x} is not polynomial of degree {d} at n={n}")
    while len(coefficients) > 1 and coefficients[-1] == 0:
        coefficients.pop()
    return tuple(coefficients)


def format_polynomial(coefficients, variable: str = "n") -> str:
    terms = [(k, c) for k, c in enumerate(coefficients) if c != 0]
    if not terms:
        return "0"
    out = []
    for i, (k, c) in enumerate(reversed(terms)):
        body = "" if k == 0 else (variable if k == 1 else f"{variable}^{k}")
        out.append(format_scalar_term(Fraction(c), body, i == 0))
    return "".join(out)


def k_number(x: ManifoldModel | ModelSum) -> Fraction:
    """Riemann-Roch number ``(ch(L) Td(V))[V]``."""
    if isinstance(x, ModelSum):
        return sum((k_number(m) * c for m, c in x.items()), Fraction(0))
    return (_exp_class(x.bundle_class, x.dim) * genus_class(todd_series(), x)).integrate()


def linearity_grid() -> Iterator[tuple[ManifoldModel, ManifoldModel]]:
    """Classical factors paired with marked factors for the linearity property."""
    classical = [classical_cp(1), classical_cp(2), product(classical_cp(1), classical_cp(1))]
    quantum = [cp(1), cp(2), torus()]
    return cartesian(classical, quantum)


def linearity_check() -> CheckResult:
    """``hbar(M V) == M hbar(V)`` for classical ``M`` on :func:`linearity_grid`."""
    for m, v in linearity_grid():
        lhs = hbar(product(m, v))
        rhs = classical_coordinates(m) * hbar(v)
        if lhs != rhs:
            return CheckResult("classical linearity of hbar", False, f"{m.label} x {v.label}")
    return CheckResult("classical linearity of hbar", True)


def classical_coordinates(m: ManifoldModel) -> ClassVector:
    """Classical coordinates of a model carrying the trivial bundle."""
    return hyperplane(m, 0)
