"""Pontrjagin-ring structure on bordism of line-bundle-marked manifolds.

Covers the hyperplane-section operators ``q^i``, the generating series
``beta(u)`` of projective spaces and the dual basis ``b(u) = CP(u)^-1 beta(u)``,
the Cartier identity ``b(u) b(v) = b(u +_F v)``, the diagonal, and the
inductive decomposition of ``CP_n`` into symplectic classes.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial, lcm

from .algebra import linalg
from .algebra.partitions import Partition, partitions
from .algebra.polynomial import GradedPolynomial, format_scalar_term
from .algebra.series import TruncSeries, substitute
from .checks import CheckResult
from .classvector import ClassVector
from .fgl import fgl
from .models import (ManifoldModel, ModelSum, characteristic_numbers, chern_coordinates,
                     classical_cp, cp, cp_polynomial_vector, cp_vector, product,
                     product_of, torus)


class DecompositionError(ArithmeticError):
    pass


# -- hyperplane sections ------------------------------------------------------

def hyperplane(x: ManifoldModel | ModelSum, i: int) -> ClassVector:
    """Coordinates of the ``i``-fold transversal self-intersection of the zero locus.

    Its stable tangent bundle is ``TV - i L``, so the entry at ``J`` is
    ``(m_J(TV - iL) c_1(L)^i)[V]``.  Beyond the dimension the locus is empty.
    """
    if i < 0:
        raise ValueError("hyperplane power must be non-negative")
    if isinstance(x, ModelSum):
        total = ClassVector.zero()
        for model, c in x.items():
            total = total + hyperplane(model, i) * c
        return total
    return _hyperplane(x, i)


@lru_cache(maxsize=1024)
def _hyperplane(a: ManifoldModel, i: int) -> ClassVector:
    d = a.dim
    if i > d:
        return ClassVector.zero()
    L = a.bundle_class
    virtual = a.tangent_chern * ((a.ring.one() + L).inverse() ** i)
    keys = [(lam, i) for lam in partitions(d - i)]
    numbers = characteristic_numbers(a.ring, virtual, L, keys)
    return ClassVector({(lam, (0,)): v for (lam, _), v in numbers.items()})


# -- generating series ----------------------------------------------------------

def beta_vector(k: int) -> ClassVector:
    return chern_coordinates(cp(k)) if k else ClassVector.one()


@lru_cache(maxsize=None)
def beta_series(N: int) -> TruncSeries:
    """``sum_k (CP_k, w) u^k`` through ``u^N``."""
    return TruncSeries.from_list([beta_vector(k) for k in range(N + 1)], N + 1, ClassVector.one())


@lru_cache(maxsize=None)
def cp_series(N: int) -> TruncSeries:
    return TruncSeries.from_list([cp_vector(k) for k in range(N + 1)], N + 1, ClassVector.one())


@lru_cache(maxsize=None)
def b_series(N: int) -> TruncSeries:
    return cp_series(N).inverse() * beta_series(N)


@dataclass(frozen=True)
class BasisClass:
    """A class presented as a combination of models, with its coordinates cached."""

    label: str
    combination: ModelSum
    vector: ClassVector

    @classmethod
    def from_sum(cls, label: str, combination: ModelSum) -> "BasisClass":
        return cls(label, combination, chern_coordinates(combination))

    def hyperplane(self, i: int) -> ClassVector:
        return hyperplane(self.combination, i)


def cp_monomial_model(part: Partition) -> ManifoldModel:
    return product_of(classical_cp(n) for n in part.sort_key())


def classical_sum(poly: GradedPolynomial) -> ModelSum:
    """A polynomial in the ``CP_n`` as a combination of classical product models."""
    terms = []
    for mono, c in poly.items():
        part = Partition([g.index for g, e in mono for _ in range(e)])
        terms.append((cp_monomial_model(part), c))
    return ModelSum(terms)


@lru_cache(maxsize=None)
def _cp_inverse_polynomials(N: int) -> tuple[GradedPolynomial, ...]:
    series = TruncSeries.from_list([GradedPolynomial.cp(n) for n in range(N + 1)], N + 1,
                                   GradedPolynomial.constant(1))
    return tuple(series.inverse().to_list())


@lru_cache(maxsize=None)
def b_class(k: int) -> BasisClass:
    """``b_k = sum_j [CP(u)^-1]_(k-j) (CP_j, w)`` as a combination of models."""
    inv = _cp_inverse_polynomials(max(k, 1))
    total = ModelSum()
    for j in range(k + 1):
        coefficient = classical_sum(inv[k - j])
        total = total + coefficient * ModelSum.of(cp(j))
    return BasisClass.from_sum(f"b{k}", total)


def beta_class(k: int) -> BasisClass:
    return BasisClass.from_sum(f"beta{k}", ModelSum.of(cp(k)))


def triangularity_check(imax: int) -> CheckResult:
    """``beta_i = sum_k CP_(i-k) b_k`` in coordinates for ``i <= imax``."""
    b = b_series(imax)
    for i in range(imax + 1):
        rhs = ClassVector.zero()
        for k in range(i + 1):
            rhs = rhs + cp_vector(i - k) * b[k]
        if rhs != beta_vector(i):
            return CheckResult("triangularity", False, f"i={i}")
    return CheckResult("triangularity", True)


def duality_check(kmax: int) -> CheckResult:
    """``q^i(b_k) = delta_ik`` for ``0 <= i, k <= kmax``."""
    for k in range(kmax + 1):
        for i in range(kmax + 1):
            value = b_class(k).hyperplane(i)
            if value != int(i == k):
                return CheckResult("duality", False, f"q^{i}(b{k}) = {value}")
    return CheckResult("duality", True)


# -- Cartier identity -----------------------------------------------------------

def _first_difference(lhs: TruncSeries, rhs: TruncSeries, N: int) -> tuple | None:
    keys = set(lhs.coefficients()) | set(rhs.coefficients())
    for exp in sorted(keys, key=lambda e: (sum(e), e)):
        if sum(exp) <= N and lhs[exp] != rhs[exp]:
            return exp
    return None


def cartier_sides(N: int) -> tuple[TruncSeries, TruncSeries]:
    """``b(u) b(v)`` and ``b(F(u, v))`` as bivariate series through total degree ``N``."""
    b = b_series(N)
    lhs = b.embed(0, 2) * b.embed(1, 2)
    F = fgl(N).as_series().map_coefficients(cp_polynomial_vector, one=ClassVector.one())
    rhs = substitute(b, [F])
    return lhs, rhs


def cartier_check(N: int) -> CheckResult:
    if N < 2:
        raise ValueError("degree must be at least 2")
    lhs, rhs = cartier_sides(N)
    diff = _first_difference(lhs, rhs, N)
    if diff is None:
        return CheckResult(f"cartier identity through degree {N}", True)
    return CheckResult(f"cartier identity through degree {N}", False,
                       f"bidegree {diff}: {lhs[diff]} != {rhs[diff]}")


# -- diagonal ----------------------------------------------------------------------

def diagonal(c: ClassVector) -> ClassVector:
    """Split each ``w_m`` as ``sum_(a+b=m) w_a (x) w_b``; both factors mark the same bundle."""
    out = {}
    for (part, (m,)), value in c.items():
        for a in range(m + 1):
            out[(part, (a, m - a))] = value
    return ClassVector(out, slots=2)


def widen(c: ClassVector, slots: int) -> ClassVector:
    """A classical vector viewed with ``slots`` divided-power slots."""
    if not c.is_classical():
        raise ValueError("only classical vectors can be widened")
    return ClassVector({(p, (0,) * slots): v for (p, _), v in c.items()}, slots)


def diagonal_sides(N: int) -> tuple[TruncSeries, TruncSeries]:
    one = ClassVector.one(2)
    cp_u = TruncSeries.from_list([widen(cp_vector(n), 2) for n in range(N + 1)], N + 1, one)
    delta_beta = TruncSeries.from_list([diagonal(beta_vector(n)) for n in range(N + 1)], N + 1, one)
    square = [sum((beta_vector(i).tensor(beta_vector(n - i)) for i in range(n + 1)),
                  ClassVector.zero(2)) for n in range(N + 1)]
    return cp_u * delta_beta, TruncSeries.from_list(square, N + 1, one)


def diagonal_check(N: int) -> CheckResult:
    lhs, rhs = diagonal_sides(N)
    for n in range(N + 1):
        if lhs[n] != rhs[n]:
            return CheckResult(f"diagonal identity through degree {N}", False,
                               f"degree {n}: {lhs[n]} != {rhs[n]}")
    return CheckResult(f"diagonal identity through degree {N}", True)


# -- decomposition of CP_n ---------------------------------------------------------

@lru_cache(maxsize=None)
def cp_monomial_basis(w: int) -> tuple[tuple[Partition, ...], tuple[ClassVector, ...]]:
    parts = partitions(w)
    vectors = []
    for part in parts:
        v = ClassVector.one()
        for n in part:
            v = v * cp_vector(n)
        vectors.append(v)
    return parts, tuple(vectors)


def express_in_cp_basis(c: ClassVector) -> dict[Partition, Fraction]:
    """Write a classical vector of one degree as ``sum b_I CP^I`` (unique over Q)."""
    if not c.is_classical():
        raise ValueError("only classical vectors have a CP-monomial expansion")
    if c.is_zero():
        return {}
    parts, vectors = cp_monomial_basis(c.degree)
    keys = [(p, (0,)) for p in partitions(c.degree)]
    columns = [[v[k] for v in vectors] for k in keys]
    solution = linalg.solve(columns, [c[k] for k in keys])
    return {p: x for p, x in zip(parts, solution) if x != 0}


@dataclass(frozen=True)
class Decomposition:
    """``CP_n = (CP_n, k w) - sum coefficient * CP^I X^m`` over ``terms``."""

    n: int
    k: int
    terms: tuple  # (coefficient, Partition, torus power)

    def as_model_sum(self) -> ModelSum:
        total = ModelSum.of(cp(self.n, self.k))
        for c, part, m in self.terms:
            model = product(cp_monomial_model(part), product_of([torus()] * m))
            total = total - ModelSum.of(model, c)
        return total

    def residual(self) -> ClassVector:
        return chern_coordinates(self.as_model_sum()) - cp_vector(self.n)

    def rhs_text(self) -> str:
        head = f"(CP{self.n},w)" if self.k == 1 else f"(CP{self.n},{self.k}w)"
        pieces = [head]
        for c, part, m in self.terms:
            factors = []
            for k, count in enumerate(part.multiindex, start=1):
                if count:
                    factors.append(f"CP{k}" if count == 1 else f"CP{k}^{count}")
            factors.append("X" if m == 1 else f"X^{m}")
            pieces.append(format_scalar_term(-c, " ".join(factors), False))
        return "".join(pieces)

    def __str__(self) -> str:
        return f"CP{self.n} = {self.rhs_text()}"


@lru_cache(maxsize=None)
def decompose_cpn(n: int) -> Decomposition:
    """Run the inductive construction and certify it by coordinate arithmetic."""
    if n < 1:
        raise ValueError("n must be positive")
    coords = chern_coordinates(cp(n))
    expansions = {m: express_in_cp_basis(coords.omega_part(m)) for m in range(1, n + 1)}
    k = 1
    for m, expansion in expansions.items():
        for b in expansion.values():
            k = lcm(k, (b / factorial(m)).denominator)
    terms = []
    for m in range(1, n + 1):
        for part in sorted(expansions[m], key=lambda p: p.sort_key()):
            b = expansions[m][part]
            terms.append((Fraction(k) ** (m - 1) * k * b / factorial(m), part, m))
    result = Decomposition(n, k, tuple(terms))
    residual = result.residual()
    if not residual.is_zero():
        raise DecompositionError(f"decomposition of CP{n} leaves residual {residual}")
    return result
