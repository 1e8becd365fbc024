"""Stanley-Reisner face rings and top-degree integration on toric manifolds.

Generators ``x_f`` (one per facet) are subject to the face relations (a
product over facets with no common vertex vanishes) and the linear relations
``sum_f <l, n_f> x_f = 0`` for every linear form ``l``.  In top degree the
quotient is ``Z``, spanned by any vertex monomial ``prod_{f at v} x_f = 1``.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement, permutations
from typing import Iterator, Mapping

from ..algebra import linalg
from ..algebra.partitions import Partition, partitions
from ..algebra.polynomial import Generator, GradedPolynomial
from ..classvector import ClassVector
from .polytope import DelzantPolytope

Exponents = tuple  # one entry per facet


class FaceRing:
    def __init__(self, polytope: DelzantPolytope):
        self.polytope = polytope
        self.n = polytope.dim
        self.m = len(polytope.normals)
        self._vertex_sets = [frozenset(v) for v in polytope.vertices]
        self._dual: dict[tuple[int, ...], dict[int, tuple[int, ...]]] = {}
        self.reduce_to_top = lru_cache(maxsize=None)(self._reduce)

    def is_face(self, facets) -> bool:
        s = set(facets)
        return any(s <= v for v in self._vertex_sets)

    def linear_relations(self) -> list[dict[int, int]]:
        """``theta_i = sum_f (n_f)_i x_f`` for ``i = 1..n``."""
        return [{f: n[i] for f, n in enumerate(self.polytope.normals) if n[i]}
                for i in range(self.n)]

    def _dual_form(self, vertex: tuple[int, ...], f: int) -> tuple[int, ...]:
        """The integral form ``l`` with ``<l, n_g> = [g == f]`` for facets ``g`` at ``vertex``."""
        table = self._dual.setdefault(vertex, {})
        if f not in table:
            rows = [self.polytope.normals[g] for g in vertex]
            target = [int(g == f) for g in vertex]
            table[f] = tuple(int(x) for x in linalg.solve(rows, target))
        return table[f]

    def _choose(self, exps: Exponents, support, strategy: str) -> tuple[int, tuple[int, ...]]:
        repeated = [f for f, a in enumerate(exps) if a >= 2]
        candidates = sorted(v for v in self.polytope.vertices if support <= set(v))
        if strategy == "first":
            return repeated[0], candidates[0]
        if strategy == "last":
            return repeated[-1], candidates[-1]
        raise ValueError(f"unknown rewriting strategy {strategy!r}")

    def _reduce(self, exps: Exponents, strategy: str = "first") -> int:
        exps = tuple(exps)
        if len(exps) != self.m:
            raise ValueError(f"monomial needs {self.m} exponents")
        if sum(exps) != self.n:
            raise ValueError(f"monomial has degree {sum(exps)}, top degree is {self.n}")
        support = {f for f, a in enumerate(exps) if a}
        if not self.is_face(support):
            return 0
        if all(a <= 1 for a in exps):
            return 1
        f, vertex = self._choose(exps, support, strategy)
        form = self._dual_form(vertex, f)
        total = 0
        for h, normal in enumerate(self.polytope.normals):
            if h in vertex:
                continue
            pairing = sum(a * b for a, b in zip(form, normal))
            if pairing == 0 or not self.is_face(support | {h}):
                continue
            shifted = list(exps)
            shifted[f] -= 1
            shifted[h] += 1
            total -= pairing * self.reduce_to_top(tuple(shifted), strategy)
        return total

    def integrate(self, poly: Mapping[Exponents, Fraction]) -> Fraction:
        """Pair a polynomial in the ``x_f`` with the fundamental class."""
        return sum((Fraction(c) * self.reduce_to_top(e) for e, c in poly.items()
                    if sum(e) == self.n), Fraction(0))

    def top_monomials(self) -> Iterator[Exponents]:
        for combo in combinations_with_replacement(range(self.m), self.n):
            exps = [0] * self.m
            for f in combo:
                exps[f] += 1
            yield tuple(exps)


def _poly_mul(a: dict, b: dict, max_degree: int) -> dict:
    out: dict = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = tuple(x + y for x, y in zip(e1, e2))
            if sum(e) <= max_degree:
                out[e] = out.get(e, 0) + c1 * c2
    return {e: c for e, c in out.items() if c}


def monomial_symmetric(lam: Partition, nvars: int) -> dict:
    """``m_lam(x_1, ..., x_nvars)`` as a dict of exponent tuples."""
    if lam.length > nvars:
        return {}
    padded = tuple(lam) + (0,) * (nvars - lam.length)
    return {e: 1 for e in set(permutations(padded))}


def symplectic_class(polytope: DelzantPolytope) -> dict:
    """``w = sum_f s_f x_f`` in the face ring."""
    m = len(polytope.normals)
    return {tuple(int(g == f) for g in range(m)): s
            for f, s in enumerate(polytope.supports) if s}


def exhaustive_numbers(polytope: DelzantPolytope) -> GradedPolynomial:
    """Degree-``n`` part of ``prod_f (1 - x_f z_f)^-1`` read in ``H^2n(M) = Z``."""
    ring = FaceRing(polytope)
    terms = {}
    for exps in ring.top_monomials():
        value = ring.reduce_to_top(exps)
        if value:
            mono = tuple((Generator("z", f, 2), a) for f, a in enumerate(exps) if a)
            terms[mono] = value
    return GradedPolynomial(terms)


def to_class(polytope: DelzantPolytope) -> ClassVector:
    """Coordinates ``(m_I(x_f) w^m)[M]`` with tangent Chern class ``prod (1 + x_f)``."""
    ring = FaceRing(polytope)
    n, m = ring.n, ring.m
    omega = symplectic_class(polytope)
    powers = {0: {(0,) * m: 1}}
    for k in range(1, n + 1):
        powers[k] = _poly_mul(powers[k - 1], omega, n)
    out = {}
    for k in range(n + 1):
        for lam in partitions(n - k):
            poly = _poly_mul(monomial_symmetric(lam, m), powers[k], n)
            out[(lam, (k,))] = ring.integrate(poly)
    return ClassVector(out)


def ray(polytope: DelzantPolytope, n: int) -> ClassVector:
    """The class of ``(V_P, n w)``: supports multiplied by ``n``."""
    if n < 1:
        raise ValueError("ray parameter must be a positive integer")
    return to_class(polytope.scaled(n))
