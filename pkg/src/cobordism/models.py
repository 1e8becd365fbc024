"""Computable surrogates for closed symplectic manifolds.

A :class:`ManifoldModel` is a presented cohomology ring together with the
total Chern class of the tangent bundle, the class of the symplectic form
and an integer multiplier ``scale`` (the model stands for ``(V, scale*w)``).
Projective spaces, the 2-torus and products of these are enough to realize
every class the calculator works with.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Union

from .algebra.partitions import Partition, partitions
from .algebra.symfun import monomial_in_elementary
from .classvector import ClassVector

Scalar = Union[int, Fraction]

# a ring monomial: (exponents of even generators, bitmask of odd generators)
Mono = tuple


def _popcount(x: int) -> int:
    return bin(x).count("1")


def _odd_sign(a: int, b: int) -> int:
    """Sign of reordering the odd generators of ``a`` followed by those of ``b``."""
    swaps = 0
    j = 0
    while b >> j:
        if (b >> j) & 1:
            swaps += _popcount(a >> (j + 1))
        j += 1
    return -1 if swaps % 2 else 1


@dataclass(frozen=True)
class CohomologyRing:
    """``Z[x_1..x_r]/(x_i^(top_i + 1))`` tensored with an exterior algebra on ``n_odd`` generators.

    Odd generators come in pairs ``(a_j, b_j)``, one pair per torus factor; the
    fundamental class reads the coefficient of ``prod x_i^top_i * a_1 b_1 a_2 b_2 ...``.
    """

    even_tops: tuple[int, ...] = ()
    n_odd: int = 0

    @property
    def dim(self) -> int:
        """Complex dimension."""
        return sum(self.even_tops) + self.n_odd // 2

    @property
    def top(self) -> Mono:
        return (self.even_tops, (1 << self.n_odd) - 1)

    def one(self) -> "CohomologyElement":
        return CohomologyElement(self, {((0,) * len(self.even_tops), 0): 1})

    def zero(self) -> "CohomologyElement":
        return CohomologyElement(self, {})

    def even_generator(self, i: int) -> "CohomologyElement":
        exps = tuple(int(j == i) for j in range(len(self.even_tops)))
        return CohomologyElement(self, {(exps, 0): 1})

    def odd_generator(self, j: int) -> "CohomologyElement":
        return CohomologyElement(self, {((0,) * len(self.even_tops), 1 << j): 1})

    def tensor(self, other: "CohomologyRing") -> "CohomologyRing":
        return CohomologyRing(self.even_tops + other.even_tops, self.n_odd + other.n_odd)

    def mono_mul(self, m1: Mono, m2: Mono) -> tuple[int, Mono] | None:
        (e1, o1), (e2, o2) = m1, m2
        if o1 & o2:
            return None
        exps = tuple(a + b for a, b in zip(e1, e2))
        if any(e > t for e, t in zip(exps, self.even_tops)):
            return None
        return _odd_sign(o1, o2), (exps, o1 | o2)


class CohomologyElement:
    __slots__ = ("ring", "_terms")

    def __init__(self, ring: CohomologyRing, terms: Mapping[Mono, Scalar]):
        self.ring = ring
        self._terms = {m: Fraction(c) for m, c in terms.items() if c != 0}

    def items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def degree_of(self, m: Mono) -> int:
        """Real degree of a monomial."""
        return 2 * sum(m[0]) + _popcount(m[1])

    def homogeneous(self, real_degree: int) -> "CohomologyElement":
        return CohomologyElement(
            self.ring, {m: c for m, c in self._terms.items() if self.degree_of(m) == real_degree})

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.one() * other
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, Fraction(0)) + c
        return CohomologyElement(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return self * -1

    def __sub__(self, other):
        return self + (-other if isinstance(other, CohomologyElement) else -Fraction(other))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CohomologyElement(self.ring, {m: c * other for m, c in self._terms.items()})
        if not isinstance(other, CohomologyElement):
            return NotImplemented
        out: dict[Mono, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                prod = self.ring.mono_mul(m1, m2)
                if prod is None:
                    continue
                sign, m = prod
                out[m] = out.get(m, Fraction(0)) + sign * c1 * c2
        return CohomologyElement(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result = self.ring.one()
        for _ in range(n):
            result = result * self
        return result

    def inverse(self) -> "CohomologyElement":
        """Inverse of ``1 + nilpotent``."""
        unit = self._terms.get(((0,) * len(self.ring.even_tops), 0), Fraction(0))
        if unit == 0:
            raise ZeroDivisionError("element has no unit part")
        nil = self * (1 / unit) - 1
        result, power = self.ring.one(), self.ring.one()
        for _ in range(self.ring.dim):
            power = power * -nil
            result = result + power
        return result * (1 / unit)

    def integrate(self) -> Fraction:
        return self._terms.get(self.ring.top, Fraction(0))

    def __eq__(self, other) -> bool:
        if not isinstance(other, CohomologyElement):
            return NotImplemented
        return self.ring == other.ring and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.ring, frozenset(self._terms.items())))

    def __repr__(self) -> str:
        return f"CohomologyElement({self._terms})"


def integrate_product(a: CohomologyElement, b: CohomologyElement) -> Fraction:
    """``(a * b)[V]`` without forming the whole product."""
    ring = a.ring
    tops, full = ring.top
    total = Fraction(0)
    for (e, o), c in a.items():
        comp_e = tuple(t - x for t, x in zip(tops, e))
        if any(x < 0 for x in comp_e):
            continue
        d = b._terms.get((comp_e, full ^ o))
        if d:
            total += _odd_sign(o, full ^ o) * c * d
    return total


def _embed(x: CohomologyElement, ring: CohomologyRing, even_offset: int, odd_offset: int):
    before = (0,) * even_offset
    after = (0,) * (len(ring.even_tops) - even_offset - len(x.ring.even_tops))
    return CohomologyElement(ring, {(before + e + after, o << odd_offset): c
                                    for (e, o), c in x.items()})


@dataclass(frozen=True)
class ManifoldModel:
    ring: CohomologyRing
    tangent_chern: CohomologyElement
    omega: CohomologyElement
    scale: int = 1
    label: str = field(default="?", compare=False)

    @property
    def dim(self) -> int:
        """Complex dimension."""
        return self.ring.dim

    @property
    def bundle_class(self) -> CohomologyElement:
        """First Chern class of the marked line bundle, ``scale * omega``."""
        return self.omega * self.scale

    def chern_class(self, r: int) -> CohomologyElement:
        return self.tangent_chern.homogeneous(2 * r)

    def volume(self) -> Fraction:
        return (self.bundle_class ** self.dim).integrate()

    def is_classical(self) -> bool:
        return self.omega.is_zero()

    def __mul__(self, other):
        if isinstance(other, ManifoldModel):
            return product(self, other)
        return NotImplemented

    def __str__(self) -> str:
        return self.label


# -- constructors ---------------------------------------------------------

def point() -> ManifoldModel:
    ring = CohomologyRing()
    return ManifoldModel(ring, ring.one(), ring.zero(), 1, "pt")


def cp(n: int, k: int = 1) -> ManifoldModel:
    """``(CP_n, k w)`` with ``w`` the Fubini-Study class; ``n = 0`` is the point."""
    if n < 0:
        raise ValueError("projective dimension must be non-negative")
    if k < 1:
        raise ValueError("the form multiplier must be a positive integer")
    if n == 0:
        return point()
    ring = CohomologyRing((n,), 0)
    x = ring.even_generator(0)
    label = f"(CP{n},w)" if k == 1 else f"(CP{n},{k}w)"
    return ManifoldModel(ring, (ring.one() + x) ** (n + 1), x, k, label)


def classical_cp(n: int) -> ManifoldModel:
    """``CP_n`` carrying the trivial line bundle, i.e. the class in the invariant subring."""
    if n == 0:
        return point()
    model = cp(n)
    return replace(model, omega=model.ring.zero(), label=f"CP{n}")


def torus() -> ManifoldModel:
    """The 2-torus ``X`` with trivial tangent bundle and ``w = ab``, ``(ab)[X] = 1``."""
    ring = CohomologyRing((), 2)
    omega = ring.odd_generator(0) * ring.odd_generator(1)
    return ManifoldModel(ring, ring.one(), omega, 1, "X")


def product(a: ManifoldModel, b: ManifoldModel) -> ManifoldModel:
    """Cartesian product; the marked bundles are tensored, so forms add."""
    if a.ring == CohomologyRing():
        return b
    if b.ring == CohomologyRing():
        return a
    ring = a.ring.tensor(b.ring)
    ne, no = len(a.ring.even_tops), a.ring.n_odd

    def lift(x, side):
        return _embed(x, ring, 0, 0) if side == 0 else _embed(x, ring, ne, no)

    tangent = lift(a.tangent_chern, 0) * lift(b.tangent_chern, 1)
    omega = lift(a.bundle_class, 0) + lift(b.bundle_class, 1)
    return ManifoldModel(ring, tangent, omega, 1, _product_label(a.label, b.label))


def _product_label(left: str, right: str) -> str:
    """Join factor labels, collecting adjacent repeats as powers (``CP1 CP1`` -> ``CP1^2``)."""
    factors: list[list] = []
    for word in f"{left} {right}".split():
        base, _, exp = word.partition("^")
        if factors and factors[-1][0] == base:
            factors[-1][1] += int(exp or 1)
        else:
            factors.append([base, int(exp or 1)])
    return " ".join(b if e == 1 else f"{b}^{e}" for b, e in factors)


def product_of(models: Iterable[ManifoldModel]) -> ManifoldModel:
    result = point()
    for m in models:
        result = product(result, m)
    return result


def scale(a: ManifoldModel, n: int) -> ManifoldModel:
    """Adams operation ``[n]``: replace the form by ``n`` times itself."""
    if n < 1:
        raise ValueError("scale factor must be a positive integer")
    if n == 1:
        return a
    match = re.fullmatch(r"\(CP(\d+),(\d*)w\)", a.label)
    if match:
        label = f"(CP{match[1]},{int(match[2] or 1) * n}w)"
    else:
        label = f"[{n}]({a.label})" if " " in a.label else f"[{n}]{a.label}"
    return replace(a, scale=a.scale * n, label=label)


# -- characteristic numbers ------------------------------------------------

def _chern_products(total: CohomologyElement, d: int) -> dict[Partition, CohomologyElement]:
    """``c^mu = prod c_(mu_i)`` for all partitions of weight at most ``d``."""
    pieces = {r: total.homogeneous(2 * r) for r in range(1, d + 1)}
    products = {Partition(): total.ring.one()}
    for w in range(1, d + 1):
        for mu in partitions(w):
            rest = Partition(mu[1:])
            products[mu] = products[rest] * pieces[mu[0]]
    return products


def _symmetric_value(lam: Partition, products: Mapping[Partition, CohomologyElement],
                     basis: str) -> CohomologyElement:
    if basis == "chern":
        return products[lam]
    ring = next(iter(products.values())).ring
    value = ring.zero()
    for mu, c in monomial_in_elementary(lam):
        value = value + products[mu] * c
    return value


def characteristic_numbers(ring: CohomologyRing, total_chern: CohomologyElement,
                           marked: CohomologyElement, keys: Iterable[tuple[Partition, int]],
                           basis: str = "monomial") -> dict[tuple[Partition, int], Fraction]:
    """``(s_I(c) * marked^m)[V]`` for each ``(I, m)``.

    ``s_I`` is the monomial symmetric function of the Chern roots, or the Chern
    monomial ``c_I`` when ``basis == "chern"``.
    """
    keys = list(keys)
    d = max((p.weight for p, _ in keys), default=0)
    products = _chern_products(total_chern, d)
    powers = {0: ring.one()}
    out = {}
    for lam, m in keys:
        if m not in powers:
            powers[m] = marked ** m
        out[(lam, m)] = integrate_product(_symmetric_value(lam, products, basis), powers[m])
    return out


def coordinate_keys(d: int) -> Iterator[tuple[Partition, int]]:
    for m in range(d + 1):
        for lam in partitions(d - m):
            yield lam, m


def chern_coordinates(x: "ManifoldModel | ModelSum", convention: str = "tangent") -> ClassVector:
    """Coordinates ``sum (m_I(T) (scale w)^m)[V] t^I w_m`` of a model or formal sum.

    ``convention`` selects alternative readings used only for comparison:
    ``"normal"`` uses the stable normal bundle, ``"chern"`` uses Chern
    monomials ``c_I`` in place of monomial symmetric functions.
    """
    if isinstance(x, ModelSum):
        total = ClassVector.zero()
        for model, c in x.items():
            total = total + chern_coordinates(model, convention) * c
        return total
    return _coordinates(x, convention)


@lru_cache(maxsize=512)
def _coordinates(a: ManifoldModel, convention: str) -> ClassVector:
    total = a.tangent_chern
    basis = "monomial"
    if convention == "normal":
        total = total.inverse()
    elif convention == "chern":
        basis = "chern"
    elif convention != "tangent":
        raise ValueError(f"unknown convention {convention!r}")
    numbers = characteristic_numbers(a.ring, total, a.bundle_class,
                                     coordinate_keys(a.dim), basis)
    return ClassVector({(lam, (m,)): v for (lam, m), v in numbers.items()})


def classical_part(c: ClassVector) -> ClassVector:
    return c.classical_part()


@lru_cache(maxsize=None)
def cp_vector(n: int) -> ClassVector:
    """Coordinates of the classical class ``CP_n``."""
    return chern_coordinates(cp(n)).classical_part() if n else ClassVector.one()


def cp_polynomial_vector(poly) -> ClassVector:
    """Image of a polynomial in the ``CP_n`` generators under ``CP_n -> cp_vector(n)``."""
    return poly.substitute(lambda g: cp_vector(g.index), ClassVector.one())


# -- formal sums -------------------------------------------------------------

class ModelSum:
    """Finite rational combination of models, the form every class expression takes."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[ManifoldModel, Scalar] | Iterable = ()):
        pairs = terms.items() if isinstance(terms, Mapping) else terms
        out: dict[ManifoldModel, Fraction] = {}
        for model, c in pairs:
            out[model] = out.get(model, Fraction(0)) + Fraction(c)
        self._terms = {m: c for m, c in out.items() if c != 0}

    @classmethod
    def of(cls, model: ManifoldModel, coefficient: Scalar = 1) -> "ModelSum":
        return cls([(model, coefficient)])

    def items(self):
        return self._terms.items()

    def __iter__(self):
        return iter(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    @property
    def dim(self) -> int:
        return max((m.dim for m in self._terms), default=0)

    def __add__(self, other):
        other = _as_sum(other)
        if other is NotImplemented:
            return other
        return ModelSum(list(self._terms.items()) + list(other._terms.items()))

    __radd__ = __add__

    def __neg__(self):
        return self * -1

    def __sub__(self, other):
        other = _as_sum(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return ModelSum([(m, c * other) for m, c in self._terms.items()])
        other = _as_sum(other)
        if other is NotImplemented:
            return other
        return ModelSum([(product(m1, m2), c1 * c2)
                         for m1, c1 in self._terms.items()
                         for m2, c2 in other._terms.items()])

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        other = _as_sum(other)
        if other is NotImplemented:
            return other
        return other * self

    def __eq__(self, other) -> bool:
        other = _as_sum(other)
        return other is not NotImplemented and self._terms == other._terms

    __hash__ = None

    def __str__(self) -> str:
        from .algebra.polynomial import format_scalar_term

        if not self._terms:
            return "0"
        return "".join(format_scalar_term(c, m.label, i == 0)
                       for i, (m, c) in enumerate(self._terms.items()))


def _as_sum(x):
    if isinstance(x, ModelSum):
        return x
    if isinstance(x, ManifoldModel):
        return ModelSum.of(x)
    return NotImplemented
