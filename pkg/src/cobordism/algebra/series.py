"""Truncated formal power series in a few central variables.

Coefficients live in any exact commutative ring whose elements support
``+``, ``-``, ``*`` among themselves, multiplication by a ``Fraction`` and
comparison with ``0``: ``Fraction``, :class:`GradedPolynomial` and
:class:`ClassVector` all qualify.  The truncation ``order`` is an exclusive
bound on total degree; every operation silently drops terms of degree
``>= order``.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Callable, Mapping, Sequence

Exponent = tuple


def _scalar_of(c) -> Fraction | None:
    if isinstance(c, (int, Fraction)):
        return Fraction(c)
    getter = getattr(c, "scalar", None)
    return getter() if getter is not None else None


class TruncSeries:
    __slots__ = ("nvars", "order", "one", "_coeffs")

    def __init__(self, coeffs: Mapping[Exponent, object], nvars: int, order: int, one):
        if nvars < 1:
            raise ValueError("a series needs at least one variable")
        if order < 1:
            raise ValueError("truncation order must be positive")
        self.nvars = nvars
        self.order = order
        self.one = one
        clean = {}
        for exp, c in coeffs.items():
            exp = tuple(exp)
            if len(exp) != nvars:
                raise ValueError(f"exponent {exp} does not match {nvars} variables")
            if sum(exp) < order and not c == 0:
                clean[exp] = c
        self._coeffs = clean

    # -- construction -----------------------------------------------------
    @classmethod
    def variable(cls, index: int, nvars: int, order: int, one) -> "TruncSeries":
        exp = tuple(int(i == index) for i in range(nvars))
        return cls({exp: one}, nvars, order, one)

    @classmethod
    def constant(cls, c, nvars: int, order: int, one) -> "TruncSeries":
        return cls({(0,) * nvars: c}, nvars, order, one)

    @classmethod
    def from_list(cls, coefficients: Sequence, order: int, one) -> "TruncSeries":
        """Univariate series ``sum coefficients[k] u^k``."""
        return cls({(k,): c for k, c in enumerate(coefficients)}, 1, order, one)

    def _like(self, coeffs: Mapping[Exponent, object]) -> "TruncSeries":
        return TruncSeries(coeffs, self.nvars, self.order, self.one)

    # -- access -----------------------------------------------------------
    @property
    def zero_coeff(self):
        return self.one * 0

    def __getitem__(self, exp) -> object:
        if isinstance(exp, int):
            exp = (exp,)
        return self._coeffs.get(tuple(exp), self.zero_coeff)

    def coefficients(self) -> dict[Exponent, object]:
        return dict(self._coeffs)

    def items(self):
        return sorted(self._coeffs.items())

    def to_list(self) -> list:
        if self.nvars != 1:
            raise ValueError("to_list needs a univariate series")
        return [self[k] for k in range(self.order)]

    def constant_term(self):
        return self[(0,) * self.nvars]

    def map_coefficients(self, fn: Callable, one=None) -> "TruncSeries":
        one = fn(self.one) if one is None else one
        return TruncSeries({e: fn(c) for e, c in self._coeffs.items()},
                           self.nvars, self.order, one)

    def truncate(self, order: int) -> "TruncSeries":
        return TruncSeries(self._coeffs, self.nvars, min(order, self.order), self.one)

    def embed(self, index: int, nvars: int) -> "TruncSeries":
        """View a univariate series as a series in variable ``index`` of ``nvars``."""
        if self.nvars != 1:
            raise ValueError("only univariate series can be embedded")
        coeffs = {}
        for (k,), c in self._coeffs.items():
            exp = [0] * nvars
            exp[index] = k
            coeffs[tuple(exp)] = c
        return TruncSeries(coeffs, nvars, self.order, self.one)

    # -- arithmetic -------------------------------------------------------
    def _check(self, other: "TruncSeries") -> None:
        if self.nvars != other.nvars:
            raise ValueError("series have different numbers of variables")

    def __add__(self, other) -> "TruncSeries":
        if not isinstance(other, TruncSeries):
            return self + TruncSeries.constant(other, self.nvars, self.order, self.one)
        self._check(other)
        out = dict(self._coeffs)
        for e, c in other._coeffs.items():
            out[e] = out[e] + c if e in out else c
        return TruncSeries(out, self.nvars, min(self.order, other.order), self.one)

    __radd__ = __add__

    def __neg__(self) -> "TruncSeries":
        return self._like({e: c * -1 for e, c in self._coeffs.items()})

    def __sub__(self, other) -> "TruncSeries":
        return self + (-other)

    def __rsub__(self, other) -> "TruncSeries":
        return (-self) + other

    def __mul__(self, other) -> "TruncSeries":
        if not isinstance(other, TruncSeries):
            return self._like({e: c * other for e, c in self._coeffs.items()})
        self._check(other)
        order = min(self.order, other.order)
        out: dict = {}
        for e1, c1 in self._coeffs.items():
            d1 = sum(e1)
            for e2, c2 in other._coeffs.items():
                if d1 + sum(e2) >= order:
                    continue
                e = tuple(a + b for a, b in zip(e1, e2))
                p = c1 * c2
                out[e] = out[e] + p if e in out else p
        return TruncSeries(out, self.nvars, order, self.one)

    def __rmul__(self, other) -> "TruncSeries":
        return self._like({e: other * c for e, c in self._coeffs.items()})

    def __pow__(self, n: int) -> "TruncSeries":
        if n < 0:
            return self.inverse() ** (-n)
        result = TruncSeries.constant(self.one, self.nvars, self.order, self.one)
        for _ in range(n):
            result = result * self
        return result

    def inverse(self) -> "TruncSeries":
        """Multiplicative inverse; the constant term must be an invertible scalar."""
        c0 = _scalar_of(self.constant_term())
        if not c0:
            raise ZeroDivisionError("constant term is not an invertible scalar")
        if self.nvars != 1:
            raise ValueError("inverse is implemented for univariate series")
        a = self.to_list()
        inv = [self.one * (1 / c0)]
        for k in range(1, self.order):
            acc = self.zero_coeff
            for j in range(1, k + 1):
                if not a[j] == 0:
                    acc = acc + a[j] * inv[k - j]
            inv.append(acc * (-1 / c0))
        return TruncSeries.from_list(inv, self.order, self.one)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncSeries):
            return NotImplemented
        if self.nvars != other.nvars:
            return False
        order = min(self.order, other.order)
        keys = {e for e in self._coeffs if sum(e) < order} | {e for e in other._coeffs if sum(e) < order}
        return all(self[e] - other[e] == 0 for e in keys)

    __hash__ = None

    def __repr__(self) -> str:
        names = "uvwxyz"
        parts = []
        for e, c in self.items():
            mono = "*".join(f"{names[i]}^{k}" if k > 1 else names[i]
                            for i, k in enumerate(e) if k)
            parts.append(f"({c})" + (f"*{mono}" if mono else ""))
        return f"TruncSeries[{self.order}](" + " + ".join(parts or ["0"]) + ")"


def substitute(f: TruncSeries, args: Sequence[TruncSeries]) -> TruncSeries:
    """``f(args[0], ..., args[n-1])``; every argument needs zero constant term."""
    if len(args) != f.nvars:
        raise ValueError(f"expected {f.nvars} arguments, got {len(args)}")
    nvars = args[0].nvars
    for g in args:
        if g.nvars != nvars:
            raise ValueError("arguments must share their variables")
        if not g.constant_term() == 0:
            raise ValueError("substituted series must have zero constant term")
    order = min([f.order] + [g.order for g in args])
    one = f.one
    powers: list[list[TruncSeries]] = []
    for g in args:
        g = g.truncate(order)
        row = [TruncSeries.constant(one, nvars, order, one)]
        top = max((e[len(powers)] for e in f.coefficients()), default=0)
        for _ in range(min(top, order - 1)):
            row.append(row[-1] * g)
        powers.append(row)
    total = TruncSeries({}, nvars, order, one)
    for exp, c in f.items():
        if sum(exp) >= order:
            continue
        term = None
        for i, k in enumerate(exp):
            if k == 0:
                continue
            term = powers[i][k] if term is None else term * powers[i][k]
        if term is None:
            total = total + TruncSeries.constant(c, nvars, order, one)
        else:
            total = total + c * term
    return total


def series_compose(f: TruncSeries, g: TruncSeries) -> TruncSeries:
    """``f(g)`` for univariate ``f``; ``g`` may have one or more variables."""
    if f.nvars != 1:
        raise ValueError("series_compose needs a univariate outer series")
    if g.nvars == 1 and f.order != g.order:
        raise ValueError("truncation orders differ")
    return substitute(f, [g])


def series_revert(f: TruncSeries) -> TruncSeries:
    """Compositional inverse of ``f = c u + ...`` with ``c`` an invertible scalar."""
    if f.nvars != 1:
        raise ValueError("reversion needs a univariate series")
    if not f[0] == 0:
        raise ValueError("series to revert must have zero constant term")
    c = _scalar_of(f[1])
    if not c:
        raise ValueError("linear coefficient must be an invertible scalar")
    one = f.one
    g = TruncSeries({(1,): one * (1 / c)}, 1, f.order, one)
    for k in range(2, f.order):
        err = series_compose(f, g)[k]
        if not err == 0:
            coeffs = g.coefficients()
            coeffs[(k,)] = err * (-1 / c)
            g = TruncSeries(coeffs, 1, f.order, one)
    return g


def identity_series(order: int, one=Fraction(1)) -> TruncSeries:
    return TruncSeries.variable(0, 1, order, one)
