"""Characteristic-number coordinates ``sum c_(I,m) t^I w_m``.

``t^I`` is a monomial in the classes ``t_1, t_2, ...`` indexed by a
partition, and ``w_m`` is the ``m``-th divided power of the marked 2-form,
so that ``w_a w_b = binom(a+b, a) w_(a+b)``.  A vector may carry more than
one divided-power slot; two slots hold the image of the diagonal, where the
basis is ``t^I w_a (x) w_b``.
"""
from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Mapping, Union

from .algebra.partitions import Partition
from .algebra.polynomial import format_scalar_term

Key = tuple  # (Partition, tuple[int, ...])
Scalar = Union[int, Fraction]


class ClassVector:
    __slots__ = ("_terms", "slots")

    def __init__(self, terms: Mapping[Key, Scalar] | None = None, slots: int = 1):
        self.slots = slots
        clean: dict[Key, Fraction] = {}
        for (part, ws), c in (terms or {}).items():
            ws = (ws,) if isinstance(ws, int) else tuple(ws)
            if len(ws) != slots:
                raise ValueError(f"key {ws} does not have {slots} divided-power slots")
            if any(w < 0 for w in ws):
                raise ValueError("divided-power indices are non-negative")
            key = (Partition(part), ws)
            clean[key] = clean.get(key, Fraction(0)) + Fraction(c)
        self._terms = {k: v for k, v in clean.items() if v != 0}

    # -- construction -----------------------------------------------------
    @classmethod
    def one(cls, slots: int = 1) -> "ClassVector":
        return cls({(Partition(), (0,) * slots): 1}, slots)

    @classmethod
    def zero(cls, slots: int = 1) -> "ClassVector":
        return cls({}, slots)

    @classmethod
    def t(cls, *parts: int) -> "ClassVector":
        """The monomial ``t_(p1) t_(p2) ...``."""
        return cls({(Partition(parts), (0,)): 1})

    @classmethod
    def w(cls, m: int) -> "ClassVector":
        return cls({(Partition(), (m,)): 1})

    @classmethod
    def _from_clean(cls, terms: dict, slots: int) -> "ClassVector":
        v = cls.__new__(cls)
        v.slots = slots
        v._terms = {k: c for k, c in terms.items() if c != 0}
        return v

    # -- access -----------------------------------------------------------
    def items(self):
        return self._terms.items()

    def __getitem__(self, key) -> Fraction:
        part, ws = key
        ws = (ws,) if isinstance(ws, int) else tuple(ws)
        return self._terms.get((Partition(part), ws), Fraction(0))

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def scalar(self) -> Fraction | None:
        if not self._terms:
            return Fraction(0)
        unit = (Partition(), (0,) * self.slots)
        if set(self._terms) == {unit}:
            return self._terms[unit]
        return None

    def degrees(self) -> set[int]:
        """Complex degrees ``|I| + sum(ws)`` of the stored entries."""
        return {p.weight + sum(ws) for p, ws in self._terms}

    @property
    def degree(self) -> int:
        degrees = self.degrees()
        if len(degrees) > 1:
            raise ValueError("class vector is not homogeneous")
        return degrees.pop() if degrees else 0

    @property
    def grade(self) -> int:
        return 2 * self.degree

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self._terms.values())

    def is_classical(self) -> bool:
        return all(not any(ws) for _, ws in self._terms)

    # -- operations -------------------------------------------------------
    def classical_part(self) -> "ClassVector":
        return ClassVector._from_clean(
            {k: c for k, c in self._terms.items() if not any(k[1])}, self.slots)

    def omega_part(self, m: int) -> "ClassVector":
        """Entries carrying ``w_m`` (single slot), with ``w_m`` stripped off."""
        self._require_single()
        return ClassVector._from_clean(
            {(p, (0,)): c for (p, ws), c in self._terms.items() if ws[0] == m}, 1)

    def scale_omega(self, n: Scalar) -> "ClassVector":
        """The transform ``w_m -> n^m w_m`` induced by replacing the form by ``n`` times it."""
        n = Fraction(n)
        return ClassVector._from_clean(
            {(p, ws): c * n ** sum(ws) for (p, ws), c in self._terms.items()}, self.slots)

    def _require_single(self) -> None:
        if self.slots != 1:
            raise ValueError("operation needs a single divided-power slot")

    def _check(self, other: "ClassVector") -> None:
        if self.slots != other.slots:
            raise ValueError("class vectors have different slot counts")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = ClassVector.one(self.slots) * other
        if not isinstance(other, ClassVector):
            return NotImplemented
        self._check(other)
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, Fraction(0)) + c
        return ClassVector._from_clean(out, self.slots)

    __radd__ = __add__

    def __neg__(self) -> "ClassVector":
        return ClassVector._from_clean({k: -c for k, c in self._terms.items()}, self.slots)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, ClassVector)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            return ClassVector._from_clean({k: c * other for k, c in self._terms.items()},
                                           self.slots)
        if not isinstance(other, ClassVector):
            return NotImplemented
        self._check(other)
        out: dict[Key, Fraction] = {}
        for (p1, w1), c1 in self._terms.items():
            for (p2, w2), c2 in other._terms.items():
                factor = c1 * c2
                for a, b in zip(w1, w2):
                    factor *= comb(a + b, a)
                key = (p1 + p2, tuple(a + b for a, b in zip(w1, w2)))
                out[key] = out.get(key, Fraction(0)) + factor
        return ClassVector._from_clean(out, self.slots)

    __rmul__ = __mul__

    def __truediv__(self, other: Scalar) -> "ClassVector":
        return self * (1 / Fraction(other))

    def __pow__(self, n: int) -> "ClassVector":
        result = ClassVector.one(self.slots)
        for _ in range(n):
            result = result * self
        return result

    def tensor(self, other: "ClassVector") -> "ClassVector":
        """Tensor over the classical coordinates: t-parts multiply, slots concatenate."""
        out: dict[Key, Fraction] = {}
        for (p1, w1), c1 in self._terms.items():
            for (p2, w2), c2 in other._terms.items():
                key = (p1 + p2, w1 + w2)
                out[key] = out.get(key, Fraction(0)) + c1 * c2
        return ClassVector._from_clean(out, self.slots + other.slots)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = ClassVector.one(self.slots) * other
        if not isinstance(other, ClassVector):
            return NotImplemented
        return self.slots == other.slots and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.slots, frozenset(self._terms.items())))

    # -- printing ---------------------------------------------------------
    def sorted_items(self) -> list[tuple[Key, Fraction]]:
        return sorted(self._terms.items(),
                      key=lambda kv: (sum(kv[0][1]), kv[0][1], kv[0][0].sort_key()))

    @staticmethod
    def format_key(part: Partition, ws: tuple[int, ...]) -> str:
        factors = []
        for k, count in enumerate(part.multiindex, start=1):
            if count:
                factors.append(f"t{k}" if count == 1 else f"t{k}^{count}")
        if len(ws) == 1:
            if ws[0]:
                factors.append(f"w{ws[0]}")
        elif any(ws):
            factors.append("w[" + ",".join(map(str, ws)) + "]")
        return " ".join(factors)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        return "".join(format_scalar_term(c, self.format_key(p, ws), i == 0)
                       for i, ((p, ws), c) in enumerate(self.sorted_items()))

    def __repr__(self) -> str:
        return f"ClassVector({self})"
