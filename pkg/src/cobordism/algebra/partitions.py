"""Integer partitions and their multiindex form.

A partition is stored with weakly decreasing parts.  The multiindex
``(i_1, i_2, ...)`` records how many parts equal each ``k``; both views are
interchangeable, and ``t^I`` monomials are written from either.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Iterator


class Partition(tuple):
    """Weakly decreasing tuple of positive integers."""

    def __new__(cls, parts: Iterable[int] = ()):
        parts = tuple(sorted((int(p) for p in parts), reverse=True))
        if any(p <= 0 for p in parts):
            raise ValueError(f"partition parts must be positive: {parts}")
        return super().__new__(cls, parts)

    @property
    def weight(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    @property
    def multiindex(self) -> tuple[int, ...]:
        """``(i_1, ..., i_max)`` with ``i_k`` the number of parts equal to ``k``."""
        if not self:
            return ()
        counts = [0] * self[0]
        for p in self:
            counts[p - 1] += 1
        return tuple(counts)

    @classmethod
    def from_multiindex(cls, multiindex: Iterable[int]) -> "Partition":
        parts: list[int] = []
        for k, count in enumerate(multiindex, start=1):
            if count < 0:
                raise ValueError("multiindex entries must be non-negative")
            parts.extend([k] * count)
        return cls(parts)

    def __add__(self, other):
        # union of multisets of parts, i.e. t^I * t^J = t^(I+J)
        return Partition(tuple(self) + tuple(other))

    def sort_key(self) -> tuple[int, ...]:
        """Key for canonical printing: ascending parts, compared lexicographically."""
        return tuple(reversed(self))

    def __repr__(self) -> str:
        return f"Partition({tuple(self)!r})"


def _partitions_bounded(n: int, largest: int) -> Iterator[tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions_bounded(n - first, first):
            yield (first,) + rest


@lru_cache(maxsize=None)
def partitions(n: int) -> tuple[Partition, ...]:
    """All partitions of ``n`` in reverse lexicographic order."""
    if n < 0:
        return ()
    return tuple(Partition(p) for p in _partitions_bounded(n, n))


def partitions_upto(n: int) -> Iterator[Partition]:
    for w in range(n + 1):
        yield from partitions(w)
