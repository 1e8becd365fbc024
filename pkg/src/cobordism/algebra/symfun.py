"""Change of basis between monomial and elementary symmetric functions.

The transition ``e_mu = sum_lambda A[mu][lambda] m_lambda`` counts 0-1
matrices with row sums ``mu`` and column sums ``lambda``; the monomial basis
is obtained by inverting ``A`` one weight at a time.  Expansions are in
infinitely many variables, so they stay valid for virtual bundles.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Mapping

from .linalg import inverse
from .partitions import Partition, partitions

#: largest weight for which tables are built; raise it for larger dimensions
MAX_WEIGHT = 16


def _check_weight(w: int) -> None:
    if w > MAX_WEIGHT:
        raise ValueError(f"weight {w} exceeds the configured bound {MAX_WEIGHT}")


@lru_cache(maxsize=None)
def _zero_one_count(rows: tuple[int, ...], cols: tuple[int, ...]) -> int:
    if not rows:
        return int(all(c == 0 for c in cols))
    first, rest = rows[0], rows[1:]
    open_cols = [i for i, c in enumerate(cols) if c > 0]
    total = 0
    for chosen in combinations(open_cols, first):
        remaining = list(cols)
        for i in chosen:
            remaining[i] -= 1
        total += _zero_one_count(rest, tuple(sorted(remaining, reverse=True)))
    return total


def zero_one_matrices(row_sums: Partition, col_sums: Partition) -> int:
    """Number of 0-1 matrices with the given row and column sums."""
    return _zero_one_count(tuple(row_sums), tuple(col_sums))


@lru_cache(maxsize=None)
def _tables(w: int) -> tuple[tuple[Partition, ...], list, list]:
    _check_weight(w)
    basis = partitions(w)
    e_in_m = [[Fraction(zero_one_matrices(mu, lam)) for lam in basis] for mu in basis]
    m_in_e = inverse(e_in_m)
    return basis, e_in_m, m_in_e


@lru_cache(maxsize=None)
def monomial_in_elementary(lam: Partition) -> tuple[tuple[Partition, Fraction], ...]:
    """``m_lam`` as a list of ``(mu, coefficient)`` pairs meaning ``sum c * e_mu``."""
    lam = Partition(lam)
    basis, _, m_in_e = _tables(lam.weight)
    row = m_in_e[basis.index(lam)]
    return tuple((mu, c) for mu, c in zip(basis, row) if c != 0)


@lru_cache(maxsize=None)
def elementary_in_monomial(mu: Partition) -> tuple[tuple[Partition, Fraction], ...]:
    mu = Partition(mu)
    basis, e_in_m, _ = _tables(mu.weight)
    row = e_in_m[basis.index(mu)]
    return tuple((lam, c) for lam, c in zip(basis, row) if c != 0)


def symfun_convert(poly: Mapping[Partition, Fraction], to: str = "e") -> dict[Partition, Fraction]:
    """Rewrite ``sum c_lam b_lam`` from one basis into the other.

    ``to="e"`` reads the input in the monomial basis; ``to="m"`` reads it in the
    elementary basis.
    """
    if to == "e":
        table = monomial_in_elementary
    elif to == "m":
        table = elementary_in_monomial
    else:
        raise ValueError(f"unknown target basis {to!r}")
    out: dict[Partition, Fraction] = {}
    for lam, c in poly.items():
        for mu, d in table(Partition(lam)):
            out[mu] = out.get(mu, Fraction(0)) + Fraction(c) * d
    return {k: v for k, v in out.items() if v != 0}
