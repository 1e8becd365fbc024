"""Delzant polytopes given by facet normals and support numbers.

The polytope is ``{y : <n_f, y> + s_f >= 0 for every facet f}`` with ``n_f``
the primitive inward normal.  Vertices are recorded by the set of facets
through them.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd
from pathlib import Path

from ..algebra import linalg


class PolytopeParseError(ValueError):
    """Malformed polytope text."""


class PolytopeValidationError(ValueError):
    """Well-formed data that is not a Delzant polytope."""


def determinant(rows) -> int:
    n = len(rows)
    if n == 0:
        return 1
    reduced = [[Fraction(x) for x in row] for row in rows]
    det = Fraction(1)
    for c in range(n):
        pivot = next((r for r in range(c, n) if reduced[r][c] != 0), None)
        if pivot is None:
            return 0
        if pivot != c:
            reduced[c], reduced[pivot] = reduced[pivot], reduced[c]
            det = -det
        det *= reduced[c][c]
        for r in range(c + 1, n):
            f = reduced[r][c] / reduced[c][c]
            reduced[r] = [a - f * b for a, b in zip(reduced[r], reduced[c])]
    return int(det)


@dataclass(frozen=True)
class DelzantPolytope:
    dim: int
    normals: tuple[tuple[int, ...], ...]
    supports: tuple[int, ...]
    vertices: tuple[tuple[int, ...], ...]  # sorted facet indices through each vertex
    name: str = ""

    @property
    def facets(self) -> range:
        return range(len(self.normals))

    def vertex_points(self) -> list[tuple[Fraction, ...]]:
        return [_solve_vertex(self.normals, self.supports, v) for v in self.vertices]

    def is_face(self, facet_set) -> bool:
        """Whether the facets in ``facet_set`` have a common point."""
        s = set(facet_set)
        return any(s <= set(v) for v in self.vertices)

    def vertices_containing(self, facet_set) -> list[tuple[int, ...]]:
        s = set(facet_set)
        return [v for v in self.vertices if s <= set(v)]

    def scaled(self, n: int) -> "DelzantPolytope":
        return DelzantPolytope(self.dim, self.normals, tuple(n * s for s in self.supports),
                               self.vertices, f"{n}*{self.name}" if self.name else "")

    def to_text(self) -> str:
        lines = [f"dim {self.dim}", f"facets {len(self.normals)}"]
        for normal, s in zip(self.normals, self.supports):
            lines.append("f " + " ".join(map(str, normal + (s,))))
        for v in self.vertices:
            lines.append("vertex " + " ".join(map(str, v)))
        return "\n".join(lines) + "\n"


def _solve_vertex(normals, supports, facet_set) -> tuple[Fraction, ...]:
    rows = [normals[f] for f in facet_set]
    return tuple(linalg.solve(rows, [-supports[f] for f in facet_set]))


def _slack(normal, support, point) -> Fraction:
    return sum(Fraction(a) * y for a, y in zip(normal, point)) + support


def compute_vertices(normals, supports, dim: int) -> list[tuple[int, ...]]:
    """Facet sets of the vertices; raises if some vertex lies on more than ``dim`` facets."""
    if dim == 0:
        return [()]
    found: dict[tuple[Fraction, ...], set[int]] = {}
    for subset in combinations(range(len(normals)), dim):
        if determinant([normals[f] for f in subset]) == 0:
            continue
        point = _solve_vertex(normals, supports, subset)
        if all(_slack(n, s, point) >= 0 for n, s in zip(normals, supports)):
            found.setdefault(point, set()).update(subset)
    vertices = []
    for point, facet_set in sorted(found.items()):
        if len(facet_set) != dim:
            raise PolytopeValidationError(
                f"not simple: vertex {tuple(map(str, point))} lies on facets {sorted(facet_set)}")
        vertices.append(tuple(sorted(facet_set)))
    return sorted(vertices)


def make_polytope(normals, supports, vertices=None, name: str = "",
                  dim: int | None = None) -> DelzantPolytope:
    """Validate facet data and build the polytope."""
    normals = tuple(tuple(int(a) for a in n) for n in normals)
    supports = tuple(int(s) for s in supports)
    if len(normals) != len(supports):
        raise PolytopeValidationError("each facet needs one normal and one support number")
    if dim is None:
        dim = len(normals[0]) if normals else 0
    if dim and not normals:
        raise PolytopeValidationError(f"a {dim}-dimensional polytope needs facets")
    if any(len(n) != dim for n in normals):
        raise PolytopeValidationError("normals have inconsistent lengths")
    for f, n in enumerate(normals):
        if gcd(*n) != 1:
            raise PolytopeValidationError(f"normal of facet {f} is not primitive: {n}")
    computed = compute_vertices(normals, supports, dim)
    if dim and not computed:
        raise PolytopeValidationError("facet inequalities define an empty or unbounded region")
    for v in computed:
        det = determinant([normals[f] for f in v])
        if abs(det) != 1:
            raise PolytopeValidationError(
                f"vertex on facets {list(v)} is not unimodular (determinant {det})")
    used = {f for v in computed for f in v}
    missing = sorted(set(range(len(normals))) - used)
    if missing:
        raise PolytopeValidationError(f"facets {missing} do not support the polytope")
    for v in computed:
        for f in v:
            # leaving facet f along the edge from v must reach another vertex
            if not any(f not in w and len(set(v) & set(w)) == dim - 1 for w in computed):
                raise PolytopeValidationError(
                    f"polytope is unbounded: edge from vertex {list(v)} off facet {f} is a ray")
    if vertices is not None:
        given = sorted(tuple(sorted(v)) for v in vertices)
        if given != computed:
            raise PolytopeValidationError(
                f"declared vertices {given} disagree with the facet data {computed}")
    return DelzantPolytope(dim, normals, supports, tuple(computed), name)


def parse_polytope(text: str, name: str = "") -> DelzantPolytope:
    """Read the line-oriented format: ``dim n``, ``facets m``, ``f a_1 .. a_n s``, ``vertex ..``."""
    lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append((lineno, line.split()))

    def ints(lineno, words):
        try:
            return [int(w) for w in words]
        except ValueError:
            raise PolytopeParseError(f"line {lineno}: expected integers, got {' '.join(words)!r}")

    if len(lines) < 2:
        raise PolytopeParseError("expected 'dim n' and 'facets m' header lines")
    (l1, w1), (l2, w2) = lines[0], lines[1]
    if len(w1) != 2 or w1[0] != "dim":
        raise PolytopeParseError(f"line {l1}: expected 'dim n'")
    if len(w2) != 2 or w2[0] != "facets":
        raise PolytopeParseError(f"line {l2}: expected 'facets m'")
    dim, = ints(l1, w1[1:])
    m, = ints(l2, w2[1:])
    if dim < 0 or m < 0:
        raise PolytopeParseError("dimension and facet count must be non-negative")
    normals, supports, vertices = [], [], []
    for lineno, words in lines[2:]:
        if words[0] == "f":
            values = ints(lineno, words[1:])
            if len(values) != dim + 1:
                raise PolytopeParseError(f"line {lineno}: facet needs {dim} normal entries and a support")
            normals.append(tuple(values[:dim]))
            supports.append(values[dim])
        elif words[0] == "vertex":
            values = ints(lineno, words[1:])
            if len(values) != dim:
                raise PolytopeParseError(f"line {lineno}: vertex needs {dim} facet indices")
            if any(not 0 <= v < m for v in values):
                raise PolytopeParseError(f"line {lineno}: facet index out of range")
            vertices.append(tuple(values))
        else:
            raise PolytopeParseError(f"line {lineno}: unknown keyword {words[0]!r}")
    if len(normals) != m:
        raise PolytopeParseError(f"declared {m} facets but found {len(normals)}")
    return make_polytope(normals, supports, vertices or None, name, dim)


def load_polytope(path) -> DelzantPolytope:
    path = Path(path)
    return parse_polytope(path.read_text(encoding="utf-8"), path.stem)


# -- standard polytopes ------------------------------------------------------

def point_polytope() -> DelzantPolytope:
    return make_polytope((), (), name="pt")


def simplex(n: int, size: int = 1) -> DelzantPolytope:
    if n == 0:
        return point_polytope()
    normals = [tuple(int(i == j) for j in range(n)) for i in range(n)] + [(-1,) * n]
    return make_polytope(normals, [0] * n + [size], name=f"simplex{n}")


def interval(length: int = 1) -> DelzantPolytope:
    return make_polytope([(1,), (-1,)], [0, length], name="interval")


def cube(n: int) -> DelzantPolytope:
    result = point_polytope()
    for _ in range(n):
        result = polytope_product(result, interval())
    return DelzantPolytope(result.dim, result.normals, result.supports, result.vertices, f"cube{n}")


def polytope_product(p: DelzantPolytope, q: DelzantPolytope) -> DelzantPolytope:
    """Cartesian product, re-validated from scratch rather than assumed Delzant."""
    normals = [n + (0,) * q.dim for n in p.normals] + [(0,) * p.dim + n for n in q.normals]
    supports = list(p.supports) + list(q.supports)
    name = f"{p.name}x{q.name}" if p.name and q.name else ""
    return make_polytope(normals, supports, name=name)


# -- bundled examples ------------------------------------------------------------

CORPUS_DIR = Path(__file__).parent / "corpus"


def corpus_names() -> list[str]:
    return sorted(p.stem for p in CORPUS_DIR.glob("*.poly"))


def corpus_polytope(name: str) -> DelzantPolytope:
    path = CORPUS_DIR / f"{name}.poly"
    if not path.exists():
        raise KeyError(f"no bundled polytope named {name!r}")
    return load_polytope(path)
