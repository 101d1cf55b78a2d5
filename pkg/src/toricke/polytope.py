"""Exact rational geometry of normalized Fano polytopes.

A polytope is given by integer facet normals ``u_j`` and is the set
``P = {x : u_j . x + 1 >= 0 for all j}``. Everything here (vertices,
triangulation, volume, barycenter) is computed with :class:`fractions.Fraction`
so that downstream decisions such as "is the barycenter zero" are exact.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from numbers import Rational
from typing import Any, Iterable, Sequence

import numpy as np

Vector = tuple[Fraction, ...]


class PolytopeError(ValueError):
    """Raised for malformed, unbounded or otherwise invalid polytope data."""


# ---------------------------------------------------------------------------
# small exact linear algebra


def _solve(rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> Vector | None:
    """Solve a square system exactly; ``None`` if singular."""
    n = len(rows)
    m = [list(map(Fraction, r)) + [Fraction(b)] for r, b in zip(rows, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return None
        m[col], m[piv] = m[piv], m[col]
        p = m[col][col]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col] / p
                m[r] = [a - f * b for a, b in zip(m[r], m[col])]
    return tuple(m[i][n] / m[i][i] for i in range(n))


def _rank(rows: Sequence[Sequence[Fraction]]) -> int:
    m = [list(map(Fraction, r)) for r in rows]
    if not m:
        return 0
    rank, ncol = 0, len(m[0])
    for col in range(ncol):
        piv = next((r for r in range(rank, len(m)) if m[r][col] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for r in range(rank + 1, len(m)):
            if m[r][col] != 0:
                f = m[r][col] / m[rank][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[rank])]
        rank += 1
    return rank


def _det(rows: Sequence[Sequence[Fraction]]) -> Fraction:
    m = [list(map(Fraction, r)) for r in rows]
    n = len(m)
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det *= m[col][col]
        for r in range(col + 1, n):
            if m[r][col] != 0:
                f = m[r][col] / m[col][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[col])]
    return det


def _kernel_line(rows: Sequence[Sequence[int]], n: int) -> Vector | None:
    """Spanning vector of the kernel of an (n-1) x n matrix of rank n-1."""
    if n == 1:
        return (Fraction(1),)
    # Cramer/cofactor expansion: d_i = (-1)^i det(rows without column i)
    d = tuple(
        (-1) ** i * _det([[r[j] for j in range(n) if j != i] for r in rows])
        for i in range(n)
    )
    return d if any(d) else None


def dot(u: Iterable, x: Iterable):
    return sum((a * b for a, b in zip(u, x)), start=0)


def affine_dim(points: Sequence[Vector]) -> int:
    if not points:
        return -1
    base = points[0]
    return _rank([[a - b for a, b in zip(p, base)] for p in points[1:]])


# ---------------------------------------------------------------------------
# domain types


@dataclass(frozen=True)
class Simplex:
    vertices: tuple[Vector, ...]

    def __post_init__(self):
        if self.volume <= 0:
            raise PolytopeError("degenerate simplex")

    @property
    def dim(self) -> int:
        return len(self.vertices) - 1

    @property
    def volume(self) -> Fraction:
        v0 = self.vertices[0]
        edges = [[a - b for a, b in zip(v, v0)] for v in self.vertices[1:]]
        return abs(_det(edges)) / math.factorial(self.dim)

    @property
    def centroid(self) -> Vector:
        k = len(self.vertices)
        return tuple(sum(col) / k for col in zip(*self.vertices))


@dataclass(frozen=True)
class Triangulation:
    simplices: tuple[Simplex, ...]

    def __len__(self):
        return len(self.simplices)

    def __iter__(self):
        return iter(self.simplices)

    @property
    def volume(self) -> Fraction:
        return sum((s.volume for s in self.simplices), start=Fraction(0))


@dataclass(frozen=True)
class VertexSet:
    vertices: tuple[Vector, ...]

    def __len__(self):
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)

    def as_array(self) -> np.ndarray:
        return np.array([[float(c) for c in v] for v in self.vertices])


@dataclass(frozen=True)
class FanoPolytope:
    """Normalized polytope ``{x : u_j . x + 1 >= 0}`` with the origin inside.

    Vertices and the triangulation are derived once at construction; the
    object is immutable afterwards.
    """

    dim: int
    facets: tuple[tuple[int, ...], ...]
    name: str | None = None
    _vertices: VertexSet = field(init=False, repr=False, compare=False)
    _incidence: tuple[frozenset[int], ...] = field(init=False, repr=False, compare=False)
    _triangulation: Triangulation = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        facets = _check_facets(self.dim, self.facets)
        object.__setattr__(self, "facets", facets)
        _check_bounded(self.dim, facets)
        verts = _enumerate_vertices(self.dim, facets)
        # facet j -> indices of vertices lying on it
        incidence = tuple(
            frozenset(i for i, v in enumerate(verts) if dot(u, v) + 1 == 0)
            for u in facets
        )
        for j, inc in enumerate(incidence):
            if affine_dim([verts[i] for i in inc]) != self.dim - 1:
                raise PolytopeError(f"facet {j} {list(facets[j])} is redundant")
        object.__setattr__(self, "_vertices", VertexSet(verts))
        object.__setattr__(self, "_incidence", incidence)
        object.__setattr__(self, "_triangulation", _triangulate(self.dim, verts, incidence))

    @property
    def vertices(self) -> VertexSet:
        return self._vertices

    @property
    def triangulation(self) -> Triangulation:
        return self._triangulation

    def facet_vertices(self, j: int) -> list[Vector]:
        return [self._vertices.vertices[i] for i in sorted(self._incidence[j])]

    def facet_value(self, j: int, x) -> Any:
        """``l_j(x) = u_j . x + 1``."""
        return dot(self.facets[j], x) + 1

    def contains(self, x) -> bool:
        return all(dot(u, x) + 1 >= 0 for u in self.facets)

    def normals_array(self) -> np.ndarray:
        return np.array(self.facets, dtype=np.int64)

    def to_document(self) -> dict:
        doc: dict[str, Any] = {}
        if self.name is not None:
            doc["name"] = self.name
        doc["dim"] = self.dim
        doc["facets"] = [list(u) for u in self.facets]
        return doc


# ---------------------------------------------------------------------------
# construction helpers


def _check_facets(dim, facets) -> tuple[tuple[int, ...], ...]:
    if isinstance(dim, bool) or not isinstance(dim, int) or dim < 1:
        raise PolytopeError(f"dim must be a positive integer, got {dim!r}")
    if not isinstance(facets, (list, tuple)) or not facets:
        raise PolytopeError("facets must be a non-empty list of integer vectors")
    out = []
    for j, u in enumerate(facets):
        if not isinstance(u, (list, tuple)):
            raise PolytopeError(f"facet {j} is not a vector: {u!r}")
        if len(u) != dim:
            raise PolytopeError(f"facet {j} has length {len(u)}, expected dim={dim}")
        for c in u:
            if isinstance(c, bool) or not isinstance(c, (int, np.integer)):
                raise PolytopeError(f"facet {j} has non-integer entry {c!r}")
        u = tuple(int(c) for c in u)
        if not any(u):
            raise PolytopeError(f"facet {j} is the zero vector")
        if u in out:
            raise PolytopeError(f"facet {j} {list(u)} is repeated (redundant)")
        out.append(u)
    return tuple(out)


def _check_bounded(dim, facets) -> None:
    if _rank(facets) < dim:
        raise PolytopeError("polytope is unbounded (facet normals do not span)")
    # A nonzero recession cone {d : U d >= 0} of a pointed polyhedron has an
    # extreme ray cut out by dim-1 independent tight constraints.
    for sub in combinations(facets, dim - 1):
        d = _kernel_line(sub, dim)
        if d is None:
            continue
        for sign in (1, -1):
            if all(sign * dot(u, d) >= 0 for u in facets):
                raise PolytopeError(
                    f"polytope is unbounded along direction {[str(sign * c) for c in d]}"
                )


def _enumerate_vertices(dim, facets) -> tuple[Vector, ...]:
    minus_one = [Fraction(-1)] * dim
    found = set()
    for sub in combinations(facets, dim):
        x = _solve(sub, minus_one)
        if x is not None and all(dot(u, x) + 1 >= 0 for u in facets):
            found.add(x)
    return tuple(sorted(found))


def _triangulate(dim, verts, incidence) -> Triangulation:
    def fan(face: frozenset[int], d: int) -> list[tuple[int, ...]]:
        if d == 0:
            return [tuple(face)]
        apex = min(face)  # vertices are sorted, so this is the lex-smallest
        subfaces = set()
        for inc in incidence:
            g = face & inc
            if g != face and apex not in g and affine_dim([verts[i] for i in g]) == d - 1:
                subfaces.add(g)
        cells = []
        for g in sorted(subfaces, key=sorted):
            cells.extend((apex,) + c for c in fan(g, d - 1))
        return cells

    origin = tuple(Fraction(0) for _ in range(dim))
    simplices = []
    for inc in incidence:
        for cell in fan(inc, dim - 1):
            simplices.append(Simplex((origin,) + tuple(verts[i] for i in cell)))
    simplices.sort(key=lambda s: sorted(s.vertices))
    return Triangulation(tuple(simplices))


# ---------------------------------------------------------------------------
# public operations


def parse_polytope(doc: str | bytes | dict) -> FanoPolytope:
    """Build a polytope from a JSON document (or an already-decoded dict)."""
    if isinstance(doc, (str, bytes)):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as exc:
            raise PolytopeError(f"malformed polytope document: {exc}") from None
    if not isinstance(doc, dict):
        raise PolytopeError("polytope document must be an object")
    missing = {"dim", "facets"} - doc.keys()
    if missing:
        raise PolytopeError(f"polytope document is missing {sorted(missing)}")
    name = doc.get("name")
    if name is not None and not isinstance(name, str):
        raise PolytopeError("name must be a string")
    return FanoPolytope(doc["dim"], doc["facets"], name)


def load_polytope(path) -> FanoPolytope:
    with open(path) as fh:
        return parse_polytope(fh.read())


def enumerate_vertices(P: FanoPolytope) -> VertexSet:
    return P.vertices


def triangulate(P: FanoPolytope) -> Triangulation:
    return P.triangulation


def volume(P: FanoPolytope) -> Fraction:
    return P.triangulation.volume


def barycenter(P: FanoPolytope) -> Vector:
    total = [Fraction(0)] * P.dim
    for s in P.triangulation:
        vol = s.volume
        for i, c in enumerate(s.centroid):
            total[i] += vol * c
    V = volume(P)
    return tuple(t / V for t in total)


def support_max(P: FanoPolytope, c) -> Any:
    """``max_{x in P} c . x``, attained at a vertex.

    Exact when ``c`` is rational, float otherwise.
    """
    if len(c) != P.dim:
        raise ValueError(f"vector of length {len(c)} for a {P.dim}-dimensional polytope")
    if all(isinstance(ci, Rational) for ci in c):
        return max(dot(c, v) for v in P.vertices)
    return max(float(dot((float(ci) for ci in c), map(float, v))) for v in P.vertices)


def bounding_box(P: FanoPolytope) -> tuple[Vector, Vector]:
    cols = list(zip(*P.vertices))
    return tuple(min(c) for c in cols), tuple(max(c) for c in cols)


def apply_lattice_map(P: FanoPolytope, sigma) -> FanoPolytope:
    """Image of ``P`` under ``x -> sigma x`` for a unimodular integer matrix.

    The facet normals transform by ``u -> sigma^{-T} u``.
    """
    S = np.asarray(sigma, dtype=np.int64)
    if round(abs(np.linalg.det(S))) != 1:
        raise ValueError("lattice map must be unimodular")
    inv_t = np.rint(np.linalg.inv(S).T).astype(np.int64)
    facets = [tuple(int(c) for c in inv_t @ np.array(u)) for u in P.facets]
    return FanoPolytope(P.dim, facets, P.name)
