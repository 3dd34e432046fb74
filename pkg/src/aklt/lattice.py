"""Exact integer geometry for the hexagonal and square lattices.

The hexagonal lattice is embedded as a "brick wall" on Z^2: every
horizontal edge (x,y)-(x+1,y) is present, and the vertical edge
(x,y)-(x,y+1) is present exactly when x+y is odd.  Every vertex then has
degree 3 and all comparisons are exact integer comparisons, so there is
no floating point tolerance anywhere in the geometry.

Hexagonal faces are indexed by their lower-left vertex (x0,y) with x0+y
odd; the face spans vertices x0..x0+2 in rows y and y+1.  Faces form a
triangular lattice whose graph distance is used to carve out the annular
volumes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterator

Vertex = tuple[int, int]
Edge = tuple[Vertex, Vertex]


class LatticeKind(Enum):
    HEXAGONAL = "hexagonal"
    SQUARE = "square"


class Region(Enum):
    """Where a vertex sits relative to an annulus."""
    INTERIOR = "interior"
    INNER_BOUNDARY = "inner_boundary"
    OUTER_BOUNDARY = "outer_boundary"
    NOT_IN_VOLUME = "not_in_volume"


class WindowKind(Enum):
    STRAIGHT_INNER = "straight_inner"
    STRAIGHT_OUTER = "straight_outer"
    CORNER_INNER = "corner_inner"
    CORNER_OUTER = "corner_outer"


def hex_neighbors(v: Vertex) -> tuple[Vertex, Vertex, Vertex]:
    x, y = v
    if (x + y) & 1:
        return ((x - 1, y), (x + 1, y), (x, y + 1))
    return ((x - 1, y), (x + 1, y), (x, y - 1))


def square_neighbors(v: Vertex) -> tuple[Vertex, Vertex, Vertex, Vertex]:
    x, y = v
    return ((x - 1, y), (x + 1, y), (x, y - 1), (x, y + 1))


def neighbors(v: Vertex, lattice: LatticeKind):
    """All lattice-adjacent vertices of v (3 hexagonal, 4 square)."""
    if lattice is LatticeKind.HEXAGONAL:
        return hex_neighbors(v)
    return square_neighbors(v)


def adjacent(u: Vertex, v: Vertex, lattice: LatticeKind) -> bool:
    return v in neighbors(u, lattice)


def canonical_edge(u: Vertex, v: Vertex) -> Edge:
    """Undirected edge in canonical (lexicographic) order."""
    return (u, v) if u < v else (v, u)


# ---------------------------------------------------------------------------
# hexagonal faces and the dual (triangular) metric

def hex_faces(v: Vertex) -> tuple[Vertex, Vertex, Vertex]:
    """The three face ids containing vertex v."""
    x, y = v
    if (x + y) & 1:
        return ((x - 2, y), (x, y), (x - 1, y - 1))
    return ((x - 1, y), (x - 2, y - 1), (x, y - 1))


def face_vertices(f: Vertex) -> tuple[Vertex, ...]:
    x0, y = f
    return ((x0, y), (x0 + 1, y), (x0 + 2, y),
            (x0, y + 1), (x0 + 1, y + 1), (x0 + 2, y + 1))


def face_edges(f: Vertex) -> list[Edge]:
    x0, y = f
    es = []
    for yy in (y, y + 1):
        es.append(canonical_edge((x0, yy), (x0 + 1, yy)))
        es.append(canonical_edge((x0 + 1, yy), (x0 + 2, yy)))
    es.append(canonical_edge((x0, y), (x0, y + 1)))
    es.append(canonical_edge((x0 + 2, y), (x0 + 2, y + 1)))
    return es

HEX_ORIGIN_FACE: Vertex = (1, 0)


def face_distance(f: Vertex, g: Vertex = HEX_ORIGIN_FACE) -> int:
    """Graph distance on the triangular lattice of faces.

    Face moves are (+-2,0) and (+-1,+-1); dx+dy is always even, which
    gives the closed form below.
    """
    dx = abs(f[0] - g[0])
    dy = abs(f[1] - g[1])
    return max(dy, (dx + dy) // 2)


# ---------------------------------------------------------------------------
# annular volumes

@dataclass(frozen=True)
class AnnulusSpec:
    """The annular region between an inner ball of radius K and an outer
    ball of radius N.  K=0 degenerates to the full ball of radius N.

    Hexagonal: union of closed hexagons (plus all edges touching them)
    whose face sits at dual distance K+1..N-1 from the origin face
    (0..N-1 when K=0).  Square: union of radius-1 crosses centered at
    vertices x with K <= |x|_inf <= N-1.
    """
    lattice: LatticeKind
    N: int
    K: int

    def __post_init__(self):
        if self.N <= 0:
            raise ValueError("N must be positive")
        if self.K < 0 or self.K >= self.N:
            raise ValueError("require 0 <= K < N")

    # -- hexagonal helpers --------------------------------------------------

    def _face_in(self, f: Vertex) -> bool:
        d = face_distance(f)
        lo = 0 if self.K == 0 else self.K + 1
        return lo <= d <= self.N - 1

    def _hex_faces_in(self) -> Iterator[Vertex]:
        n = self.N
        for y in range(-n, n + 1):
            for x0 in range(-2 * n - 1, 2 * n + 2):
                if (x0 + y) & 1 and self._face_in((x0, y)):
                    yield (x0, y)

    def _square_centers(self) -> Iterator[Vertex]:
        n = self.N
        for x in range(-n + 1, n):
            for y in range(-n + 1, n):
                if self.K <= max(abs(x), abs(y)) <= n - 1:
                    yield (x, y)

    # -- membership ---------------------------------------------------------

    def contains_edge(self, e: Edge) -> bool:
        u, v = e
        if self.lattice is LatticeKind.SQUARE:
            if v not in square_neighbors(u):
                return False
            return self._square_center(u) or self._square_center(v)
        if v not in hex_neighbors(u):
            return False
        # an edge belongs to every hexagon it is an edge of, and to every
        # hexagon one of its endpoints lies on
        for p in (u, v):
            for f in hex_faces(p):
                if self._face_in(f):
                    return True
        return False

    def _square_center(self, v: Vertex) -> bool:
        return self.K <= max(abs(v[0]), abs(v[1])) <= self.N - 1

    def edges(self) -> set[Edge]:
        out: set[Edge] = set()
        if self.lattice is LatticeKind.SQUARE:
            for c in self._square_centers():
                for q in square_neighbors(c):
                    out.add(canonical_edge(c, q))
            return out
        for f in self._hex_faces_in():
            out.update(face_edges(f))
            for p in face_vertices(f):
                for q in hex_neighbors(p):
                    out.add(canonical_edge(p, q))
        return out

    def open_edges(self) -> set[Edge]:
        """Edges of the open volume: only edges lying on member faces,
        without the dangling boundary edges that edges() includes."""
        if self.lattice is not LatticeKind.HEXAGONAL:
            raise ValueError("open-volume edges defined for the hexagonal "
                             "lattice only")
        out: set[Edge] = set()
        for f in self._hex_faces_in():
            out.update(face_edges(f))
        return out

    def vertices(self) -> set[Vertex]:
        vs: set[Vertex] = set()
        for u, v in self.edges():
            vs.add(u)
            vs.add(v)
        return vs

    def degree(self, v: Vertex, edge_set: set[Edge] | None = None) -> int:
        es = self.edges() if edge_set is None else edge_set
        return sum(canonical_edge(v, q) in es
                   for q in neighbors(v, self.lattice))

    # -- boundary classification ---------------------------------------

    def classify(self, v: Vertex, edge_set: set[Edge] | None = None) -> Region:
        es = self.edges() if edge_set is None else edge_set
        deg = sum(canonical_edge(v, q) in es
                  for q in neighbors(v, self.lattice))
        if deg == 0:
            return Region.NOT_IN_VOLUME
        if self.lattice is LatticeKind.SQUARE:
            if self._square_center(v):
                return Region.INTERIOR
            if max(abs(v[0]), abs(v[1])) < self.K:
                return Region.INNER_BOUNDARY
            return Region.OUTER_BOUNDARY
        if deg == 3:
            return Region.INTERIOR
        # degree-1 tips: inner if the vertex sits on a face inside the hole
        if self.K > 0 and any(face_distance(f) <= self.K for f in hex_faces(v)):
            return Region.INNER_BOUNDARY
        return Region.OUTER_BOUNDARY

    def boundary(self, which: Region) -> set[Vertex]:
        es = self.edges()
        return {v for v in self._vertices_of(es) if self.classify(v, es) is which}

    @staticmethod
    def _vertices_of(es: set[Edge]) -> set[Vertex]:
        vs: set[Vertex] = set()
        for u, v in es:
            vs.add(u)
            vs.add(v)
        return vs


def classify_boundary(v: Vertex, spec: AnnulusSpec) -> Region:
    return spec.classify(v)


# ---------------------------------------------------------------------------
# boundary windows
#
# These replicate, in integer coordinates, the finite boundary segments the
# enumeration tables are computed against.  The three generating lines:
#   diagonal_line(n): edges (1-i,-i)-(2-i,-i), i=0..n  (shared diagonal)
#   inner_line(n):    edges (1-i,1+i)-(2-i,1+i)        (opposite diagonal)
#   outer_line(n):    edges (2i+3,1)-(2i+3,0)          (vertical)
# diagonal_line + inner_line straddles an inner corner, diagonal_line +
# outer_line an outer one.

def diagonal_line(n: int) -> list[Edge]:
    return [((1 - i, -i), (2 - i, -i)) for i in range(n + 1)]


def inner_line(n: int) -> list[Edge]:
    return [((1 - i, 1 + i), (2 - i, 1 + i)) for i in range(n + 1)]


def outer_line(n: int) -> list[Edge]:
    return [((2 * i + 3, 1), (2 * i + 3, 0)) for i in range(n + 1)]


def window_lines(n: int, outer: bool) -> list[Edge]:
    """The full two-sided window used by the table computations: the shared
    diagonal line plus the second line of an outer (outer=True) or inner
    corner.  2(n+1) edges."""
    return diagonal_line(n) + (outer_line(n) if outer else inner_line(n))


@dataclass(frozen=True)
class BoundaryWindow:
    kind: WindowKind
    length: int

    def __post_init__(self):
        if self.length < 1:
            raise ValueError("window length must be >= 1")

    def edges(self) -> list[Edge]:
        n = self.length
        k = self.kind
        if k is WindowKind.STRAIGHT_OUTER:
            return outer_line(n)
        if k is WindowKind.STRAIGHT_INNER:
            return inner_line(n)
        # corner windows straddle the corner: half from each line,
        # nearest-to-corner edges first
        first = (n + 2) // 2
        second = n + 1 - first
        if k is WindowKind.CORNER_OUTER:
            return diagonal_line(first - 1) + outer_line(second - 1)
        return diagonal_line(first - 1) + inner_line(second - 1)


def boundary_window(kind: WindowKind, length: int) -> list[Edge]:
    """length+1 boundary edges along a straight segment or straddling a
    corner.  Rejects length < 1."""
    return BoundaryWindow(kind, length).edges()


def edge_firsts(edges: list[Edge]) -> list[Vertex]:
    return [e[0] for e in edges]


def edge_lasts(edges: list[Edge]) -> list[Vertex]:
    return [e[-1] for e in edges]
