"""Enumeration of square-lattice polymers.

Square-lattice polymers are edge-self-avoiding trails: edges may not
repeat but a vertex may be visited twice.  A twice-visited vertex is a
degree-4 crossing, and the traversal order of the vertex sequence fixes
the pairing of the four incident edges into (in, out) pairs, so two
trails with the same edge set but different crossings are distinct
vertex sequences here.  No extra routing bookkeeping is needed.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .lattice import Edge, Vertex, square_neighbors

Path = tuple[Vertex, ...]


@dataclass(frozen=True)
class Trail:
    vertices: Path
    closed: bool = False

    def __len__(self) -> int:  # number of edges
        return len(self.vertices) - 1 + self.closed

    def edges(self) -> list[Edge]:
        vs = self.vertices
        out = [tuple(sorted((vs[i], vs[i + 1]))) for i in range(len(vs) - 1)]
        if self.closed:
            out.append(tuple(sorted((vs[-1], vs[0]))))
        return out

    def crossing_vertices(self) -> set[Vertex]:
        """The degree-4 vertices: those the trail visits twice."""
        counts: dict[Vertex, int] = {}
        for v in self.vertices:
            counts[v] = counts.get(v, 0) + 1
        return {v for v, n in counts.items() if n > 1}


@dataclass(frozen=True)
class TrailConstraints:
    length: int
    start_edges: tuple[Edge, ...]
    end_edges: tuple[Edge, ...] = ()
    must_contain_vertex: frozenset[Vertex] = frozenset()
    avoid: frozenset[Vertex] = frozenset()

    def __post_init__(self):
        if self.length < 1:
            raise ValueError("length must be >= 1")


def _canon_open(path: Path) -> Path:
    r = path[::-1]
    return path if path <= r else r


def _canon_closed(path: Path) -> Path:
    n = len(path)
    best = None
    for s in range(n):
        for w in (1, -1):
            cand = tuple(path[(s + w * i) % n] for i in range(n))
            if best is None or cand < best:
                best = cand
    return best


def _step_edges(last: Vertex, prev: Vertex):
    """The three continuations of a trail: left, right, straight
    (never immediately backtracking along the incoming edge)."""
    dx, dy = last[0] - prev[0], last[1] - prev[1]
    x, y = last
    return ((x - dy, y + dx), (x + dy, y - dx), (x + dx, y + dy))


def _enumerate(c: TrailConstraints, start_subset: tuple[Edge, ...]) -> set[Path]:
    end_edges = c.end_edges or c.start_edges
    end_tips = frozenset(e[0] for e in end_edges)
    start_tips = frozenset(e[0] for e in c.start_edges)
    interior_block = end_tips | start_tips | c.avoid
    length = c.length
    out: set[Path] = set()

    def rec(path: list[Vertex], used: set[Edge]) -> None:
        if len(path) == length + 1:
            if path[-1] in end_tips \
                    and (not c.must_contain_vertex
                         or not c.must_contain_vertex.isdisjoint(path)) \
                    and interior_block.isdisjoint(path[1:-1]):
                out.add(_canon_open(tuple(path)))
            return
        last = path[-1]
        if last in end_tips and len(path) != length:
            return
        for q in _step_edges(last, path[-2]):
            e = (last, q) if last < q else (q, last)
            if e in used:
                continue
            path.append(q)
            used.add(e)
            rec(path, used)
            used.discard(e)
            path.pop()

    for a, b in start_subset:
        e0 = (a, b) if a < b else (b, a)
        rec([a, b], {e0})
    return out


def generate_trails(c: TrailConstraints, threads: int = 1) -> set[Trail]:
    """Edge-self-avoiding trails of c.length edges from a start edge to
    the tip of an end edge, interior avoiding both endpoint pools and
    c.avoid, deduplicated under reversal."""
    starts = tuple(c.start_edges)
    if threads <= 1 or len(starts) <= 1:
        return {Trail(p) for p in _enumerate(c, starts)}
    chunks = [starts[i::threads] for i in range(threads)]
    merged: set[Path] = set()
    with ThreadPoolExecutor(max_workers=threads) as pool:
        for part in pool.map(lambda ch: _enumerate(c, ch), chunks):
            merged |= part
    return {Trail(p) for p in merged}


def generate_closed_trails(length: int,
                           through: Vertex = (0, 0),
                           avoid: frozenset[Vertex] = frozenset(),
                           ) -> set[Trail]:
    """Closed edge-self-avoiding trails of `length` edges through a fixed
    vertex of the free lattice.  Vertices appear at most twice; counted
    modulo rotation and reversal of the vertex cycle, which keeps
    distinct crossings distinct."""
    if length < 2:
        raise ValueError("closed trails need length >= 2")
    if length < 4 or length % 2:
        return set()
    found: set[Path] = set()

    def rec(path: list[Vertex], used: set[Edge]) -> None:
        last = path[-1]
        if len(path) == length:
            e = (last, through) if last < through else (through, last)
            if (abs(last[0] - through[0]) + abs(last[1] - through[1]) == 1
                    and e not in used):
                found.add(_canon_closed(tuple(path)))
            return
        rem = length - len(path)
        for q in square_neighbors(last):
            if q in avoid:
                continue
            e = (last, q) if last < q else (q, last)
            if e in used:
                continue
            if path.count(q) >= 2:
                continue
            # must still be able to return to the anchor
            if abs(q[0] - through[0]) + abs(q[1] - through[1]) > rem:
                continue
            path.append(q)
            used.add(e)
            rec(path, used)
            used.discard(e)
            path.pop()

    rec([through], set())
    return {Trail(p, closed=True) for p in found}


def trails_through_vertex(v: Vertex, n: int,
                          window_a: tuple[Edge, ...] = (),
                          window_b: tuple[Edge, ...] = (),
                          endpoint_pool: frozenset[Vertex] = frozenset(),
                          ) -> tuple[int, int]:
    """(walk_count, loop_count) of length-n trails through the fixed
    vertex v: boundary-to-boundary walks using the given windows, plus
    closed trails of the free lattice through v."""
    if n < 2:
        raise ValueError("n must be >= 2")
    walks = 0
    if window_a:
        c = TrailConstraints(n, window_a, tuple((p, p) for p in endpoint_pool),
                             must_contain_vertex=frozenset({v}),
                             avoid=endpoint_pool)
        walks += len(generate_trails(c))
    if window_b:
        c = TrailConstraints(n, window_b, window_b,
                             must_contain_vertex=frozenset({v}),
                             avoid=endpoint_pool)
        walks += len(generate_trails(c))
    loops = len(generate_closed_trails(n, through=v))
    return walks, loops
