"""Enumeration of hexagonal-lattice polymers.

Polymers on the hexagonal lattice are vertex-self-avoiding: open walks
whose endpoints lie on prescribed boundary edges, and closed loops.  The
enumerators work on the integer brick-wall embedding of
:mod:`aklt.lattice` and report each undirected object exactly once, in
canonical form.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .lattice import Edge, Vertex, hex_neighbors

Path = tuple[Vertex, ...]


@dataclass(frozen=True)
class Walk:
    vertices: Path

    def __len__(self) -> int:  # number of edges
        return len(self.vertices) - 1

    def edges(self) -> list[Edge]:
        vs = self.vertices
        return [tuple(sorted((vs[i], vs[i + 1]))) for i in range(len(vs) - 1)]


@dataclass(frozen=True)
class Loop:
    vertices: Path  # closed; the edge back to vertices[0] is implied

    def __len__(self) -> int:
        return len(self.vertices)

    def edges(self) -> list[Edge]:
        vs = self.vertices
        n = len(vs)
        return [tuple(sorted((vs[i], vs[(i + 1) % n]))) for i in range(n)]


@dataclass(frozen=True)
class EnumerationConstraints:
    """What to enumerate.

    Walks of `length` edges leave the boundary along a start edge and
    stop on the tip (first vertex) of an end edge.  Interior vertices
    may touch neither endpoint pool nor `avoid`.  If `must_intersect`
    is nonempty the walk has to hit it somewhere.
    """
    length: int
    start_edges: tuple[Edge, ...]
    end_edges: tuple[Edge, ...] = ()
    must_intersect: frozenset[Vertex] = frozenset()
    avoid: frozenset[Vertex] = frozenset()

    def __post_init__(self):
        if self.length < 1:
            raise ValueError("length must be >= 1")


def canonical_walk(path: Path) -> Path:
    """Orientation-independent representative of an open walk."""
    r = path[::-1]
    return path if path <= r else r


def canonical_loop(path: Path) -> Path:
    """Representative of a closed walk modulo rotation and reversal."""
    n = len(path)
    best = None
    for seq in (path, path[::-1]):
        for s in range(n):
            cand = seq[s:] + seq[:s]
            if best is None or cand < best:
                best = cand
    return best


def _branches(path: list[Vertex]):
    """Continuations of a partial walk: the two neighbors of the last
    vertex other than the previous one (honeycomb degree 3)."""
    last, prev = path[-1], path[-2]
    return tuple(q for q in hex_neighbors(last) if q != prev)


def _enumerate(c: EnumerationConstraints, loops: bool,
               start_subset: tuple[Edge, ...]) -> set[Path]:
    end_edges = c.end_edges or c.start_edges
    end_tips = frozenset(e[0] for e in end_edges)
    start_tips = frozenset(e[0] for e in c.start_edges)
    interior_block = end_tips | start_tips | c.avoid
    length = c.length
    out: set[Path] = set()

    def rec(path: list[Vertex], visited: set[Vertex]) -> None:
        if len(path) == length + 1:
            closed_ok = path[-1] == path[0] if loops else path[-1] in end_tips
            if closed_ok \
                    and (not c.must_intersect
                         or not c.must_intersect.isdisjoint(path)) \
                    and interior_block.isdisjoint(path[1:-1]):
                t = tuple(path)
                if loops:
                    out.add(canonical_loop(t[:-1]))
                else:
                    out.add(canonical_walk(t))
            return
        last = path[-1]
        # a walk that reaches the target boundary must stop there
        if last in end_tips and len(path) != length:
            return
        if loops:
            # every step changes the L1 position by one, so a loop that
            # cannot get back to its start in the remaining steps is dead
            x0, y0 = path[0]
            if abs(last[0] - x0) + abs(last[1] - y0) > length + 1 - len(path):
                return
        for q in _branches(path):
            if q in visited and not (loops and q == path[0]):
                continue
            path.append(q)
            visited.add(q)
            rec(path, visited)
            visited.discard(q)
            path.pop()

    for sp in start_subset:
        rec(list(sp), set(sp))
    return out


def _run(c: EnumerationConstraints, loops: bool, threads: int) -> set[Path]:
    starts = tuple(c.start_edges)
    if threads <= 1 or len(starts) <= 1:
        return _enumerate(c, loops, starts)
    # partition over start edges; union is order-independent
    chunks = [starts[i::threads] for i in range(threads)]
    merged: set[Path] = set()
    with ThreadPoolExecutor(max_workers=threads) as pool:
        for part in pool.map(lambda ch: _enumerate(c, loops, ch), chunks):
            merged |= part
    return merged


def generate_walks(c: EnumerationConstraints, threads: int = 1) -> set[Walk]:
    """All vertex-self-avoiding walks satisfying `c`, deduplicated under
    reversal.  Empty result is valid."""
    return {Walk(p) for p in _run(c, loops=False, threads=threads)}


def generate_loops(c: EnumerationConstraints, threads: int = 1) -> set[Loop]:
    """Closed self-avoiding cycles of c.length edges whose first edge is
    one of c.start_edges, deduplicated under rotation and reversal.
    Rejects odd lengths (the lattice is bipartite)."""
    if c.length % 2:
        raise ValueError("loops on a bipartite lattice have even length")
    return {Loop(p) for p in _run(c, loops=True, threads=threads)}


def walk_concatenation_count(v: Vertex, e: Edge, l: int,
                             boundary: frozenset[Vertex],
                             first_steps: tuple[Edge, ...] | None = None,
                             ) -> int:
    """Number of length-l self-avoiding walks starting at v, avoiding the
    incident edge e, and ending on `boundary` (interior avoiding it too).

    first_steps optionally restricts the admissible first edges of the
    walk; by default every edge at v except e is allowed.
    """
    if v not in e:
        raise ValueError("e must be incident to v")
    if first_steps is None:
        other = e[1] if e[0] == v else e[0]
        first_steps = tuple((v, q) for q in hex_neighbors(v) if q != other)
    else:
        first_steps = tuple(d for d in first_steps
                            if d[0] == v and d != e and d[::-1] != e)
    if l == 1:
        return sum(d[1] in boundary for d in first_steps)
    c = EnumerationConstraints(length=l, start_edges=first_steps,
                               end_edges=tuple((p, p) for p in boundary))
    return len(generate_walks(c))
