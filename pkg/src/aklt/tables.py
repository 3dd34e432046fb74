"""The counting tables that feed the convergence criterion.

Each public function computes one table from the enumeration modules.
Everything here is an exact integer count; the only approximation in the
whole pipeline lives in :mod:`aklt.criterion`.  Tables are cached on
disk because the big supremum table is minutes-scale work.
"""

from __future__ import annotations

import json
import os
import tempfile
import warnings
from collections import defaultdict
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path as FsPath

from .lattice import (Edge, Vertex, diagonal_line, hex_neighbors, inner_line,
                      outer_line)
from .polymer_hex import EnumerationConstraints, generate_loops, generate_walks
from .polymer_square import trails_through_vertex

GENERATOR_VERSION = 1

CACHE_ENV = "AKLT_CACHE_DIR"


class TableId(Enum):
    LOOPS_THROUGH_EDGE = "loops_through_edge"
    WALKS_TO_BOUNDARY_N = "walks_to_boundary_n"
    SUP_TABLE_S = "sup_table_s"
    RIGHT_ENDPOINT_R = "right_endpoint_r"
    ODD_CORNER_Q = "odd_corner_q"
    SQUARE_CN = "square_cn"


@dataclass(frozen=True)
class TableResult:
    id: TableId
    params: dict
    rows: dict[int, int]
    # loop-intersection rows of the supremum table (lengths 6 and 10);
    # empty for every other table
    loop_rows: dict[int, int] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "table_id": self.id.value,
            "params": self.params,
            "rows": [{"index": k, "value": v} for k, v in sorted(self.rows.items())],
            "loop_rows": [{"index": k, "value": v}
                          for k, v in sorted(self.loop_rows.items())],
            "generator_version": GENERATOR_VERSION,
        }

    @staticmethod
    def from_json(d: dict) -> "TableResult":
        return TableResult(
            id=TableId(d["table_id"]),
            params=d["params"],
            rows={int(r["index"]): int(r["value"]) for r in d["rows"]},
            loop_rows={int(r["index"]): int(r["value"])
                       for r in d.get("loop_rows", [])},
        )


# ---------------------------------------------------------------------------
# cache

def cache_dir() -> FsPath:
    env = os.environ.get(CACHE_ENV)
    if env:
        return FsPath(env)
    return FsPath.home() / ".cache" / "aklt"


def _cache_key(tid: TableId, params: dict) -> str:
    parts = [tid.value] + [f"{k}={params[k]}" for k in sorted(params)]
    return "_".join(parts).replace(" ", "") + f"_v{GENERATOR_VERSION}.json"


def _cache_load(tid: TableId, params: dict) -> TableResult | None:
    path = cache_dir() / _cache_key(tid, params)
    if not path.exists():
        return None
    try:
        d = json.loads(path.read_text())
    except (OSError, ValueError):
        return None
    if d.get("generator_version") != GENERATOR_VERSION:
        return None
    return TableResult.from_json(d)


def _cache_store(result: TableResult) -> None:
    d = cache_dir()
    d.mkdir(parents=True, exist_ok=True)
    path = d / _cache_key(result.id, result.params)
    fd, tmp = tempfile.mkstemp(dir=d, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as f:
            json.dump(result.to_json(), f)
        os.replace(tmp, path)  # atomic on POSIX
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


# ---------------------------------------------------------------------------
# hexagonal boundary windows (brick-wall integer coordinates)

def hex_window(n: int, o: int) -> list[Edge]:
    """Both lines of the corner window: the shared diagonal plus the
    vertical line (o=0, outer corner) or the opposite diagonal (o=1,
    inner corner)."""
    return diagonal_line(n) + (outer_line(n) if o == 0 else inner_line(n))


def _firsts(edges: list[Edge]) -> list[Vertex]:
    return [e[0] for e in edges]


def _lasts(edges: list[Edge]) -> list[Vertex]:
    return [e[-1] for e in edges]


# a hexagon adjacent to the inner corner, and its diagonal translates;
# the anchor loops the supremum table fixes its loop polymer on
_TOP_LOOP: tuple[Vertex, ...] = ((3, 0), (4, 0), (5, 0), (5, 1), (4, 1), (3, 1))


def _loop_translates(m: int) -> list[tuple[Vertex, ...]]:
    return [tuple((x - i, y - i) for x, y in _TOP_LOOP) for i in range(m)]


# ---------------------------------------------------------------------------
# simple hexagonal tables

def loops_through_edge_table(l_max: int = 28, use_cache: bool = True,
                             threads: int = 1) -> TableResult:
    """Loops of each even length 6..l_max through one fixed edge of the
    free lattice."""
    if l_max % 2 or l_max < 6:
        raise ValueError("l_max must be even and >= 6")
    if l_max > 28:
        warnings.warn("loop counts beyond length 28 grow exponentially; "
                      "expect long runtimes")
    params = {"l_max": l_max}
    if use_cache and (hit := _cache_load(TableId.LOOPS_THROUGH_EDGE, params)):
        return hit
    anchor = diagonal_line(0)[0]
    rows = {}
    for L in range(6, l_max + 2, 2):
        c = EnumerationConstraints(L, (anchor,))
        rows[L] = len(generate_loops(c, threads=threads))
    result = TableResult(TableId.LOOPS_THROUGH_EDGE, params, rows)
    if use_cache:
        _cache_store(result)
    return result


def q_table(l_max: int = 19, boundary: str = "both", use_cache: bool = True,
            threads: int = 1) -> TableResult:
    """Walks of odd length with endpoints on opposite sides of a corner;
    the larger of the inner- and outer-corner counts.  boundary="outer"
    keeps only the outer corner (the variant the full-ball volume needs)."""
    if l_max % 2 == 0 or l_max < 3:
        raise ValueError("l_max must be odd and >= 3")
    if boundary not in ("both", "outer"):
        raise ValueError("boundary must be 'both' or 'outer'")
    params = {"l_max": l_max, "boundary": boundary}
    if use_cache and (hit := _cache_load(TableId.ODD_CORNER_Q, params)):
        return hit
    starts = diagonal_line(l_max)
    rows = {}
    for l in range(3, l_max + 2, 2):
        counts = []
        for o in ((0,) if boundary == "outer" else (0, 1)):
            ends = outer_line(l_max) if o == 0 else inner_line(l_max)
            c = EnumerationConstraints(l, tuple(starts), tuple(ends),
                                       must_intersect=frozenset(_firsts(ends)))
            counts.append(len(generate_walks(c, threads=threads)))
        rows[l] = max(counts)
    result = TableResult(TableId.ODD_CORNER_Q, params, rows)
    if use_cache:
        _cache_store(result)
    return result


def r_table(l_max: int = 20, use_cache: bool = True,
            threads: int = 1) -> TableResult:
    """Walks of even length through a fixed boundary bond which return to
    the boundary strictly on one side of it."""
    if l_max % 2 or l_max < 4:
        raise ValueError("l_max must be even and >= 4")
    params = {"l_max": l_max}
    if use_cache and (hit := _cache_load(TableId.RIGHT_ENDPOINT_R, params)):
        return hit
    s = diagonal_line(l_max)
    z = len(s) // 2
    rows = {}
    for l in range(4, l_max + 2, 2):
        c = EnumerationConstraints(l, (s[z],), tuple(s[:z]),
                                   must_intersect=frozenset(_firsts(s)),
                                   avoid=frozenset(_firsts(s[z:])))
        rows[l] = len(generate_walks(c, threads=threads))
    result = TableResult(TableId.RIGHT_ENDPOINT_R, params, rows)
    if use_cache:
        _cache_store(result)
    return result


def walks_to_boundary_table(l_max: int = 10, use_cache: bool = True,
                            threads: int = 1) -> TableResult:
    """Largest number of walks of each length from a fixed loop vertex
    (leaving along a loop edge) to the boundary window, maximized over
    loop placements and both corner types."""
    if l_max < 1:
        raise ValueError("l_max must be >= 1")
    params = {"l_max": l_max}
    if use_cache and (hit := _cache_load(TableId.WALKS_TO_BOUNDARY_N, params)):
        return hit
    # loop translates along the boundary plus vertical stacks into the bulk
    patch = list(_loop_translates(l_max))
    for lp in list(patch):
        for j in range(1, l_max + 1):
            patch.append(tuple((x + 2 * j, y) for x, y in lp))
    # directed edges in listing orientation only; each vertex then carries
    # the out-edges of every loop it lies on
    out_edges: dict[Vertex, list[Edge]] = defaultdict(list)
    points: set[Vertex] = set()
    for lp in patch:
        closed = lp + (lp[0],)
        for i in range(len(lp)):
            out_edges[closed[i]].append((closed[i], closed[i + 1]))
            points.add(closed[i])
    rows = {}
    for l in range(1, l_max + 1):
        best = 0
        for o in (0, 1):
            pool = hex_window(l_max, o)
            pf = frozenset(_firsts(pool))
            for v in points:
                total = 0
                for d in out_edges[v]:
                    if l == 1:
                        total += d[1] in pf
                        continue
                    c = EnumerationConstraints(l, (d,),
                                               tuple((p, p) for p in pf),
                                               avoid=pf)
                    total += len(generate_walks(c, threads=threads))
                best = max(best, total)
        rows[l] = best
    result = TableResult(TableId.WALKS_TO_BOUNDARY_N, params, rows)
    if use_cache:
        _cache_store(result)
    return result


# ---------------------------------------------------------------------------
# the supremum table

def _stream_boundary_walks(maxlen: int, o: int, handler) -> None:
    """Visit every boundary-to-boundary walk of length 3..maxlen once per
    orientation, calling handler(length, path).  The window carries two
    edges of slack so counts are saturated for every length <= maxlen."""
    pool = hex_window(maxlen + 2, o)
    end_f = frozenset(_firsts(pool))

    def rec(path: list[Vertex], vis: set[Vertex]) -> None:
        last = path[-1]
        if last in end_f:
            if len(path) - 1 >= 3:
                handler(len(path) - 1, path)
            return
        if len(path) == maxlen + 1:
            return
        prev = path[-2]
        for q in hex_neighbors(last):
            if q != prev and q not in vis:
                path.append(q)
                vis.add(q)
                rec(path, vis)
                path.pop()
                vis.discard(q)

    for sp in pool:
        rec(list(sp), set(sp))


def _gamma_families(lp_max: int, orientations: tuple[int, ...],
                    threads: int) -> dict:
    """The fixed polymers the supremum table conditions on: all walks of
    length 3..6 pinned at a corner, and the diagonal loop translates."""
    fams = {}
    for l in (3, 4, 5, 6):
        for o in orientations:
            win = hex_window(lp_max, o)
            other = hex_window(lp_max, 1 - o)
            c = EnumerationConstraints(l, tuple(win), tuple(win),
                                       must_intersect=frozenset(_lasts(other)))
            fams[(("w", l), o)] = [frozenset(w.vertices)
                                   for w in generate_walks(c, threads=threads)]
    for o in orientations:
        fams[(("l", 6), o)] = [frozenset(lp) for lp in _loop_translates(lp_max)]
    return fams


def _free_loops_hitting(length: int, anchors, blocked: frozenset[Vertex]) -> int:
    """Loops of the given length touching at least one anchor vertex and
    avoiding `blocked` entirely."""
    found: set[tuple] = set()

    def canon(cyc: tuple) -> tuple:
        best = None
        n = len(cyc)
        for s in range(n):
            for w in (1, -1):
                cand = tuple(cyc[(s + w * i) % n] for i in range(n))
                if best is None or cand < best:
                    best = cand
        return best

    def rec(path: list[Vertex], vis: set[Vertex]) -> None:
        if len(path) == length:
            if path[0] in hex_neighbors(path[-1]):
                found.add(canon(tuple(path)))
            return
        rem = length - len(path)
        x0, y0 = path[0]
        for q in hex_neighbors(path[-1]):
            if q in blocked or q in vis:
                continue
            if abs(q[0] - x0) + abs(q[1] - y0) > rem:
                continue
            path.append(q)
            vis.add(q)
            rec(path, vis)
            path.pop()
            vis.discard(q)

    for v0 in anchors:
        if v0 not in blocked:
            rec([v0], {v0})
    return len(found)


def s_table(fixed: tuple[str, int], lp_max: int = 20, boundary: str = "both",
            use_cache: bool = True, threads: int = 1) -> TableResult:
    """One column of the supremum table.

    fixed identifies the conditioned polymer class: ("w", 3..6) for a
    fixed short walk, ("l", 6) for a fixed hexagon.  Row l' of the
    result is the telescoped supremum increment: the number of walks of
    length l' meeting the worst-case fixed polymer, counted so that
    cumulative sums over l' are the true suprema.  loop_rows holds the
    companion counts of loops (lengths 6 and 10) meeting the fixed
    polymer.

    boundary="outer" restricts the fixed polymer to outer-corner
    placements, which is the variant the K=0 volume needs.
    """
    if fixed not in {("w", 3), ("w", 4), ("w", 5), ("w", 6), ("l", 6)}:
        raise ValueError(f"unknown fixed class {fixed!r}")
    if lp_max > 20:
        raise ValueError("lp_max beyond 20 is not supported")
    if boundary not in ("both", "outer"):
        raise ValueError("boundary must be 'both' or 'outer'")
    params = {"fixed": f"{fixed[0]}{fixed[1]}", "lp_max": lp_max,
              "boundary": boundary}
    if use_cache and (hit := _cache_load(TableId.SUP_TABLE_S, params)):
        return hit

    # one streaming pass fills every column; compute and cache them all
    for cls, rows, loop_rows in _compute_s_columns(lp_max, boundary, threads):
        result = TableResult(
            TableId.SUP_TABLE_S,
            {"fixed": f"{cls[0]}{cls[1]}", "lp_max": lp_max,
             "boundary": boundary},
            rows, loop_rows)
        if use_cache:
            _cache_store(result)
        if cls == fixed:
            wanted = result
    return wanted


S_CLASSES = (("w", 3), ("w", 4), ("w", 5), ("w", 6), ("l", 6))


def _compute_s_columns(lp_max: int, boundary: str, threads: int):
    orientations = (0,) if boundary == "outer" else (0, 1)
    fams = _gamma_families(lp_max, orientations, threads)

    # a single streaming pass per orientation over every boundary walk,
    # crediting each fixed polymer of every class the walk touches
    counts: dict[tuple, dict[int, int]] = defaultdict(lambda: defaultdict(int))
    for o in orientations:
        vmap: dict[Vertex, list[tuple]] = defaultdict(list)
        for cls in S_CLASSES:
            for gi, g in enumerate(fams[(cls, o)]):
                key = (cls, o, gi)
                for v in g:
                    vmap[v].append(key)

        def handler(L: int, path: list[Vertex], vmap=vmap) -> None:
            hit: set[tuple] = set()
            for v in path:
                hit.update(vmap.get(v, ()))
            for key in hit:
                counts[key][L] += 1

        _stream_boundary_walks(lp_max, o, handler)

    out = []
    for cls in S_CLASSES:
        # each undirected walk was streamed once per orientation of itself
        per_gamma = [{L: counts[(cls, o, gi)].get(L, 0) // 2
                      for L in range(3, lp_max + 1)}
                     for o in orientations
                     for gi in range(len(fams[(cls, o)]))]

        # telescoped supremum: sup over gamma of the cumulative count,
        # then first differences, so that partial sums of the rows are
        # true suprema
        sups = [max((sum(d.get(j, 0) for j in range(3, L + 1))
                     for d in per_gamma), default=0)
                for L in range(2, lp_max + 1)]
        rows = {L: sups[L - 2] - sups[L - 3] for L in range(3, lp_max + 1)}

        # loop companions: worst-case count of loops meeting the fixed
        # polymer; walk classes live next to the boundary (window
        # vertices excluded), the loop class sits in the free lattice
        loop_rows = {}
        for L in (6, 10):
            best = 0
            for o in orientations:
                blocked = (frozenset() if cls[0] == "l"
                           else frozenset(_firsts(hex_window(lp_max + 2, o))))
                for g in fams[(cls, o)]:
                    best = max(best, _free_loops_hitting(L, g, blocked))
            loop_rows[L] = best
        out.append((cls, rows, loop_rows))
    return out


# ---------------------------------------------------------------------------
# square lattice

def sq_straight_window(n: int) -> list[Edge]:
    return [((0, i), (1, i)) for i in range(1, n + 1)]


def sq_corner_window(n: int, o: int) -> list[Edge]:
    if o == 1:
        return [((1 - i, 1), (1 - i, 0)) for i in range(1, n + 1)]
    return [((i, 0), (i, 1)) for i in range(1, n + 1)]


def square_cn_table(n_max: int = 7, use_cache: bool = True,
                    threads: int = 1) -> TableResult:
    """Largest number of length-n trails through one vertex: boundary
    walks (maximized over vertex position and corner type) plus closed
    trails of the free lattice."""
    if not 3 <= n_max:
        raise ValueError("n_max must be >= 3")
    params = {"n_max": n_max}
    if use_cache and (hit := _cache_load(TableId.SQUARE_CN, params)):
        return hit
    rows = {}
    for n in range(3, n_max + 1):
        best = 0
        for o in (0, 1):
            wa = tuple(sq_straight_window(2 * n))
            wb = tuple(sq_corner_window(2 * n, o))
            pool = frozenset(_firsts(list(wa) + list(wb)))
            for vx in range(-1, n + 3):
                for vy in range(-1, n + 3):
                    w, l = trails_through_vertex((vx, vy), n, wa, wb, pool)
                    best = max(best, w + l)
        rows[n] = best
    result = TableResult(TableId.SQUARE_CN, params, rows)
    if use_cache:
        _cache_store(result)
    return result
