"""Independent numerical checks of the polymer representation.

Monte-Carlo integration over products of unit spheres verifies the two
dot-product integration identities and, on volumes small enough to
integrate directly, the equality between the integral and this
package's own polymer sum.  A slow independent port of the published
enumeration code cross-checks the fast integer engines.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import refport
from . import tables as tb
from .lattice import Edge, LatticeKind, Vertex, hex_neighbors
from .polymer_square import generate_closed_trails

BATCH = 1 << 16


@dataclass(frozen=True)
class SpherePoint:
    x: float
    y: float
    z: float

    def __post_init__(self):
        n = math.sqrt(self.x ** 2 + self.y ** 2 + self.z ** 2)
        if abs(n - 1.0) > 1e-12:
            raise ValueError("not a unit vector")

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z])

    @staticmethod
    def from_array(a) -> "SpherePoint":
        a = np.asarray(a, dtype=float)
        a = a / np.linalg.norm(a)
        return SpherePoint(*a)


NORTH = SpherePoint(0.0, 0.0, 1.0)


@dataclass(frozen=True)
class McConfig:
    seed: int = 0
    samples: int = 1_000_000
    threads: int = 1

    def __post_init__(self):
        if self.samples < 1:
            raise ValueError("samples must be positive")


def _batch_rng(cfg: McConfig, index: int) -> np.random.Generator:
    # counter-based generator; the spawn key makes batch streams
    # independent and independent of the batch count
    ss = np.random.SeedSequence(entropy=cfg.seed, spawn_key=(index,))
    return np.random.Generator(np.random.Philox(ss))


def _sample_sphere(rng: np.random.Generator, n: int, k: int = 1) -> np.ndarray:
    """(n, k, 3) uniform points: z uniform on [-1,1], azimuth uniform."""
    z = rng.uniform(-1.0, 1.0, size=(n, k))
    phi = rng.uniform(0.0, 2.0 * math.pi, size=(n, k))
    s = np.sqrt(1.0 - z * z)
    return np.stack([s * np.cos(phi), s * np.sin(phi), z], axis=-1)


def _mc_mean(cfg: McConfig, batch_fn) -> tuple[float, float]:
    """Deterministic batched mean/stderr of batch_fn(rng, n) -> samples."""
    n_batches = (cfg.samples + BATCH - 1) // BATCH
    sizes = [min(BATCH, cfg.samples - i * BATCH) for i in range(n_batches)]

    def one(i: int):
        vals = batch_fn(_batch_rng(cfg, i), sizes[i])
        return float(vals.sum()), float((vals * vals).sum())

    if cfg.threads > 1:
        with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
            parts = list(pool.map(one, range(n_batches)))
    else:
        parts = [one(i) for i in range(n_batches)]
    # fixed summation order regardless of thread count
    s1 = sum(p[0] for p in parts)
    s2 = sum(p[1] for p in parts)
    n = cfg.samples
    mean = s1 / n
    var = max(s2 / n - mean * mean, 0.0)
    return mean, math.sqrt(var / n)


def mc_edge_identity(omega_y: SpherePoint, omega_z: SpherePoint,
                     cfg: McConfig) -> tuple[float, float]:
    """Estimate of the one-vertex contraction
    integral over x of (y.x)(x.z), whose exact value is (y.z)/3."""
    vy, vz = omega_y.as_array(), omega_z.as_array()

    def batch(rng, n):
        om = _sample_sphere(rng, n)[:, 0, :]
        return (om @ vy) * (om @ vz)

    return _mc_mean(cfg, batch)


def mc_degree4_identity(omegas: tuple[SpherePoint, ...],
                        cfg: McConfig) -> tuple[float, float]:
    """Estimate of the four-factor contraction
    integral over v of prod_i (x_i.v); exact value is the sum of the
    three pair-products divided by 15 (see degree4_exact)."""
    if len(omegas) != 4:
        raise ValueError("need exactly four sphere points")
    vs = [o.as_array() for o in omegas]

    def batch(rng, n):
        om = _sample_sphere(rng, n)[:, 0, :]
        out = np.ones(n)
        for v in vs:
            out = out * (om @ v)
        return out

    return _mc_mean(cfg, batch)


def degree4_exact(omegas: tuple[SpherePoint, ...]) -> float:
    a, b, c, d = (o.as_array() for o in omegas)
    return ((a @ b) * (c @ d) + (a @ c) * (b @ d) + (a @ d) * (b @ c)) / 15.0


# ---------------------------------------------------------------------------
# tiny-volume partition functions

@dataclass(frozen=True)
class PartitionCheck:
    mc_estimate: float
    mc_stderr: float
    polymer_value: float

    def within(self, sigmas: float = 4.0) -> bool:
        return abs(self.mc_estimate - self.polymer_value) <= sigmas * self.mc_stderr


def _volume_vertices(edges: list[Edge]) -> list[Vertex]:
    return sorted({v for e in edges for v in e})


def _component_sizes(edges: list[Edge]) -> list[int]:
    parent: dict[Vertex, Vertex] = {}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for a, b in edges:
        parent.setdefault(a, a)
        parent.setdefault(b, b)
        parent[find(a)] = find(b)
    sizes: dict[Vertex, int] = {}
    for v in parent:
        r = find(v)
        sizes[r] = sizes.get(r, 0) + 1
    return list(sizes.values())


def _hex_loops_in(edges: set[Edge]) -> list[tuple[Vertex, ...]]:
    """All simple cycles using only the given edges (canonical forms)."""
    verts = _volume_vertices(list(edges))
    found: set[tuple] = set()

    def canon(cyc):
        best = None
        n = len(cyc)
        for s in range(n):
            for w in (1, -1):
                cand = tuple(cyc[(s + w * i) % n] for i in range(n))
                if best is None or cand < best:
                    best = cand
        return best

    def rec(path, vis):
        last = path[-1]
        for q in hex_neighbors(last):
            e = (last, q) if last < q else (q, last)
            if e not in edges:
                continue
            if q == path[0] and len(path) >= 3:
                found.add(canon(tuple(path)))
                continue
            if q in vis:
                continue
            path.append(q)
            vis.add(q)
            rec(path, vis)
            vis.discard(q)
            path.pop()

    for v in verts:
        rec([v], {v})
    return list(found)


def _square_trails_in(edges: set[Edge]) -> list:
    """Closed trails confined to the given edges, one per routing."""
    out = []
    seen = set()
    for v in _volume_vertices(list(edges)):
        for n in range(4, len(edges) + 1, 2):
            for t in generate_closed_trails(n, through=v):
                if set(t.edges()) <= edges and t.vertices not in seen:
                    seen.add(t.vertices)
                    out.append(t)
    return out


def hex_polymer_value(edges: list[Edge]) -> float:
    """Partition function of a tiny hexagonal volume from the polymer
    sum: families of vertex-disjoint loops, each loop weighing
    (1/3)^{|gamma|-1}, against the uniform 2^{-|E|} background."""
    es = {tuple(sorted(e)) for e in edges}
    loops = _hex_loops_in(es)
    loop_verts = [frozenset(lp) for lp in loops]
    total = 0.0

    def rec(i: int, used: frozenset, weight: float):
        nonlocal total
        if i == len(loops):
            total += weight
            return
        rec(i + 1, used, weight)
        if used.isdisjoint(loop_verts[i]):
            rec(i + 1, used | loop_verts[i],
                weight * (1.0 / 3.0) ** (len(loops[i]) - 1))

    rec(0, frozenset(), 1.0)
    return total / 2 ** len(es)


def square_polymer_value(edges: list[Edge]) -> float:
    """Same for a tiny square volume: families of edge-disjoint closed
    trails with a (3/5) penalty per crossing vertex and per vertex
    shared between two trails."""
    es = {tuple(sorted(e)) for e in edges}
    trails = _square_trails_in(es)
    t_edges = [frozenset(t.edges()) for t in trails]
    t_verts = [frozenset(t.vertices) for t in trails]
    base = [(1.0 / 3.0) ** (len(t) - 1) * (3.0 / 5.0) ** len(t.crossing_vertices())
            for t in trails]
    total = 0.0

    def rec(i: int, chosen: list, weight: float):
        nonlocal total
        if i == len(trails):
            total += weight
            return
        rec(i + 1, chosen, weight)
        if all(t_edges[i].isdisjoint(t_edges[j]) for j in chosen):
            w = weight * base[i]
            for j in chosen:
                w *= (3.0 / 5.0) ** len(t_verts[i] & t_verts[j])
            rec(i + 1, chosen + [i], w)

    rec(0, [], 1.0)
    return total / 2 ** len(es)


def brute_force_partition(edges: list[Edge], lattice: LatticeKind,
                          cfg: McConfig) -> PartitionCheck:
    """Monte-Carlo value of the product integral prod_edges (1 - x.y)/2
    over all vertex spheres, next to the polymer sum for the same
    volume."""
    verts = _volume_vertices(edges)
    limit = 8 if lattice is LatticeKind.HEXAGONAL else 9
    # the limit applies per connected component; disjoint pieces factorize
    if max(_component_sizes(edges), default=0) > limit:
        raise ValueError(f"volume too large for direct integration "
                         f"(component over {limit} vertices)")
    index = {v: i for i, v in enumerate(verts)}
    pairs = [(index[a], index[b]) for a, b in edges]

    def batch(rng, n):
        om = _sample_sphere(rng, n, k=len(verts))
        out = np.ones(n)
        for i, j in pairs:
            dots = np.einsum("nd,nd->n", om[:, i, :], om[:, j, :])
            out = out * (1.0 - dots) / 2.0
        return out

    est, err = _mc_mean(cfg, batch)
    poly = (hex_polymer_value(edges) if lattice is LatticeKind.HEXAGONAL
            else square_polymer_value(edges))
    return PartitionCheck(est, err, poly)


def hexagon_edges() -> list[Edge]:
    """The six edges of one hexagonal face."""
    cyc = [(1, 0), (2, 0), (3, 0), (3, 1), (2, 1), (1, 1)]
    return [tuple(sorted((cyc[i], cyc[(i + 1) % 6]))) for i in range(6)]


def unit_square_edges() -> list[Edge]:
    cyc = [(0, 0), (1, 0), (1, 1), (0, 1)]
    return [tuple(sorted((cyc[i], cyc[(i + 1) % 4]))) for i in range(4)]


# ---------------------------------------------------------------------------
# reference-port cross-check

def reference_port_compare(table: tb.TableId, reduced_max: int) -> dict:
    """Run the fast engine and the slow float port on the same table at a
    reduced range; the returned dict maps index -> (fast, port) for every
    disagreement and is empty when the engines agree."""
    if table is tb.TableId.LOOPS_THROUGH_EDGE:
        fast = tb.loops_through_edge_table(reduced_max, use_cache=False).rows
        port = refport.N(reduced_max)
        pairs = {l: (fast[l], port[(l - 6) // 2]) for l in range(6, reduced_max + 2, 2)}
    elif table is tb.TableId.WALKS_TO_BOUNDARY_N:
        fast = tb.walks_to_boundary_table(reduced_max, use_cache=False).rows
        port = refport.P(reduced_max)
        pairs = {l: (fast[l], int(port[l - 1])) for l in range(1, reduced_max + 1)}
    elif table is tb.TableId.RIGHT_ENDPOINT_R:
        fast = tb.r_table(reduced_max, use_cache=False).rows
        port = refport.R(reduced_max)
        pairs = {l: (fast[l], port[(l - 4) // 2]) for l in range(4, reduced_max + 2, 2)}
    elif table is tb.TableId.ODD_CORNER_Q:
        fast = tb.q_table(reduced_max, use_cache=False).rows
        port = refport.Q(reduced_max)
        pairs = {l: (fast[l], int(port[(l - 3) // 2])) for l in range(3, reduced_max + 2, 2)}
    elif table is tb.TableId.SQUARE_CN:
        # the published square listing counts boundary walks only, so the
        # free-lattice closed trails are subtracted from the fast counts
        fast = tb.square_cn_table(reduced_max, use_cache=False).rows
        pairs = {}
        for n in range(3, reduced_max + 1):
            loops = len(generate_closed_trails(n))
            pairs[n] = (fast[n] - loops, refport.sq_maxes(n))
    else:
        raise ValueError(f"no reference port for table {table}")
    return {k: v for k, v in pairs.items() if v[0] != v[1]}
