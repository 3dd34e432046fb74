import pytest

from aklt.lattice import AnnulusSpec, LatticeKind, Region, neighbors
from aklt.polymer_square import (
    Trail,
    TrailConstraints,
    generate_closed_trails,
    generate_trails,
    trails_through_vertex,
)
from aklt.tables import sq_corner_window, sq_straight_window
from aklt.lattice import edge_firsts


def test_unit_square_loop_exists():
    loops = generate_closed_trails(4, through=(0, 0))
    squares = [t for t in loops if len(t) == 4]
    assert len(squares) == 4  # one unit square per quadrant
    for t in squares:
        assert t.crossing_vertices() == set()


def test_figure_eight_routings():
    # two unit squares joined at the origin: a single closed trail of
    # length 8 exists once per degree-4 routing (the two crossings)
    target = frozenset({
        tuple(sorted(e)) for e in [
            ((0, 0), (1, 0)), ((1, 0), (1, 1)), ((1, 1), (0, 1)),
            ((0, 1), (0, 0)), ((0, 0), (-1, 0)), ((-1, 0), (-1, -1)),
            ((-1, -1), (0, -1)), ((0, -1), (0, 0))]})
    hits = [t for t in generate_closed_trails(8, through=(0, 0))
            if frozenset(tuple(sorted(e)) for e in t.edges()) == target]
    assert len(hits) == 2
    for t in hits:
        assert t.crossing_vertices() == {(0, 0)}


def test_closed_trails_even_length():
    for n in (4, 6, 8):
        for t in generate_closed_trails(n, through=(0, 0)):
            assert len(t) % 2 == 0
            assert len(t) == n


def test_trail_edge_uniqueness_and_vertex_cap():
    for t in generate_closed_trails(8, through=(0, 0)):
        es = [tuple(sorted(e)) for e in t.edges()]
        assert len(es) == len(set(es))
        for v in set(t.vertices):
            assert t.vertices[:-1].count(v) <= 2


def test_closed_trails_reject_tiny_length():
    with pytest.raises(ValueError):
        generate_closed_trails(1, through=(0, 0))


def test_annulus_has_four_walks_of_length_two():
    # brute force: exactly four boundary-to-boundary walks of length
    # two, one per outer corner
    spec = AnnulusSpec(LatticeKind.SQUARE, 4, 1)
    es = spec.edges()
    bnd = (spec.boundary(Region.INNER_BOUNDARY)
           | spec.boundary(Region.OUTER_BOUNDARY))
    found = set()
    for v in bnd:
        for mid in neighbors(v, LatticeKind.SQUARE):
            if tuple(sorted((v, mid))) not in es or mid in bnd:
                continue
            for w in neighbors(mid, LatticeKind.SQUARE):
                if w != v and tuple(sorted((mid, w))) in es and w in bnd:
                    found.add(min((v, mid, w), (w, mid, v)))
    assert len(found) == 4
    corners = {p[1] for p in found}
    assert corners == {(3, 3), (3, -3), (-3, 3), (-3, -3)}


@pytest.mark.parametrize("n,bound", [(8, 4 * 9 * 3 ** 7), (9, 4 * 10 * 3 ** 8)])
def test_count_bound_for_longer_trails(n, bound):
    wa = sq_straight_window(2 * n)
    wb = sq_corner_window(2 * n, 0)
    pool = frozenset(edge_firsts(wa + wb))
    walks, loops = trails_through_vertex((1, 1), n, wa, wb, pool)
    assert walks + loops <= bound


def test_trails_through_vertex_rejects_small_n():
    with pytest.raises(ValueError):
        trails_through_vertex((0, 0), 1)


def test_generate_trails_basic_semantics():
    # trails from a window back to an endpoint pool are edge-self-avoiding
    # and touch the pool only at their endpoints
    wa = sq_straight_window(8)
    pool = frozenset(edge_firsts(wa))
    c = TrailConstraints(4, tuple(wa),
                         end_edges=tuple((p, p) for p in pool),
                         avoid=pool)
    for t in generate_trails(c):
        assert len(t) == 4
        es = [tuple(sorted(e)) for e in t.edges()]
        assert len(es) == len(set(es))
        for v in t.vertices[1:-1]:
            assert v not in pool


def test_trail_threads_deterministic():
    wa = sq_straight_window(10)
    pool = frozenset(edge_firsts(wa))
    c = TrailConstraints(6, tuple(wa),
                         end_edges=tuple((p, p) for p in pool),
                         avoid=pool)
    assert generate_trails(c, threads=1) == generate_trails(c, threads=8)


def test_branching_bound():
    # at most three continuations per step: degree 4 minus the incoming edge
    for t in generate_closed_trails(6, through=(0, 0)):
        for prev, cur in zip(t.vertices, t.vertices[1:]):
            ext = [q for q in neighbors(cur, LatticeKind.SQUARE) if q != prev]
            assert len(ext) == 3
