import pytest
from hypothesis import given, strategies as st

from aklt.lattice import (
    AnnulusSpec,
    HEX_ORIGIN_FACE,
    LatticeKind,
    Region,
    WindowKind,
    boundary_window,
    canonical_edge,
    classify_boundary,
    face_distance,
    hex_faces,
    hex_neighbors,
    neighbors,
    square_neighbors,
)

coord = st.integers(min_value=-50, max_value=50)
vertex = st.tuples(coord, coord)


def test_square_neighbors_origin():
    assert set(square_neighbors((0, 0))) == {(1, 0), (-1, 0), (0, 1), (0, -1)}


@given(vertex)
def test_hex_degree_three(v):
    ns = hex_neighbors(v)
    assert len(set(ns)) == 3


@given(vertex)
def test_hex_adjacency_symmetric(v):
    for w in hex_neighbors(v):
        assert v in hex_neighbors(w)


@given(vertex)
def test_hex_bipartite_coloring(v):
    # every edge joins vertices of opposite (x+y) parity
    for w in hex_neighbors(v):
        assert (v[0] + v[1]) % 2 != (w[0] + w[1]) % 2


@given(vertex)
def test_canonical_edge_idempotent(v):
    for w in hex_neighbors(v):
        e = canonical_edge(v, w)
        assert canonical_edge(*e) == e
        assert canonical_edge(w, v) == e


@given(vertex)
def test_face_distance_basics(v):
    for f in hex_faces(v):
        assert face_distance(f) >= 0
    assert face_distance(HEX_ORIGIN_FACE) == 0


@pytest.mark.parametrize("N,K", [(2, 0), (3, 1), (4, 1), (4, 2), (5, 2), (6, 3)])
def test_hex_boundary_sizes(N, K):
    spec = AnnulusSpec(LatticeKind.HEXAGONAL, N, K)
    assert len(spec.boundary(Region.INNER_BOUNDARY)) == 6 * K
    assert len(spec.boundary(Region.OUTER_BOUNDARY)) == 6 * N


def test_hex_n2_outer_boundary_is_12():
    spec = AnnulusSpec(LatticeKind.HEXAGONAL, 2, 0)
    assert len(spec.boundary(Region.OUTER_BOUNDARY)) == 12


def test_hex_k0_inner_boundary_empty():
    spec = AnnulusSpec(LatticeKind.HEXAGONAL, 4, 0)
    assert spec.boundary(Region.INNER_BOUNDARY) == set()


def test_classification_partition():
    spec = AnnulusSpec(LatticeKind.HEXAGONAL, 4, 1)
    regions = {v: classify_boundary(v, spec) for v in spec.vertices()}
    assert Region.NOT_IN_VOLUME not in regions.values()
    tips = [v for v, r in regions.items()
            if r in (Region.INNER_BOUNDARY, Region.OUTER_BOUNDARY)]
    for v in tips:
        assert spec.degree(v) == 1
    for v, r in regions.items():
        if r is Region.INTERIOR:
            assert spec.degree(v) == 3


def test_square_four_degree_two_corners():
    spec = AnnulusSpec(LatticeKind.SQUARE, 5, 2)
    inner = spec.boundary(Region.INNER_BOUNDARY)
    deg2 = {v for v in inner if spec.degree(v) == 2}
    assert deg2 == {(1, 1), (1, -1), (-1, 1), (-1, -1)}
    for v in (spec.boundary(Region.OUTER_BOUNDARY) | inner) - deg2:
        assert spec.degree(v) == 1


@pytest.mark.parametrize("N,K", [(3, 1), (4, 2), (5, 1), (6, 4)])
def test_edge_set_difference(N, K):
    # annulus edges = ball(N) edges minus open-ball(K) edges
    annulus = AnnulusSpec(LatticeKind.HEXAGONAL, N, K)
    ball = AnnulusSpec(LatticeKind.HEXAGONAL, N, 0)
    hole = AnnulusSpec(LatticeKind.HEXAGONAL, K, 0)
    assert annulus.edges() == ball.edges() - hole.open_edges()


def test_annulus_validation():
    with pytest.raises(ValueError):
        AnnulusSpec(LatticeKind.HEXAGONAL, 0, 0)
    with pytest.raises(ValueError):
        AnnulusSpec(LatticeKind.HEXAGONAL, 3, 3)
    with pytest.raises(ValueError):
        AnnulusSpec(LatticeKind.SQUARE, 3, -1)


@pytest.mark.parametrize("kind", list(WindowKind))
@pytest.mark.parametrize("length", [1, 2, 3, 4, 5, 6])
def test_window_edge_count(kind, length):
    edges = boundary_window(kind, length)
    assert len(edges) == length + 1
    assert len(set(map(tuple, edges))) == length + 1


def test_window_rejects_zero_length():
    with pytest.raises(ValueError):
        boundary_window(WindowKind.STRAIGHT_OUTER, 0)


@pytest.mark.parametrize("kind", list(WindowKind))
def test_window_edges_are_lattice_edges(kind):
    for a, b in boundary_window(kind, 4):
        assert a in hex_neighbors(b)


def test_neighbors_dispatch():
    assert len(neighbors((0, 0), LatticeKind.HEXAGONAL)) == 3
    assert len(neighbors((0, 0), LatticeKind.SQUARE)) == 4
