import math

import numpy as np
import pytest

from aklt.lattice import LatticeKind
from aklt.oracle import (
    McConfig,
    NORTH,
    SpherePoint,
    _batch_rng,
    _sample_sphere,
    brute_force_partition,
    degree4_exact,
    hex_polymer_value,
    hexagon_edges,
    mc_degree4_identity,
    mc_edge_identity,
    reference_port_compare,
    square_polymer_value,
    unit_square_edges,
)
from aklt.tables import TableId

CFG = McConfig(seed=11, samples=200_000)
X_AXIS = SpherePoint(1.0, 0.0, 0.0)


def test_sphere_point_validates_norm():
    with pytest.raises(ValueError):
        SpherePoint(1.0, 1.0, 0.0)
    p = SpherePoint.from_array([2.0, 0.0, 0.0])
    assert p == X_AXIS


def test_mc_config_validates():
    with pytest.raises(ValueError):
        McConfig(seed=0, samples=0)


def test_sampling_is_uniform():
    om = _sample_sphere(_batch_rng(CFG, 0), 200_000)[:, 0, :]
    n = len(om)
    mean = om.mean(axis=0)
    assert np.all(np.abs(mean) <= 4 / math.sqrt(n))
    z2 = (om[:, 2] ** 2).mean()
    assert abs(z2 - 1 / 3) <= 4 * np.std(om[:, 2] ** 2) / math.sqrt(n)
    assert np.allclose(np.linalg.norm(om, axis=1), 1.0)


def test_edge_identity_analytic_cases():
    est, err = mc_edge_identity(NORTH, NORTH, CFG)
    assert abs(est - 1 / 3) <= 4 * err
    est, err = mc_edge_identity(NORTH, X_AXIS, CFG)
    assert abs(est) <= 4 * err


def test_edge_identity_random_pairs():
    rng = np.random.default_rng(5)
    for _ in range(5):
        y = SpherePoint.from_array(rng.normal(size=3))
        z = SpherePoint.from_array(rng.normal(size=3))
        est, err = mc_edge_identity(y, z, CFG)
        exact = (y.as_array() @ z.as_array()) / 3
        assert abs(est - exact) <= 4 * err


def test_degree4_analytic_cases():
    est, err = mc_degree4_identity((NORTH,) * 4, CFG)
    assert abs(est - 1 / 5) <= 4 * err
    assert degree4_exact((NORTH,) * 4) == pytest.approx(1 / 5)
    mixed = (NORTH, NORTH, X_AXIS, X_AXIS)
    est, err = mc_degree4_identity(mixed, CFG)
    assert degree4_exact(mixed) == pytest.approx(1 / 15)
    assert abs(est - 1 / 15) <= 4 * err


def test_degree4_random_quadruples():
    rng = np.random.default_rng(9)
    for _ in range(5):
        quad = tuple(SpherePoint.from_array(rng.normal(size=3))
                     for _ in range(4))
        est, err = mc_degree4_identity(quad, CFG)
        assert abs(est - degree4_exact(quad)) <= 4 * err


def test_degree4_requires_four_points():
    with pytest.raises(ValueError):
        mc_degree4_identity((NORTH,) * 3, CFG)


def test_hexagon_polymer_value_exact():
    # only polymer is the hexagon itself, contributing +1/243
    val = hex_polymer_value(hexagon_edges())
    assert val == pytest.approx(244 / (64 * 243), rel=1e-15)
    assert val > 2 ** -6  # positive loop contribution


def test_unit_square_polymer_value_exact():
    val = square_polymer_value(unit_square_edges())
    assert val == pytest.approx(2 ** -4 * (1 + 1 / 27), rel=1e-15)


def test_disjoint_hexagons_factorize():
    far = [tuple(sorted(((a + 20, b), (c + 20, d))))
           for (a, b), (c, d) in hexagon_edges()]
    val = hex_polymer_value(hexagon_edges() + far)
    single = hex_polymer_value(hexagon_edges())
    assert val == pytest.approx(single * single, rel=1e-12)


def test_partition_checks_agree():
    check = brute_force_partition(hexagon_edges(), LatticeKind.HEXAGONAL, CFG)
    assert check.within()
    check = brute_force_partition(unit_square_edges(), LatticeKind.SQUARE, CFG)
    assert check.within()


def test_partition_rejects_large_component():
    # three hexagons in a row share edges into one 14-vertex component
    strip = set(hexagon_edges())
    for dx in (2, 4):
        strip.update(tuple(sorted(((a + dx, b), (c + dx, d))))
                     for (a, b), (c, d) in hexagon_edges())
    with pytest.raises(ValueError):
        brute_force_partition(sorted(strip), LatticeKind.HEXAGONAL, CFG)


def test_determinism_across_threads():
    a = mc_edge_identity(NORTH, X_AXIS, McConfig(seed=3, samples=150_000))
    b = mc_edge_identity(NORTH, X_AXIS,
                         McConfig(seed=3, samples=150_000, threads=4))
    assert a == b


def test_determinism_same_seed():
    a = mc_degree4_identity((NORTH,) * 4, McConfig(seed=21, samples=50_000))
    b = mc_degree4_identity((NORTH,) * 4, McConfig(seed=21, samples=50_000))
    assert a == b


@pytest.mark.parametrize("tid,rng", [
    (TableId.LOOPS_THROUGH_EDGE, 12),
    (TableId.RIGHT_ENDPOINT_R, 10),
    (TableId.ODD_CORNER_Q, 9),
    (TableId.SQUARE_CN, 4),
])
def test_reference_port_parity_reduced(tid, rng):
    assert reference_port_compare(tid, rng) == {}


def test_reference_port_rejects_unknown_table():
    with pytest.raises(ValueError):
        reference_port_compare(TableId.SUP_TABLE_S, 10)
