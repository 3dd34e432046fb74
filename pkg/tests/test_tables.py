import json
import os

import pytest

from aklt.tables import (
    GENERATOR_VERSION,
    S_CLASSES,
    TableId,
    TableResult,
    cache_dir,
    loops_through_edge_table,
    q_table,
    r_table,
    s_table,
    square_cn_table,
    walks_to_boundary_table,
)
from conftest import int_rows


def test_loops_table_matches_reference(golden):
    rows = loops_through_edge_table(28).rows
    assert rows == int_rows(golden["hexagonal"]["loops_through_edge"])


def test_loops_table_preconditions():
    with pytest.raises(ValueError):
        loops_through_edge_table(7)
    with pytest.raises(ValueError):
        loops_through_edge_table(4)


def test_walks_to_boundary_matches_reference(golden):
    rows = walks_to_boundary_table(10).rows
    assert rows == int_rows(golden["hexagonal"]["walks_to_boundary"])


def test_r_table_matches_reference(golden):
    assert r_table(20).rows == int_rows(golden["hexagonal"]["right_endpoint"])


def test_q_table_matches_reference(golden):
    assert q_table(19).rows == int_rows(golden["hexagonal"]["odd_corner"])


@pytest.mark.parametrize("cls", S_CLASSES)
def test_s_table_matches_reference(golden, cls):
    res = s_table(cls, 20)
    block = golden["hexagonal"]["sup_table"]["classes"][f"{cls[0]}{cls[1]}"]
    assert res.rows == int_rows(block)
    assert res.loop_rows == {int(k): v for k, v in block["loop_rows"].items()}


def test_s_table_bold_entries():
    # the two free-loop rows of the (w,5) column
    res = s_table(("w", 5), 20)
    assert res.loop_rows[6] == 3
    assert res.loop_rows[10] == 11


def test_square_cn_matches_reference(golden):
    assert square_cn_table(7).rows == int_rows(golden["square"]["cn"])


def test_table_values_non_negative():
    for res in (loops_through_edge_table(14), r_table(12), q_table(11)):
        assert all(v >= 0 for v in res.rows.values())


def test_s_rows_non_negative():
    # each row is a difference of cumulative supremums, so the cumulative
    # count is non-decreasing iff every row is >= 0
    for cls in S_CLASSES:
        res = s_table(cls, 20)
        assert all(v >= 0 for v in res.rows.values())


def test_window_saturation():
    # enlarging the boundary windows (larger l_max computes with larger
    # windows) leaves small-length values unchanged
    q_small, q_big = q_table(11).rows, q_table(13).rows
    assert all(q_small[l] == q_big[l] for l in q_small)
    r_small, r_big = r_table(12).rows, r_table(14).rows
    assert all(r_small[l] == r_big[l] for l in r_small)
    s_small = s_table(("w", 3), 12, use_cache=False).rows
    s_big = s_table(("w", 3), 20).rows
    assert all(s_small[l] == s_big[l] for l in s_small)


def test_table_result_json_roundtrip():
    res = loops_through_edge_table(10)
    again = TableResult.from_json(json.loads(json.dumps(res.to_json())))
    assert again == res
    assert again.rows == res.rows


def test_cache_roundtrip(tmp_path, monkeypatch):
    monkeypatch.setenv("AKLT_CACHE_DIR", str(tmp_path))
    assert cache_dir() == tmp_path
    first = loops_through_edge_table(8)
    files = list(tmp_path.glob("*.json"))
    assert len(files) == 1
    payload = json.loads(files[0].read_text())
    assert payload["generator_version"] == GENERATOR_VERSION
    assert payload["table_id"] == TableId.LOOPS_THROUGH_EDGE.value
    second = loops_through_edge_table(8)
    assert first == second
    # no stray temp files left behind by the atomic write
    assert not list(tmp_path.glob("*.tmp*"))


def test_cache_version_mismatch_recomputes(tmp_path, monkeypatch):
    monkeypatch.setenv("AKLT_CACHE_DIR", str(tmp_path))
    loops_through_edge_table(8)
    f = next(tmp_path.glob("*.json"))
    payload = json.loads(f.read_text())
    payload["generator_version"] = GENERATOR_VERSION - 1
    payload["rows"] = [{"index": 6, "value": 999}]
    f.write_text(json.dumps(payload))
    res = loops_through_edge_table(8)
    assert res.rows[6] == 2  # poisoned stale-version entry ignored


def test_threads_do_not_change_tables():
    a = q_table(9, use_cache=False, threads=1)
    b = q_table(9, use_cache=False, threads=8)
    assert a == b
