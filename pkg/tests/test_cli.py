import csv
import io
import json

import pytest

from aklt.cli import (
    EXIT_CHECK_FAILED,
    EXIT_OK,
    EXIT_REGIME,
    EXIT_USAGE,
    load_golden,
    main,
)
from aklt.tables import TableResult


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_tables_json_roundtrip(capsys):
    code, out, _ = run(capsys, "tables", "--id", "loops", "--max", "14")
    assert code == EXIT_OK
    res = TableResult.from_json(json.loads(out))
    assert res.rows[6] == 2 and res.rows[14] == 56


def test_tables_check_reference(capsys):
    code, _, err = run(capsys, "tables", "--id", "q", "--max", "11",
                       "--check-reference")
    assert code == EXIT_OK
    assert "reference check passed" in err


def test_tables_csv_row_count(capsys):
    code, out, _ = run(capsys, "tables", "--id", "r", "--max", "20",
                       "--format", "csv")
    assert code == EXIT_OK
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 9
    assert {r["index"]: r["value"] for r in rows}["20"] == "1943"


def test_tables_usage_error_on_odd_loops(capsys):
    code, _, err = run(capsys, "tables", "--id", "loops", "--max", "7")
    assert code == EXIT_USAGE
    assert "error" in err


def test_unknown_table_id_is_usage_error():
    with pytest.raises(SystemExit) as exc:
        main(["tables", "--id", "bogus"])
    assert exc.value.code == EXIT_USAGE


def test_kpu_hex_pass(capsys):
    code, out, _ = run(capsys, "kpu", "--lattice", "hex", "--m", "0",
                       "--K", "25", "--N", "78")
    assert code == EXIT_OK
    rep = json.loads(out)
    assert rep["passed"] is True
    assert max(rep["totals"].values()) < 1.0


def test_kpu_square_m0_out_of_regime(capsys):
    code, _, err = run(capsys, "kpu", "--lattice", "square", "--m", "0")
    assert code == EXIT_REGIME
    assert "out of regime" in err


def test_kpu_square_m1_passes(capsys):
    code, out, _ = run(capsys, "kpu", "--lattice", "square", "--m", "1")
    assert code == EXIT_OK
    rep = json.loads(out)
    assert rep["totals"]["square"] <= 0.085


def test_kpu_hex_out_of_regime(capsys):
    code, _, err = run(capsys, "kpu", "--lattice", "hex", "--m", "0",
                       "--K", "10", "--N", "78")
    assert code == EXIT_REGIME


def test_bounds_constant_flags_square_discrepancy(capsys):
    code, out, _ = run(capsys, "bounds", "--lattice", "square", "--constant")
    assert code == EXIT_OK
    payload = json.loads(out)["ltqo_constant"]
    assert payload["agree"] is False
    assert payload["quoted"] == pytest.approx(2.4951)
    assert payload["recomputed"] == pytest.approx(2.6494, abs=5e-4)


def test_bounds_corr_regime(capsys):
    code, out, _ = run(capsys, "bounds", "--lattice", "hex", "--corr",
                       "--M", "50", "--d", "49")
    assert code == EXIT_OK
    assert json.loads(out)["correlation"]["regime_ok"] is False


def test_bounds_requires_selection(capsys):
    code, _, err = run(capsys, "bounds", "--lattice", "hex")
    assert code == EXIT_USAGE


def test_validate_small_run(capsys):
    code, out, _ = run(capsys, "validate", "--seed", "42",
                       "--samples", "100000")
    assert code == EXIT_OK
    rep = json.loads(out)
    assert rep["passed"] is True
    assert all(rep["checks"].values())


def test_golden_data_has_citations():
    golden = load_golden()
    assert golden["version"] == 1
    for block in (golden["hexagonal"]["loops_through_edge"],
                  golden["hexagonal"]["criterion_cells"],
                  golden["square"]["cn"],
                  golden["bounds"]):
        assert "citation" in block


def test_cache_dir_flag(tmp_path, capsys):
    import os
    before = os.environ.get("AKLT_CACHE_DIR")
    try:
        code, _, _ = run(capsys, "tables", "--id", "loops", "--max", "8",
                         "--cache-dir", str(tmp_path))
        assert code == EXIT_OK
        assert list(tmp_path.glob("*.json"))
    finally:
        if before is None:
            os.environ.pop("AKLT_CACHE_DIR", None)
        else:
            os.environ["AKLT_CACHE_DIR"] = before
