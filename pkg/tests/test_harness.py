import csv
import json

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from numrad.errors import ConfigError, ReportIOError
from numrad.harness import (
    CSV_COLUMNS,
    DEFAULT_SCENARIOS,
    OPERATOR_CLASSES,
    FuzzConfig,
    FuzzReport,
    class_predicate,
    generate,
    read_report,
    run_sweep,
    summarize,
    thread_count,
    write_report,
)
from numrad.inequalities import CheckParams
from numrad.linalg import classify, operator_norm
from numrad.rng import SplitMix64
from strategies import seeds

SMALL = FuzzConfig(trials=6, dims=(2, 3), seed=5, param_grid=(CheckParams(r=2.0, p=2.0, q=2.0, alpha=0.5, s=0.5, n_power=2),))


# --- generators ------------------------------------------------------------------


@pytest.mark.parametrize("tag", OPERATOR_CLASSES)
@given(seed=seeds, n=st.integers(1, 9))
def test_generated_samples_pass_their_class(tag, seed, n):
    A = generate(tag, n, SplitMix64(seed))
    assert A.shape == (n, n) and A.dtype == np.complex128
    assert class_predicate(tag, A)


def test_hermitian_exact():
    A = generate("hermitian", 4, SplitMix64(1))
    assert np.array_equal(A, A.conj().T)


def test_unitary_residual():
    U = generate("unitary", 3, SplitMix64(1))
    assert np.abs(U.conj().T @ U - np.eye(3)).max() <= 1e-10


def test_nilpotent_square_zero():
    N = generate("nilpotent", 2, SplitMix64(1))
    assert np.array_equal(N @ N, np.zeros((2, 2)))


@given(seeds, st.integers(1, 9))
def test_hermitian_invertible_conditioning(seed, n):
    A = generate("hermitian_invertible", n, SplitMix64(seed))
    sv = np.linalg.svd(A, compute_uv=False)
    assert sv[-1] >= 0.1 - 1e-12 and sv[0] / sv[-1] <= 10 + 1e-9
    assert "hermitian" in classify(A)


@given(seeds, st.integers(2, 9))
def test_rank_deficient_rank(seed, n):
    A = generate("rank_deficient", n, SplitMix64(seed))
    assert np.linalg.matrix_rank(A, 1e-10 * operator_norm(A)) == n - n // 2


def test_contraction_norm():
    assert operator_norm(generate("contraction", 5, SplitMix64(2))) == pytest.approx(0.9, abs=1e-12)


def test_class_predicate_rejects():
    assert not class_predicate("psd", np.diag([1.0, -1.0]))
    assert not class_predicate("nilpotent", np.eye(2))
    assert not class_predicate("rank_deficient", np.eye(2))
    with pytest.raises(ConfigError):
        generate("bogus", 2, SplitMix64(0))
    with pytest.raises(ConfigError):
        generate("ginibre", 0, SplitMix64(0))


def test_generation_deterministic():
    a = generate("normal", 4, SplitMix64(9))
    b = generate("normal", 4, SplitMix64(9))
    assert np.array_equal(a, b)


# --- config ------------------------------------------------------------------------


@pytest.mark.parametrize(
    "kwargs",
    [
        {"trials": 0},
        {"trials": -3},
        {"trials": 2.5},
        {"dims": ()},
        {"dims": (0, 2)},
        {"param_grid": ()},
        {"scenarios": ()},
        {"scenarios": (("ginibre", "psd", "bogus"),)},
        {"seed": -1},
        {"seed": 2**64},
        {"tol": 0.0},
        {"tol": float("nan")},
        {"checker_filter": ("R99",)},
        {"checker_filter": ()},
    ],
)
def test_config_validation(kwargs):
    with pytest.raises(ConfigError):
        FuzzConfig(**kwargs)


def test_default_config():
    cfg = FuzzConfig()
    assert cfg.trials == 1000 and cfg.dims == tuple(range(2, 17))
    assert len(cfg.param_grid) == 720 and cfg.scenarios == DEFAULT_SCENARIOS


def test_thread_count(monkeypatch):
    monkeypatch.setenv("NUMRAD_THREADS", "3")
    assert thread_count() == 3
    monkeypatch.setenv("NUMRAD_THREADS", "zero")
    with pytest.raises(ConfigError):
        thread_count()
    monkeypatch.delenv("NUMRAD_THREADS")
    assert thread_count() >= 1


# --- sweeps --------------------------------------------------------------------------


@pytest.fixture(scope="module")
def small_report():
    return run_sweep(SMALL, workers=1)


def test_rows_ordered(small_report):
    keys = [(r.trial, r.checker_id, r.grid_index) for r in small_report.rows]
    assert keys == sorted(keys)
    assert {r.trial for r in small_report.rows} == set(range(6))


def test_rows_follow_scenarios(small_report):
    for row in small_report.rows:
        assert (row.class_A, row.class_B, row.class_X) == DEFAULT_SCENARIOS[row.trial % 14]
        assert row.dim == (2, 3)[row.trial % 2]


def test_summary_recomputable(small_report):
    assert summarize(small_report.rows) == small_report.summary
    for cid, s in small_report.summary.items():
        slacks = [r.slack for r in small_report.rows if r.checker_id == cid]
        assert s["min_slack"] == min(slacks) and s["count"] == len(slacks)


def test_sweep_deterministic(small_report):
    assert run_sweep(SMALL, workers=1).rows == small_report.rows


def test_parallel_matches_serial(small_report):
    assert run_sweep(SMALL, workers=2).rows == small_report.rows


def test_checker_filter():
    cfg = FuzzConfig(trials=3, dims=(2,), seed=1, checker_filter=("R01", "polarization"))
    rep = run_sweep(cfg, workers=1)
    assert set(rep.summary) == {"R01", "R23"}


def test_sub_seeds_distinct(small_report):
    seeds_by_trial = {r.trial: r.sub_seed for r in small_report.rows}
    assert len(set(seeds_by_trial.values())) == len(seeds_by_trial)


# --- report files ----------------------------------------------------------------------


def test_empty_report_header_only(tmp_path):
    path = tmp_path / "e.csv"
    write_report(FuzzReport([], {}), path)
    assert path.read_text() == ",".join(CSV_COLUMNS) + "\n"


def test_csv_roundtrip(tmp_path, small_report):
    path = tmp_path / "r.csv"
    write_report(small_report, path, "csv")
    back = read_report(path)
    assert back.rows == [
        r.__class__(**{**r.__dict__, "grid_index": 0}) for r in small_report.rows
    ]
    assert back.summary == small_report.summary
    with open(path) as fh:
        header = next(csv.reader(fh))
    assert tuple(header) == CSV_COLUMNS


def test_missing_params_empty_in_csv(tmp_path, small_report):
    path = tmp_path / "r.csv"
    write_report(small_report, path)
    row = next(r for r in csv.DictReader(open(path)) if r["checker_id"] == "R01")
    assert row["r"] == "" and row["alpha"] == "" and row["n_power"] == ""


def test_json_one_row_roundtrip(tmp_path, small_report):
    one = FuzzReport(small_report.rows[:1], summarize(small_report.rows[:1]), ["a note"])
    path = tmp_path / "r.json"
    write_report(one, path, "json")
    doc = json.loads(path.read_text())
    assert set(doc) == {"rows", "summary", "notes"}
    assert len(doc["rows"]) == 1 and doc["rows"][0]["lhs"] == one.rows[0].lhs
    back = read_report(path)
    assert back.rows[0].slack == one.rows[0].slack and back.notes == ["a note"]


def test_write_errors(tmp_path, small_report):
    with pytest.raises(ReportIOError):
        write_report(small_report, tmp_path / "missing" / "r.csv")
    with pytest.raises(ConfigError):
        write_report(small_report, tmp_path / "r.xml", "xml")


def test_read_errors(tmp_path):
    with pytest.raises(ReportIOError):
        read_report(tmp_path / "nope.csv")
    bad = tmp_path / "bad.csv"
    bad.write_text("a,b\n1,2\n")
    with pytest.raises(ConfigError):
        read_report(bad)
