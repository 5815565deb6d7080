import pytest

from src.microagg.bench import BenchDataset, preset_datasets, run_cell, run_grid
from src.microagg.config.microagg_config import REPORT_FIELDS
from src.microagg.table import minmax_params


@pytest.fixture
def small_dataset(small_table):
    return BenchDataset("small", small_table, 7)


def test_preset_datasets_with_sizes():
    datasets = preset_datasets(["mcd", "hcd"], 7, grid_n=[100, 200])

    assert [dataset.label for dataset in datasets] == ["mcd-n100", "mcd-n200", "hcd-n100", "hcd-n200"]
    assert [dataset.table.n for dataset in datasets] == [100, 200, 100, 200]


def test_run_cell_records_verdicts(small_dataset):
    row = run_cell(small_dataset, "tfirst", 2, 0.5, minmax_params(small_dataset.table))

    assert row["status"] == "ok"
    assert row["k_anonymity_pass"] and row["t_closeness_pass"]
    assert row["dataset"] == "small"
    assert row["seed"] == 7


def test_run_cell_records_failure(small_dataset):
    row = run_cell(small_dataset, "merge", 2, -0.1, minmax_params(small_dataset.table))

    assert row["status"] == "failed"
    assert "t must be positive" in row["error"]


def test_run_grid_one_row_per_cell(small_dataset):
    report_df = run_grid([small_dataset], ["merge", "tfirst"], [2, 3], [0.2, 0.5], show_progress=False)

    assert len(report_df) == 8
    assert list(report_df.columns[: len(REPORT_FIELDS)]) == REPORT_FIELDS
    assert (report_df.status == "ok").all()
    assert (report_df.k_min_actual >= report_df.k_requested).all()


def test_run_grid_skips_k_above_n(small_dataset):
    report_df = run_grid([small_dataset], ["merge"], [2, 10], [0.5], show_progress=False)
    assert report_df.k_requested.tolist() == [2]


@pytest.mark.slow
def test_tfirst_row_of_the_default_sweep():
    datasets = preset_datasets(["mcd"], 7)
    t_grid = [0.01, 0.05, 0.09, 0.13, 0.17, 0.21, 0.25]
    report_df = run_grid(datasets, ["tfirst"], [2], t_grid, show_progress=False)

    assert report_df.k_effective.tolist() == [49, 10, 6, 4, 3, 3, 2]
    assert report_df.t_closeness_pass.all()


def test_unexpected_error_fails_only_its_cell(small_dataset, monkeypatch):
    from src.microagg import bench

    real_anonymize = bench.anonymize

    def anonymize_or_crash(table, k, tau, algorithm, **kwargs):
        if algorithm == "kfirst":
            raise RuntimeError("solver blew up")
        return real_anonymize(table, k, tau, algorithm, **kwargs)

    monkeypatch.setattr(bench, "anonymize", anonymize_or_crash)
    report_df = run_grid([small_dataset], ["kfirst", "tfirst"], [2], [0.5], show_progress=False)

    assert report_df.status.tolist() == ["failed", "ok"]
    assert report_df.error.iloc[0] == "solver blew up"
