"""Benchmark sweeps over algorithms, k and t"""

import logging
from dataclasses import dataclass
from typing import Optional

from tqdm import tqdm

from src.microagg.algorithms.pipeline import anonymize
from src.microagg.analysis.metrics import verify_k_anonymity, verify_t_closeness
from src.microagg.etl.persist import report_rows_to_df
from src.microagg.etl.synth import SynthConfig, synth_generate
from src.microagg.table import Table, minmax_params

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BenchDataset:
    label: str
    table: Table
    seed: Optional[int] = None


def preset_datasets(presets, seed, grid_n=None):
    """Function used to generate the synthetic surrogates a sweep runs on.

    With grid_n every preset is regenerated at each size, labelled "<preset>-n<size>".
    """
    datasets = []
    for preset in presets:
        if not grid_n:
            datasets.append(BenchDataset(preset, synth_generate(SynthConfig.from_preset(preset, seed=seed)), seed))
            continue
        for n in grid_n:
            cfg = SynthConfig.from_preset(preset, seed=seed, n=n)
            datasets.append(BenchDataset(f"{preset}-n{n}", synth_generate(cfg), seed))
    return datasets


def run_cell(dataset, algorithm, k, tau, params):
    """Function used to run and verify one grid cell; a failure is recorded in the row, not raised.

    Returns:
        row (dict): report fields plus status, error and verifier verdicts
    """
    try:
        anonymized, partition, report = anonymize(
            dataset.table, k, tau, algorithm, params=params, seed=dataset.seed, dataset=dataset.label
        )
    except Exception as err:  # pylint: disable=broad-except
        logger.warning("Cell %s/%s k=%d t=%.3f failed: %s", dataset.label, algorithm, k, tau, err)
        return {
            "algorithm": algorithm,
            "dataset": dataset.label,
            "n": dataset.table.n,
            "k_requested": k,
            "tau": tau,
            "seed": dataset.seed,
            "status": "failed",
            "error": str(err),
        }

    row = report.to_dict()
    row["k_anonymity_pass"] = verify_k_anonymity(anonymized, k).passed
    row["t_closeness_pass"] = verify_t_closeness(dataset.table, partition, tau).passed
    row["status"] = "ok"
    row["error"] = ""
    return row


def run_grid(datasets, algorithms, grid_k, grid_t, show_progress=True):
    """Function used to run every (dataset, algorithm, k, t) cell of a sweep in turn.

    Cells run one after another so that the recorded runtimes are comparable.

    Args:
        datasets (list): BenchDataset entries
        algorithms (list): algorithm names
        grid_k (list): k values
        grid_t (list): t values
        show_progress (bool): show a progress bar

    Returns:
        report_df (pandas.DataFrame): one row per cell
    """
    cells = [
        (dataset, algorithm, k, tau)
        for dataset in datasets
        for algorithm in algorithms
        for k in grid_k
        for tau in grid_t
    ]
    params_by_label = {dataset.label: minmax_params(dataset.table) for dataset in datasets}

    rows = []
    for dataset, algorithm, k, tau in tqdm(cells, disable=not show_progress):
        if k > dataset.table.n:
            logger.warning("Skipping k=%d on %s with only %d records", k, dataset.label, dataset.table.n)
            continue
        rows.append(run_cell(dataset, algorithm, k, tau, params_by_label[dataset.label]))
    return report_rows_to_df(rows)
