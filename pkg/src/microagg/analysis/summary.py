"""Script used to summarise benchmark sweeps into cluster size tables and SSE curves"""

import pandas as pd


def format_cluster_sizes(k_min, k_avg):
    """Function used to render a cell as "minimum/average" cluster size."""
    return f"{int(k_min)}/{k_avg:.0f}"


def successful_rows(report_df):
    if "status" not in report_df.columns:
        return report_df
    return report_df.loc[lambda dfr_: dfr_.status == "ok"]


def cluster_size_table(report_df, algorithm, dataset):
    """Function used to pivot sweep rows into a k x t table of "min/avg" cluster sizes.

    Args:
        report_df (pandas.DataFrame): rows written by a benchmark sweep
        algorithm (str): algorithm to tabulate
        dataset (str): dataset label to tabulate

    Returns:
        size_table_df (pandas.DataFrame): index k_requested, one column per t
    """
    rows_df = successful_rows(report_df).loc[
        lambda dfr_: (dfr_.algorithm == algorithm) & (dfr_.dataset == dataset)
    ]
    size_table_df = (
        rows_df.assign(
            cluster_sizes=[
                format_cluster_sizes(k_min, k_avg) for k_min, k_avg in zip(rows_df.k_min_actual, rows_df.k_avg_actual)
            ]
        )
        .pivot(index="k_requested", columns="tau", values="cluster_sizes")
        .sort_index()
    )
    size_table_df.columns = [f"t={tau:g}" for tau in size_table_df.columns]
    return size_table_df


def sse_curve(report_df, dataset, k):
    """Function used to pivot normalized SSE by t, one column per algorithm, for one dataset and k."""
    rows_df = successful_rows(report_df).loc[lambda dfr_: (dfr_.dataset == dataset) & (dfr_.k_requested == k)]
    return rows_df.pivot(index="tau", columns="algorithm", values="sse").sort_index()


def write_summaries(report_df, output_dir):
    """Function used to write every cluster size table and SSE curve of a sweep as CSV files.

    Returns:
        written (list): paths of the files written
    """
    output_dir.mkdir(parents=True, exist_ok=True)
    rows_df = successful_rows(report_df)
    written = []

    for (algorithm, dataset), _ in rows_df.groupby(["algorithm", "dataset"]):
        path = output_dir / f"cluster_sizes_{algorithm}_{dataset}.csv"
        cluster_size_table(rows_df, algorithm, dataset).to_csv(path)
        written.append(path)

    for (dataset, k), _ in rows_df.groupby(["dataset", "k_requested"]):
        path = output_dir / f"sse_{dataset}_k{int(k)}.csv"
        sse_curve(rows_df, dataset, k).to_csv(path)
        written.append(path)
    return written
