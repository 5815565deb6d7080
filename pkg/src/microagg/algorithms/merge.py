"""Microaggregation followed by merging of clusters until every cluster is t-close"""

import logging
import time

import numpy as np

from src.microagg.algorithms.microaggregation import (
    Partition,
    aggregate,
    check_cluster_size,
    mdav_partition,
    normalized_points,
)
from src.microagg.analysis.emd import confidential_ranks
from src.microagg.analysis.metrics import build_report
from src.microagg.exceptions import ParameterError
from src.microagg.table import minmax_params

logger = logging.getLogger(__name__)


def check_tau(tau):
    if tau <= 0:
        raise ParameterError(f"t must be positive, got {tau}")


def merge_until_tclose(table, partition, tau, params=None):
    """Function used to merge clusters until every cluster lies within EMD tau of the table.

    Each step takes the cluster with the greatest EMD (lowest position on ties) and merges it with
    the cluster whose normalized centroid is nearest (lowest position on ties). The merged cluster
    keeps the lower of the two positions. A single remaining cluster has EMD 0, so the loop
    always ends.

    Args:
        table (Table): original table
        partition (Partition): starting partition
        tau (float): t-closeness level
        params (NormalizationParams): ranges of the original table, computed when missing

    Returns:
        partition (Partition): coarsening of the input partition
    """
    partition.validate(table.n)
    points = normalized_points(table, params)
    ranks = confidential_ranks(table)

    members = [cluster.indices for cluster in partition.clusters]
    active = np.ones(len(members), dtype=bool)
    centroids = np.array([points[indices].mean(axis=0) for indices in members])
    emds = np.array([ranks.cluster_emd(indices) for indices in members])

    merges = 0
    while active.sum() > 1:
        active_emds = np.where(active, emds, -np.inf)
        worst = int(np.argmax(active_emds))
        if active_emds[worst] <= tau:
            break

        squared = ((centroids - centroids[worst]) ** 2).sum(axis=1)
        squared[~active] = np.inf
        squared[worst] = np.inf
        nearest = int(np.argmin(squared))

        keep, drop = min(worst, nearest), max(worst, nearest)
        members[keep] = np.concatenate([members[keep], members[drop]])
        centroids[keep] = points[members[keep]].mean(axis=0)
        emds[keep] = ranks.cluster_emd(members[keep])
        active[drop] = False
        merges += 1
        logger.debug("Merged cluster %d into %d, new EMD %.4f", drop, keep, emds[keep])

    logger.debug("%d merges, %d clusters left", merges, int(active.sum()))
    return Partition.from_index_arrays(members[position] for position in np.flatnonzero(active))


def run_merge_algorithm(table, k, tau, params=None, **details):
    """Function used to anonymize a table with MDAV followed by cluster merging.

    Returns:
        anonymized (AnonymizedTable), partition (Partition), report (RunReport)
    """
    check_cluster_size(table.n, k)
    check_tau(tau)
    params = params or minmax_params(table)

    started = time.perf_counter()
    initial = mdav_partition(table, params, k)
    partition = merge_until_tclose(table, initial, tau, params)
    anonymized = aggregate(table, partition)
    runtime_ms = (time.perf_counter() - started) * 1000

    report = build_report(
        "merge",
        table,
        anonymized,
        partition,
        params,
        k,
        tau,
        runtime_ms,
        merges=len(initial) - len(partition),
        **details,
    )
    return anonymized, partition, report
