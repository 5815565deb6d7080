"""t-closeness-first microaggregation: one record per confidential rank subset in every cluster"""

import logging
import time
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from src.microagg.algorithms.merge import check_tau, merge_until_tclose
from src.microagg.algorithms.microaggregation import (
    Cluster,
    Partition,
    aggregate,
    check_cluster_size,
    seed_alternation,
)
from src.microagg.analysis.emd import adjust_cluster_size, required_cluster_size
from src.microagg.analysis.metrics import build_report, cluster_emds
from src.microagg.exceptions import ParameterError, PartitionError
from src.microagg.table import minmax_params

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class RankedSubsets:
    """k subsets of records in ascending confidential order.

    Every subset holds `baseline` records plus its entry in `extras`; only the central
    subset(s) hold extras.
    """

    subsets: Tuple[np.ndarray, ...]
    baseline: int
    extras: Tuple[int, ...]

    @property
    def k(self) -> int:
        return len(self.subsets)

    @property
    def sizes(self) -> Tuple[int, ...]:
        return tuple(subset.size for subset in self.subsets)


def central_extras(k, extra_records):
    """Function used to spread n mod k leftover records over the central subset(s).

    Odd k puts them all in the middle subset; even k splits them between the two middle
    subsets, the lower one taking the odd record out.
    """
    extras = [0] * k
    if k % 2:
        extras[k // 2] = extra_records
    else:
        extras[k // 2 - 1] = extra_records - extra_records // 2
        extras[k // 2] = extra_records // 2
    return extras


def split_subsets(table, k):
    """Function used to split the records into k subsets by confidential rank.

    Ties in the confidential value are ranked by record index.

    Args:
        table (Table): original table
        k (int): number of subsets, with n mod k <= floor(n / k)

    Returns:
        subsets (RankedSubsets): each subset lists record indices in ascending confidential order
    """
    check_cluster_size(table.n, k)
    baseline, extra_records = divmod(table.n, k)
    if extra_records > baseline:
        raise ParameterError(
            f"n mod k must not exceed floor(n / k), got {extra_records} > {baseline} for n={table.n}, k={k}"
        )

    extras = central_extras(k, extra_records)
    bounds = np.cumsum([0] + [baseline + extra for extra in extras])
    order = table.confidential_order
    subsets = tuple(order[start:end] for start, end in zip(bounds[:-1], bounds[1:]))
    return RankedSubsets(subsets, baseline, tuple(extras))


class SubsetPool:
    """Working copy of ranked subsets that clusters are drawn from.

    Each cluster takes the record nearest to its seed from every subset. While a central
    subset still holds extras, the cluster also takes that subset's second nearest record,
    at most one extra per cluster, lower central subset first.
    """

    def __init__(self, subsets, points):
        self.points = points
        self.remaining = [np.sort(subset) for subset in subsets.subsets]
        self.extras = list(subsets.extras)

    def take_nearest(self, position, seed):
        subset = self.remaining[position]
        if subset.size == 0:
            raise PartitionError(f"Subset {position + 1} ran out of records")
        squared = ((self.points[subset] - self.points[seed]) ** 2).sum(axis=1)
        # subsets are kept in index order, so argmin picks the lowest index on ties
        nearest = int(np.argmin(squared))
        record = int(subset[nearest])
        self.remaining[position] = np.delete(subset, nearest)
        return record

    def build_cluster(self, seed):
        """Function used to build the next cluster around a seed record.

        Returns:
            cluster (Cluster): k or k + 1 records
        """
        members = []
        extra_taken = False
        for position in range(len(self.remaining)):
            members.append(self.take_nearest(position, seed))
            if not extra_taken and self.extras[position] > 0:
                members.append(self.take_nearest(position, seed))
                self.extras[position] -= 1
                extra_taken = True
        return Cluster(tuple(members))


def effective_cluster_size(n, k, tau):
    """Function used to get the cluster size that makes one-per-subset clusters t-close.

    The size from the t-closeness bound is adjusted so the leftover records fit one per
    cluster; sizes beyond n collapse to a single cluster of n records.
    """
    size = required_cluster_size(n, k, tau)
    if size >= n:
        return n
    return adjust_cluster_size(n, size)


def tfirst_partition(table, k_effective, params):
    """Function used to cluster the table with one record per rank subset in every cluster."""
    if k_effective >= table.n:
        return Partition((Cluster(tuple(range(table.n))),))

    points = params.normalize(table.qi_matrix)
    pool = SubsetPool(split_subsets(table, k_effective), points)
    return seed_alternation(points, lambda seed, remaining: pool.build_cluster(seed).indices)


def run_tfirst_algorithm(table, k, tau, params=None, **details):
    """Function used to anonymize a table with t-closeness-first microaggregation.

    No EMD is computed while clustering. When the adjusted size does not divide n the size bound
    is only approximate, so clusters found above tau afterwards are merged.

    Returns:
        anonymized (AnonymizedTable), partition (Partition), report (RunReport)
    """
    check_cluster_size(table.n, k)
    check_tau(tau)
    params = params or minmax_params(table)

    started = time.perf_counter()
    k_effective = effective_cluster_size(table.n, k, tau)
    logger.debug("Cluster size %d for n=%d, k=%d, t=%.3f", k_effective, table.n, k, tau)
    initial = tfirst_partition(table, k_effective, params)

    partition = initial
    if cluster_emds(table, initial).max() > tau:
        logger.info("Cluster above t=%.3f with size %d not dividing n=%d, merging", tau, k_effective, table.n)
        partition = merge_until_tclose(table, initial, tau, params)
    anonymized = aggregate(table, partition)
    runtime_ms = (time.perf_counter() - started) * 1000

    report = build_report(
        "tfirst",
        table,
        anonymized,
        partition,
        params,
        k,
        tau,
        runtime_ms,
        k_effective=k_effective,
        merges=len(initial) - len(partition),
        **details,
    )
    return anonymized, partition, report
