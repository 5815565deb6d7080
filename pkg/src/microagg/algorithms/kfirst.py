"""k-anonymity-first t-closeness aware microaggregation"""

import logging
import time

import numpy as np

from src.microagg.algorithms.merge import check_tau, merge_until_tclose
from src.microagg.algorithms.microaggregation import (
    Cluster,
    aggregate,
    check_cluster_size,
    nearest_order,
    seed_alternation,
)
from src.microagg.analysis.emd import confidential_ranks
from src.microagg.analysis.metrics import build_report
from src.microagg.config.microagg_config import EMD_TOLERANCE
from src.microagg.exceptions import DataError
from src.microagg.table import minmax_params

logger = logging.getLogger(__name__)


class SwapSearch:
    """EMD bookkeeping for a cluster of fixed size k while records are swapped in and out.

    Swapping member a (rank r_a) for y (rank r_y) shifts the cumulative gap by +1/k on
    [r_y, r_a) or by -1/k on [r_a, r_y), so with prefix sums of the resulting change in
    |gap| every candidate swap is priced in O(1).
    """

    def __init__(self, ranks, members):
        self.ranks = ranks
        self.members = np.array(members, dtype=int)
        self.step = 1 / self.members.size
        self.refresh()

    def refresh(self):
        gap = self.ranks.cumulative_gap(self.members)
        self.emd = self.ranks.gap_to_emd(gap)
        base = np.abs(gap)
        self.rise = np.concatenate(([0.0], np.cumsum(np.abs(gap + self.step) - base)))
        self.fall = np.concatenate(([0.0], np.cumsum(np.abs(gap - self.step) - base)))

    def swap_deltas(self, candidate):
        """Change in EMD when each member is replaced by the candidate record."""
        if self.ranks.m == 1:
            return np.zeros(self.members.size)
        incoming = self.ranks.ranks[candidate]
        outgoing = self.ranks.ranks[self.members]
        deltas = np.where(
            incoming < outgoing,
            self.rise[outgoing] - self.rise[incoming],
            np.where(incoming > outgoing, self.fall[incoming] - self.fall[outgoing], 0.0),
        )
        return deltas / (self.ranks.m - 1)

    def try_swap(self, candidate):
        """Swap the candidate for the member giving the lowest EMD, if that strictly lowers the EMD."""
        deltas = self.swap_deltas(candidate)
        # lowest delta first, lowest record index among ties
        best = np.lexsort((self.members, deltas))[0]
        if deltas[best] >= -EMD_TOLERANCE:
            return False
        self.members[best] = candidate
        self.refresh()
        return True


def grow_cluster(seed, remaining, points, ranks, k, tau):
    """Function used to build one cluster around a seed, refining it by swaps until it is t-close.

    Records considered and rejected stay in the caller's pool; only the returned members leave it.

    Returns:
        members (numpy.ndarray): record indices of the cluster
        swaps (int): accepted swaps
    """
    if remaining.size < 2 * k:
        return remaining.copy(), 0

    order = nearest_order(points, remaining, seed)
    search = SwapSearch(ranks, order[:k])
    swaps = 0
    for candidate in order[k:]:
        if search.emd <= tau:
            break
        if search.try_swap(candidate):
            swaps += 1
    return search.members, swaps


def generate_cluster(x, candidates, table, k, tau, params=None):
    """Function used to generate a cluster of k records around seed x from a pool of candidates.

    With fewer than 2k candidates the whole pool is returned. Otherwise the k records nearest to x
    (x included) are taken, and the next nearest candidates are tried in turn as replacements for
    the member whose swap gives the lowest EMD, keeping only strict improvements, until the
    cluster is t-close or the candidates run out.

    Args:
        x (int): seed record index, part of candidates
        candidates (Sequence[int]): unassigned record indices
        table (Table): original table
        k (int): minimum cluster size
        tau (float): t-closeness level
        params (NormalizationParams): ranges of the original table, computed when missing

    Returns:
        cluster (Cluster): generated cluster
    """
    remaining = np.unique(np.asarray(candidates, dtype=int))
    if remaining.size == 0:
        raise DataError("Cannot generate a cluster from no candidates")
    if x not in remaining:
        raise DataError(f"Seed record {x} is not among the candidates")

    points = (params or minmax_params(table)).normalize(table.qi_matrix)
    members, _ = grow_cluster(x, remaining, points, confidential_ranks(table), k, tau)
    return Cluster(tuple(members))


def kfirst_clusters(table, k, tau, params):
    """Function used to run the seed alternation with swap-refined clusters.

    Returns:
        partition (Partition), swaps (int)
    """
    points = params.normalize(table.qi_matrix)
    ranks = confidential_ranks(table)
    swaps = 0

    def swap_refined(seed, remaining):
        nonlocal swaps
        members, cluster_swaps = grow_cluster(seed, remaining, points, ranks, k, tau)
        swaps += cluster_swaps
        return members

    partition = seed_alternation(points, swap_refined)
    logger.debug("k-anonymity-first built %d clusters with %d swaps", len(partition), swaps)
    return partition, swaps


def kfirst_partition(table, k, tau, params=None):
    """Function used to microaggregate with swap-refined clusters; clusters need not all be t-close.

    Returns:
        partition (Partition): clusters with sizes in [k, 2k - 1]
    """
    check_cluster_size(table.n, k)
    partition, _ = kfirst_clusters(table, k, tau, params or minmax_params(table))
    return partition


def run_kfirst_algorithm(table, k, tau, params=None, **details):
    """Function used to anonymize a table with k-anonymity-first clustering followed by merging.

    Returns:
        anonymized (AnonymizedTable), partition (Partition), report (RunReport)
    """
    check_cluster_size(table.n, k)
    check_tau(tau)
    params = params or minmax_params(table)

    started = time.perf_counter()
    initial, swaps = kfirst_clusters(table, k, tau, params)
    partition = merge_until_tclose(table, initial, tau, params)
    anonymized = aggregate(table, partition)
    runtime_ms = (time.perf_counter() - started) * 1000

    report = build_report(
        "kfirst",
        table,
        anonymized,
        partition,
        params,
        k,
        tau,
        runtime_ms,
        merges=len(initial) - len(partition),
        swaps=swaps,
        **details,
    )
    return anonymized, partition, report
