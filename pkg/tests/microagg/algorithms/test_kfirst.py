import numpy as np
import pytest

from src.microagg.algorithms.kfirst import (
    SwapSearch,
    generate_cluster,
    grow_cluster,
    kfirst_partition,
    run_kfirst_algorithm,
)
from src.microagg.algorithms.microaggregation import mdav_partition
from src.microagg.analysis.emd import confidential_ranks
from src.microagg.analysis.metrics import verify_k_anonymity, verify_t_closeness
from src.microagg.exceptions import DataError
from src.microagg.table import minmax_params


def sorted_members(partition):
    return sorted(cluster.members for cluster in partition)


def test_swap_deltas_match_recomputed_emd(mcd_table):
    ranks = confidential_ranks(mcd_table)
    rng = np.random.default_rng(3)
    members = rng.choice(mcd_table.n, size=6, replace=False)
    search = SwapSearch(ranks, members)

    for candidate in rng.choice(np.setdiff1d(np.arange(mcd_table.n), members), size=20, replace=False):
        deltas = search.swap_deltas(candidate)
        for position in range(members.size):
            swapped = members.copy()
            swapped[position] = candidate
            assert deltas[position] == pytest.approx(ranks.cluster_emd(swapped) - search.emd, abs=1e-12)


def test_generate_cluster_swaps_until_tclose(rank_table):
    table = rank_table(6)
    cluster = generate_cluster(0, range(6), table, 2, 0.2)

    assert cluster.members == (1, 3)
    assert confidential_ranks(table).cluster_emd(cluster.indices) == pytest.approx(1 / 6)


def test_generate_cluster_loose_tau_takes_nearest(rank_table):
    table = rank_table(6)
    points = minmax_params(table).normalize(table.qi_matrix)
    members, swaps = grow_cluster(0, np.arange(6), points, confidential_ranks(table), 2, 1.0)

    assert sorted(members.tolist()) == [0, 1]
    assert swaps == 0


def test_generate_cluster_small_pool_takes_everything(rank_table):
    table = rank_table(6)
    assert generate_cluster(2, [0, 2, 5], table, 2, 0.01).members == (0, 2, 5)


def test_generate_cluster_leaves_candidates_untouched(rank_table):
    table = rank_table(8)
    candidates = list(range(8))
    generate_cluster(0, candidates, table, 2, 0.1)
    assert candidates == list(range(8))


@pytest.mark.parametrize("x, candidates", [(0, []), (7, [0, 1, 2])])
def test_generate_cluster_bad_seed(rank_table, x, candidates):
    with pytest.raises(DataError):
        generate_cluster(x, candidates, rank_table(8), 2, 0.1)


def test_huge_tau_matches_mdav(mcd_table):
    params = minmax_params(mcd_table)
    assert sorted_members(kfirst_partition(mcd_table, 3, 1.0, params)) == sorted_members(
        mdav_partition(mcd_table, params, 3)
    )


def test_cluster_sizes_before_merging(mcd_table):
    partition = kfirst_partition(mcd_table, 4, 0.1)

    partition.validate(mcd_table.n)
    assert partition.sizes.min() >= 4
    assert partition.sizes.max() <= 7


def test_moderate_tau_keeps_clusters_small(mcd_table):
    _, _, report = run_kfirst_algorithm(mcd_table, 2, 0.17)

    assert report.k_min_actual == 2
    assert report.swaps > 0
    assert report.k_avg_actual < 10


@pytest.mark.parametrize("k, tau", [(2, 0.05), (5, 0.1), (10, 0.25)])
def test_run_kfirst_algorithm_guarantees(hcd_table, k, tau):
    anonymized, partition, report = run_kfirst_algorithm(hcd_table, k, tau)

    assert verify_k_anonymity(anonymized, k).passed
    assert verify_t_closeness(hcd_table, partition, tau).passed
    assert report.algorithm == "kfirst"
    assert report.cluster_count == len(partition)
