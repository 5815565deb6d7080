import pytest

from src.microagg.algorithms.merge import merge_until_tclose, run_merge_algorithm
from src.microagg.algorithms.microaggregation import Partition, mdav_partition
from src.microagg.analysis.emd import max_emd_bound
from src.microagg.analysis.metrics import cluster_emds, verify_k_anonymity, verify_t_closeness
from src.microagg.exceptions import ParameterError
from src.microagg.table import minmax_params


def sorted_members(partition):
    return sorted(cluster.members for cluster in partition)


def test_tclose_partition_is_returned_unchanged(rank_table):
    table = rank_table(6)
    partition = Partition.from_labels([0, 1, 0, 1, 0, 1])
    assert sorted_members(merge_until_tclose(table, partition, 0.2)) == sorted_members(partition)


def test_violating_pair_is_merged(rank_table):
    table = rank_table(6)
    merged = merge_until_tclose(table, Partition.from_labels([0, 0, 0, 1, 1, 1]), 0.2)
    assert sorted_members(merged) == [(0, 1, 2, 3, 4, 5)]


def test_worst_cluster_merges_into_nearest_centroid(rank_table):
    table = rank_table(9)
    partition = Partition.from_labels([0, 0, 0, 1, 1, 1, 2, 2, 2])
    # outer clusters sit at EMD 0.375, the middle one at 0.194
    assert cluster_emds(table, partition).tolist() == pytest.approx([0.375, 14 / 72, 0.375])

    # the lower outer cluster goes first and joins the middle one; the upper one then joins the result
    merged = merge_until_tclose(table, partition, 0.35)
    assert sorted_members(merged) == [tuple(range(9))]

    merged = merge_until_tclose(table, partition, 0.38)
    assert sorted_members(merged) == sorted_members(partition)


def test_zero_tau_collapses_to_one_cluster(mcd_table):
    params = minmax_params(mcd_table)
    merged = merge_until_tclose(mcd_table, mdav_partition(mcd_table, params, 5), 0.0, params)

    assert len(merged) == 1
    assert cluster_emds(mcd_table, merged).max() == 0


def test_result_coarsens_input(mcd_table):
    params = minmax_params(mcd_table)
    initial = mdav_partition(mcd_table, params, 3)
    merged = merge_until_tclose(mcd_table, initial, 0.1, params)

    assert merged.is_coarsening_of(initial)
    assert cluster_emds(mcd_table, merged).max() <= 0.1


def test_loose_tau_keeps_mdav_result(mcd_table):
    params = minmax_params(mcd_table)
    anonymized, partition, report = run_merge_algorithm(mcd_table, 2, 1.0, params)

    assert report.merges == 0
    assert sorted_members(partition) == sorted_members(mdav_partition(mcd_table, params, 2))


def test_tight_tau_merges_heavily(mcd_table):
    _, _, report = run_merge_algorithm(mcd_table, 2, 0.01)

    assert report.merges > 0
    assert report.k_min_actual > 20


@pytest.mark.parametrize("k, tau", [(2, 0.05), (5, 0.15), (10, 0.25), (3, max_emd_bound(1080, 3))])
def test_run_merge_algorithm_guarantees(mcd_table, k, tau):
    anonymized, partition, report = run_merge_algorithm(mcd_table, k, tau)

    assert verify_k_anonymity(anonymized, k).passed
    assert verify_t_closeness(mcd_table, partition, tau).passed
    assert report.k_min_actual >= k
    assert report.k_min_actual <= report.k_avg_actual
    assert report.algorithm == "merge"


@pytest.mark.parametrize("k, tau", [(1, 0.1), (2, 0.0), (2000, 0.1)])
def test_run_merge_algorithm_rejects_parameters(rank_table, k, tau):
    with pytest.raises(ParameterError):
        run_merge_algorithm(rank_table(10), k, tau)
