"""Record geometry, clusters and partitions, MDAV microaggregation and centroid aggregation"""

import logging
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from src.microagg.exceptions import DistributionError, ParameterError, PartitionError
from src.microagg.table import AnonymizedTable, minmax_params

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Cluster:
    """Set of record indices into a table, stored in ascending order."""

    members: Tuple[int, ...]

    def __post_init__(self):
        members = tuple(sorted(int(index) for index in self.members))
        if not members:
            raise PartitionError("A cluster cannot be empty")
        if len(set(members)) != len(members):
            raise PartitionError("A cluster cannot hold the same record twice")
        object.__setattr__(self, "members", members)

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    @property
    def indices(self) -> np.ndarray:
        return np.asarray(self.members, dtype=int)

    def union(self, other: "Cluster") -> "Cluster":
        return Cluster(self.members + other.members)


@dataclass(frozen=True)
class Partition:
    """Clusters that are meant to be pairwise disjoint and to cover every record."""

    clusters: Tuple[Cluster, ...]

    def __post_init__(self):
        object.__setattr__(self, "clusters", tuple(self.clusters))

    def __len__(self):
        return len(self.clusters)

    def __iter__(self):
        return iter(self.clusters)

    @classmethod
    def from_index_arrays(cls, index_arrays):
        return cls(tuple(Cluster(tuple(indices)) for indices in index_arrays))

    @classmethod
    def from_labels(cls, labels):
        """Function used to group records sharing a label; clusters follow ascending label order."""
        labels = np.asarray(labels)
        return cls.from_index_arrays(np.flatnonzero(labels == label) for label in np.unique(labels))

    @property
    def sizes(self) -> np.ndarray:
        return np.array([len(cluster) for cluster in self.clusters], dtype=int)

    def validate(self, n):
        """Function used to check that the clusters form a disjoint cover of records 0..n-1."""
        if not self.clusters:
            raise PartitionError("A partition needs at least one cluster")
        all_members = np.concatenate([cluster.indices for cluster in self.clusters])
        if all_members.size != n or not np.array_equal(np.sort(all_members), np.arange(n)):
            raise PartitionError(f"Clusters do not form a disjoint cover of {n} records")

    def labels(self, n) -> np.ndarray:
        """Function used to get the position of every record's cluster in this partition."""
        self.validate(n)
        labels = np.empty(n, dtype=int)
        for position, cluster in enumerate(self.clusters):
            labels[cluster.indices] = position
        return labels

    def is_coarsening_of(self, finer: "Partition") -> bool:
        """Function used to check that every cluster here is a union of clusters of `finer`."""
        coarse_of = {}
        for position, cluster in enumerate(self.clusters):
            for index in cluster:
                coarse_of[index] = position
        return all(len({coarse_of[index] for index in cluster}) == 1 for cluster in finer.clusters)


def check_cluster_size(n, k):
    if k < 2:
        raise ParameterError(f"k must be at least 2, got {k}")
    if k > n:
        raise ParameterError(f"k must not exceed the number of records, got k={k} > n={n}")


def normalized_points(table, params=None):
    """Function used to get the quasi-identifier matrix in normalized units."""
    if params is None:
        params = minmax_params(table)
    return params.normalize(table.qi_matrix)


def record_distance(table, params, i, j):
    """Function used to get the Euclidean distance between two records over normalized quasi-identifiers."""
    points = params.normalize(table.qi_matrix[[i, j]])
    return float(np.sqrt(((points[0] - points[1]) ** 2).sum()))


def centroid(table, cluster):
    """Function used to get the per quasi-identifier mean of a cluster in original units."""
    members = np.asarray(list(cluster), dtype=int)
    if members.size == 0:
        raise DistributionError("Cannot take the centroid of an empty cluster")
    return table.qi_matrix[members].mean(axis=0)


def farthest_record(points, remaining, reference):
    """Function used to pick the remaining record farthest from a reference point (lowest index on ties)."""
    squared = ((points[remaining] - reference) ** 2).sum(axis=1)
    return int(remaining[np.argmax(squared)])


def nearest_order(points, remaining, seed):
    """Function used to order remaining records by distance to a seed record.

    The seed comes first; the others follow by (distance, record index).
    """
    others = remaining[remaining != seed]
    squared = ((points[others] - points[seed]) ** 2).sum(axis=1)
    return np.concatenate(([seed], others[np.argsort(squared, kind="stable")]))


def seed_alternation(points, generate_cluster):
    """Function used to drive the MDAV-style outer loop shared by the clustering algorithms.

    Each round seeds a cluster at the record farthest from the average of the remaining
    records, then a second one at the record farthest from that first seed.

    Args:
        points (numpy.ndarray): (n x q) normalized quasi-identifiers
        generate_cluster (Callable): (seed, remaining) -> member indices taken out of remaining

    Returns:
        partition (Partition): clusters in creation order
    """
    remaining = np.arange(points.shape[0])
    clusters = []

    def take(seed):
        nonlocal remaining
        members = np.asarray(generate_cluster(seed, remaining), dtype=int)
        clusters.append(members)
        remaining = remaining[~np.isin(remaining, members)]

    while remaining.size:
        first_seed = farthest_record(points, remaining, points[remaining].mean(axis=0))
        take(first_seed)
        if remaining.size:
            take(farthest_record(points, remaining, points[first_seed]))

    return Partition.from_index_arrays(clusters)


def mdav_partition(table, params, k):
    """Function used to microaggregate a table with MDAV.

    While 3k or more records remain, two k-clusters are built per round; with 2k..3k-1 left, one
    k-cluster and one cluster with the rest; with fewer than 2k, a single final cluster.

    Args:
        table (Table): original table
        params (NormalizationParams): ranges of the original table
        k (int): minimum cluster size

    Returns:
        partition (Partition): clusters with sizes in [k, 2k - 1]
    """
    check_cluster_size(table.n, k)
    points = params.normalize(table.qi_matrix)

    def k_nearest(seed, remaining):
        if remaining.size < 2 * k:
            return remaining
        return nearest_order(points, remaining, seed)[:k]

    partition = seed_alternation(points, k_nearest)
    logger.debug("MDAV built %d clusters for n=%d, k=%d", len(partition), table.n, k)
    return partition


def aggregate(table, partition):
    """Function used to replace every record's quasi-identifiers with its cluster centroid.

    Args:
        table (Table): original table
        partition (Partition): disjoint cover of the table's records

    Returns:
        anonymized (AnonymizedTable): confidential and ignored cells untouched, cluster ids per record
    """
    labels = partition.labels(table.n)
    qi_matrix = table.qi_matrix.copy()
    for cluster in partition.clusters:
        qi_matrix[cluster.indices] = centroid(table, cluster)
    return AnonymizedTable(table.with_qi_values(qi_matrix), labels)
