"""Earth mover's distance over ordered confidential values, its cluster bounds and cluster sizes"""

import logging
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from src.microagg.exceptions import DistributionError, ParameterError

logger = logging.getLogger(__name__)

MASS_TOLERANCE = 1e-12
# guards the ceiling in the cluster size formula against representation error
CEIL_TOLERANCE = 1e-9


@dataclass(frozen=True, eq=False)
class Distribution:
    """Probability masses over the ranked distinct confidential values of a table."""

    support: np.ndarray
    mass: np.ndarray

    def __post_init__(self):
        support = np.asarray(self.support, dtype=float)
        mass = np.asarray(self.mass, dtype=float)
        if support.ndim != 1 or support.shape != mass.shape:
            raise DistributionError("Support and mass must be vectors of equal length")
        if support.size == 0:
            raise DistributionError("A distribution needs a non-empty support")
        if np.any(np.diff(support) <= 0):
            raise DistributionError("Support must be strictly increasing")
        if np.any(mass < 0):
            raise DistributionError("Masses must be non-negative")
        if abs(mass.sum() - 1) > MASS_TOLERANCE:
            raise DistributionError(f"Masses must sum to 1, got {mass.sum()!r}")
        object.__setattr__(self, "support", support)
        object.__setattr__(self, "mass", mass)

    @property
    def m(self) -> int:
        return self.support.size


def check_same_support(p, q):
    """Function used to make sure two distributions are defined on the same values."""
    if not np.array_equal(p.support, q.support):
        raise DistributionError("Distributions are defined on different supports")


def distribution_of(values, support):
    """Function used to build the distribution of a multiset of values over a ranked support.

    Args:
        values (array-like): confidential values, each present in support
        support (array-like): ascending distinct values

    Returns:
        distribution (Distribution): mass_i = count(v_i) / len(values)
    """
    values = np.asarray(values, dtype=float)
    support = np.asarray(support, dtype=float)
    if values.size == 0:
        raise DistributionError("Cannot build a distribution from no values")

    positions = np.searchsorted(support, values)
    inside = positions < support.size
    inside[inside] = support[positions[inside]] == values[inside]
    if not inside.all():
        outside = values[~inside][0]
        raise DistributionError(f"Value {outside!r} is not part of the support")

    counts = np.bincount(positions, minlength=support.size)
    return Distribution(support, counts / values.size)


def emd_ordered(p, q):
    """Function used to compute the earth mover's distance under the ordered distance.

    EMD(P, Q) = 1/(m-1) * sum_i |sum_{j<=i} (p_j - q_j)|, and 0 when m = 1.
    """
    check_same_support(p, q)
    if p.m == 1:
        return 0.0
    return float(np.abs(np.cumsum(p.mass - q.mass)).sum() / (p.m - 1))


class ConfidentialRanks:
    """Rank of every record's confidential value among the table's distinct values.

    Holds the table marginal so that cluster distributions can be compared without
    rebuilding Distribution objects.
    """

    def __init__(self, table):
        self.support, self.ranks = np.unique(table.confidential_values, return_inverse=True)
        self.m = self.support.size
        self.n = table.n
        self.marginal = np.bincount(self.ranks, minlength=self.m) / self.n

    def check_members(self, members):
        members = np.asarray(members, dtype=int)
        if members.size == 0:
            raise DistributionError("Cannot compare an empty cluster")
        if members.min() < 0 or members.max() >= self.n:
            raise DistributionError(f"Cluster indices must lie in [0, {self.n})")
        return members

    def cluster_mass(self, members):
        members = self.check_members(members)
        return np.bincount(self.ranks[members], minlength=self.m) / members.size

    def cumulative_gap(self, members):
        """Running sum of cluster mass minus table mass, one entry per ranked value."""
        return np.cumsum(self.cluster_mass(members) - self.marginal)

    def gap_to_emd(self, gap):
        if self.m == 1:
            return 0.0
        return float(np.abs(gap).sum() / (self.m - 1))

    def cluster_emd(self, members):
        return self.gap_to_emd(self.cumulative_gap(members))

    def marginal_distribution(self):
        return Distribution(self.support, self.marginal)


@lru_cache(maxsize=16)
def confidential_ranks(table):
    """Function used to fetch the (cached) confidential ranks of a table."""
    return ConfidentialRanks(table)


def emd_cluster_vs_table(table, cluster):
    """Function used to compute the EMD between a cluster's confidential distribution and the table's.

    Args:
        table (Table): full table, whose distinct confidential values form the support
        cluster (Cluster | Sequence[int]): record indices

    Returns:
        emd (float): value in [0, 1]
    """
    return confidential_ranks(table).cluster_emd(list(cluster))


def check_bound_domain(n, k):
    if n < 2 or not 2 <= k <= n:
        raise ParameterError(f"Bounds need n >= 2 and 2 <= k <= n, got n={n}, k={k}")


def min_emd_bound(n, k):
    """Function used to get the lowest EMD a k-record cluster can reach in an n-record table.

    The bound is attained when k divides n and n/k is odd.
    """
    check_bound_domain(n, k)
    return (n + k) * (n - k) / (4 * n * (n - 1) * k)


def max_emd_bound(n, k):
    """Function used to get the highest EMD of a cluster holding one record from each of k
    equal-size rank subsets of an n-record table (k dividing n)."""
    check_bound_domain(n, k)
    return (n - k) / (2 * (n - 1) * k)


def required_cluster_size(n, k, t):
    """Function used to get the smallest cluster size whose one-per-subset clusters are t-close.

    max{k, ceil(n / (2(n-1)t + 1))}
    """
    if n < 2 or k < 2:
        raise ParameterError(f"Cluster size needs n >= 2 and k >= 2, got n={n}, k={k}")
    if t <= 0:
        raise ParameterError(f"t must be positive, got {t}")
    size_for_t = math.ceil(n / (2 * (n - 1) * t + 1) - CEIL_TOLERANCE)
    return max(k, size_for_t)


def adjust_cluster_size(n, k):
    """Function used to grow k until the n mod k leftover records fit one per cluster.

    Applies k = k + floor((n mod k) / floor(n / k)) until n mod k <= floor(n / k).
    """
    if not 2 <= k <= n:
        raise ParameterError(f"Adjustment needs 2 <= k <= n, got n={n}, k={k}")
    while n % k > n // k:
        k += (n % k) // (n // k)
    return k


def median_construction(n, k):
    """Function used to list the 0-based ranks of the cluster taking the median of each of k rank
    groups of n/k records (the EMD-minimising cluster)."""
    check_bound_domain(n, k)
    if n % k:
        raise ParameterError(f"k must divide n, got n={n}, k={k}")
    group = n // k
    return [i * group + (group - 1) // 2 for i in range(k)]


def min_end_construction(n, k):
    """Function used to list the 0-based ranks of the cluster taking the lowest record of each of k
    rank groups of n/k records (the EMD-maximising one-per-group cluster)."""
    check_bound_domain(n, k)
    if n % k:
        raise ParameterError(f"k must divide n, got n={n}, k={k}")
    group = n // k
    return [i * group for i in range(k)]
