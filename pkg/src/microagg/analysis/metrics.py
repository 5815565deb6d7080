"""Information loss, verifiers and run reports"""

import logging
from dataclasses import asdict, dataclass, field
from typing import Dict, Optional

import numpy as np

from src.microagg.analysis.emd import check_same_support, confidential_ranks
from src.microagg.config.microagg_config import DEFAULT_SLACK, REPORT_FIELDS
from src.microagg.exceptions import DataError
from src.utility.functions import scale_differences
from src.utility.maths.transport import exact_transport_cost

logger = logging.getLogger(__name__)


@dataclass
class RunReport:
    """Parameters and achieved measures of one anonymization run."""

    algorithm: str
    n: int
    k_requested: int
    tau: float
    k_min_actual: int
    k_avg_actual: float
    max_cluster_emd: float
    sse: float
    runtime_ms: float
    seed: Optional[int] = None
    dataset: str = ""
    k_effective: int = 0
    cluster_count: int = 0
    sse_attribute_count: int = 0
    merges: int = 0
    swaps: int = 0
    extra: Dict[str, object] = field(default_factory=dict)

    def to_dict(self):
        """Function used to flatten the report with documented fields first."""
        values = asdict(self)
        extra = values.pop("extra")
        ordered = {name: values[name] for name in REPORT_FIELDS}
        ordered.update(extra)
        return ordered


@dataclass(frozen=True)
class KAnonymityResult:
    passed: bool
    smallest_class_size: int
    witness: Optional[Dict[str, float]] = None


@dataclass(frozen=True)
class TClosenessResult:
    passed: bool
    worst_cluster: int
    worst_emd: float


def check_same_shape(original, anonymized_table):
    if original.specs != anonymized_table.specs or original.n != anonymized_table.n:
        raise DataError("Original and anonymized tables differ in shape or attributes")


def sse_attribute_count(table, include_confidential=True):
    """Function used to get the number of attributes m averaged over by the normalized SSE."""
    return len(table.qi_names) + (1 if include_confidential else 0)


def normalized_sse(original, anonymized, params, include_confidential=True):
    """Function used to compute the size and range independent sum of squared errors.

    SSE = 1/n * sum_rows 1/m * sum_attrs NED^2, with NED the absolute difference over the
    attribute's range in the original table.

    Args:
        original (Table): original table
        anonymized (AnonymizedTable): release of the original table
        params (NormalizationParams): ranges of the original table
        include_confidential (bool): count the confidential attribute in m

    Returns:
        sse (float): value in [0, 1]
    """
    released = anonymized.table
    check_same_shape(original, released)

    qi_gaps = scale_differences(original.qi_matrix - released.qi_matrix, params.mins, params.maxs)
    squared_total = float((qi_gaps**2).sum())

    if include_confidential:
        values = original.confidential_values
        confidential_gaps = scale_differences(values - released.confidential_values, values.min(), values.max())
        squared_total += float((confidential_gaps**2).sum())

    return squared_total / (original.n * sse_attribute_count(original, include_confidential))


def verify_k_anonymity(anonymized, k):
    """Function used to check that every released quasi-identifier combination occurs at least k times.

    Returns:
        result (KAnonymityResult): on failure the witness is the smallest equivalence class
    """
    table = anonymized.table
    class_sizes = table.data.groupby(list(table.qi_names), sort=True).size()
    smallest = int(class_sizes.min())
    if smallest >= k:
        return KAnonymityResult(True, smallest)

    combination = class_sizes.idxmin()
    if not isinstance(combination, tuple):
        combination = (combination,)
    witness = {name: float(value) for name, value in zip(table.qi_names, combination)}
    return KAnonymityResult(False, smallest, witness)


def cluster_emds(table, partition):
    """Function used to get the EMD of every cluster to the whole table."""
    ranks = confidential_ranks(table)
    return np.array([ranks.cluster_emd(cluster.indices) for cluster in partition.clusters])


def verify_t_closeness(table, partition, tau, slack=DEFAULT_SLACK):
    """Function used to check that every cluster lies within EMD tau (+ slack) of the table.

    Returns:
        result (TClosenessResult): the cluster with the largest EMD and that EMD
    """
    partition.validate(table.n)
    emds = cluster_emds(table, partition)
    worst = int(np.argmax(emds))
    return TClosenessResult(bool(emds[worst] <= tau + slack), worst, float(emds[worst]))


def ordered_cost_matrix(m):
    """Function used to build the ground distance |i - j| / (m - 1) between ranked values."""
    positions = np.arange(m)
    return np.abs(positions[:, None] - positions[None, :]) / max(m - 1, 1)


def transport_oracle_emd(p, q):
    """Function used to get the EMD of two distributions by solving the transport problem exactly.

    Kept independent of the cumulative-sum formula so that the two can check each other.
    """
    check_same_support(p, q)
    if p.m == 1:
        return 0.0
    return exact_transport_cost(p.mass, q.mass, ordered_cost_matrix(p.m))


def cluster_size_stats(partition):
    """Function used to get the minimum and average cluster size."""
    sizes = partition.sizes
    return int(sizes.min()), float(sizes.mean())


def build_report(algorithm, table, anonymized, partition, params, k, tau, runtime_ms, **details):
    """Function used to measure a finished run and collect it into a RunReport."""
    k_min, k_avg = cluster_size_stats(partition)
    report = RunReport(
        algorithm=algorithm,
        n=table.n,
        k_requested=k,
        tau=tau,
        k_min_actual=k_min,
        k_avg_actual=k_avg,
        max_cluster_emd=float(cluster_emds(table, partition).max()),
        sse=normalized_sse(table, anonymized, params),
        runtime_ms=runtime_ms,
        k_effective=details.pop("k_effective", k),
        cluster_count=len(partition),
        sse_attribute_count=sse_attribute_count(table),
        merges=details.pop("merges", 0),
        swaps=details.pop("swaps", 0),
        seed=details.pop("seed", None),
        dataset=details.pop("dataset", ""),
        extra=details,
    )
    logger.info(
        "%s: n=%d k=%d t=%.3f -> min/avg %d/%.2f, max EMD %.4f, SSE %.5f",
        algorithm,
        table.n,
        k,
        tau,
        k_min,
        k_avg,
        report.max_cluster_emd,
        report.sse,
    )
    return report
