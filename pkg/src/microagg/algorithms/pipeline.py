"""Single entry point over the three anonymization algorithms"""

from src.microagg.algorithms.kfirst import run_kfirst_algorithm
from src.microagg.algorithms.merge import run_merge_algorithm
from src.microagg.algorithms.tfirst import run_tfirst_algorithm
from src.microagg.exceptions import ParameterError

ALGORITHM_RUNNERS = {
    "merge": run_merge_algorithm,
    "kfirst": run_kfirst_algorithm,
    "tfirst": run_tfirst_algorithm,
}


def anonymize(table, k, tau, algorithm, params=None, **details):
    """Function used to run one of the anonymization algorithms by name.

    Args:
        table (Table): original table
        k (int): minimum cluster size
        tau (float): t-closeness level
        algorithm (str): merge, kfirst or tfirst
        params (NormalizationParams): ranges of the original table, computed when missing
        details: extra report fields (seed, dataset, ...)

    Returns:
        anonymized (AnonymizedTable), partition (Partition), report (RunReport)
    """
    try:
        runner = ALGORITHM_RUNNERS[algorithm]
    except KeyError as err:
        raise ParameterError(f"Unknown algorithm {algorithm!r}, expected one of {sorted(ALGORITHM_RUNNERS)}") from err
    return runner(table, k, tau, params=params, **details)
