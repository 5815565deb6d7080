"""Config file for the microaggregation engine"""

QI_ROLE = "qi"
CONFIDENTIAL_ROLE = "confidential"
IGNORED_ROLE = "ignore"

CLUSTER_ID_COLUMN = "cluster_id"

ALGORITHMS = ["merge", "kfirst", "tfirst"]

# verifier slack on the t-closeness threshold
DEFAULT_SLACK = 1e-9
# strict-improvement margin for EMD comparisons
EMD_TOLERANCE = 1e-12

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VERIFICATION = 2
EXIT_IO = 3

DEFAULT_GRID_K = [2, 5, 10, 15, 20, 25, 30]
DEFAULT_GRID_T = [0.01, 0.05, 0.09, 0.13, 0.17, 0.21, 0.25]

DEFAULT_SEED = 7

# value ranges loosely follow the income attributes of the census extract
SYNTH_QI_RANGE = (0.0, 100000.0)
SYNTH_CONFIDENTIAL_RANGE = (0.0, 25000.0)

SYNTH_PRESETS = {
    "mcd": {"n": 1080, "qi_count": 2, "rho": 0.52},
    "hcd": {"n": 1080, "qi_count": 2, "rho": 0.92},
    "pd": {"n": 4000, "qi_count": 7, "rho": 0.129},
}

REPORT_FIELDS = [
    "algorithm",
    "dataset",
    "n",
    "k_requested",
    "tau",
    "k_effective",
    "cluster_count",
    "k_min_actual",
    "k_avg_actual",
    "max_cluster_emd",
    "sse",
    "sse_attribute_count",
    "merges",
    "swaps",
    "runtime_ms",
    "seed",
]
