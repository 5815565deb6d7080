"""Run configuration shared by the command line front end"""

from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from src.microagg.config.microagg_config import ALGORITHMS, DEFAULT_SEED
from src.microagg.exceptions import ParameterError


@dataclass(frozen=True)
class RunConfig:
    input_path: Path
    roles_path: Path
    algorithm: str
    k: int
    t: float
    output_path: Path
    report_path: Optional[Path] = None
    seed: int = DEFAULT_SEED
    drop_missing: bool = False

    def __post_init__(self):
        check_run_parameters(self.algorithm, self.k, self.t)


def check_run_parameters(algorithm, k, t):
    """Function used to validate the parameters of an anonymization run."""
    if k < 2:
        raise ParameterError(f"k must be at least 2, got {k}")
    if not 0 < t <= 1:
        raise ParameterError(f"t must lie in (0, 1], got {t}")
    if algorithm not in ALGORITHMS:
        raise ParameterError(f"algorithm must be one of {ALGORITHMS}, got {algorithm!r}")
