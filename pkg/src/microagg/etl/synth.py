"""Seeded synthetic microdata standing in for the census and hospital discharge extracts"""

import logging
from dataclasses import dataclass
from typing import Tuple

import numpy as np
import pandas as pd
from scipy.stats import pearsonr

from src.microagg.config.microagg_config import (
    DEFAULT_SEED,
    SYNTH_CONFIDENTIAL_RANGE,
    SYNTH_PRESETS,
    SYNTH_QI_RANGE,
)
from src.microagg.exceptions import ParameterError
from src.microagg.table import Table, make_specs

logger = logging.getLogger(__name__)

CONFIDENTIAL_COLUMN = "confidential"
# loading of every quasi-identifier on the shared income-like factor
QI_FACTOR_LOADING = 0.6


@dataclass(frozen=True)
class SynthConfig:
    n: int
    qi_count: int
    rho: float
    seed: int = DEFAULT_SEED
    qi_range: Tuple[float, float] = SYNTH_QI_RANGE
    confidential_range: Tuple[float, float] = SYNTH_CONFIDENTIAL_RANGE

    def __post_init__(self):
        if abs(self.rho) > 1:
            raise ParameterError(f"rho must lie in [-1, 1], got {self.rho}")
        if self.n < 2:
            raise ParameterError(f"n must be at least 2, got {self.n}")
        if self.qi_count < 1:
            raise ParameterError(f"qi_count must be at least 1, got {self.qi_count}")
        for name, (low, high) in (("qi_range", self.qi_range), ("confidential_range", self.confidential_range)):
            if not low < high:
                raise ParameterError(f"{name} must satisfy low < high, got ({low}, {high})")

    @classmethod
    def from_preset(cls, preset, seed=DEFAULT_SEED, n=None):
        """Function used to build a config from one of the named presets (mcd, hcd, pd)."""
        try:
            values = dict(SYNTH_PRESETS[preset.lower()])
        except KeyError as err:
            raise ParameterError(f"Unknown preset {preset!r}, expected one of {sorted(SYNTH_PRESETS)}") from err
        if n is not None:
            values["n"] = n
        return cls(seed=seed, **values)


def standardize(values):
    """Function used to centre a vector and scale it to unit sample standard deviation."""
    centred = values - values.mean()
    std = centred.std()
    if std == 0:
        return np.zeros_like(centred)
    return centred / std


def map_to_range(values, value_range):
    """Function used to map a vector affinely onto [low, high], keeping its ordering."""
    low, high = value_range
    spread = values.max() - values.min()
    if spread == 0:
        return np.full_like(values, (low + high) / 2)
    return low + (values - values.min()) / spread * (high - low)


def first_principal_scores(qi_matrix):
    """Function used to project standardized quasi-identifiers on their first principal component.

    The component's sign is fixed so that its loadings sum to a non-negative value.
    """
    standardized = np.column_stack([standardize(column) for column in qi_matrix.T])
    _, _, vt = np.linalg.svd(standardized, full_matrices=False)
    loadings = vt[0]
    if loadings.sum() < 0:
        loadings = -loadings
    return standardized @ loadings


def synth_generate(cfg):
    """Function used to draw a synthetic table whose confidential attribute tracks the quasi-identifiers.

    The confidential attribute is rho times the standardized first principal quasi-identifier
    score plus sqrt(1 - rho^2) times noise orthogonalised against that score in-sample, so the
    achieved Pearson correlation equals rho up to rounding. Every column is then mapped affinely
    onto its configured range.

    Args:
        cfg (SynthConfig): generator settings

    Returns:
        table (Table): columns qi_1..qi_q then confidential
    """
    rng = np.random.default_rng(cfg.seed)

    factor = rng.standard_normal(cfg.n)
    qi_noise = rng.standard_normal((cfg.n, cfg.qi_count))
    latent_qi = QI_FACTOR_LOADING * factor[:, None] + np.sqrt(1 - QI_FACTOR_LOADING**2) * qi_noise

    score = standardize(first_principal_scores(latent_qi))
    noise = rng.standard_normal(cfg.n)
    noise = noise - noise.mean()
    if score.any():
        # remove the part of the noise explained by the score
        noise = noise - (noise @ score) / (score @ score) * score
    noise = standardize(noise)

    confidential = cfg.rho * score + np.sqrt(1 - cfg.rho**2) * noise

    qi_names = [f"qi_{i + 1}" for i in range(cfg.qi_count)]
    data = {name: map_to_range(latent_qi[:, i], cfg.qi_range) for i, name in enumerate(qi_names)}
    data[CONFIDENTIAL_COLUMN] = map_to_range(confidential, cfg.confidential_range)

    table = Table(make_specs(qi_names, CONFIDENTIAL_COLUMN), pd.DataFrame(data))
    logger.info("Generated %d records with %d quasi-identifiers, target rho %.3f", cfg.n, cfg.qi_count, cfg.rho)
    return table


def achieved_correlation(table):
    """Function used to measure the Pearson correlation between the confidential attribute and the
    first principal quasi-identifier score of a table."""
    scores = first_principal_scores(table.qi_matrix)
    confidential = table.confidential_values
    if np.ptp(scores) == 0 or np.ptp(confidential) == 0:
        return 0.0
    correlation, _ = pearsonr(scores, confidential)
    return float(correlation)


def roles_config_text(table):
    """Function used to render the roles file that describes a table."""
    return "".join(f"{spec.name}={spec.role.value}\n" for spec in table.specs)
