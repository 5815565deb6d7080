import numpy as np
import pandas as pd
import pytest

from src.microagg.etl.synth import SynthConfig, synth_generate
from src.microagg.table import Table, make_specs


def make_table(qi_columns, confidential, ignored=None):
    """Build a table from a dict of quasi-identifier columns and a confidential column."""
    data = dict(qi_columns)
    data["salary"] = confidential
    ignored = ignored or {}
    data.update(ignored)
    return Table(make_specs(list(qi_columns), "salary", list(ignored)), pd.DataFrame(data))


@pytest.fixture
def rank_table():
    """Factory for 1-D tables whose quasi-identifier and confidential value both equal ranks 1..n."""

    def _rank_table(n):
        ranks = np.arange(1, n + 1, dtype=float)
        return make_table({"age": ranks}, ranks)

    return _rank_table


@pytest.fixture
def small_table():
    return make_table(
        {"age": [23.0, 35.0, 47.0, 51.0, 62.0, 29.0], "hours": [40.0, 38.0, 45.0, 20.0, 10.0, 50.0]},
        [1200.0, 3400.0, 2100.0, 5600.0, 4300.0, 1800.0],
    )


@pytest.fixture(scope="session")
def mcd_table():
    return synth_generate(SynthConfig.from_preset("mcd", seed=7))


@pytest.fixture(scope="session")
def hcd_table():
    return synth_generate(SynthConfig.from_preset("hcd", seed=7))


@pytest.fixture
def write_text(tmp_path):
    """Write text to a file under tmp_path and return its path."""

    def _write_text(name, text):
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return path

    return _write_text
