import numpy as np
import pytest

from src.microagg.etl.synth import (
    SynthConfig,
    achieved_correlation,
    map_to_range,
    roles_config_text,
    synth_generate,
)
from src.microagg.exceptions import ParameterError


@pytest.mark.parametrize("preset, rho", [("mcd", 0.52), ("hcd", 0.92)])
def test_presets_reach_target_correlation(preset, rho):
    table = synth_generate(SynthConfig.from_preset(preset, seed=7))

    assert table.n == 1080
    assert table.qi_names == ("qi_1", "qi_2")
    assert achieved_correlation(table) == pytest.approx(rho, abs=0.05)


def test_patient_discharge_preset():
    table = synth_generate(SynthConfig.from_preset("pd", seed=7, n=1000))

    assert table.n == 1000
    assert len(table.qi_names) == 7
    assert achieved_correlation(table) == pytest.approx(0.129, abs=0.05)


def test_zero_correlation():
    table = synth_generate(SynthConfig(n=1080, qi_count=2, rho=0.0, seed=7))
    assert abs(achieved_correlation(table)) <= 0.05


def test_same_seed_same_table():
    cfg = SynthConfig(n=200, qi_count=3, rho=0.5, seed=11)
    assert synth_generate(cfg).equals(synth_generate(cfg), atol=0.0)


def test_different_seed_different_table():
    first = synth_generate(SynthConfig(n=200, qi_count=3, rho=0.5, seed=11))
    second = synth_generate(SynthConfig(n=200, qi_count=3, rho=0.5, seed=12))
    assert not first.equals(second)


def test_values_lie_in_configured_ranges():
    table = synth_generate(SynthConfig(n=300, qi_count=2, rho=0.3, qi_range=(10, 20), confidential_range=(0, 1)))

    assert table.qi_matrix.min() == pytest.approx(10)
    assert table.qi_matrix.max() == pytest.approx(20)
    assert table.confidential_values.min() == pytest.approx(0)
    assert table.confidential_values.max() == pytest.approx(1)


@pytest.mark.parametrize("kwargs", [{"rho": 1.5}, {"rho": -1.01}, {"n": 1}, {"qi_count": 0}])
def test_invalid_config(kwargs):
    values = {"n": 100, "qi_count": 2, "rho": 0.5, **kwargs}
    with pytest.raises(ParameterError):
        SynthConfig(**values)


def test_unknown_preset():
    with pytest.raises(ParameterError, match="Unknown preset"):
        SynthConfig.from_preset("census")


def test_map_to_range_constant_column():
    assert map_to_range(np.array([3.0, 3.0]), (0, 10)).tolist() == [5.0, 5.0]


def test_roles_config_text():
    table = synth_generate(SynthConfig(n=10, qi_count=2, rho=0.5))
    assert roles_config_text(table) == "qi_1=qi\nqi_2=qi\nconfidential=confidential\n"
