import numpy as np

from src.utility.functions import minmax_scale, scale_differences


def test_minmax_scale_per_column():
    values = np.array([[0.0, 5.0], [10.0, 5.0], [5.0, 5.0]])
    scaled = minmax_scale(values, values.min(axis=0), values.max(axis=0))
    assert scaled.tolist() == [[0.0, 0.0], [1.0, 0.0], [0.5, 0.0]]


def test_scale_differences():
    assert scale_differences(np.array([2.5, -1.0]), 0.0, 10.0).tolist() == [0.25, -0.1]
    assert scale_differences(np.array([3.0]), 4.0, 4.0).tolist() == [0.0]
