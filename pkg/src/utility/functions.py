"""Script used to help with general functionality"""

import numpy as np


def minmax_scale(values, mins, maxs):
    """Function used to scale columns of a matrix onto [0, 1] with the given per-column bounds.

    Columns whose range is empty map to 0 for every row.

    Args:
        values (numpy.ndarray): (n x q) matrix, or a single row of length q
        mins (numpy.ndarray): per-column minimum
        maxs (numpy.ndarray): per-column maximum

    Returns:
        scaled (numpy.ndarray): matrix with the shape of values
    """
    values = np.asarray(values, dtype=float)
    ranges = np.asarray(maxs, dtype=float) - np.asarray(mins, dtype=float)
    safe_ranges = np.where(ranges > 0, ranges, 1.0)
    scaled = (values - mins) / safe_ranges
    return np.where(ranges > 0, scaled, 0.0)


def scale_differences(differences, mins, maxs):
    """Function used to express differences between values as fractions of each column's range."""
    differences = np.asarray(differences, dtype=float)
    ranges = np.asarray(maxs, dtype=float) - np.asarray(mins, dtype=float)
    safe_ranges = np.where(ranges > 0, ranges, 1.0)
    return np.where(ranges > 0, differences / safe_ranges, 0.0)
