"""Script used for exact discrete optimal transport"""

import numpy as np
from scipy.optimize import linprog


def exact_transport_cost(source_mass, target_mass, cost_matrix):
    """Function used to solve the discrete transport problem exactly with the HiGHS LP solver.

    minimise sum_ij f_ij * c_ij subject to sum_j f_ij = a_i, sum_i f_ij = b_j, f >= 0.
    The last target constraint is implied by the others and left out.

    Args:
        source_mass (numpy.ndarray): masses a_i, summing to 1
        target_mass (numpy.ndarray): masses b_j, summing to 1
        cost_matrix (numpy.ndarray): (len(a) x len(b)) ground costs

    Returns:
        cost (float): optimal transport cost
    """
    source_mass = np.asarray(source_mass, dtype=float)
    target_mass = np.asarray(target_mass, dtype=float)
    rows, cols = cost_matrix.shape

    # f is flattened row-major: f_ij sits at i * cols + j
    row_sums = np.kron(np.eye(rows), np.ones((1, cols)))
    col_sums = np.kron(np.ones((1, rows)), np.eye(cols))
    a_eq = np.vstack([row_sums, col_sums[:-1]])
    b_eq = np.concatenate([source_mass, target_mass[:-1]])

    result = linprog(
        c=cost_matrix.reshape(-1),
        A_eq=a_eq,
        b_eq=b_eq,
        bounds=(0, None),
        method="highs",
        options={"primal_feasibility_tolerance": 1e-10, "dual_feasibility_tolerance": 1e-10},
    )
    if not result.success:
        raise RuntimeError(f"Transport problem could not be solved: {result.message}")
    return float(result.fun)
