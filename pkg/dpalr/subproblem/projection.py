"""Euclidean projection onto the capped simplex {0 <= y <= 1, sum(y) = k}.

The projection has the form y = clip(v - tau, 0, 1) for a scalar shift tau. The sum
of the clipped vector is continuous and non increasing in tau so tau is found by
bisection between a shift giving sum m and a shift giving sum 0.
"""

import numpy as np
from numpy.typing import NDArray

SUM_TOLERANCE = 1e-10
MAX_BISECTIONS = 200

# A point on the capped simplex is stored as a plain float array
FeasiblePoint = NDArray


def check_list_size(k: int, m: int):
    if not 0 < k < m:
        raise ValueError(f"need 0 < k < m, got k={k} with m={m}")


def project_capped_simplex(v: NDArray, k: int) -> FeasiblePoint:
    """Return argmin ||y - v|| subject to 0 <= y <= 1 and sum(y) = k

    :raises ValueError: unless 0 < k < len(v)
    """
    v = np.asarray(v, dtype=float)
    check_list_size(k, v.size)

    lower = v.min() - 1.0  # every entry clipped to 1, sum m > k
    upper = v.max()  # every entry clipped to 0, sum 0 < k
    y = np.clip(v - 0.5 * (lower + upper), 0.0, 1.0)
    for _ in range(MAX_BISECTIONS):
        tau = 0.5 * (lower + upper)
        y = np.clip(v - tau, 0.0, 1.0)
        excess = y.sum() - k
        if abs(excess) <= SUM_TOLERANCE:
            break
        if excess > 0:
            lower = tau
        else:
            upper = tau
    return _polish(v, y, k)


def _polish(v: NDArray, y: NDArray, k: int) -> FeasiblePoint:
    """Solve exactly for the shift on the free coordinates found by bisection"""
    free = (y > 0) & (y < 1)
    if not np.any(free):
        return y
    ones = np.count_nonzero(y >= 1)
    tau = (v[free].sum() - (k - ones)) / np.count_nonzero(free)
    polished = np.clip(v - tau, 0.0, 1.0)
    same_support = np.array_equal(
        (polished > 0) & (polished < 1), free
    ) and np.count_nonzero(polished >= 1) == ones
    if same_support and abs(polished.sum() - k) <= abs(y.sum() - k):
        return polished
    return y


def is_feasible(y: NDArray, k: int, tol: float = 1e-9) -> bool:
    y = np.asarray(y)
    return bool(np.all(y >= 0) and np.all(y <= 1) and abs(y.sum() - k) <= tol)


def uniform_point(m: int, k: int) -> FeasiblePoint:
    check_list_size(k, m)
    return np.full(m, k / m)
