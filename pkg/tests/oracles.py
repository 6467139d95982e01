"""Independent reference computations used by the tests.

Nothing here imports the package's TL machinery: graph walks, Chebyshev
recursions on adjacency matrices and trigonometric closed forms only.
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np


def catalan(n: int) -> int:
    return math.comb(2 * n, n) // (n + 1)


@lru_cache(maxsize=None)
def noncrossing_matchings(points: int) -> int:
    """Count noncrossing perfect matchings of points on a circle by first-point splitting."""
    if points % 2:
        return 0
    if points == 0:
        return 1
    return sum(
        noncrossing_matchings(j - 1) * noncrossing_matchings(points - j - 1)
        for j in range(1, points, 2)
    )


def adjacency(k: int | None, size: int = 12) -> np.ndarray:
    """Adjacency matrix of A_{k+1} (vertices 0..k), or a long truncation of A_infinity."""
    n = k + 1 if k is not None else size
    a = np.zeros((n, n), dtype=np.int64)
    for i in range(n - 1):
        a[i, i + 1] = a[i + 1, i] = 1
    return a


def walks(k: int | None, length: int, target: int) -> int:
    """Number of walks of the given length from vertex 0 to ``target``."""
    a = adjacency(k, size=length + target + 3)
    if target >= a.shape[0]:
        return 0
    return int(np.linalg.matrix_power(a, length)[0, target])


def fusion_matrices(k: int | None, count: int) -> list[np.ndarray]:
    """N_0 = I, N_1 = A, N_{s+1} = A N_s - N_{s-1}; entry (t, r) of N_s is N_{st}^r."""
    a = adjacency(k, size=2 * count + 4)
    mats = [np.eye(a.shape[0], dtype=np.int64), a]
    while len(mats) < count + 1:
        mats.append(a @ mats[-1] - mats[-2])
    return mats[: count + 1]


def fusion_coefficient(k: int | None, s: int, t: int, r: int) -> int:
    mats = fusion_matrices(k, max(s, t, r) + 1)
    return int(mats[s][t, r])


def delta_float(k: int | None) -> float:
    return 2.0 if k is None else 2 * math.cos(math.pi / (k + 2))


def quantum_integer_float(k: int | None, n: int) -> float:
    """[n] at q = exp(i pi/(k+2)): sin(n theta)/sin(theta), or n at delta = 2."""
    if k is None:
        return float(n)
    theta = math.pi / (k + 2)
    return math.sin(n * theta) / math.sin(theta)
