"""Shared generators for seeded random test instances."""
from __future__ import annotations

import numpy as np

from colsel.expected_charpoly import IsotropicInstance
from colsel.linalg import DenseMatrix, thin_svd
from colsel.poly import Polynomial, from_roots
from colsel.selector import SelectionProblem


def random_isotropic(
    rng: np.random.Generator, n: int, m: int, ell: int, k: int
) -> IsotropicInstance:
    """Instance with orthonormal-row y (right singular vectors of a
    Gaussian matrix) whose first ``ell`` columns form the fixed block."""
    y = thin_svd(DenseMatrix(rng.standard_normal((n, m + ell)))).vt
    return IsotropicInstance.from_y(y, tuple(range(ell)), k)


def random_problem(
    rng: np.random.Generator, n: int, m: int, ell: int, k: int, eps: float = 1e-6
) -> SelectionProblem:
    a = DenseMatrix(rng.standard_normal((n, ell)))
    b = DenseMatrix(rng.standard_normal((n, m)))
    return SelectionProblem(a=a, b=b, k=k, eps=eps)


def valid_budgets(n: int, ell: int, m: int) -> range:
    """All selection budgets for a generic-rank fixed block of width ell."""
    r = min(n, ell)
    return range(max(1, n - r), m)


def random_real_rooted(
    rng: np.random.Generator, max_degree: int = 12, low: float = 0.0, high: float = 1.0
) -> tuple[Polynomial, np.ndarray]:
    """Polynomial with roots drawn uniformly from [low, high]."""
    degree = int(rng.integers(1, max_degree + 1))
    roots = np.sort(rng.uniform(low, high, size=degree))
    return from_roots(list(roots)), roots
