"""Expected characteristic polynomials over size-k column subsets.

Given an isotropic instance (orthonormal-row ``y``, fixed block Gram
``gram_fixed``), the polynomial attached to a partial selection of size
``j`` is the average of ``det[xI - gram(S)]`` over all size-``k``
supersets ``S`` of the partial.  It is computed without enumeration via
a differentiate/shift pipeline on the partial's characteristic
polynomial:

    shift by (x-1)^(m-n-j)  ->  d/dx, (k-j) times  ->  unshift (x-1)^(m-n-k)

followed by monic normalization.  A negative exponent swaps the shift
direction: multiplying becomes deflating and vice versa.  Deflation is
then exact in theory because the Gram of a size-``j`` partial has
eigenvalue one with multiplicity at least ``n - (m - j)`` (the identity
minus the Gram is a sum of ``m - j`` rank-one terms).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import InvalidInput
from .linalg import DenseMatrix, thin_svd
from .poly import (
    Polynomial,
    deflate_shifted_power,
    derivative,
    from_roots,
    monic,
    mul_shifted_power,
)

__all__ = [
    "IsotropicInstance",
    "charpoly_psd",
    "expected_poly",
    "expected_poly_from_gram",
    "root_sum_identity_check",
]

_SYMMETRY_TOL = 1e-10
_EIGENVALUE_CLAMP_TOL = 1e-12
_ORTHONORMALITY_TOL = 1e-8


@dataclass(frozen=True)
class IsotropicInstance:
    """Selection instance in the isotropic frame ``y y^T = I``.

    ``y`` is ``n x (m + len(fixed_indices))``; the fixed block occupies
    the columns listed in ``fixed_indices`` and the remaining ``m``
    columns are selectable.  ``gram_fixed`` is the Gram matrix of the
    fixed block, ``r`` its rank, and ``k`` the selection budget with
    ``n - r <= k <= m - 1``.
    """

    y: DenseMatrix
    m: int
    fixed_indices: tuple[int, ...]
    gram_fixed: DenseMatrix
    r: int
    k: int

    def __post_init__(self) -> None:
        n = self.y.rows
        total = self.y.cols
        if len(self.fixed_indices) != len(set(self.fixed_indices)):
            raise InvalidInput("fixed_indices contains duplicates")
        if any(not 0 <= j < total for j in self.fixed_indices):
            raise InvalidInput("fixed_indices out of range")
        if len(self.fixed_indices) + self.m != total:
            raise InvalidInput(
                f"fixed block ({len(self.fixed_indices)}) plus selectable ({self.m}) "
                f"columns must cover all {total}"
            )
        gram = self.y.data @ self.y.data.T
        if np.max(np.abs(gram - np.eye(n))) > _ORTHONORMALITY_TOL:
            raise InvalidInput("rows of y are not orthonormal: y y^T != I to 1e-8")
        if self.gram_fixed.shape != (n, n):
            raise InvalidInput("gram_fixed must be n x n")
        if not n - self.r <= self.k <= self.m - 1:
            raise InvalidInput(
                f"selection budget k={self.k} outside [n - r, m - 1] = "
                f"[{n - self.r}, {self.m - 1}]"
            )

    @classmethod
    def from_y(
        cls,
        y: DenseMatrix,
        fixed_indices: Sequence[int],
        k: int,
        rank_tol: float = 1e-12,
    ) -> "IsotropicInstance":
        """Build an instance from ``y`` alone, deriving the fixed Gram and rank."""
        fixed = tuple(int(j) for j in fixed_indices)
        cols = [j for j in fixed if 0 <= j < y.cols]
        block = y.data[:, cols] if cols else np.zeros((y.rows, 0))
        gram_fixed = DenseMatrix(block @ block.T)
        r = thin_svd(DenseMatrix(block), rank_tol).rank
        return cls(
            y=y,
            m=y.cols - len(fixed),
            fixed_indices=fixed,
            gram_fixed=gram_fixed,
            r=r,
            k=int(k),
        )

    @property
    def n(self) -> int:
        return self.y.rows

    @property
    def selectable(self) -> tuple[int, ...]:
        fixed = set(self.fixed_indices)
        return tuple(j for j in range(self.y.cols) if j not in fixed)


def charpoly_psd(g: DenseMatrix) -> Polynomial:
    """Monic characteristic polynomial of a symmetric PSD matrix.

    Eigenvalues are computed with a symmetric solver and mildly negative
    ones (rounding noise) are clamped to zero before the root expansion.
    """
    if g.rows != g.cols:
        raise InvalidInput(f"matrix must be square, got {g.rows}x{g.cols}")
    a = g.data
    scale = max(1.0, float(np.max(np.abs(a))) if a.size else 0.0)
    if a.size and float(np.max(np.abs(a - a.T))) > _SYMMETRY_TOL * scale:
        raise InvalidInput("matrix is not symmetric to 1e-10")
    eig = np.linalg.eigvalsh(a) if a.size else np.zeros(0)
    clamp = _EIGENVALUE_CLAMP_TOL * scale
    roots = [0.0 if -clamp <= v < 0.0 else float(v) for v in eig]
    return from_roots(roots)


def _shift_stage(p: Polynomial, power: int) -> Polynomial:
    """Multiply by ``(x - 1)^power``; a negative power deflates instead."""
    if power >= 0:
        return mul_shifted_power(p, power)
    return deflate_shifted_power(p, -power)


def expected_poly_from_gram(
    inst: IsotropicInstance, gram: DenseMatrix, j: int
) -> Polynomial:
    """Pipeline form of the expected polynomial for a size-``j`` partial
    whose selected-plus-fixed Gram matrix is ``gram``."""
    if not 0 <= j <= inst.k:
        raise InvalidInput(f"partial size {j} outside [0, k={inst.k}]")
    n, m, k = inst.n, inst.m, inst.k
    p = charpoly_psd(gram)
    p = _shift_stage(p, m - n - j)
    p = derivative(p, k - j)
    p = _shift_stage(p, -(m - n - k))
    f = monic(p)
    if f.degree != n:
        raise InvalidInput(
            f"expected polynomial has degree {f.degree}, wanted {n}"
        )
    return f


def _partial_gram(inst: IsotropicInstance, partial: Sequence[int]) -> DenseMatrix:
    g = inst.gram_fixed.data.copy()
    for s in partial:
        v = inst.y.data[:, s]
        g += np.outer(v, v)
    return DenseMatrix(g)


def _check_partial(inst: IsotropicInstance, partial: Sequence[int], max_size: int) -> tuple[int, ...]:
    idx = tuple(int(s) for s in partial)
    if len(set(idx)) != len(idx):
        raise InvalidInput(f"partial selection contains duplicates: {idx}")
    selectable = set(inst.selectable)
    for s in idx:
        if s not in selectable:
            raise InvalidInput(f"index {s} is not a selectable column")
    if len(idx) > max_size:
        raise InvalidInput(f"partial selection of size {len(idx)} exceeds {max_size}")
    return idx


def expected_poly(inst: IsotropicInstance, partial: Sequence[int]) -> Polynomial:
    """Expected characteristic polynomial over size-``k`` supersets of ``partial``.

    ``partial`` holds selectable column indices of ``inst.y`` (disjoint
    from the fixed block); the result is monic of degree ``n``.
    """
    idx = _check_partial(inst, partial, inst.k)
    return expected_poly_from_gram(inst, _partial_gram(inst, idx), len(idx))


def root_sum_identity_check(inst: IsotropicInstance, s: Sequence[int]) -> float:
    """Residual of the one-step summation identity at subset ``s``.

    Compares the sum of the child characteristic polynomials of ``s``
    against the shift/differentiate/unshift expression applied to the
    polynomial of ``s`` itself; both sides are scaled by the common
    leading coefficient (the number of children).  Test helper.
    """
    idx = _check_partial(inst, s, inst.m - 1)
    t = len(idx)
    n, m = inst.n, inst.m

    gram = _partial_gram(inst, idx)
    chosen = set(idx)
    lhs = np.zeros(n + 1)
    children = 0
    for i in inst.selectable:
        if i in chosen:
            continue
        v = inst.y.data[:, i]
        child = charpoly_psd(DenseMatrix(gram.data + np.outer(v, v)))
        lhs += np.asarray(child.coeffs)
        children += 1

    p = charpoly_psd(gram)
    p = _shift_stage(p, m - n - t)
    p = derivative(p, 1)
    rhs_poly = _shift_stage(p, -(m - n - t - 1))
    rhs = np.zeros(n + 1)
    rhs[: len(rhs_poly.coeffs)] = rhs_poly.coeffs

    return float(np.max(np.abs(lhs - rhs)) / children)
