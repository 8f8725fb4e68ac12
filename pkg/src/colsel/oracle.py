"""Independent cross-check machinery: enumeration, barriers, companion roots.

Nothing here shares a code path with the Sturm bisection or the greedy
loop, which is the point: these are the oracles the test suite uses to
falsify the production code.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .errors import InvalidInput, TooLarge
from .linalg import DenseMatrix, columns, hcat, norms_sq, pseudoinverse
from .poly import Polynomial, derivative, evaluate, monic
from .selector import SelectionProblem

__all__ = [
    "EnumerationResult",
    "brute_force",
    "barrier",
    "barrier_descent_check",
    "companion_smallest_root",
    "interlacing_check",
]

ENUMERATION_GUARD = 10**6


@dataclass(frozen=True)
class EnumerationResult:
    """Exhaustive evaluation of all size-k subsets.

    ``all_values`` maps each subset (sorted tuple) to
    ``(frob_sq, spec_sq, sigma_min_sq)`` of ``[a b_S]``; rank-deficient
    subsets keep their (near-zero) smallest singular value but get
    infinite norms so the map stays total.
    """

    best_subset_frob: tuple[int, ...]
    best_subset_spec: tuple[int, ...]
    best_frob_sq: float
    best_spec_sq: float
    all_values: dict[tuple[int, ...], tuple[float, float, float]]


def brute_force(prob: SelectionProblem) -> EnumerationResult:
    """Exact optimum over all ``C(m, k)`` subsets for both norms."""
    count = math.comb(prob.m, prob.k)
    if count > ENUMERATION_GUARD:
        raise TooLarge(
            f"C({prob.m}, {prob.k}) = {count} exceeds the {ENUMERATION_GUARD} subset guard"
        )
    all_values: dict[tuple[int, ...], tuple[float, float, float]] = {}
    best_frob = (math.inf, ())
    best_spec = (math.inf, ())
    for subset in combinations(range(prob.m), prob.k):
        selected = hcat(prob.a, columns(prob.b, subset))
        s = np.linalg.svd(selected.data, compute_uv=False)
        sigma_min_sq = float(s[prob.n - 1]) ** 2 if s.size >= prob.n else 0.0
        full_rank = s.size >= prob.n and s[prob.n - 1] > prob.rank_tol * s[0]
        if full_rank:
            frob_sq, spec_sq = norms_sq(pseudoinverse(selected))
        else:
            frob_sq = spec_sq = math.inf
        all_values[subset] = (frob_sq, spec_sq, sigma_min_sq)
        if frob_sq < best_frob[0]:
            best_frob = (frob_sq, subset)
        if spec_sq < best_spec[0]:
            best_spec = (spec_sq, subset)
    return EnumerationResult(
        best_subset_frob=best_frob[1],
        best_subset_spec=best_spec[1],
        best_frob_sq=best_frob[0],
        best_spec_sq=best_spec[0],
        all_values=all_values,
    )


def companion_smallest_root(p: Polynomial) -> float:
    """Smallest root via companion-matrix eigenvalues (LAPACK balances).

    Independent oracle for the Sturm bisection; the caller guarantees
    real-rootedness, so the minimum of the real parts is the answer.
    """
    if p.is_zero or p.degree < 1:
        raise InvalidInput("companion_smallest_root requires degree >= 1")
    c = monic(p).coeffs
    roots = np.roots(list(reversed(c)))
    return float(np.min(roots.real))


def _all_roots(p: Polynomial) -> np.ndarray:
    c = monic(p).coeffs
    return np.sort(np.roots(list(reversed(c))).real)


def barrier(p: Polynomial, x: float) -> float:
    """Lower barrier ``-p'(x)/p(x)``, the sum of ``1/(root - x)``.

    Requires ``x`` strictly below the smallest root; a constant
    polynomial has an empty root set and barrier zero.
    """
    if p.is_zero:
        raise InvalidInput("barrier of the zero polynomial is undefined")
    if p.degree == 0:
        return 0.0
    lam_min = companion_smallest_root(p)
    if x >= lam_min - 1e-12:
        raise InvalidInput(
            f"barrier requires x strictly below the smallest root; "
            f"x = {x}, smallest root = {lam_min}"
        )
    return -evaluate(derivative(p, 1), x) / evaluate(p, x)


def barrier_descent_check(p: Polynomial, b: float, delta: float) -> bool:
    """Check the one-step barrier descent: the derivative's barrier at
    ``b + delta`` does not exceed the barrier of ``p`` at ``b``.

    Preconditions (``b`` below the smallest root, ``barrier(p, b) <=
    1/delta``) are validated; a degree-one ``p`` passes vacuously since
    its derivative has no roots.
    """
    if delta <= 0.0:
        raise InvalidInput(f"delta must be > 0, got {delta}")
    phi_b = barrier(p, b)
    if phi_b > (1.0 / delta) * (1.0 + 1e-12):
        raise InvalidInput(
            f"precondition barrier(p, b) <= 1/delta violated: {phi_b} > {1.0 / delta}"
        )
    phi_next = barrier(derivative(p, 1), b + delta)
    return phi_next <= phi_b + 1e-9


def interlacing_check(f: Polynomial, g: Polynomial) -> bool:
    """True iff the roots of ``g`` interleave the roots of ``f``.

    With ``f`` of degree d and ``g`` of degree d - 1 (both real-rooted),
    checks root_f[i] <= root_g[i] <= root_f[i+1] with 1e-9 slack.
    """
    if g.degree != f.degree - 1:
        raise InvalidInput(
            f"need deg g = deg f - 1, got deg f = {f.degree}, deg g = {g.degree}"
        )
    beta = _all_roots(f)
    alpha = _all_roots(g)
    slack = 1e-9
    for i, a in enumerate(alpha):
        if a < beta[i] - slack or a > beta[i + 1] + slack:
            return False
    return True
