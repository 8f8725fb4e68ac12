"""Greedy column selection with a fixed block, plus bound evaluation.

The selection loop works in the isotropic frame obtained from the thin
SVD of ``[A B]``: at each step it evaluates, for every remaining
candidate column, an eps-approximate smallest root of the expected
characteristic polynomial of the extended partial, and keeps the argmax
(ties broken by smallest column index, so results are reproducible and
independent of evaluation order).
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Callable, NamedTuple, Sequence

import numpy as np

from .errors import (
    AlgorithmFailure,
    DeflationFailure,
    InvalidInput,
    InvalidSubset,
    NotRealRooted,
    RankDeficient,
)
from .expected_charpoly import IsotropicInstance, expected_poly_from_gram
from .linalg import (
    DEFAULT_RANK_TOL,
    DenseMatrix,
    columns,
    gram_update,
    hcat,
    norms_sq,
    pseudoinverse,
    thin_svd,
)
from .poly import smallest_root

__all__ = [
    "SelectionProblem",
    "SelectionReport",
    "TraceStep",
    "gamma",
    "build_isotropic",
    "greedy_select",
    "verify_bound",
    "min_singular_check",
]

logger = logging.getLogger(__name__)

# Slack applied when re-checking the proven bound on computed output;
# covers float arithmetic only, not algorithmic error.
_ARITHMETIC_SLACK = 1e-7


def gamma(m: int, n: int, k: int, r: int) -> float:
    """Approximation factor ``m^2 / (sqrt((k+1)(m-n+r)) - sqrt((n-r)(m-k-1)))^2``."""
    if not (m > k >= n - r >= 0 and m >= n):
        raise InvalidInput(
            f"gamma requires m > k >= n - r >= 0 and m >= n; got m={m}, n={n}, k={k}, r={r}"
        )
    root_in = math.sqrt((k + 1) * (m - n + r))
    root_out = math.sqrt((n - r) * (m - k - 1))
    return m * m / (root_in - root_out) ** 2


@dataclass(frozen=True)
class SelectionProblem:
    """Fixed block ``a`` (n x l, possibly l = 0), candidates ``b`` (n x m),
    budget ``k`` and root-approximation accuracy ``eps``.

    Construction validates that ``[a b]`` has full row rank at
    ``rank_tol``, that ``k`` lies in ``[n - rank(a), m - 1]`` (and is at
    least one), and that ``eps < 1/(2k)``.
    """

    a: DenseMatrix
    b: DenseMatrix
    k: int
    eps: float = 1e-6
    rank_tol: float = DEFAULT_RANK_TOL

    def __post_init__(self) -> None:
        if self.a.rows != self.b.rows:
            raise InvalidInput(
                f"a and b must have equal row counts, got {self.a.rows} and {self.b.rows}"
            )
        n = self.b.rows
        stacked = thin_svd(hcat(self.a, self.b), self.rank_tol)
        if stacked.rank < n:
            raise RankDeficient(
                f"[a b] has numerical rank {stacked.rank} < n = {n}"
            )
        r = thin_svd(self.a, self.rank_tol).rank
        if self.k < 1:
            raise InvalidInput(f"k must be >= 1, got {self.k}")
        if not n - r <= self.k <= self.m - 1:
            raise InvalidInput(
                f"k must be in [n - rank(a), m - 1] = [{n - r}, {self.m - 1}], got {self.k}"
            )
        if not 0.0 < self.eps < 1.0 / (2 * self.k):
            raise InvalidInput(
                f"eps must be in (0, 1/(2k)) = (0, {1.0 / (2 * self.k)}), got {self.eps}"
            )
        object.__setattr__(self, "_rank_a", r)

    @property
    def n(self) -> int:
        return self.b.rows

    @property
    def m(self) -> int:
        return self.b.cols

    @property
    def l(self) -> int:
        return self.a.cols

    @property
    def r(self) -> int:
        return self._rank_a  # type: ignore[attr-defined]


class TraceStep(NamedTuple):
    """One greedy iteration: chosen column of ``b`` and its root value."""

    index: int
    lambda_min: float


@dataclass(frozen=True)
class SelectionReport:
    """Outcome of a greedy run: the subset, both squared pseudoinverse
    norms, the corresponding baseline norms of ``[a b]``, and the proven
    multiplicative bound factor."""

    subset: tuple[int, ...]
    frob_sq: float
    spec_sq: float
    baseline_frob_sq: float
    baseline_spec_sq: float
    gamma: float
    bound_factor: float
    eps: float
    trace: tuple[TraceStep, ...]


def build_isotropic(prob: SelectionProblem) -> IsotropicInstance:
    """Reduce the problem to the isotropic frame via the thin SVD of ``[a b]``.

    The right singular vector rows form ``y`` (so ``y y^T = I``); the
    first ``l`` columns carry the fixed block.
    """
    stacked = thin_svd(hcat(prob.a, prob.b), prob.rank_tol)
    if stacked.rank < prob.n:
        raise RankDeficient(
            f"[a b] has numerical rank {stacked.rank} < n = {prob.n}"
        )
    return IsotropicInstance.from_y(
        y=stacked.vt,
        fixed_indices=tuple(range(prob.l)),
        k=prob.k,
        rank_tol=prob.rank_tol,
    )


def _fixed_block_factor(prob: SelectionProblem) -> float:
    """The term ``1 + |a^+ b|_F^2 / (m - n + r)``; equals one when l = 0."""
    if prob.l == 0:
        return 1.0
    cross = DenseMatrix(pseudoinverse(prob.a).data @ prob.b.data)
    frob_sq, _ = norms_sq(cross)
    return 1.0 + frob_sq / (prob.m - prob.n + prob.r)


def bound_factor(prob: SelectionProblem) -> float:
    """Full multiplicative factor of the approximate greedy guarantee."""
    return (
        gamma(prob.m, prob.n, prob.k, prob.r)
        * _fixed_block_factor(prob)
        * (1.0 + 2.0 * prob.k * prob.eps)
    )


def greedy_select(
    prob: SelectionProblem,
    candidate_order: Callable[[Sequence[int]], Sequence[int]] | None = None,
) -> SelectionReport:
    """Run the deterministic greedy selection and report both norms.

    ``candidate_order`` optionally permutes the evaluation order inside
    one iteration; it exists to demonstrate that the argmax tie-break
    (smallest column index) makes the result order-independent.
    Candidates whose polynomial pipeline breaks down numerically are
    skipped with a logged warning; the run aborts only if every
    candidate of an iteration fails.
    """
    inst = build_isotropic(prob)
    offset = prob.l  # selectable column j of b sits at y column offset + j
    remaining = list(range(prob.m))
    chosen: list[int] = []
    trace: list[TraceStep] = []
    gram = inst.gram_fixed

    for step in range(1, prob.k + 1):
        order = list(candidate_order(remaining)) if candidate_order else remaining
        best: tuple[float, int] | None = None
        for j in order:
            cand_gram = gram_update(gram, inst.y.data[:, offset + j])
            try:
                f = expected_poly_from_gram(inst, cand_gram, len(chosen) + 1)
                lam = smallest_root(f, prob.eps)
            except (DeflationFailure, NotRealRooted) as exc:
                logger.warning("iteration %d: candidate %d skipped: %s", step, j, exc)
                continue
            if best is None or lam > best[0] or (lam == best[0] and j < best[1]):
                best = (lam, j)
        if best is None:
            raise AlgorithmFailure(
                f"iteration {step}: every remaining candidate failed the root pipeline"
            )
        lam, j = best
        chosen.append(j)
        remaining.remove(j)
        gram = gram_update(gram, inst.y.data[:, offset + j])
        trace.append(TraceStep(index=j, lambda_min=lam))

    selected = hcat(prob.a, columns(prob.b, chosen))
    frob_sq, spec_sq = norms_sq(pseudoinverse(selected))
    baseline_frob_sq, baseline_spec_sq = norms_sq(pseudoinverse(hcat(prob.a, prob.b)))
    report = SelectionReport(
        subset=tuple(chosen),
        frob_sq=frob_sq,
        spec_sq=spec_sq,
        baseline_frob_sq=baseline_frob_sq,
        baseline_spec_sq=baseline_spec_sq,
        gamma=gamma(prob.m, prob.n, prob.k, prob.r),
        bound_factor=bound_factor(prob),
        eps=prob.eps,
        trace=tuple(trace),
    )
    _check_report(report, prob)
    return report


def _check_report(report: SelectionReport, prob: SelectionProblem) -> None:
    """Re-assert the proven guarantees on the computed output."""
    cap = report.bound_factor * (1.0 + _ARITHMETIC_SLACK)
    if (
        report.frob_sq > cap * report.baseline_frob_sq
        or report.spec_sq > cap * report.baseline_spec_sq
    ):
        raise AlgorithmFailure(
            "selected subset violates the proven norm bound; "
            f"frob {report.frob_sq:.6g} vs cap {cap * report.baseline_frob_sq:.6g}, "
            f"spec {report.spec_sq:.6g} vs cap {cap * report.baseline_spec_sq:.6g}"
        )
    # Root values may drop by at most eps per step; both reads carry
    # eps approximation error, so 2*eps is the observable slack.
    for prev, cur in zip(report.trace, report.trace[1:]):
        if cur.lambda_min < prev.lambda_min - 2.0 * prob.eps:
            raise AlgorithmFailure(
                f"trace root values dropped by more than 2*eps: "
                f"{prev.lambda_min} -> {cur.lambda_min}"
            )


def verify_bound(
    prob: SelectionProblem,
    subset: Sequence[int],
    with_eps_slack: bool = True,
) -> tuple[bool, float, float]:
    """Check a given subset against the proven bound.

    Returns ``(holds, ratio_frob, ratio_spec)`` where the ratios compare
    the subset's squared pseudoinverse norms to the baseline ``[a b]``
    norms.  ``with_eps_slack`` includes the ``(1 + 2 k eps)`` factor the
    approximate algorithm is entitled to; disable it to test the
    existence bound instead.
    """
    idx = [int(j) for j in subset]
    if len(idx) != prob.k:
        raise InvalidSubset(f"subset must have size k = {prob.k}, got {len(idx)}")
    selected = hcat(prob.a, columns(prob.b, idx))
    if thin_svd(selected, prob.rank_tol).rank < prob.n:
        raise RankDeficient("selected columns rank-deficient")

    frob_sq, spec_sq = norms_sq(pseudoinverse(selected))
    baseline_frob_sq, baseline_spec_sq = norms_sq(pseudoinverse(hcat(prob.a, prob.b)))
    ratio_frob = frob_sq / baseline_frob_sq
    ratio_spec = spec_sq / baseline_spec_sq

    cap = gamma(prob.m, prob.n, prob.k, prob.r) * _fixed_block_factor(prob)
    if with_eps_slack:
        cap *= 1.0 + 2.0 * prob.k * prob.eps
    return (ratio_frob <= cap and ratio_spec <= cap), ratio_frob, ratio_spec


def min_singular_check(inst: IsotropicInstance, subset: Sequence[int]) -> float:
    """Smallest squared singular value of the fixed-plus-selected block of ``y``.

    Test helper for the isotropic guarantee; ``subset`` holds selectable
    column indices of ``inst.y``.
    """
    selectable = set(inst.selectable)
    idx = [int(j) for j in subset]
    for j in idx:
        if j not in selectable:
            raise InvalidInput(f"index {j} is not a selectable column")
    gram = inst.gram_fixed.data.copy()
    for j in idx:
        v = inst.y.data[:, j]
        gram += np.outer(v, v)
    eig = np.linalg.eigvalsh(gram)
    return float(eig[0])
