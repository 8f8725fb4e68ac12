"""Greedy selection loop, reduction to the isotropic frame, bounds."""
from __future__ import annotations

import numpy as np
import pytest

from colsel.errors import InvalidInput, RankDeficient
from colsel.expected_charpoly import expected_poly
from colsel.linalg import DenseMatrix, norms_sq, pseudoinverse, thin_svd
from colsel.poly import smallest_root
from colsel.selector import (
    SelectionProblem,
    build_isotropic,
    gamma,
    greedy_select,
    min_singular_check,
    verify_bound,
)
from conftest import random_problem, valid_budgets

DOUBLED_IDENTITY = DenseMatrix([[1.0, 0.0, 1.0, 0.0], [0.0, 1.0, 0.0, 1.0]])


def empty_block(rows: int) -> DenseMatrix:
    return DenseMatrix.zeros(rows, 0)


def test_gamma_values():
    assert gamma(4, 2, 3, 0) == pytest.approx(2.0)
    assert gamma(10, 3, 4, 3) == pytest.approx(2.0)
    assert gamma(2, 1, 1, 0) == pytest.approx(2.0)


def test_gamma_validation():
    with pytest.raises(InvalidInput):
        gamma(4, 2, 4, 0)  # k = m
    with pytest.raises(InvalidInput):
        gamma(4, 3, 1, 0)  # k < n - r
    with pytest.raises(InvalidInput):
        gamma(2, 3, 1, 2)  # m < n


def test_problem_validation():
    b = DenseMatrix([[1.0, 2.0, 3.0], [2.0, 4.0, 6.0]])  # rank 1
    with pytest.raises(RankDeficient):
        SelectionProblem(a=empty_block(2), b=b, k=2)
    good = DenseMatrix([[1.0, 0.0, 1.0], [0.0, 1.0, 1.0]])
    with pytest.raises(InvalidInput):
        SelectionProblem(a=empty_block(2), b=good, k=3)  # k > m - 1
    with pytest.raises(InvalidInput):
        SelectionProblem(a=empty_block(2), b=good, k=1)  # k < n - r
    with pytest.raises(InvalidInput) as err:
        SelectionProblem(a=empty_block(2), b=good, k=2, eps=0.5)
    assert "1/(2k)" in str(err.value)


def test_build_isotropic_no_fixed_block():
    prob = SelectionProblem(a=empty_block(2), b=DenseMatrix([[2.0, 0.0, 1.0], [0.0, 2.0, 1.0]]), k=2)
    inst = build_isotropic(prob)
    assert inst.fixed_indices == ()
    assert inst.r == 0
    assert np.max(np.abs(inst.gram_fixed.data)) == 0.0


def test_build_isotropic_fixed_block_indices():
    b = DenseMatrix([[1.0, 0.0, 1.0], [0.0, 1.0, 1.0]])
    a = DenseMatrix([[1.0], [0.0]])
    prob = SelectionProblem(a=a, b=b, k=1)
    inst = build_isotropic(prob)
    assert inst.fixed_indices == (0,)
    assert inst.m == 3
    assert inst.r == 1


def test_build_isotropic_orthonormal_rows():
    rng = np.random.default_rng(83)
    prob = random_problem(rng, n=3, m=8, ell=0, k=4)
    inst = build_isotropic(prob)
    gram = inst.y.data @ inst.y.data.T
    assert np.max(np.abs(gram - np.eye(3))) < 1e-8


def test_greedy_on_doubled_identity():
    prob = SelectionProblem(a=empty_block(2), b=DOUBLED_IDENTITY, k=2)
    report = greedy_select(prob)
    assert report.frob_sq == pytest.approx(2.0, rel=1e-9)
    assert report.spec_sq == pytest.approx(1.0, rel=1e-9)
    # chosen pair must not duplicate a direction
    i, j = sorted(report.subset)
    assert (j - i) % 4 != 2
    assert report.baseline_frob_sq == pytest.approx(1.0, rel=1e-9)
    assert report.baseline_spec_sq == pytest.approx(0.5, rel=1e-9)


def test_greedy_prefers_larger_leverage():
    prob = SelectionProblem(a=empty_block(1), b=DenseMatrix([[0.6, 0.8]]), k=1)
    report = greedy_select(prob)
    assert report.subset == (1,)
    assert report.frob_sq == pytest.approx(1.0 / 0.64, rel=1e-9)


def test_greedy_bound_at_maximal_budget():
    rng = np.random.default_rng(89)
    prob = random_problem(rng, n=2, m=5, ell=0, k=4)
    report = greedy_select(prob)
    assert report.frob_sq <= report.bound_factor * report.baseline_frob_sq
    assert report.spec_sq <= report.bound_factor * report.baseline_spec_sq


def test_greedy_trace_shape_and_monotonicity():
    rng = np.random.default_rng(97)
    prob = random_problem(rng, n=3, m=9, ell=1, k=5)
    report = greedy_select(prob)
    assert len(report.trace) == 5
    assert [step.index for step in report.trace] == list(report.subset)
    for prev, cur in zip(report.trace, report.trace[1:]):
        assert cur.lambda_min >= prev.lambda_min - 2 * prob.eps


def test_greedy_is_deterministic():
    rng = np.random.default_rng(101)
    a = DenseMatrix(rng.standard_normal((3, 2)))
    b = DenseMatrix(rng.standard_normal((3, 7)))
    first = greedy_select(SelectionProblem(a=a, b=b, k=4))
    second = greedy_select(SelectionProblem(a=a, b=b, k=4))
    assert first == second  # bit-identical floats included


def test_greedy_candidate_order_invariance():
    rng = np.random.default_rng(103)
    perm_rng = np.random.default_rng(12345)
    b = DenseMatrix(np.hstack([np.eye(2), np.eye(2), rng.standard_normal((2, 3))]))
    prob = SelectionProblem(a=empty_block(2), b=b, k=3)
    baseline = greedy_select(prob)
    for _ in range(5):
        shuffled = greedy_select(
            prob, candidate_order=lambda c: list(perm_rng.permutation(list(c)))
        )
        assert shuffled.subset == baseline.subset


def test_verify_bound_accepts_greedy_output():
    rng = np.random.default_rng(107)
    prob = random_problem(rng, n=3, m=8, ell=2, k=4)
    report = greedy_select(prob)
    holds, ratio_frob, ratio_spec = verify_bound(prob, report.subset)
    assert holds
    assert ratio_frob == pytest.approx(report.frob_sq / report.baseline_frob_sq)
    assert ratio_spec == pytest.approx(report.spec_sq / report.baseline_spec_sq)


def test_verify_bound_doubled_identity_ratios():
    prob = SelectionProblem(a=empty_block(2), b=DOUBLED_IDENTITY, k=2)
    holds, ratio_frob, ratio_spec = verify_bound(prob, (0, 1))
    assert holds
    assert ratio_frob == pytest.approx(2.0, rel=1e-9)
    assert ratio_spec == pytest.approx(2.0, rel=1e-9)


def test_verify_bound_rejects_rank_deficient_subset():
    prob = SelectionProblem(a=empty_block(2), b=DOUBLED_IDENTITY, k=2)
    with pytest.raises(RankDeficient):
        verify_bound(prob, (0, 2))


def test_min_singular_check_values():
    rng = np.random.default_rng(109)
    prob = random_problem(rng, n=2, m=6, ell=0, k=3)
    inst = build_isotropic(prob)
    report = greedy_select(prob)
    value = min_singular_check(inst, tuple(j + prob.l for j in report.subset))
    # with no fixed block the guarantee reduces to 1/gamma
    assert value >= 1.0 / gamma(prob.m, prob.n, prob.k, 0) - 10 * prob.eps
    # rank-deficient selection has near-zero smallest singular value
    dup = SelectionProblem(a=empty_block(2), b=DOUBLED_IDENTITY, k=2)
    dup_inst = build_isotropic(dup)
    assert min_singular_check(dup_inst, (0, 2)) < 1e-10


def test_greedy_fixed_block_wider_than_rows():
    rng = np.random.default_rng(55)
    a = DenseMatrix(rng.standard_normal((2, 5)))
    b = DenseMatrix(rng.standard_normal((2, 7)))
    report = greedy_select(SelectionProblem(a=a, b=b, k=3))
    assert report.frob_sq <= report.bound_factor * report.baseline_frob_sq


def test_greedy_rank_deficient_fixed_block():
    rng = np.random.default_rng(56)
    col = rng.standard_normal((3, 1))
    a = DenseMatrix(np.hstack([col, col]))  # rank 1
    b = DenseMatrix(rng.standard_normal((3, 8)))
    prob = SelectionProblem(a=a, b=b, k=4)
    assert prob.r == 1
    report = greedy_select(prob)
    assert report.frob_sq <= report.bound_factor * report.baseline_frob_sq
    assert report.spec_sq <= report.bound_factor * report.baseline_spec_sq


def test_greedy_minimal_budget_with_fixed_block():
    # k = n - rank(a), the smallest admissible budget
    rng = np.random.default_rng(57)
    a = DenseMatrix(rng.standard_normal((3, 1)))
    b = DenseMatrix(rng.standard_normal((3, 6)))
    report = greedy_select(SelectionProblem(a=a, b=b, k=2))
    assert len(report.subset) == 2
    assert report.frob_sq <= report.bound_factor * report.baseline_frob_sq


def test_isotropic_guarantee_with_fixed_block():
    # sigma_min^2 of the fixed-plus-selected block meets the barrier bound
    rng = np.random.default_rng(111)
    for _ in range(20):
        n = int(rng.integers(2, 5))
        ell = int(rng.integers(0, 3))
        m = int(rng.integers(n + 2, 11))
        budgets = valid_budgets(n, ell, m)
        k = int(rng.integers(budgets.start, budgets.stop))
        prob = random_problem(rng, n, m, ell, k)
        inst = build_isotropic(prob)
        report = greedy_select(prob)
        value = min_singular_check(inst, tuple(j + prob.l for j in report.subset))
        fixed = DenseMatrix(inst.y.data[:, : prob.l])
        m_pinv_frob_sq, _ = norms_sq(pseudoinverse(fixed))
        lower = (m - n + inst.r) / (
            (m - n + m_pinv_frob_sq) * gamma(m, n, k, inst.r)
        )
        assert value >= lower - 10 * prob.eps


def test_tree_root_lower_bound():
    # smallest root of the tree root polynomial obeys the barrier bound
    rng = np.random.default_rng(113)
    for _ in range(10):
        n = int(rng.integers(2, 5))
        ell = int(rng.integers(0, 3))
        m = int(rng.integers(n + 2, 11))
        budgets = valid_budgets(n, ell, m)
        k = int(rng.integers(budgets.start, budgets.stop))
        prob = random_problem(rng, n, m, ell, k)
        inst = build_isotropic(prob)
        f = expected_poly(inst, ())
        lam = smallest_root(f, prob.eps)
        fixed = DenseMatrix(inst.y.data[:, : prob.l])
        m_pinv_frob_sq, _ = norms_sq(pseudoinverse(fixed))
        lower = (m - n + inst.r) / (
            (m - n + m_pinv_frob_sq) * gamma(m, n, k, inst.r)
        )
        assert lam >= lower - prob.eps


def test_gamma_dominates_sqrt_ratio_bound_spot():
    for m, n, k in [(10, 2, 5), (20, 3, 8), (50, 10, 30)]:
        cap = (1 + (m / k) ** 0.5) ** 2 / (1 - (n / k) ** 0.5) ** 2
        assert gamma(m, n, k, 0) < cap
