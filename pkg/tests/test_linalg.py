"""Laplacian algebra: dense pseudoinverse, CG contract, trace and
resistance estimators, and the rank-1 edge update."""

import math

import numpy as np
import pytest
import scipy.linalg
from hypothesis import given, settings
from hypothesis import strategies as st

from icmax.graphs import Graph
from icmax.linalg import (
    DENSE_NODE_LIMIT,
    PAPER_LITERAL,
    PRACTICAL,
    SolverConvergenceError,
    SolverSpec,
    _cg_multi,
    approx_eff_res,
    build_laplacian,
    hutchinson_sample_count,
    hutchinson_trace,
    lapl_solve,
    make_preconditioner,
    pseudoinverse,
    sherman_morrison_update,
    solver_deviation_notes,
    solver_tolerance,
)
from icmax.rand import seeded_rng

from conftest import complete_graph, cycle_graph, path_graph, random_connected_graph

# Exact pseudoinverse of the 3-path 0-1-2 with unit weights.
P3_PINV = np.array(
    [
        [5.0, -1.0, -4.0],
        [-1.0, 2.0, -1.0],
        [-4.0, -1.0, 5.0],
    ]
) / 9.0

# Pseudoinverse of the unit triangle: (1/3) I - (1/9) J.
K3_PINV = np.eye(3) / 3.0 - np.ones((3, 3)) / 9.0


# ---------------------------------------------------------------------------
# Laplacian construction


def test_laplacian_structure():
    g = Graph.from_edges(4, [(0, 1, 2.0), (1, 2, 1.0), (2, 3, 0.5), (0, 3, 1.5)])
    lap = build_laplacian(g).toarray()
    assert np.array_equal(lap, lap.T)
    assert np.allclose(lap.sum(axis=1), 0.0)
    assert lap[0, 1] == -2.0 and lap[2, 3] == -0.5
    assert lap[0, 0] == 3.5  # weighted degree of node 0


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 2**32 - 1))
def test_laplacian_row_sums_vanish(seed):
    g = random_connected_graph(seed, max_n=25, weighted=True)
    lap = build_laplacian(g).toarray()
    assert np.allclose(lap.sum(axis=1), 0.0, atol=1e-12)
    assert np.allclose(lap, lap.T)


# ---------------------------------------------------------------------------
# Dense pseudoinverse


def test_pseudoinverse_path3_exact():
    pinv = pseudoinverse(build_laplacian(path_graph(3)))
    assert np.allclose(pinv, P3_PINV, atol=1e-12)


def test_pseudoinverse_triangle_exact():
    pinv = pseudoinverse(build_laplacian(complete_graph(3)))
    assert np.allclose(pinv, K3_PINV, atol=1e-12)


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 2**32 - 1))
def test_pseudoinverse_properties(seed):
    g = random_connected_graph(seed, max_n=20, weighted=True)
    lap = build_laplacian(g)
    pinv = pseudoinverse(lap)
    dense = lap.toarray()
    assert np.allclose(dense @ pinv @ dense, dense, atol=1e-8)
    assert np.allclose(pinv, pinv.T, atol=1e-12)
    assert np.allclose(pinv @ np.ones(g.n), 0.0, atol=1e-9)
    assert np.allclose(pinv, scipy.linalg.pinv(dense), atol=1e-8)


def test_pseudoinverse_rejects_disconnected():
    g = Graph.from_edges(4, [(0, 1, 1.0), (2, 3, 1.0)])
    with pytest.raises(ValueError, match="connected"):
        pseudoinverse(build_laplacian(g))


def test_pseudoinverse_refuses_oversize():
    g = path_graph(DENSE_NODE_LIMIT + 1)
    with pytest.raises(ValueError, match="solver"):
        pseudoinverse(build_laplacian(g))


# ---------------------------------------------------------------------------
# Rank-1 update


def test_sherman_morrison_path_to_triangle():
    # closing the 3-path into a triangle has a known closed form
    updated = sherman_morrison_update(P3_PINV, (0, 2), 1.0)
    assert np.allclose(updated, K3_PINV, atol=1e-12)


def test_sherman_morrison_path_to_cycle():
    p4 = pseudoinverse(build_laplacian(path_graph(4)))
    c4 = pseudoinverse(build_laplacian(cycle_graph(4)))
    assert np.allclose(sherman_morrison_update(p4, (0, 3), 1.0), c4, atol=1e-12)


def test_sherman_morrison_rejects_bad_edges():
    with pytest.raises(ValueError, match="differ"):
        sherman_morrison_update(P3_PINV, (1, 1), 1.0)
    with pytest.raises(ValueError, match="positive"):
        sherman_morrison_update(P3_PINV, (0, 2), 0.0)
    with pytest.raises(ValueError, match="positive"):
        sherman_morrison_update(P3_PINV, (0, 2), -2.0)


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), w=st.floats(0.1, 4.0))
def test_sherman_morrison_matches_fresh_factorization(seed, w):
    g = random_connected_graph(seed, max_n=15, weighted=True)
    non_edges = [
        (u, v) for u in range(g.n) for v in range(u + 1, g.n) if not g.has_edge(u, v)
    ]
    if not non_edges:
        return
    e = non_edges[seed % len(non_edges)]
    updated = sherman_morrison_update(pseudoinverse(build_laplacian(g)), e, w)
    fresh = pseudoinverse(build_laplacian(g.with_edges([(e[0], e[1], w)])))
    assert np.allclose(updated, fresh, atol=1e-9)


# ---------------------------------------------------------------------------
# Solver configuration


def test_solver_spec_validation():
    with pytest.raises(ValueError, match="mode"):
        SolverSpec(mode="exactish")
    with pytest.raises(ValueError, match="residual_target"):
        SolverSpec(residual_target=0.0)
    with pytest.raises(ValueError, match="residual_target"):
        SolverSpec(residual_target=1.0)
    with pytest.raises(ValueError, match="max_iterations"):
        SolverSpec(max_iterations=0)


def test_solver_tolerance_practical_mapping():
    spec = SolverSpec(mode=PRACTICAL)
    assert solver_tolerance(spec, 0.3, 1000, 5.0, power=8) == 1e-8
    assert solver_tolerance(spec, 1e-8, 2, 1.0, power=9) == 1e-9
    # independent of n, w_max and power
    assert solver_tolerance(spec, 0.3, 7, 2.0, power=9) == 1e-8


def test_solver_tolerance_literal_mapping():
    spec = SolverSpec(mode=PAPER_LITERAL)
    assert solver_tolerance(spec, 0.72, 2, 1.0, power=8) == pytest.approx(3.90625e-5, rel=1e-12)
    assert solver_tolerance(spec, 0.72, 2, 1.0, power=9) == pytest.approx(1.953125e-5, rel=1e-12)
    # w_max enters at the fourth power
    assert solver_tolerance(spec, 0.72, 2, 2.0, power=8) == pytest.approx(
        3.90625e-5 / 16.0, rel=1e-12
    )
    # the formula underflows fast in n; the floor keeps CG satisfiable
    assert solver_tolerance(spec, 0.3, 1000, 1.0, power=8) == 1e-14


def test_solver_deviation_notes_name_the_active_mapping():
    assert any("practical" in s for s in solver_deviation_notes(SolverSpec(mode=PRACTICAL)))
    assert any("clamped" in s for s in solver_deviation_notes(SolverSpec(mode=PAPER_LITERAL)))


# ---------------------------------------------------------------------------
# CG solves


def test_lapl_solve_matches_pseudoinverse_column():
    g = random_connected_graph(3, n=30, weighted=True)
    lap = build_laplacian(g)
    pinv = pseudoinverse(lap)
    z = np.zeros(g.n)
    z[4], z[11] = 1.0, -1.0
    y = lapl_solve(lap, z, SolverSpec(residual_target=1e-12))
    assert np.allclose(y, pinv @ z, atol=1e-9)
    assert abs(y.mean()) < 1e-12


def test_lapl_solve_projects_inconsistent_rhs():
    # constant component of z is annihilated by the pseudoinverse, so the
    # solver must return pinv @ z even when z itself has nonzero mean
    g = random_connected_graph(8, n=20)
    lap = build_laplacian(g)
    pinv = pseudoinverse(lap)
    z = seeded_rng(5).normal(size=g.n) + 3.0
    y = lapl_solve(lap, z, SolverSpec(residual_target=1e-12))
    assert np.allclose(y, pinv @ z, atol=1e-9)


def test_lapl_solve_zero_rhs():
    lap = build_laplacian(path_graph(5))
    assert np.array_equal(lapl_solve(lap, np.zeros(5)), np.zeros(5))


def test_lapl_solve_shape_check():
    lap = build_laplacian(path_graph(5))
    with pytest.raises(ValueError, match="length-n"):
        lapl_solve(lap, np.zeros(4))
    with pytest.raises(ValueError, match="length-n"):
        lapl_solve(lap, np.zeros((5, 2)))


def test_lapl_solve_residual_contract():
    g = random_connected_graph(12, n=40, weighted=True)
    lap = build_laplacian(g)
    z = seeded_rng(6).normal(size=g.n)
    zp = z - z.mean()
    spec = SolverSpec(residual_target=1e-10)
    y = lapl_solve(lap, z, spec)
    assert np.linalg.norm(lap @ y - zp) <= spec.residual_target * np.linalg.norm(zp)


def test_convergence_error_reports_residual(monkeypatch):
    import icmax.linalg as linalg_mod

    monkeypatch.setattr(linalg_mod, "make_preconditioner", lambda lap: None)
    g = path_graph(60)
    lap = build_laplacian(g)
    z = np.zeros(g.n)
    z[0], z[-1] = 1.0, -1.0
    with pytest.raises(SolverConvergenceError) as exc:
        lapl_solve(lap, z, SolverSpec(residual_target=1e-10, max_iterations=1))
    err = exc.value
    assert err.iterations == 1
    assert err.target == 1e-10
    assert err.achieved > err.target
    assert "relative residual" in str(err)


def test_cg_columns_are_independent():
    # batching must not couple columns; only reduction order may differ
    g = random_connected_graph(21, n=35, weighted=True)
    lap = build_laplacian(g)
    rhs = seeded_rng(9).normal(size=(g.n, 5))
    rhs -= rhs.mean(axis=0, keepdims=True)
    batched = _cg_multi(lap, rhs, 1e-10, 10_000)
    scale = np.abs(batched).max()
    for j in range(rhs.shape[1]):
        single = _cg_multi(lap, rhs[:, j : j + 1], 1e-10, 10_000)
        assert np.abs(batched[:, j] - single[:, 0]).max() <= 100 * np.finfo(float).eps * scale


def test_cg_deterministic_across_runs():
    g = random_connected_graph(21, n=35, weighted=True)
    lap = build_laplacian(g)
    rhs = seeded_rng(9).normal(size=(g.n, 4))
    rhs -= rhs.mean(axis=0, keepdims=True)
    assert np.array_equal(
        _cg_multi(lap, rhs, 1e-10, 10_000), _cg_multi(lap, rhs, 1e-10, 10_000)
    )


def test_preconditioner_inverts_on_zero_sum_subspace():
    g = random_connected_graph(14, n=25, weighted=True)
    lap = build_laplacian(g)
    pre = make_preconditioner(lap)
    assert pre is not None
    r = seeded_rng(2).normal(size=(g.n, 3))
    r -= r.mean(axis=0, keepdims=True)
    out = pre(r)
    assert np.allclose(out.mean(axis=0), 0.0, atol=1e-12)
    assert np.allclose(lap @ out, r, atol=1e-8)


def test_preconditioner_unavailable_for_single_node():
    lap = build_laplacian(Graph.from_edges(1, []))
    assert make_preconditioner(lap) is None


# ---------------------------------------------------------------------------
# Trace estimation


def test_hutchinson_exact_on_diagonal_operator():
    d = np.array([3.0, -1.5, 2.0, 0.25])
    est = hutchinson_trace(lambda x: d * x, 4, m_samples=7, seed=123)
    assert est == pytest.approx(d.sum(), abs=1e-12)


def test_hutchinson_deterministic_and_converging():
    g = random_connected_graph(17, n=12)
    pinv = pseudoinverse(build_laplacian(g))
    apply = lambda x: pinv @ x
    a = hutchinson_trace(apply, g.n, m_samples=4000, seed=42)
    b = hutchinson_trace(apply, g.n, m_samples=4000, seed=42)
    assert a == b
    assert a == pytest.approx(np.trace(pinv), rel=0.1)


def test_hutchinson_rejects_empty_sample():
    with pytest.raises(ValueError, match="m_samples"):
        hutchinson_trace(lambda x: x, 3, m_samples=0, seed=0)


def test_hutchinson_sample_count_values():
    assert hutchinson_sample_count(0.3, 0.1, 39) == 1776
    assert hutchinson_sample_count(0.5, 0.5, 1) == math.ceil(96.0 * math.log(4.0))
    with pytest.raises(ValueError, match="epsilon"):
        hutchinson_sample_count(0.6, 0.1, 10)
    with pytest.raises(ValueError, match="epsilon"):
        hutchinson_sample_count(0.0, 0.1, 10)
    with pytest.raises(ValueError, match="delta"):
        hutchinson_sample_count(0.3, 0.0, 10)


# ---------------------------------------------------------------------------
# Sketched effective resistances


def _in_eps_relation(est: float, truth: float, eps: float) -> bool:
    return math.exp(-eps) * truth <= est <= math.exp(eps) * truth


def test_sketch_single_edge():
    g = path_graph(2)
    est = approx_eff_res(g, [(0, 1)], 0.1, seed=0)
    assert _in_eps_relation(est[(0, 1)], 1.0, 0.1)


def test_sketch_path_endpoints():
    g = path_graph(3)
    est = approx_eff_res(g, [(0, 2), (0, 1)], 0.2, seed=0)
    assert _in_eps_relation(est[(0, 2)], 2.0, 0.2)
    assert _in_eps_relation(est[(0, 1)], 1.0, 0.2)


def test_sketch_deterministic():
    g = random_connected_graph(33, n=20, weighted=True)
    pairs = [(0, 5), (3, 9), (1, 1)]
    a = approx_eff_res(g, pairs, 0.25, seed=7)
    b = approx_eff_res(g, pairs, 0.25, seed=7)
    assert a == b
    c = approx_eff_res(g, pairs, 0.25, seed=8)
    assert a != c


def test_sketch_same_node_pair_is_zero():
    est = approx_eff_res(path_graph(3), [(1, 1)], 0.3, seed=0)
    assert est[(1, 1)] == pytest.approx(0.0, abs=1e-18)


def test_sketch_validation():
    g = path_graph(3)
    with pytest.raises(ValueError, match="epsilon"):
        approx_eff_res(g, [(0, 1)], 0.6)
    with pytest.raises(ValueError, match="epsilon"):
        approx_eff_res(g, [(0, 1)], 0.0)
    with pytest.raises(ValueError, match="out of range"):
        approx_eff_res(g, [(0, 3)], 0.3)


def test_sketch_trivial_graph():
    g = Graph.from_edges(1, [])
    assert approx_eff_res(g, [(0, 0)], 0.3) == {(0, 0): 0.0}


def test_sketch_accepts_shared_preconditioner():
    g = random_connected_graph(44, n=18, weighted=True)
    pre = make_preconditioner(build_laplacian(g))
    pairs = [(0, 4), (2, 7)]
    assert approx_eff_res(g, pairs, 0.3, seed=1, pre=pre) == approx_eff_res(
        g, pairs, 0.3, seed=1
    )
