"""Solver and bound tests.

Frozen oracles, computed independently before the solver was written:
the 5-cycle circulant dual matrix with edge entries -(3-sqrt5)/2 has top
eigenvalue sqrt5 = 2.23606797749979 (5-point circulant formula), and the
umbrella representation certifies the same value from both sides.
"""

import itertools
import math

import numpy as np
import pytest

from thetalab.constructions import clique_union, furedi_graph, polarity_graph
from thetalab.errors import (
    ComplexityRefused,
    GapNotReached,
    HandleOrthogonalToVector,
    NoEdges,
    PreconditionViolated,
)
from thetalab.graph import (
    Graph,
    complement,
    complete_graph,
    cycle_graph,
    empty_graph,
    from_edges,
    induced_subgraph,
)
from thetalab.linalg import eigen_sym, sym_from_dense
from thetalab.ortho import OrthoRep, random_rep, umbrella_rep
from thetalab.theta import (
    BoundFormulaReport,
    L_bounds,
    ThetaResult,
    bound_formula_check,
    theta_lower_from_rep,
    theta_sdp,
    theta_spectral_lower_of_complement,
    theta_upper_from_rep,
    transitive_identity_check,
)

SQRT5 = 2.23606797749979
AXIS = np.array([0.0, 0.0, 1.0])


def petersen() -> Graph:
    edges = [(i, (i + 1) % 5) for i in range(5)]
    edges += [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    edges += [(i, i + 5) for i in range(5)]
    return from_edges(10, edges)


def random_graph(n: int, p: float, seed: int) -> Graph:
    rng = np.random.default_rng(seed)
    return from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


def brute_independence(g: Graph) -> int:
    best = 0
    for r in range(g.n, 0, -1):
        if r <= best:
            break
        for sub in itertools.combinations(range(g.n), r):
            if all(not g.has_edge(u, v) for u, v in itertools.combinations(sub, 2)):
                best = max(best, r)
                break
    return best


# --- frozen circulant oracle -------------------------------------------------


def test_circulant_dual_certificate_for_the_pentagon():
    b = -(3.0 - math.sqrt(5.0)) / 2.0
    mat = np.ones((5, 5))
    for i in range(5):
        for j in range(5):
            if (i - j) % 5 in (1, 4):
                mat[i, j] = b
    spec = eigen_sym(sym_from_dense(mat))
    assert abs(spec.eigenvalues[0] - SQRT5) <= 1e-12


# --- solver on closed-form instances -----------------------------------------


def test_theta_complete_and_empty_graphs():
    for n in range(1, 11):
        r = theta_sdp(complete_graph(n), tol=1e-6)
        assert abs(r.lower - 1.0) <= 1e-8 and abs(r.upper - 1.0) <= 1e-8
        r = theta_sdp(empty_graph(n), tol=1e-6)
        assert abs(r.lower - n) <= 1e-8 and abs(r.upper - n) <= 1e-8


def test_theta_pentagon_bracket():
    r = theta_sdp(cycle_graph(5), tol=1e-6)
    assert r.gap <= 1e-6
    assert r.lower - 1e-9 <= SQRT5 <= r.upper + 1e-9
    rc = theta_sdp(complement(cycle_graph(5)), tol=1e-6)
    assert rc.lower - 1e-9 <= SQRT5 <= rc.upper + 1e-9
    prod = ((r.lower + r.upper) / 2) * ((rc.lower + rc.upper) / 2)
    assert abs(prod - 5.0) <= 1e-4


def test_theta_petersen():
    r = theta_sdp(petersen(), tol=1e-5)
    assert r.gap <= 1e-5
    assert r.lower - 1e-9 <= 4.0 <= r.upper + 1e-9
    assert transitive_identity_check(petersen(), tol=1e-4)


def test_certificates_are_feasible():
    g = random_graph(8, 0.5, 3)
    r = theta_sdp(g, tol=1e-5)
    x = r.primal_x.dense()
    assert abs(np.trace(x) - 1.0) <= 1e-8
    b = r.dual_b.dense()
    for u in range(8):
        assert b[u, u] == 1.0
        for v in range(u + 1, 8):
            if g.has_edge(u, v):
                assert x[u, v] == 0.0
            else:
                assert b[u, v] == 1.0
    assert eigen_sym(r.primal_x).eigenvalues[-1] >= -1e-8
    assert abs(eigen_sym(r.dual_b).eigenvalues[0] - r.upper) <= 1e-8


def test_theta_result_rejects_bad_certificates():
    g = cycle_graph(4)
    r = theta_sdp(g, tol=1e-5)
    with pytest.raises(PreconditionViolated):
        ThetaResult(r.lower, r.upper, r.gap, r.primal_x, r.dual_b, r.iterations, complete_graph(4))
    with pytest.raises(PreconditionViolated):
        ThetaResult(r.lower + 0.5, r.upper, r.upper - r.lower - 0.5, r.primal_x, r.dual_b, r.iterations, g)


def test_gap_not_reached_carries_partial_result():
    with pytest.raises(GapNotReached) as exc:
        theta_sdp(cycle_graph(5), tol=1e-8, iteration_cap=3)
    partial = exc.value.result
    assert partial is not None
    assert partial.gap > 1e-8
    assert partial.lower <= SQRT5 + 1e-9
    assert partial.upper >= SQRT5 - 1e-9


def test_solver_caps():
    with pytest.raises(ComplexityRefused):
        theta_sdp(empty_graph(201))
    with pytest.raises(PreconditionViolated):
        theta_sdp(cycle_graph(4), tol=1e-9)
    with pytest.raises(PreconditionViolated):
        theta_sdp(empty_graph(0))


def test_solver_cap_env_override(monkeypatch):
    monkeypatch.setenv("LAB_MAX_N", "6")
    with pytest.raises(ComplexityRefused):
        theta_sdp(empty_graph(7))
    assert theta_sdp(empty_graph(6)).upper == pytest.approx(6.0, abs=1e-8)
    monkeypatch.setenv("LAB_MAX_N", "0")
    with pytest.raises(PreconditionViolated):
        theta_sdp(empty_graph(1))


def test_solver_is_deterministic():
    g = random_graph(7, 0.4, 11)
    a = theta_sdp(g, tol=1e-5)
    b = theta_sdp(g, tol=1e-5)
    assert a.lower == b.lower and a.upper == b.upper and a.iterations == b.iterations
    assert np.array_equal(a.primal_x.entries, b.primal_x.entries)
    assert np.array_equal(a.dual_b.entries, b.dual_b.entries)


# --- spectral lower bound -----------------------------------------------------


def test_spectral_lower_closed_forms():
    assert abs(theta_spectral_lower_of_complement(complete_graph(2)) - 2.0) <= 1e-12
    assert abs(theta_spectral_lower_of_complement(cycle_graph(5)) - SQRT5) <= 1e-9
    with pytest.raises(NoEdges):
        theta_spectral_lower_of_complement(empty_graph(3))


def test_spectral_lower_on_scaling_class_graph():
    fg = furedi_graph(5, 2)
    assert theta_spectral_lower_of_complement(fg.graph) >= SQRT5 - 1e-9
    # with loops restored the bound reaches 1 + sqrt5 on the nose
    n = fg.graph.n
    a = np.zeros((n, n))
    for u, v in fg.graph.edges():
        a[u, v] = a[v, u] = 1.0
    for u in fg.loops_removed:
        a[u, u] = 1.0
    spec = eigen_sym(sym_from_dense(a))
    loopful = 1.0 - spec.eigenvalues[0] / spec.eigenvalues[-1]
    assert abs(loopful - (1.0 + SQRT5)) <= 1e-9


def test_spectral_lower_is_consistent_with_solver():
    for seed in range(8):
        g = random_graph(7, 0.5, seed)
        if g.edge_count() == 0:
            continue
        bound = theta_spectral_lower_of_complement(g)
        r = theta_sdp(complement(g), tol=1e-5)
        assert bound <= r.upper + 1e-6


# --- representation-based bounds ----------------------------------------------


def test_umbrella_brackets_the_pentagon():
    up = theta_upper_from_rep(umbrella_rep(False), AXIS)
    assert abs(up - SQRT5) <= 1e-6
    low = theta_lower_from_rep(umbrella_rep(True), AXIS)
    assert abs(low - SQRT5) <= 1e-6


def test_rep_bound_trivial_cases():
    n = 6
    same = OrthoRep(2, np.tile(np.array([[1.0], [0.0]]), (1, n)), complete_graph(n))
    assert abs(theta_upper_from_rep(same, np.array([1.0, 0.0])) - 1.0) <= 1e-12
    basis = OrthoRep(n, np.eye(n), empty_graph(n))
    x = np.full(n, 1.0 / math.sqrt(n))
    assert abs(theta_upper_from_rep(basis, x) - n) <= 1e-9
    assert abs(theta_lower_from_rep(same, np.array([1.0, 0.0])) - n) <= 1e-12
    with pytest.raises(HandleOrthogonalToVector):
        theta_upper_from_rep(basis, np.array([0.0, 1.0] + [0.0] * (n - 2)))


def test_handle_preconditions():
    rep = umbrella_rep(False)
    with pytest.raises(PreconditionViolated):
        theta_upper_from_rep(rep, np.array([0.0, 0.0, 2.0]))
    with pytest.raises(PreconditionViolated):
        theta_lower_from_rep(rep, np.array([1.0, 0.0]))


def test_sandwich_validity_on_random_graphs():
    rng = np.random.default_rng(17)
    for seed in range(10):
        g = random_graph(int(rng.integers(3, 9)), 0.5, 1000 + seed)
        r = theta_sdp(g, tol=1e-5)
        rep_g = random_rep(g, seed)
        rep_gbar = random_rep(complement(g), seed)
        for _ in range(3):
            x = rng.standard_normal(rep_g.d)
            x /= np.linalg.norm(x)
            low = theta_lower_from_rep(rep_gbar, x)
            assert low <= r.upper + 1e-6
            products = x @ rep_g.vectors
            if np.min(np.abs(products)) > 1e-12:
                assert theta_upper_from_rep(rep_g, x) >= r.lower - 1e-6


def test_monotone_under_vertex_deletion():
    for seed in range(6):
        g = random_graph(7, 0.5, 2000 + seed)
        r = theta_sdp(g, tol=1e-5)
        for v in (0, g.n - 1):
            sub = induced_subgraph(g, [u for u in range(g.n) if u != v])
            assert theta_sdp(sub, tol=1e-5).lower <= r.upper + 1e-9


def test_theta_dominates_independence_number():
    for seed in range(8):
        g = random_graph(8, 0.5, 3000 + seed)
        r = theta_sdp(g, tol=1e-5)
        assert r.upper >= brute_independence(g) - 1e-6


# --- closed-form bound plumbing -----------------------------------------------


def test_length_bound_pairs():
    lo, hi = L_bounds(cycle_graph(5), SQRT5, SQRT5)
    assert abs(lo - 5.0**0.75) <= 1e-9 and abs(hi - 5.0**0.75) <= 1e-9
    n = 7
    assert L_bounds(complete_graph(n), 1.0, float(n)) == (float(n), math.sqrt(n * n))
    lo, hi = L_bounds(empty_graph(n), float(n), 1.0)
    assert abs(lo - math.sqrt(n)) <= 1e-12 and abs(hi - math.sqrt(n)) <= 1e-12
    with pytest.raises(PreconditionViolated):
        L_bounds(cycle_graph(5), 0.5, 2.0)


def test_transitive_identity_on_closed_forms():
    assert transitive_identity_check(complete_graph(4), tol=1e-4)
    assert transitive_identity_check(cycle_graph(5), tol=1e-4)


def test_bound_formula_reports():
    out = bound_formula_check(cycle_graph(5), "odd", 1)
    assert isinstance(out, BoundFormulaReport) and out.ok
    assert out.value_is_certified_upper
    assert abs(out.formula_bound - 180.0 ** (1.0 / 3.0)) <= 1e-12
    assert abs(out.theta_value - SQRT5) <= 1e-4

    out = bound_formula_check(polarity_graph(3), "even", 2)
    assert out.ok and abs(out.formula_bound - 24.0 * 13.0**0.25) <= 1e-12

    out = bound_formula_check(clique_union(12, 2), "odd", 1)
    assert out.ok and out.theta_value <= 432.0 ** (1.0 / 3.0)

    with pytest.raises(PreconditionViolated):
        bound_formula_check(complete_graph(3), "odd", 1)
    with pytest.raises(PreconditionViolated):
        bound_formula_check(cycle_graph(5), "diagonal", 1)
