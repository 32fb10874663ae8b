"""Certified two-sided computation of the Lovász theta number.

Every reported value is a sandwich: the lower end is the objective of an
explicit feasible primal matrix (PSD, unit trace, zero on edges), the
upper end the top eigenvalue of an explicit dual matrix (ones on the
diagonal and on non-edges).  Certificates are revalidated when the result
object is built, so a solver bug cannot silently produce a wrong value.

The solver alternates a primal ascent (cyclic projection onto the PSD and
affine constraint sets with a running correction term) with a dual
descent on the edge entries (top-eigenvector subgradient steps with a
1/sqrt(k) schedule and best-iterate tracking, restarted from the
correction term's edge pattern whenever that candidate is better).
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass

import numpy as np

from .errors import (
    ComplexityRefused,
    GapNotReached,
    HandleOrthogonalToVector,
    NoEdges,
    PreconditionViolated,
    RepInvalid,
)
from .graph import Graph, complement, contains_cycle
from .linalg import SymMatrix, adjacency_sym, eigen_sym, eigh_dense, sym_from_dense
from .ortho import OrthoRep, validate_rep

DEFAULT_ITERATION_CAP = 50_000
DEFAULT_SOLVER_CAP = 200
_CERT_EVERY = 5


def solver_cap() -> int:
    """Largest graph the dense solver accepts; LAB_MAX_N overrides."""
    raw = os.environ.get("LAB_MAX_N")
    if raw is None:
        return DEFAULT_SOLVER_CAP
    cap = int(raw)
    if cap < 1:
        raise PreconditionViolated(f"LAB_MAX_N must be positive, got {raw!r}")
    return cap


@dataclass(frozen=True, eq=False)
class ThetaResult:
    """Primal/dual sandwich with machine-checkable certificates."""

    lower: float
    upper: float
    gap: float
    primal_x: SymMatrix
    dual_b: SymMatrix
    iterations: int
    graph: Graph

    def __post_init__(self):
        g = self.graph
        n = g.n
        x = self.primal_x.dense()
        if abs(float(np.trace(x)) - 1.0) > 1e-8:
            raise PreconditionViolated("primal certificate trace differs from 1")
        b = self.dual_b.dense()
        worst_pattern = 0.0
        for u in range(n):
            if b[u, u] != 1.0:
                raise PreconditionViolated("dual certificate diagonal not exactly 1")
            for v in range(u + 1, n):
                if g.has_edge(u, v):
                    worst_pattern = max(worst_pattern, abs(float(x[u, v])))
                elif b[u, v] != 1.0:
                    raise PreconditionViolated("dual certificate non-edge entry not exactly 1")
        if worst_pattern > 1e-8:
            raise PreconditionViolated(f"primal certificate edge residual {worst_pattern}")
        vals, _ = eigh_dense(x)
        if float(vals[-1]) < -1e-8:
            raise PreconditionViolated(f"primal certificate eigenvalue {float(vals[-1])}")
        if abs(float(x.sum()) - self.lower) > 1e-8 * max(1.0, abs(self.lower)):
            raise PreconditionViolated("lower bound does not match primal certificate")
        bvals, _ = eigh_dense(b)
        if abs(float(bvals[0]) - self.upper) > 1e-8 * max(1.0, abs(self.upper)):
            raise PreconditionViolated("upper bound does not match dual certificate")
        if self.gap < -1e-9 or abs(self.gap - (self.upper - self.lower)) > 1e-12:
            raise PreconditionViolated("gap field inconsistent with bounds")


def _edge_indices(g: Graph):
    rows = []
    cols = []
    for u, v in g.edges():
        rows.extend((u, v))
        cols.extend((v, u))
    return np.array(rows, dtype=np.intp), np.array(cols, dtype=np.intp)


def theta_sdp(g: Graph, tol: float = 1e-6, iteration_cap: int = DEFAULT_ITERATION_CAP) -> ThetaResult:
    """Bracket the theta number of g to within tol.

    Maximizes <J, X> over PSD unit-trace matrices vanishing on edges,
    against the dual min lambda_max over matrices fixed to one off the
    edge set.  Deterministic start (X = I/n, dual = J).  Raises
    GapNotReached, carrying the partial result, if the cap runs out.
    """
    n = g.n
    if n < 1:
        raise PreconditionViolated("graph must have at least one vertex")
    cap_n = solver_cap()
    if n > cap_n:
        raise ComplexityRefused(f"n = {n} exceeds solver cap {cap_n}")
    if tol < 1e-8:
        raise PreconditionViolated(f"tol must be >= 1e-8, got {tol}")

    rows, cols = _edge_indices(g)
    has_edges = rows.size > 0
    eye = np.eye(n)
    ones = np.ones((n, n))
    diag = np.diag_indices(n)

    def affine_project(m: np.ndarray) -> np.ndarray:
        out = m.copy()
        if has_edges:
            out[rows, cols] = 0.0
        out[diag] -= (np.trace(out) - 1.0) / n
        return out

    def certified_value(xc: np.ndarray) -> tuple[float, np.ndarray]:
        # absorb any negative eigenvalue by mixing toward I/n; the mix
        # keeps the zero pattern and unit trace exactly
        xc = (xc + xc.T) / 2.0  # edge entries are 0 in both triangles
        vals, _ = eigh_dense(xc)
        lam_min = float(vals[-1])
        if lam_min < 0.0:
            shift = -lam_min
            xc = (xc + shift * eye) / (1.0 + shift * n)
        return float(xc.sum()), xc

    def dual_from_edges(src: np.ndarray) -> np.ndarray:
        out = ones.copy()
        if has_edges:
            out[rows, cols] = src[rows, cols]
        return out

    x = eye / n
    y = x.copy()
    corr = np.zeros((n, n))
    rho = float(max(n, 2))
    b_sub = ones.copy()
    svals, svecs = eigh_dense(b_sub)
    b_sub_top, b_sub_vec = float(svals[0]), svecs[:, 0]

    best_lower, best_x = certified_value(x)
    best_upper, best_b = b_sub_top, b_sub.copy()
    rounds = 0
    iterations = 0

    while best_upper - best_lower > tol and iterations < iteration_cap:
        iterations += 1
        # (a) primal: objective tilt, then one cyclic-projection sweep
        x = affine_project(y - (corr - ones) / rho)
        m = x + corr / rho
        vals, vecs = eigh_dense(m)
        y = (vecs * np.maximum(vals, 0.0)) @ vecs.T
        corr = corr + rho * (x - y)

        if iterations % _CERT_EVERY and iterations > 10:
            continue  # certify every sweep early, then every fifth
        rounds += 1
        value, certified = certified_value(x)
        if value > best_lower:
            best_lower, best_x = value, certified

        # (b) dual candidates: correction-term harvest and subgradient iterate
        harvest = dual_from_edges(corr)
        hvals, hvecs = eigh_dense(harvest)
        h_top = float(hvals[0])
        if h_top < best_upper:
            best_upper, best_b = h_top, harvest
        if b_sub_top < best_upper:
            best_upper, best_b = b_sub_top, b_sub.copy()
        if best_upper - best_lower <= tol:
            break
        if has_edges:
            if b_sub_top <= h_top:
                base, top_vec = b_sub, b_sub_vec
            else:
                base, top_vec = harvest, hvecs[:, 0]
            grad = np.zeros((n, n))
            grad[rows, cols] = np.outer(top_vec, top_vec)[rows, cols]
            b_sub = base - (1.0 / math.sqrt(rounds)) * grad
            svals, svecs = eigh_dense(b_sub)
            b_sub_top, b_sub_vec = float(svals[0]), svecs[:, 0]

    result = ThetaResult(
        lower=best_lower,
        upper=best_upper,
        gap=best_upper - best_lower,
        primal_x=sym_from_dense(best_x, tol=1e-7),
        dual_b=sym_from_dense(best_b, tol=1e-7),
        iterations=iterations,
        graph=g,
    )
    if result.gap > tol:
        raise GapNotReached(
            f"gap {result.gap:.3e} above tol {tol:.1e} after {iterations} iterations",
            result=result,
        )
    return result


def theta_spectral_lower_of_complement(g: Graph) -> float:
    """1 - lambda_1/lambda_n of g's adjacency: a lower bound for the complement's theta."""
    if g.edge_count() == 0:
        raise NoEdges("spectral bound needs at least one edge")
    spec = eigen_sym(adjacency_sym(g))
    lam_1 = float(spec.eigenvalues[0])
    lam_n = float(spec.eigenvalues[-1])
    return 1.0 - lam_1 / lam_n


def _check_handle(rep: OrthoRep, x) -> np.ndarray:
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (rep.d,):
        raise PreconditionViolated(f"handle must have length {rep.d}")
    if abs(float(np.linalg.norm(x)) - 1.0) > 1e-8:
        raise PreconditionViolated("handle must be a unit vector")
    return x


def theta_upper_from_rep(rep: OrthoRep, x) -> float:
    """max over vertices of <x, f(v)>^-2, an upper bound from a rep of g."""
    x = _check_handle(rep, x)
    res = validate_rep(rep, rep.target)
    if not res.ok:
        raise RepInvalid(f"rep residual {res.max_residual} exceeds tolerance")
    products = x @ rep.vectors
    tiny = float(np.min(np.abs(products)))
    if tiny <= 1e-12:
        raise HandleOrthogonalToVector(f"handle inner product {tiny} with some vector")
    return float(np.max(products**-2.0))


def theta_lower_from_rep(rep: OrthoRep, x) -> float:
    """Sum of <x, f(v)>^2 over a rep of the complement: a lower bound for g."""
    x = _check_handle(rep, x)
    res = validate_rep(rep, rep.target)
    if not res.ok:
        raise RepInvalid(f"rep residual {res.max_residual} exceeds tolerance")
    products = x @ rep.vectors
    return float(np.sum(products**2))


def L_bounds(g: Graph, theta_g: float, theta_gbar: float) -> tuple[float, float]:
    """Vector-sum-length sandwich (n/sqrt(theta(G)), sqrt(n*theta(Gbar)))."""
    if theta_g < 1.0 or theta_gbar < 1.0:
        raise PreconditionViolated("theta values are always >= 1")
    n = g.n
    return n / math.sqrt(theta_g), math.sqrt(n * theta_gbar)


def transitive_identity_check(g: Graph, tol: float = 1e-4) -> bool:
    """Whether theta(G) * theta(complement) is n within tol*n.

    Callers assert vertex-transitivity; the identity only holds there.
    """
    r = theta_sdp(g)
    rc = theta_sdp(complement(g))
    mid = (r.lower + r.upper) / 2.0
    mid_c = (rc.lower + rc.upper) / 2.0
    return abs(mid * mid_c - g.n) <= tol * g.n


@dataclass(frozen=True)
class BoundFormulaReport:
    ok: bool
    parity: str
    t: int
    theta_value: float
    value_is_certified_upper: bool
    formula_bound: float
    margin: float


def bound_formula_check(g: Graph, parity: str, t: int) -> BoundFormulaReport:
    """Check theta(complement) against the closed-form cycle-freeness bound.

    odd parity: g must be C_{2t+1}-free; bound ((6t)^{2t} n)^(1/(2t+1)).
    even parity: g must be C_{2t}-free; bound 12 t n^(1/(2t)).
    Above the solver cap only the spectral lower bound is available, so a
    pass is then merely "no violation witnessed".
    """
    n = g.n
    if parity == "odd":
        if t < 1:
            raise PreconditionViolated("odd parity needs t >= 1")
        cycle_len = 2 * t + 1
        formula = ((6 * t) ** (2 * t) * n) ** (1.0 / (2 * t + 1))
    elif parity == "even":
        if t < 2:
            raise PreconditionViolated("even parity needs t >= 2")
        cycle_len = 2 * t
        formula = 12 * t * n ** (1.0 / (2 * t))
    else:
        raise PreconditionViolated(f"parity must be odd or even, got {parity!r}")
    if contains_cycle(g, cycle_len):
        raise PreconditionViolated(f"graph contains a {cycle_len}-cycle")
    if n <= solver_cap():
        value = theta_sdp(complement(g)).upper
        certified = True
    else:
        value = theta_spectral_lower_of_complement(g)
        certified = False
    margin = formula - value
    return BoundFormulaReport(margin >= -1e-9, parity, t, value, certified, formula, margin)
