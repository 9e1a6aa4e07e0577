"""Full-matrix weighted nuclear norm minimization.

Solves  min_X ||Y - X||_F^2 + sum_i w_i * sigma_i(X)  by decomposing Y,
solving the diagonal spectrum subproblem, and reconstructing. Uniform
weights reduce to singular value soft-thresholding.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import diag
from .diag import DiagSolution, SolverPath
from .exceptions import InvalidInputError, PreconditionError
from .linalg import SvdFactors, check_matrix, reconstruct, svd


@dataclass(frozen=True)
class WnnmResult:
    x_star: np.ndarray
    factors: SvdFactors
    d: DiagSolution
    objective: float
    path: SolverPath


def objective_full(y, x, w) -> float:
    """||y - x||_F^2 plus the weighted nuclear norm of x."""
    y = check_matrix(y)
    x = check_matrix(x)
    if y.shape != x.shape:
        raise InvalidInputError(f"shape mismatch: y is {y.shape}, x is {x.shape}")
    w = diag.check_weights(w)
    if w.size != min(y.shape):
        raise InvalidInputError(
            f"weight vector has length {w.size}, expected {min(y.shape)}"
        )
    sigma_x = svd(x).sigma
    return float(np.sum((y - x) ** 2) + np.sum(w * sigma_x))


def wnnm_solve(y, w, force_path: str | None = None) -> WnnmResult:
    """Globally optimal WNNM solution for one weight per singular value.

    The closed-form path runs automatically when the weights are
    non-descending; otherwise the PAVA path solves the general subproblem.
    ``force_path`` ("closed" or "pava") overrides the automatic choice.
    """
    y = check_matrix(y)
    w = diag.check_weights(w)
    if w.size != min(y.shape):
        raise InvalidInputError(
            f"weight vector has length {w.size}, expected {min(y.shape)}"
        )
    if force_path not in (None, "closed", "pava"):
        raise InvalidInputError(f"unknown force_path {force_path!r}")

    factors = svd(y)
    use_closed = diag.weights_non_descending(w) if force_path is None else force_path == "closed"
    if use_closed:
        sol = diag.closed_form(factors.sigma, w)
    else:
        sol = diag.pava_solve(factors.sigma, w)
    x_star = reconstruct(factors, sol.d)
    # Objective recomputed from x_star (fresh SVD inside) so reconstruction
    # bugs cannot hide behind the subproblem value.
    obj = objective_full(y, x_star, w)
    return WnnmResult(x_star=x_star, factors=factors, d=sol, objective=obj, path=sol.path)


def nnm_solve(y, lam: float) -> WnnmResult:
    """Uniform-weight special case: soft-threshold the spectrum at lam/2."""
    y = check_matrix(y)
    lam = float(lam)
    if not np.isfinite(lam) or lam < 0.0:
        raise InvalidInputError(f"lambda must be a nonnegative real, got {lam}")
    factors = svd(y)
    d = np.maximum(factors.sigma - lam / 2.0, 0.0)
    w = np.full(factors.sigma.size, lam)
    sol = DiagSolution(
        d=d, objective=diag.objective_diag(d, factors.sigma, w), path=SolverPath.CLOSED_FORM
    )
    x_star = reconstruct(factors, d)
    obj = objective_full(y, x_star, w)
    return WnnmResult(x_star=x_star, factors=factors, d=sol, objective=obj, path=sol.path)


@dataclass(frozen=True)
class TraceIdentityReport:
    lhs: float
    rhs_at_svd: float
    max_random_rhs: float


def random_orthonormal(rng: np.random.Generator, rows: int, cols: int, count: int) -> np.ndarray:
    """Stack of `count` matrices with orthonormal columns, Haar-corrected."""
    g = rng.standard_normal((count, rows, cols))
    q, r = np.linalg.qr(g)
    signs = np.sign(np.einsum("bii->bi", r))
    signs[signs == 0] = 1.0
    return q * signs[:, None, :]


def trace_identity_check(a, w, trials: int, rng=None) -> TraceIdentityReport:
    """Check that tr[diag(w) U^T A V] over orthonormal (U, V) peaks at the
    SVD factors of A, where it equals sum_i sigma_i(A) * w_i.

    Requires non-ascending w. Random orthonormal pairs probe the bound;
    none may exceed the analytic maximum.
    """
    a = check_matrix(a)
    w = diag.check_weights(w)
    if w.size != min(a.shape):
        raise InvalidInputError(
            f"weight vector has length {w.size}, expected {min(a.shape)}"
        )
    if w.size and np.any(np.diff(w) > diag.WEIGHT_ORDER_TOL):
        raise PreconditionError("trace identity requires non-ascending weights")
    if trials < 1:
        raise InvalidInputError("trials must be >= 1")
    rng = np.random.default_rng(rng)

    f = svd(a)
    k = f.sigma.size
    lhs = float(np.sum(f.sigma * w))
    rhs_at_svd = float(np.trace((w[:, None] * f.u.T) @ a @ f.v))

    us = random_orthonormal(rng, a.shape[0], k, trials)
    vs = random_orthonormal(rng, a.shape[1], k, trials)
    # tr[diag(w) U^T A V] batched over the trial axis.
    traces = np.einsum("i,bji,jl,bli->b", w, us, a, vs)
    return TraceIdentityReport(
        lhs=lhs, rhs_at_svd=rhs_at_svd, max_random_rhs=float(traces.max())
    )
