# shadowpca/groundstate/solver.py
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Callable, Optional, Tuple

import numpy as np
from scipy.linalg import eigh, eigh_tridiagonal

from shadowpca.core.errors import ConvergenceError, SolverConfigError
from shadowpca.core.limits import check_state_size
from shadowpca.model import ModelTerms
from .state import StateVector

log = logging.getLogger(__name__)

PINNING_POLICIES = ("auto", "cat", "always")


@dataclass(frozen=True)
class SolverOptions:
    """
    pinning_policy:
      - auto:   add the model's pinning strings only when the lowest pair is degenerate
      - cat:    never pin (cat states are returned as-is)
      - always: pin unconditionally with strength `pinning_strength`
    """

    tol: float = 1e-10
    max_iter: int = 500
    seed: int = 0
    pinning_policy: str = "auto"
    pinning_strength: float = 1e-6
    degeneracy_threshold: Optional[float] = None
    dense_max_sites: int = 10
    krylov_dim: int = 120
    allow_large: bool = False

    def __post_init__(self) -> None:
        if not (self.tol > 0):
            raise SolverConfigError(f"tol must be > 0 (got {self.tol}).")
        if int(self.max_iter) < 2:
            raise SolverConfigError(f"max_iter must be >= 2 (got {self.max_iter}).")
        if self.pinning_policy not in PINNING_POLICIES:
            raise SolverConfigError(
                f"Unknown pinning policy '{self.pinning_policy}'.",
                hint=f"Use one of {list(PINNING_POLICIES)}.",
            )
        if not math.isfinite(self.pinning_strength):
            raise SolverConfigError("pinning_strength must be finite.")
        if self.degeneracy_threshold is not None and self.degeneracy_threshold < 0:
            raise SolverConfigError("degeneracy_threshold must be >= 0.")
        if int(self.krylov_dim) < 4:
            raise SolverConfigError(f"krylov_dim must be >= 4 (got {self.krylov_dim}).")

    def threshold_for(self, e0: float) -> float:
        if self.degeneracy_threshold is not None:
            return float(self.degeneracy_threshold)
        return 1e-6 * max(1.0, abs(e0))

    def as_dict(self) -> dict:
        return {
            "tol": self.tol,
            "max_iter": self.max_iter,
            "seed": self.seed,
            "pinning_policy": self.pinning_policy,
            "pinning_strength": self.pinning_strength,
            "degeneracy_threshold": self.degeneracy_threshold,
            "dense_max_sites": self.dense_max_sites,
            "krylov_dim": self.krylov_dim,
        }


@dataclass(frozen=True)
class GroundStateReport:
    """
    energy/state/residual_norm describe the operator actually solved (the
    pinned one when pinning_applied). degenerate and gap_estimate come from
    the unpinned lowest pair.
    """

    energy: float
    state: StateVector
    residual_norm: float
    degenerate: bool
    gap_estimate: float
    pinning_applied: bool
    method: str
    iterations: int
    unpinned_energy: float

    def summary(self) -> dict:
        return {
            "energy": self.energy,
            "residual_norm": self.residual_norm,
            "degenerate": self.degenerate,
            "gap_estimate": self.gap_estimate,
            "pinning_applied": self.pinning_applied,
            "method": self.method,
            "iterations": self.iterations,
            "unpinned_energy": self.unpinned_energy,
        }


@dataclass(frozen=True)
class _Solution:
    e0: float
    e1: float
    vector: np.ndarray
    residual: float
    method: str
    iterations: int
    partner: Optional[np.ndarray] = None


# ---------------------------------------------------------------------------
# Lanczos
# ---------------------------------------------------------------------------

def _lanczos_block(
    matvec: Callable[[np.ndarray], np.ndarray],
    v0: np.ndarray,
    m: int,
) -> Tuple[np.ndarray, np.ndarray, np.ndarray, float, int]:
    """
    m steps of Lanczos with full reorthogonalization.

    Returns (alpha, beta, V, beta_last, k) where V[:k] spans the Krylov space
    and beta_last is the norm of the residual after step k (0 on breakdown).
    """
    dim = v0.shape[0]
    V = np.zeros((m, dim), dtype=v0.dtype)
    alpha = np.zeros(m)
    beta = np.zeros(m)

    V[0] = v0 / np.linalg.norm(v0)
    w = matvec(V[0])
    for k in range(m):
        if k > 0:
            w = matvec(V[k]) - beta[k - 1] * V[k - 1]
        alpha[k] = float(np.vdot(V[k], w).real)
        w = w - alpha[k] * V[k]
        # two passes of classical Gram-Schmidt keep the basis orthonormal to rounding
        for _ in range(2):
            w = w - V[: k + 1].T @ (V[: k + 1].conj() @ w)
        b = float(np.linalg.norm(w))
        beta[k] = b
        if b < 1e-13 * max(1.0, abs(alpha[k])):
            return alpha[: k + 1], beta[:k], V[: k + 1], 0.0, k + 1
        if k + 1 < m:
            V[k + 1] = w / b
    return alpha, beta[: m - 1], V, float(beta[m - 1]), m


def lanczos_lowest(
    matvec: Callable[[np.ndarray], np.ndarray],
    start: np.ndarray,
    *,
    tol: float,
    max_iter: int,
    krylov_dim: int = 120,
    want_second: bool = True,
) -> Tuple[np.ndarray, np.ndarray, float, int]:
    """
    Two lowest eigenvalues and the ground vector of a Hermitian operator.

    Explicitly restarted: each block builds up to `krylov_dim` Krylov vectors,
    and the next block starts from the sum of the two lowest Ritz vectors.
    Returns (evals[2], ground_vector, best_residual_estimate, iterations).

    A single start vector sees each distinct eigenvalue once, so evals[1] is
    the next distinct level and misses an exactly degenerate partner. With
    want_second=False only the ground Ritz pair has to converge.
    """
    dim = start.shape[0]
    second_tol = max(math.sqrt(tol), 1e-8)
    v = start
    total = 0
    best = math.inf
    while True:
        m = min(krylov_dim, max_iter - total, dim)
        if m < 2:
            raise ConvergenceError(
                f"Lanczos did not converge within {max_iter} iterations.",
                hint="Raise max_iter or loosen tol.",
                details={"best_residual": best, "iterations": total},
            )
        alpha, beta, V, beta_last, k = _lanczos_block(matvec, v, m)
        total += k

        n_want = min(2, k)
        theta, S = eigh_tridiagonal(alpha, beta, select="i", select_range=(0, n_want - 1))
        res_est = np.abs(beta_last * S[-1, :])
        ritz = S.T @ V
        best = min(best, float(res_est[0]))

        invariant = beta_last == 0.0
        converged = res_est[0] <= tol and (not want_second or n_want < 2 or res_est[1] <= second_tol)
        if converged or invariant or k == dim:
            if n_want < 2:
                # breakdown after one step: the start vector is an eigenvector
                theta = np.array([theta[0], math.inf])
            return theta, ritz[0], float(res_est[0]), total

        v = ritz[0] + ritz[1] if n_want == 2 else ritz[0]
        log.debug("LANCZOS_RESTART iters=%d residual=%.3e", total, res_est[0])


def deflated_lowest(
    matvec: Callable[[np.ndarray], np.ndarray],
    ground: np.ndarray,
    start: np.ndarray,
    *,
    shift: float,
    tol: float,
    max_iter: int,
    krylov_dim: int = 120,
) -> Tuple[float, np.ndarray, int]:
    """
    Lowest eigenpair on the orthogonal complement of `ground`.

    Runs Lanczos on P H P + shift * |g><g| with P = 1 - |g><g|, so with
    `shift` above the spectrum the ground direction drops out and an exactly
    degenerate partner of the ground state is returned as the lowest level.
    """
    g = ground / np.linalg.norm(ground)

    def mv(x: np.ndarray) -> np.ndarray:
        c = np.vdot(g, x)
        y = matvec(x - c * g)
        return y - np.vdot(g, y) * g + shift * c * g

    theta, vec, _, iters = lanczos_lowest(
        mv, start - np.vdot(g, start) * g,
        tol=tol, max_iter=max_iter, krylov_dim=krylov_dim, want_second=False,
    )
    vec = vec - np.vdot(g, vec) * g
    return float(theta[0]), vec / np.linalg.norm(vec), iters


# ---------------------------------------------------------------------------
# Solvers
# ---------------------------------------------------------------------------

def _fix_phase(v: np.ndarray) -> np.ndarray:
    # largest-magnitude amplitude made real positive so results are reproducible
    k = int(np.argmax(np.abs(v)))
    phase = v[k] / abs(v[k])
    return v / phase


def _solve(model: ModelTerms, opts: SolverOptions, *, start: Optional[np.ndarray] = None) -> _Solution:
    op = model.operator(allow_large=opts.allow_large)
    partner = None

    if model.n_sites <= opts.dense_max_sites:
        w, vecs = eigh(op.to_dense(), subset_by_index=[0, 1])
        vec = vecs[:, 0]
        method, iters = "dense", 0
        e0, e1 = float(w[0]), float(w[1])
    else:
        rng = np.random.default_rng(opts.seed)
        if start is None:
            start = rng.standard_normal(op.dim)
            if not op.is_real:
                start = start + 1j * rng.standard_normal(op.dim)
        theta, vec, _, iters = lanczos_lowest(
            op.matvec, start, tol=opts.tol, max_iter=opts.max_iter, krylov_dim=opts.krylov_dim, want_second=False
        )
        second = rng.standard_normal(op.dim)
        if not op.is_real:
            second = second + 1j * rng.standard_normal(op.dim)
        # every eigenvalue lies within the sum of |coefficients|
        bound = sum(abs(t.coefficient) for t in model.terms)
        e1, partner, extra = deflated_lowest(
            op.matvec, vec, second,
            shift=bound + 1.0, tol=max(math.sqrt(opts.tol), 1e-8),
            max_iter=opts.max_iter, krylov_dim=opts.krylov_dim,
        )
        method = "lanczos"
        e0 = float(theta[0])
        iters += extra

    vec = _fix_phase(vec / np.linalg.norm(vec))
    residual = float(np.linalg.norm(op.matvec(vec) - e0 * vec))
    if residual > opts.tol * max(1.0, abs(e0)):
        raise ConvergenceError(
            f"Ground state residual {residual:.3e} exceeds tolerance {opts.tol:.1e}.",
            hint="Raise max_iter or loosen tol.",
            details={"best_residual": residual, "iterations": iters, "method": method},
        )
    return _Solution(
        e0=e0, e1=e1, vector=vec, residual=residual, method=method, iterations=iters, partner=partner
    )


def _pair_start(pinned: ModelTerms, ground: np.ndarray, partner: np.ndarray, opts: SolverOptions) -> np.ndarray:
    """
    Lowest vector of the pinned operator inside span{ground, partner}.

    A weak pinning field splits a degenerate pair by about its strength,
    which a random-start Lanczos run cannot resolve within max_iter.
    """
    op = pinned.operator(allow_large=opts.allow_large)
    b = partner - np.vdot(ground, partner) * ground
    V = np.stack([ground, b / np.linalg.norm(b)], axis=1)
    HV = np.stack([op.matvec(V[:, 0]), op.matvec(V[:, 1])], axis=1)
    m = V.conj().T @ HV
    _, c = eigh(0.5 * (m + m.conj().T))
    return V @ c[:, 0]


def ground_state(model: ModelTerms, opts: SolverOptions | None = None) -> GroundStateReport:
    opts = opts or SolverOptions()
    check_state_size(model.n_sites, allow_large=opts.allow_large)

    base = _solve(model, opts)
    gap = base.e1 - base.e0
    degenerate = gap < opts.threshold_for(base.e0)
    if degenerate:
        log.info("GROUND_STATE_DEGENERATE model=%s gap=%.3e", model.label, gap)

    pin = opts.pinning_policy == "always" or (opts.pinning_policy == "auto" and degenerate)
    sol = base
    if pin:
        if not model.pinning:
            raise SolverConfigError(
                f"Pinning required by policy '{opts.pinning_policy}' but model '{model.name}' defines none.",
                hint="Use pinning_policy 'cat' for models without a local order parameter.",
                details={"model": model.name, "degenerate": degenerate},
            )
        pinned = model.pinned(opts.pinning_strength)
        start = None
        if degenerate and base.partner is not None:
            start = _pair_start(pinned, base.vector, base.partner, opts)
        sol = _solve(pinned, opts, start=start)

    log.info(
        "GROUND_STATE_SOLVED model=%s method=%s energy=%.12g residual=%.2e pinned=%s",
        model.label, sol.method, sol.e0, sol.residual, pin,
    )
    return GroundStateReport(
        energy=sol.e0,
        state=StateVector(sol.vector, model.n_sites),
        residual_norm=sol.residual,
        degenerate=bool(degenerate),
        gap_estimate=float(gap),
        pinning_applied=bool(pin),
        method=sol.method,
        iterations=base.iterations + (sol.iterations if pin else 0),
        unpinned_energy=base.e0,
    )
