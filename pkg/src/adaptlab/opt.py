"""Quasi-Newton minimization: BFGS with a strong-Wolfe line search.

Hand-rolled rather than delegated so that objective-call counting is exact
and deterministic; the measurement-cost ledger depends on both. The
objective callable returns (value, gradient) in one evaluation, so the
function and gradient counters advance together.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .chem import SpinOrbitalHamiltonian
from .pool import ExcitationOp
from .sim import StateVector, _apply_excitation_inplace, _apply_sum_into


class LineSearchFailure(RuntimeError):
    """Strong-Wolfe bracketing/zoom exhausted its iteration budget."""


class _BudgetExhausted(Exception):
    pass


@dataclass
class OptimizerConfig:
    gtol: float = 1e-6
    max_evals: int = 10_000
    wolfe_c1: float = 1e-4
    wolfe_c2: float = 0.9

    def __post_init__(self):
        if not 0 < self.wolfe_c1 < self.wolfe_c2 < 1:
            raise ValueError("require 0 < c1 < c2 < 1")
        if self.gtol <= 0:
            raise ValueError("gtol must be positive")
        if self.max_evals < 1:
            raise ValueError("max_evals must allow at least one evaluation")


@dataclass
class OptimResult:
    theta_star: np.ndarray
    f_star: float
    n_func_evals: int
    n_grad_evals: int
    converged: bool
    grad_inf_norm: float = field(default=np.nan)


class _CountedObjective:
    """Counts calls, enforces the budget, remembers the best point seen."""

    def __init__(self, objective, max_evals):
        self._objective = objective
        self._max_evals = max_evals
        self.n_evals = 0
        self.best_x = None
        self.best_f = np.inf
        self.best_g = None

    def __call__(self, x: np.ndarray):
        if self.n_evals >= self._max_evals:
            raise _BudgetExhausted
        f, g = self._objective(x)
        g = np.atleast_1d(np.asarray(g, dtype=float))
        self.n_evals += 1
        if f < self.best_f:
            self.best_f = float(f)
            self.best_x = x.copy()
            self.best_g = g.copy()
        return float(f), g


def bfgs_minimize(objective, theta0, cfg: OptimizerConfig | None = None) -> OptimResult:
    """Minimize a smooth objective returning (value, gradient).

    Standard inverse-Hessian BFGS with strong-Wolfe steps. Terminates on
    the gradient infinity norm, the evaluation budget, or a failed line
    search; always reports the best point actually evaluated.
    """
    cfg = cfg or OptimizerConfig()
    x = np.atleast_1d(np.asarray(theta0, dtype=float)).copy()
    n = x.size
    fun = _CountedObjective(objective, cfg.max_evals)

    hinv = np.eye(n)
    eye = np.eye(n)
    converged = False

    try:
        f, g = fun(x)
        while True:
            gnorm = float(np.max(np.abs(g))) if n else 0.0
            if gnorm <= cfg.gtol:
                converged = True
                break
            p = -hinv @ g
            if p @ g >= 0:  # lost positive-definiteness; restart on steepest descent
                hinv = np.eye(n)
                p = -g
            try:
                alpha, f_new, g_new = _strong_wolfe(fun, x, p, f, g, cfg)
            except LineSearchFailure:
                break
            s = alpha * p
            x = x + s
            y = g_new - g
            f, g = f_new, g_new
            sy = float(s @ y)
            if sy > 1e-14 * float(np.linalg.norm(s)) * float(np.linalg.norm(y)):
                rho = 1.0 / sy
                v = eye - rho * np.outer(s, y)
                hinv = v @ hinv @ v.T + rho * np.outer(s, s)
    except _BudgetExhausted:
        pass

    return OptimResult(
        theta_star=fun.best_x,
        f_star=fun.best_f,
        n_func_evals=fun.n_evals,
        n_grad_evals=fun.n_evals,
        converged=converged,
        grad_inf_norm=float(np.max(np.abs(fun.best_g))) if n else 0.0,
    )


def _strong_wolfe(fun, x, p, f0, g0, cfg, alpha_max=64.0, max_expand=20, max_zoom=40):
    """Nocedal-Wright bracketing plus zoom; returns (alpha, f, g)."""
    c1, c2 = cfg.wolfe_c1, cfg.wolfe_c2
    dphi0 = float(g0 @ p)
    if dphi0 >= 0:
        raise LineSearchFailure("not a descent direction")

    def phi(alpha):
        f, g = fun(x + alpha * p)
        return f, g, float(g @ p)

    alpha_prev, f_prev, dphi_prev = 0.0, f0, dphi0
    alpha = 1.0
    for it in range(max_expand):
        f_a, g_a, dphi_a = phi(alpha)
        if f_a > f0 + c1 * alpha * dphi0 or (it > 0 and f_a >= f_prev):
            return _zoom(phi, f0, dphi0, alpha_prev, f_prev, dphi_prev,
                         alpha, f_a, c1, c2, max_zoom)
        if abs(dphi_a) <= -c2 * dphi0:
            return alpha, f_a, g_a
        if dphi_a >= 0:
            return _zoom(phi, f0, dphi0, alpha, f_a, dphi_a,
                         alpha_prev, f_prev, c1, c2, max_zoom)
        alpha_prev, f_prev, dphi_prev = alpha, f_a, dphi_a
        if alpha >= alpha_max:
            raise LineSearchFailure("expansion hit alpha_max")
        alpha = min(2.0 * alpha, alpha_max)
    raise LineSearchFailure("bracketing budget exhausted")


def _zoom(phi, f0, dphi0, alo, flo, dlo, ahi, fhi, c1, c2, max_zoom):
    for _ in range(max_zoom):
        # quadratic interpolation with bisection safeguard
        denom = 2.0 * (fhi - flo - dlo * (ahi - alo))
        aj = alo - dlo * (ahi - alo) ** 2 / denom if denom != 0.0 else 0.5 * (alo + ahi)
        span = abs(ahi - alo)
        lo, hi = min(alo, ahi), max(alo, ahi)
        if not np.isfinite(aj) or not lo + 0.1 * span <= aj <= hi - 0.1 * span:
            aj = 0.5 * (alo + ahi)
        f_j, g_j, dphi_j = phi(aj)
        if f_j > f0 + c1 * aj * dphi0 or f_j >= flo:
            ahi, fhi = aj, f_j
        else:
            if abs(dphi_j) <= -c2 * dphi0:
                return aj, f_j, g_j
            if dphi_j * (ahi - alo) >= 0:
                ahi, fhi = alo, flo
            alo, flo, dlo = aj, f_j, dphi_j
        if abs(ahi - alo) < 1e-14:
            break
    raise LineSearchFailure("zoom budget exhausted")


def local_optimize(
    base_state: StateVector,
    op: ExcitationOp,
    sub_h: SpinOrbitalHamiltonian,
    theta0: float = 0.0,
    cfg: OptimizerConfig | None = None,
) -> OptimResult:
    """One-parameter VQE against the operator's sub-Hamiltonian.

    Minimizes theta -> <base| e^{-theta tau} H_i e^{theta tau} |base>.
    """
    scratch1 = np.empty_like(base_state.amps)
    scratch2 = np.empty_like(base_state.amps)
    psi = np.empty_like(base_state.amps)
    h_psi = np.empty_like(base_state.amps)
    tau_psi = np.empty_like(base_state.amps)

    def objective(theta_vec):
        psi[:] = base_state.amps
        _apply_excitation_inplace(psi, op, float(theta_vec[0]), scratch1, scratch2)
        _apply_sum_into(sub_h.qubit_form, psi, h_psi)
        f = np.vdot(psi, h_psi).real
        _apply_sum_into(op.qubit_generator, psi, tau_psi)
        dfdt = 2.0 * np.vdot(h_psi, tau_psi).real
        return float(f), np.array([dfdt])

    return bfgs_minimize(objective, np.array([theta0]), cfg)
