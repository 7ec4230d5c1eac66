"""The adaptive ansatz-growth loop with pluggable selection criterion.

Each iteration scans the pool from the current state (locally optimizing a
fresh parameter per candidate, or measuring initial gradients), selects the
candidate with the largest score magnitude, appends it (hot: at its locally
optimal parameter; warm: at zero), then re-optimizes all parameters against
the full Hamiltonian.

Measurement cost is charged in units of fermionic-Hamiltonian terms whose
expectation a hardware run would estimate: an energy evaluation costs one
pass over the relevant term count, a parameter-shift gradient costs two
passes per parameter. Scans are charged against sub-Hamiltonian sizes, the
global optimization against the full term count.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .chem import MoleculeData, SpinOrbitalHamiltonian, hartree_fock_reference, sub_hamiltonian
from .opt import OptimizerConfig, bfgs_minimize, local_optimize
from .pool import ExcitationOp
from .sim import Ansatz, apply_ansatz, energy_and_gradient, pool_gradients

GRADIENT = "gradient"
PARAMETER = "parameter"
WARM = "warm"
HOT = "hot"

EPSILON = "EPSILON"
GRAD_NORM = "GRAD_NORM"
K_MAX = "K_MAX"

UCCSD = "uccsd"
HI_UCCSD = "hi_uccsd"

CONVENTIONS = {
    "jordan_wigner": "z-string-below-target;qubit-p-stores-orbital-p",
    "orbital_order": "interleaved;alpha-even;beta-odd",
    "pool": "spin-resolved-uccsd;singles-then-doubles;lexicographic",
    "cost_model": "fermionic-term-passes;energy=1;shift-gradient=2-per-parameter",
}


@dataclass
class AdaptConfig:
    criterion: str = PARAMETER
    start: str = HOT
    epsilon: float = 1e-4
    grad_norm_tol: float = 1e-3
    k_max: int = 120
    optimizer: OptimizerConfig = field(default_factory=OptimizerConfig)
    pool_kind: str = HI_UCCSD
    eta: float = 1e-10

    def __post_init__(self):
        if self.criterion not in (GRADIENT, PARAMETER):
            raise ValueError(f"unknown criterion {self.criterion!r}")
        if self.start not in (WARM, HOT):
            raise ValueError(f"unknown start {self.start!r}")
        if self.criterion == GRADIENT and self.start == HOT:
            raise ValueError("hot start requires the parameter criterion")
        if self.epsilon <= 0:
            raise ValueError("epsilon must be positive")
        if self.k_max < 0:
            raise ValueError("k_max must be non-negative")
        if self.pool_kind not in (UCCSD, HI_UCCSD):
            raise ValueError(f"unknown pool kind {self.pool_kind!r}")


@dataclass
class CostLedger:
    cumulative: int = 0
    per_iteration: list[tuple[int, int]] = field(default_factory=list)

    def charge(self, scan_cost: int, global_cost: int) -> None:
        self.per_iteration.append((scan_cost, global_cost))
        self.cumulative += scan_cost + global_cost


@dataclass
class IterationRecord:
    k: int
    chosen_pool_index: int
    selection_score: float
    initial_param: float
    energy_after_global: float
    error_vs_fci: float | None
    all_params: list[float]
    scan_cost: int
    global_cost: int
    cumulative_cost: int
    global_func_evals: int
    global_grad_evals: int
    global_converged: bool


@dataclass
class AdaptTrace:
    criterion: str
    start: str
    pool_kind: str
    pool_size: int
    conventions: dict[str, str]
    records: list[IterationRecord]
    final_energy: float
    termination_reason: str
    ledger: CostLedger
    e_hf: float
    n_qubits: int


def select_operator(scores: np.ndarray) -> int:
    """Argmax of |score|; ties resolve to the lowest index."""
    scores = np.asarray(scores, dtype=float)
    if scores.size == 0:
        raise ValueError("empty score vector")
    return int(np.argmax(np.abs(scores)))


def charge_scan(ledger_entry: list[int], sub_term_counts, func_evals, grad_evals) -> None:
    """Accumulate the pool-scan cost into ledger_entry[0].

    For candidate i: func_evals[i] energy passes over |H_i| terms plus
    grad_evals[i] shift-rule gradients at two passes each.
    """
    total = 0
    for t, nf, ng in zip(sub_term_counts, func_evals, grad_evals):
        total += nf * t + ng * 2 * t
    ledger_entry[0] += total


def charge_global(ledger_entry: list[int], t_full: int, m: int, n_func, n_grad) -> None:
    """Accumulate the global-optimization cost into ledger_entry[1].

    Each energy evaluation is one pass over the full term count; each
    gradient evaluation is two shifted passes per parameter.
    """
    ledger_entry[1] += n_func * t_full + n_grad * 2 * m * t_full


def _scan_threads() -> int:
    env = os.environ.get("ADAPTLAB_THREADS")
    if env:
        return max(1, int(env))
    return min(8, os.cpu_count() or 1)


def run_adapt(
    h: SpinOrbitalHamiltonian,
    m: MoleculeData,
    pool: list[ExcitationOp],
    cfg: AdaptConfig,
    e_fci: float | None = None,
    sub_hamiltonians: list[SpinOrbitalHamiltonian] | None = None,
    verbose: bool = False,
) -> AdaptTrace:
    """Grow the ansatz operator-by-operator until a stop rule fires.

    ``sub_hamiltonians`` may carry precomputed restrictions matching
    ``pool``; otherwise they are derived here once (they do not depend on
    the state).
    """
    if not pool:
        raise ValueError("empty operator pool")
    if sub_hamiltonians is None:
        sub_hamiltonians = [sub_hamiltonian(h, op) for op in pool]
    sub_counts = [s.fermionic_term_count for s in sub_hamiltonians]
    t_full = h.fermionic_term_count

    ref = hartree_fock_reference(m)
    ansatz = Ansatz(h.n_qubits, ref, [])
    state = apply_ansatz(ansatz)
    e_hf, _ = energy_and_gradient(ansatz, h)
    current_energy = e_hf

    ledger = CostLedger()
    records: list[IterationRecord] = []
    termination = K_MAX
    n_threads = _scan_threads()

    k = 1
    while True:
        if k > cfg.k_max:
            termination = K_MAX
            break
        entry = [0, 0]

        if cfg.criterion == PARAMETER:
            def scan_one(idx: int):
                return local_optimize(
                    state, pool[idx], sub_hamiltonians[idx], 0.0, cfg.optimizer
                )
            if n_threads > 1 and len(pool) > 1:
                with ThreadPoolExecutor(max_workers=n_threads) as ex:
                    results = list(ex.map(scan_one, range(len(pool))))
            else:
                results = [scan_one(i) for i in range(len(pool))]
            scores = np.array([r.theta_star[0] for r in results])
            charge_scan(
                entry,
                sub_counts,
                [r.n_func_evals for r in results],
                [r.n_grad_evals for r in results],
            )
            if float(np.max(np.abs(scores))) < cfg.epsilon:
                termination = EPSILON
                ledger.charge(entry[0], entry[1])
                break
        else:
            scores = pool_gradients(state, pool, h, sub_hamiltonians)
            charge_scan(entry, sub_counts, [0] * len(pool), [1] * len(pool))
            if float(np.linalg.norm(scores)) < cfg.grad_norm_tol:
                termination = GRAD_NORM
                ledger.charge(entry[0], entry[1])
                break

        chosen = select_operator(scores)
        init_param = float(scores[chosen]) if cfg.start == HOT else 0.0
        ansatz = ansatz.appended(pool[chosen], init_param)

        def objective(thetas):
            return energy_and_gradient(ansatz.with_thetas(thetas), h)

        result = bfgs_minimize(objective, ansatz.thetas(), cfg.optimizer)
        charge_global(
            entry, t_full, len(ansatz.elements),
            result.n_func_evals, result.n_grad_evals,
        )
        ansatz = ansatz.with_thetas(result.theta_star)
        state = apply_ansatz(ansatz)
        current_energy = result.f_star
        ledger.charge(entry[0], entry[1])
        records.append(
            IterationRecord(
                k=k,
                chosen_pool_index=chosen,
                selection_score=float(scores[chosen]),
                initial_param=init_param,
                energy_after_global=current_energy,
                error_vs_fci=None if e_fci is None else current_energy - e_fci,
                all_params=[float(t) for t in result.theta_star],
                scan_cost=entry[0],
                global_cost=entry[1],
                cumulative_cost=ledger.cumulative,
                global_func_evals=result.n_func_evals,
                global_grad_evals=result.n_grad_evals,
                global_converged=result.converged,
            )
        )
        if verbose:
            err = "" if e_fci is None else f"  err={current_energy - e_fci:.3e}"
            print(
                f"k={k:3d} op={pool[chosen].label():>14s} score={scores[chosen]: .3e} "
                f"E={current_energy:.10f}{err} cost={ledger.cumulative}"
            )
        k += 1

    return AdaptTrace(
        criterion=cfg.criterion,
        start=cfg.start,
        pool_kind=cfg.pool_kind,
        pool_size=len(pool),
        conventions=dict(CONVENTIONS),
        records=records,
        final_energy=current_energy,
        termination_reason=termination,
        ledger=ledger,
        e_hf=e_hf,
        n_qubits=h.n_qubits,
    )
