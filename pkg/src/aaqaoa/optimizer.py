"""Derivative-free parameter optimization with deterministic multistart.

A plain Nelder-Mead simplex (reflection 1.0, expansion 2.0, contraction
0.5, shrink 0.5; initial simplex steps of 0.1 per coordinate) is run
from a fixed grid of starting points; results are merged by minimum
with a lexicographic tie-break on the parameters.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from .errors import ContractError
from .graph import Graph
from .hamiltonian import IsingHamiltonian
from .simulator import AnsatzParams, build_qaoa_state, expectation, expectation_via_rcc

REFLECTION = 1.0
EXPANSION = 2.0
CONTRACTION = 0.5
SHRINK = 0.5
INITIAL_STEP = 0.1


@dataclass(frozen=True)
class OptimizerConfig:
    max_evals: int = 400
    x_tol: float = 1e-6
    f_tol: float = 1e-10
    multistart: tuple[tuple[float, ...], ...] | None = None
    seed: int = 0

    def __post_init__(self):
        if self.max_evals < 1:
            raise ContractError("max_evals must be >= 1")
        if self.x_tol <= 0 or self.f_tol <= 0:
            raise ContractError("tolerances must be positive")


@dataclass
class OptResult:
    best_params: np.ndarray
    best_value: float
    evaluations: int
    trace: list[tuple[tuple[float, ...], float]] = field(default_factory=list)
    wall_time: float = 0.0


class _BudgetExhausted(Exception):
    """Internal signal: max_evals reached mid-iteration."""


def nelder_mead(f, x0, cfg: OptimizerConfig) -> OptResult:
    """Minimize f from x0; terminates on x_tol, f_tol or max_evals."""
    x0 = np.asarray(x0, dtype=float)
    dim = len(x0)
    if dim < 1:
        raise ContractError("need at least one dimension")

    evals = 0
    trace: list[tuple[tuple[float, ...], float]] = []
    incumbent = math.inf

    def call(x):
        nonlocal evals, incumbent
        if evals >= cfg.max_evals:
            raise _BudgetExhausted
        value = float(f(x))
        if not math.isfinite(value):
            raise ContractError(f"objective returned non-finite value {value} at {x}")
        evals += 1
        if value < incumbent:
            incumbent = value
            trace.append((tuple(float(c) for c in x), value))
        return value

    simplex = [x0.copy()]
    for i in range(dim):
        pt = x0.copy()
        pt[i] += INITIAL_STEP
        simplex.append(pt)
    values: list[float] = []

    def done() -> bool:
        if evals >= cfg.max_evals:
            return True
        spread = max(values) - min(values)
        diameter = max(
            float(np.max(np.abs(pt - simplex[0]))) for pt in simplex[1:]
        )
        return spread <= cfg.f_tol or diameter <= cfg.x_tol

    try:
        for pt in simplex:
            values.append(call(pt))
        while not done():
            order = sorted(range(dim + 1), key=lambda i: values[i])
            simplex = [simplex[i] for i in order]
            values = [values[i] for i in order]
            centroid = np.mean(simplex[:-1], axis=0)
            worst = simplex[-1]

            reflected = centroid + REFLECTION * (centroid - worst)
            f_ref = call(reflected)
            if values[0] <= f_ref < values[-2]:
                simplex[-1], values[-1] = reflected, f_ref
                continue
            if f_ref < values[0]:
                expanded = centroid + EXPANSION * (reflected - centroid)
                f_exp = call(expanded)
                if f_exp < f_ref:
                    simplex[-1], values[-1] = expanded, f_exp
                else:
                    simplex[-1], values[-1] = reflected, f_ref
                continue
            contracted = centroid + CONTRACTION * (worst - centroid)
            f_con = call(contracted)
            if f_con < values[-1]:
                simplex[-1], values[-1] = contracted, f_con
                continue
            best = simplex[0]
            for i in range(1, dim + 1):
                shrunk = best + SHRINK * (simplex[i] - best)
                value = call(shrunk)
                simplex[i], values[i] = shrunk, value
    except _BudgetExhausted:
        simplex = simplex[:len(values)]

    best_idx = min(range(len(values)), key=lambda i: values[i])
    return OptResult(
        best_params=simplex[best_idx].copy(),
        best_value=values[best_idx],
        evaluations=evals,
        trace=trace,
    )


def default_multistart(p: int) -> tuple[tuple[float, ...], ...]:
    """Start grid: beta in {k*pi/16}, gamma in {k*pi/8}, k = 1..7.

    For p = 1 the full 7x7 outer product is used. For p > 1 a single
    start at the grid point nearest the box center is taken, repeated
    across layers.
    """
    betas = [k * math.pi / 16 for k in range(1, 8)]
    gammas = [k * math.pi / 8 for k in range(1, 8)]
    if p == 1:
        return tuple((b, g) for b in betas for g in gammas)
    center = (betas[3],) * p + (gammas[3],) * p
    return (center,)


def small_multistart(p: int, per_dim: int = 3) -> tuple[tuple[float, ...], ...]:
    """Coarser grid for timing-bounded runs: per_dim points per angle."""
    betas = [k * math.pi / (2 * (per_dim + 1)) for k in range(1, per_dim + 1)]
    gammas = [k * math.pi / (per_dim + 1) for k in range(1, per_dim + 1)]
    if p == 1:
        return tuple((b, g) for b in betas for g in gammas)
    mid = per_dim // 2
    return ((betas[mid],) * p + (gammas[mid],) * p,)


def optimize_qaoa(g: Graph, h_measure: IsingHamiltonian,
                  h_ansatz: IsingHamiltonian, p: int,
                  cfg: OptimizerConfig,
                  measure_via_rcc: bool = False,
                  qubit_cap: int | None = None) -> OptResult:
    """Maximize the measured expectation over theta = (betas, gammas).

    The ansatz is always built from h_ansatz (the full-graph
    Hamiltonian); h_measure is either the full or the reduced
    Hamiltonian of the same graph. With measure_via_rcc the objective
    is evaluated per term on each term's causal-cone subgraph instead
    of the full statevector; the two evaluations agree exactly, only
    the cost differs. Wall time brackets objective evaluations and
    optimizer bookkeeping only.
    """
    if h_measure.convention != h_ansatz.convention:
        raise ContractError("measurement and ansatz Hamiltonians use different conventions")
    if h_measure.n != g.n or h_ansatz.n != g.n:
        raise ContractError("Hamiltonian dimension does not match the graph")

    sim_kwargs = {} if qubit_cap is None else {"cap": qubit_cap}

    if measure_via_rcc:
        def objective(theta):
            params = AnsatzParams.from_vector(theta, p)
            return -expectation_via_rcc(
                g, h_measure, params,
                ansatz_convention=h_ansatz.convention, **sim_kwargs,
            )
    else:
        def objective(theta):
            params = AnsatzParams.from_vector(theta, p)
            state = build_qaoa_state(h_ansatz, params, **sim_kwargs)
            return -expectation(state, h_measure, mode="per_term")

    starts = cfg.multistart if cfg.multistart is not None else default_multistart(p)
    for start in starts:
        if len(start) != 2 * p:
            raise ContractError(f"start point {start} does not have 2p={2 * p} coordinates")

    best: OptResult | None = None
    total_evals = 0
    trace: list[tuple[tuple[float, ...], float]] = []
    incumbent = math.inf
    t0 = time.perf_counter()
    for start in starts:
        result = nelder_mead(objective, np.asarray(start, dtype=float), cfg)
        total_evals += result.evaluations
        for point, value in result.trace:
            if value < incumbent:
                incumbent = value
                trace.append((point, value))
        if (best is None or result.best_value < best.best_value
                or (result.best_value == best.best_value
                    and tuple(result.best_params) < tuple(best.best_params))):
            best = OptResult(
                best_params=result.best_params,
                best_value=result.best_value,
                evaluations=0,
                trace=[],
            )
    wall = time.perf_counter() - t0
    assert best is not None
    best.evaluations = total_evals
    best.trace = trace
    best.wall_time = wall
    return best
