"""Grid search for the angles maximising the sum of the lowest eigenvalues.

Each free edge angle ranges over ``-pi + 2 pi i / grid_steps``. Small grids
are searched exhaustively; larger ones by coordinate ascent from zero angles.
Either way the best sum found may not exceed ``k (d0 - 1)``, the half-band
cap for the smallest regular host degree ``d0``.
"""
import logging
from typing import NamedTuple, Optional

import numpy as np

from maglap.bounds.context import check_bound_graph
from maglap.config import (
    BOUND_TOL,
    COORDINATE_ASCENT_PASSES,
    GRID_BUDGET,
    GRID_STEPS,
)
from maglap.exceptions import BudgetExceededError, TheoremViolationError
from maglap.graph import DirectedGraph, cycle_basis, min_regular_degree
from maglap.linalg import eigvalsh_batch
from maglap.operator import ThetaAssignment, laplacian_stack

logger = logging.getLogger(__name__)

SCAN_CHUNK = 4096


class FluxPhaseScan(NamedTuple):
    """Best angles found, their eigenvalue sum and how the search went."""

    theta: ThetaAssignment
    best_sum: float
    exhaustive: bool
    evaluations: int
    cap: float


def _lowest_sums(g: DirectedGraph, rows: np.ndarray, k: int) -> np.ndarray:
    return np.sum(eigvalsh_batch(laplacian_stack(g, rows))[:, :k], axis=1)


def flux_phase_scan(
    g: DirectedGraph,
    k: int,
    grid_steps: int = GRID_STEPS,
    budget: int = GRID_BUDGET,
    reduce_gauge: bool = False,
    allow_fallback: bool = True,
    d0: Optional[int] = None,
    tol: float = BOUND_TOL,
) -> FluxPhaseScan:
    """Search the angle grid for the largest ``sum_{j<k} lambda_j``.

    Parameters
    ----------
    g : DirectedGraph
        A connected simple orientation.
    k : int
        Number of eigenvalues summed, ``1 <= k <= n / 2``.
    grid_steps : int, optional
        Grid points per edge, by default GRID_STEPS.
    budget : int, optional
        Maximum number of grid points searched exhaustively, by default GRID_BUDGET.
    reduce_gauge : bool, optional
        Fix the spanning-tree angles to zero, which loses nothing up to gauge
        and leaves one free angle per independent cycle, by default False.
    allow_fallback : bool, optional
        Use coordinate ascent when the grid exceeds the budget, by default True.
    d0 : Optional[int], optional
        Host degree for the cap, by default from :func:`maglap.graph.min_regular_degree`.
    tol : float, optional
        Tolerance of the cap check, by default BOUND_TOL.

    Returns
    -------
    FluxPhaseScan
        The first best grid point in search order (ties keep the earlier one).

    Raises
    ------
    BudgetExceededError
        if the grid exceeds the budget and the fallback is not allowed, or a
        single coordinate pass exceeds it.
    TheoremViolationError
        if the best sum exceeds the half-band cap.

    Examples
    --------
    >>> from maglap.generators import cycle_graph
    >>> scan = flux_phase_scan(cycle_graph(4), 2)
    >>> round(scan.best_sum, 9), scan.exhaustive
    (2.0, True)
    """
    check_bound_graph(g, "flux_phase_scan")
    n, m = g.n_vertices, g.n_edges
    if isinstance(k, bool) or not isinstance(k, (int, np.integer)) or not 1 <= 2 * k <= n:
        raise ValueError(f"k should be an int with 1 <= k <= n/2 = {n / 2}, got {k}.")
    if grid_steps < 1:
        raise ValueError(f"grid_steps should be positive, got {grid_steps}.")
    if d0 is None:
        d0, _ = min_regular_degree(g)

    free = list(cycle_basis(g).non_tree_edges) if reduce_gauge else list(range(m))
    n_free = len(free)
    grid = -np.pi + 2 * np.pi * np.arange(grid_steps) / grid_steps

    def rows_for(values: np.ndarray) -> np.ndarray:
        rows = np.zeros((values.shape[0], m))
        rows[:, free] = values
        return rows

    total = grid_steps ** n_free
    if total <= budget:
        exhaustive = True
        best_sum, best_values = -np.inf, np.zeros(n_free)
        powers = grid_steps ** np.arange(n_free)
        for start in range(0, total, SCAN_CHUNK):
            indices = np.arange(start, min(start + SCAN_CHUNK, total))
            values = grid[(indices[:, None] // powers) % grid_steps]
            sums = _lowest_sums(g, rows_for(values), k)
            top = int(np.argmax(sums))
            if sums[top] > best_sum:
                best_sum, best_values = float(sums[top]), values[top]
        evaluations = total
    else:
        if not allow_fallback or n_free * grid_steps > budget:
            raise BudgetExceededError(
                f"angle grid of {grid_steps}^{n_free} points exceeds the budget of {budget}.",
                budget=budget,
                required=total,
            )
        exhaustive = False
        logger.warning(
            "angle grid of %d^%d points exceeds the budget of %d; using coordinate ascent",
            grid_steps, n_free, budget,
        )
        best_values = np.zeros(n_free)
        best_sum = float(_lowest_sums(g, rows_for(best_values[None, :]), k)[0])
        evaluations = 1
        for _ in range(COORDINATE_ASCENT_PASSES):
            improved = False
            for j in range(n_free):
                candidates = np.tile(best_values, (grid_steps, 1))
                candidates[:, j] = grid
                sums = _lowest_sums(g, rows_for(candidates), k)
                evaluations += grid_steps
                top = int(np.argmax(sums))
                if sums[top] > best_sum + 1e-12:
                    best_sum, best_values = float(sums[top]), candidates[top]
                    improved = True
            if not improved:
                break

    cap = float(k * (d0 - 1))
    if best_sum > cap + tol * max(1.0, cap):
        raise TheoremViolationError("half-band bound on the angle scan", best_sum, cap)
    theta = ThetaAssignment(g, rows_for(np.asarray(best_values)[None, :])[0])
    return FluxPhaseScan(theta, best_sum, exhaustive, evaluations, cap)
