"""Shared numerical tolerances and search budgets.

Every public function that accepts a tolerance or a budget takes it as a
keyword argument whose default is one of the constants below.
"""
import logging
import os
from typing import Optional

from maglap.exceptions import MaglapError

logger = logging.getLogger(__name__)

# Hermitian check: ||M - M*||_max <= HERMITIAN_TOL * max(1, ||M||_max)
HERMITIAN_TOL = 1e-12

# Jacobi stops when the off-diagonal Frobenius norm <= EIGH_TOL * max(1, ||M||_F)
EIGH_TOL = 1e-12
EIGH_MAX_SWEEPS = 100

ORTHONORMAL_TOL = 1e-10
UNIMODULAR_TOL = 1e-12

# circle distance used for every comparison of angles and fluxes
ANGLE_TOL = 1e-9

# an eigenvalue is "zero" when <= ZERO_EIGENVALUE_RTOL * max(1, lambda_max)
ZERO_EIGENVALUE_RTOL = 1e-8

WITNESS_TOL = 1e-6
BOUND_TOL = 1e-8
# a bound is reported sharp when |bound - mean| <= SHARP_TOL
SHARP_TOL = 1e-9

# angles read from graph files may overshoot [-pi, pi] by this much
THETA_INPUT_SLACK = 1e-12

ENUMERATION_BUDGET = 20
COLORING_BUDGET = 12
SUPERGRAPH_BUDGET = 200000
RANDOM_GRAPH_RETRIES = 100

GRID_STEPS = 8
GRID_BUDGET = 10 ** 6
COORDINATE_ASCENT_PASSES = 50

BUDGET_ENV_VAR = "MAGLAP_BUDGET"


def get_enumeration_budget(budget: Optional[int] = None) -> int:
    """Resolve the orientation enumeration budget (maximum edge count).

    An explicit ``budget`` wins over the ``MAGLAP_BUDGET`` environment
    variable, which wins over :data:`ENUMERATION_BUDGET`.

    Parameters
    ----------
    budget : Optional[int], optional
        Explicit budget, by default None.

    Returns
    -------
    int
        The budget in number of edges.

    Raises
    ------
    MaglapError
        if the environment variable is not a non-negative integer.

    Examples
    --------
    >>> get_enumeration_budget(7)
    7
    """
    if budget is not None:
        if not isinstance(budget, int) or budget < 0:
            raise ValueError(f"budget should be a non-negative int, got {budget}.")
        return budget

    raw = os.environ.get(BUDGET_ENV_VAR)
    if raw is None or raw.strip() == "":
        return ENUMERATION_BUDGET

    try:
        value = int(raw)
    except ValueError:
        raise MaglapError(
            f"{BUDGET_ENV_VAR} should be a non-negative integer, got {raw!r}."
        )
    if value < 0:
        raise MaglapError(
            f"{BUDGET_ENV_VAR} should be a non-negative integer, got {raw!r}."
        )
    logger.info("enumeration budget overridden by %s=%d", BUDGET_ENV_VAR, value)
    return value
