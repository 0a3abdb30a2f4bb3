"""Randomised campaigns checking the bounds and the colouring tests.

Every runner draws its trials from ``seed + i`` for trial ``i`` so that a
single failing row can be replayed on its own, and returns one DataFrame row
per (trial, k) or per trial.
"""
import logging
from typing import Any, Dict, List

import numpy as np
import pandas as pd
from sklearn.utils import check_random_state
from tqdm import tqdm

from maglap.bounds import half_band_check, zagreb_bound_check, zagreb_bound_via_avp
from maglap.coloring import (
    bipartite_oracle,
    is_bipartite_spectral,
    is_tripartite_spectral,
    three_color_oracle,
)
from maglap.config import BOUND_TOL
from maglap.generators import (
    complete_graph,
    random_graph,
    random_regular,
    random_subgraph,
)
from maglap.graph import min_regular_degree
from maglap.operator import random_theta

logger = logging.getLogger(__name__)

SCAN_COLUMNS = ["seed", "n", "m", "d0", "k", "mean", "bound", "slack"]


def _check_campaign_args(trials: int, max_n: int, minimum_n: int, seed: int) -> None:
    if isinstance(trials, bool) or not isinstance(trials, (int, np.integer)) or trials < 0:
        raise TypeError(f"trials should be a non-negative int, got {trials}.")
    if isinstance(max_n, bool) or not isinstance(max_n, (int, np.integer)):
        raise TypeError(f"max_n should be an int, got {max_n}.")
    if max_n < minimum_n:
        raise ValueError(f"max_n should be at least {minimum_n}, got {max_n}.")
    if isinstance(seed, bool) or not isinstance(seed, (int, np.integer)) or seed < 0:
        raise TypeError(f"seed should be a non-negative int, got {seed}.")


def _frame(rows: List[Dict[str, Any]], columns: List[str]) -> pd.DataFrame:
    return pd.DataFrame(rows, columns=columns)


# -----------------------------------------------------------------------------
# ------------------------------- Bound campaigns -----------------------------
# -----------------------------------------------------------------------------


def run_zagreb_campaign(
    trials: int = 200,
    max_n: int = 12,
    seed: int = 0,
    all_k: bool = True,
    tol: float = BOUND_TOL,
    verbose: bool = False,
) -> pd.DataFrame:
    """Check the Zagreb bound on random connected graphs with random angles.

    Each trial draws a connected random orientation on ``3..max_n`` vertices,
    uniform angles and the smallest regular host. Every admissible ``k`` is
    checked twice: by the packaged bound and by the averaged-principle route,
    and both verdicts are compared.

    Parameters
    ----------
    trials : int, optional
        Number of random graphs, by default 200.
    max_n : int, optional
        Largest vertex count, by default 12.
    seed : int, optional
        Trial ``i`` uses seed ``seed + i``, by default 0.
    all_k : bool, optional
        Check every admissible ``k`` rather than one drawn at random, by
        default True.
    tol : float, optional
        Tolerance of the bound comparison, by default BOUND_TOL.
    verbose : bool, optional
        Show a progress bar, by default False.

    Returns
    -------
    pd.DataFrame
        Columns ``seed, n, m, d0, k, mean, bound, slack, holds, avp_holds,
        agree``, one row per checked ``k``.
    """
    _check_campaign_args(trials, max_n, 3, seed)
    rows: List[Dict[str, Any]] = []

    for i in tqdm(range(trials), disable=not verbose, desc="zagreb"):
        trial_seed = seed + i
        rs = check_random_state(trial_seed)
        n = int(rs.randint(3, max_n + 1))
        g = random_graph(n, float(rs.uniform(0.3, 0.9)), seed=rs)
        theta = random_theta(g, seed=rs)
        d0, h = min_regular_degree(g)

        k_max = g.n_edges // d0
        ks = range(1, k_max + 1) if all_k else [int(rs.randint(1, k_max + 1))]
        for k in ks:
            report = zagreb_bound_check(g, theta, k, h=h, tol=tol)
            via_avp = zagreb_bound_via_avp(g, theta, k, h=h, tol=tol)
            agree = report["admissible"] == via_avp["admissible"] and bool(
                np.isclose(report["bound"], via_avp["bound"], rtol=0, atol=1e-9)
                and np.isclose(report["mean"], via_avp["mean"], rtol=0, atol=1e-9)
            )
            rows.append(
                {
                    "seed": trial_seed,
                    "n": n,
                    "m": g.n_edges,
                    "d0": d0,
                    "k": k,
                    "mean": report["mean"],
                    "bound": report["bound"],
                    "slack": report["slack"],
                    "holds": report["holds"],
                    "avp_holds": via_avp["holds"],
                    "agree": agree,
                }
            )
            if not (report["holds"] and via_avp["holds"] and agree):
                logger.warning("zagreb campaign: trial seed %d fails at k=%d", trial_seed, k)

    logger.info("zagreb campaign: %d trials, %d checks", trials, len(rows))
    return _frame(rows, SCAN_COLUMNS + ["holds", "avp_holds", "agree"])


def run_half_band_campaign(
    trials: int = 100,
    max_n: int = 14,
    max_d: int = 6,
    seed: int = 0,
    all_k: bool = True,
    tol: float = BOUND_TOL,
    verbose: bool = False,
) -> pd.DataFrame:
    """Check the half-band bound on random subgraphs of random regular hosts.

    Each trial draws ``n`` in ``4..max_n``, a degree ``d`` in
    ``2..min(max_d, n-1)`` with ``n d`` even, a circulant ``d``-regular host,
    a connected spanning subgraph of it and uniform angles.

    Returns
    -------
    pd.DataFrame
        Columns ``seed, n, m, d0, k, mean, bound, slack, host_mean, holds``,
        where ``d0`` is the host degree ``d``.
    """
    _check_campaign_args(trials, max_n, 4, seed)
    if max_d < 2:
        raise ValueError(f"max_d should be at least 2, got {max_d}.")
    rows: List[Dict[str, Any]] = []

    for i in tqdm(range(trials), disable=not verbose, desc="half-band"):
        trial_seed = seed + i
        rs = check_random_state(trial_seed)
        n = int(rs.randint(4, max_n + 1))
        degrees = [d for d in range(2, min(max_d, n - 1) + 1) if (n * d) % 2 == 0]
        d = int(rs.choice(degrees))
        host = random_regular(n, d, seed=rs)
        g = random_subgraph(host, float(rs.uniform(0.2, 1.0)), seed=rs)
        theta = random_theta(g, seed=rs)

        ks = range(1, n // 2 + 1) if all_k else [int(rs.randint(1, n // 2 + 1))]
        for k in ks:
            report = half_band_check(g, theta, d, k, host=host, tol=tol)
            rows.append(
                {
                    "seed": trial_seed,
                    "n": n,
                    "m": g.n_edges,
                    "d0": d,
                    "k": k,
                    "mean": report["mean"],
                    "bound": report["bound"],
                    "slack": report["slack"],
                    "host_mean": report["host_mean"],
                    "holds": report["holds"],
                }
            )
            if not report["holds"]:
                logger.warning("half-band campaign: trial seed %d fails at k=%d", trial_seed, k)

    logger.info("half-band campaign: %d trials, %d checks", trials, len(rows))
    return _frame(rows, SCAN_COLUMNS + ["host_mean", "holds"])


# -----------------------------------------------------------------------------
# ------------------------------ Colouring campaign ---------------------------
# -----------------------------------------------------------------------------


def run_coloring_campaign(
    trials: int = 500,
    max_n: int = 12,
    max_edges: int = 18,
    seed: int = 0,
    verbose: bool = False,
) -> pd.DataFrame:
    """Compare the spectral colouring tests with the combinatorial oracles.

    Each trial keeps a random spanning tree of the complete graph on
    ``2..max_n`` vertices plus random extra edges, redrawing until at most
    ``max_edges`` edges remain so that the orientation scan of the tripartite
    test stays small.

    Returns
    -------
    pd.DataFrame
        Columns ``seed, n, m, bipartite, bipartite_oracle, tripartite,
        tripartite_oracle, witnesses_proper, agree``.
    """
    _check_campaign_args(trials, max_n, 2, seed)
    if max_edges < 1:
        raise ValueError(f"max_edges should be positive, got {max_edges}.")
    rows: List[Dict[str, Any]] = []

    for i in tqdm(range(trials), disable=not verbose, desc="colouring"):
        trial_seed = seed + i
        rs = check_random_state(trial_seed)
        n = int(rs.randint(2, min(max_n, max_edges + 1) + 1))
        spare = n * (n - 1) // 2 - (n - 1)
        room = max_edges - (n - 1)
        keep = 1.0 if spare == 0 else float(rs.uniform(0, min(1.0, room / spare)))
        g = random_subgraph(complete_graph(n), keep, seed=rs)
        while g.n_edges > max_edges:
            g = random_subgraph(complete_graph(n), keep, seed=rs)

        bipartite, two_colouring = is_bipartite_spectral(g)
        bipartite_expected, _ = bipartite_oracle(g)
        tripartite, three_colouring = is_tripartite_spectral(g, budget=max_edges)
        tripartite_expected, _ = three_color_oracle(g, budget=max(n, 1))
        proper = all(
            w.is_proper(g) for w in (two_colouring, three_colouring) if w is not None
        )
        agree = bipartite == bipartite_expected and tripartite == tripartite_expected
        rows.append(
            {
                "seed": trial_seed,
                "n": n,
                "m": g.n_edges,
                "bipartite": bipartite,
                "bipartite_oracle": bipartite_expected,
                "tripartite": tripartite,
                "tripartite_oracle": tripartite_expected,
                "witnesses_proper": proper,
                "agree": agree,
            }
        )
        if not (agree and proper):
            logger.warning("colouring campaign: trial seed %d disagrees", trial_seed)

    logger.info("colouring campaign: %d trials", trials)
    return _frame(
        rows,
        [
            "seed",
            "n",
            "m",
            "bipartite",
            "bipartite_oracle",
            "tripartite",
            "tripartite_oracle",
            "witnesses_proper",
            "agree",
        ],
    )
