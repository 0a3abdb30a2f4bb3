"""Mean of the lowest eigenvalues against the first Zagreb index.

For a connected simple orientation ``G`` with ``m`` edges inside a
``d0``-regular host, every integer ``k <= m / d0`` satisfies::

    (1 / k) sum_{j<k} lambda_j  <=  Z_G / (2 m) - 1  =  Tr(D^2) / Tr(D) - 1

whatever the angles.
"""
import logging
from typing import Any, Dict, Optional

import numpy as np

from maglap.bounds.base_bound import BaseBound
from maglap.bounds.context import BoundContext, check_bound_graph, resolve_host
from maglap.config import BOUND_TOL, SHARP_TOL
from maglap.exceptions import ConsistencyError, TheoremViolationError
from maglap.graph import DirectedGraph, zagreb_index
from maglap.linalg import trace
from maglap.operator import ThetaAssignment, as_theta, degree_matrix

logger = logging.getLogger(__name__)


class ZagrebBound(BaseBound):
    """Eigenvalue-mean bound by the first Zagreb index.

    The bound ``Z_G / (2 m) - 1`` does not depend on the angles; it applies to
    every ``k <= m / d0`` where ``d0`` is the degree of a regular supergraph
    of ``G`` on the same vertices. At ``k = 2`` on the 4-cycle and at
    ``k = 1`` on the triangle with constant angle pi it is attained.
    """

    bound_name = "Zagreb index eigenvalue-mean bound"
    bound_short_name = "zagreb"

    def run_check(
        self,
        g: DirectedGraph,
        theta: ThetaAssignment,
        k: int,
        d0: Optional[int] = None,
        h: Optional[DirectedGraph] = None,
        tol: float = BOUND_TOL,
        raise_on_violation: bool = False,
    ) -> Dict[str, Any]:
        """Check the bound for the ``k`` lowest eigenvalues.

        Parameters
        ----------
        g : DirectedGraph
            A connected simple orientation with at least one edge.
        theta : ThetaAssignment
            Angles keyed to ``g``; None stands for zero angles.
        k : int
            Number of eigenvalues averaged.
        d0 : Optional[int], optional
            Degree of the regular host, by default the smallest one admitting
            a regular supergraph.
        h : Optional[DirectedGraph], optional
            An explicit regular host, by default None.
        tol : float, optional
            Absolute tolerance of the comparison, by default BOUND_TOL.
        raise_on_violation : bool, optional
            Raise instead of reporting ``holds=False``, by default False.

        Returns
        -------
        Dict[str, Any]
            ``n``, ``m``, ``d0``, ``k``, ``admissible``, ``mean``, ``bound``,
            ``trace_form``, ``slack``, ``sharp`` and ``holds``. An inadmissible
            ``k`` is reported without any comparison.

        Raises
        ------
        ConsistencyError
            if the Zagreb form and the trace form of the bound differ.
        TheoremViolationError
            if the bound fails and ``raise_on_violation`` is set.
        """
        theta = self._check_input(g, theta, k)
        if g.n_edges == 0:
            raise ValueError("the Zagreb bound needs at least one edge.")
        d0, h = resolve_host(g, d0=d0, h=h)

        m = g.n_edges
        admissible = k * d0 <= m
        bound = zagreb_index(g) / (2 * m) - 1
        d = degree_matrix(g)
        trace_form = trace(d @ d) / trace(d) - 1
        if abs(bound - trace_form) > 1e-12 * max(1.0, abs(bound)):
            raise ConsistencyError(
                f"Zagreb form {bound!r} and trace form {trace_form!r} of the bound differ."
            )

        mean = self._lowest_mean(g, theta, k)
        slack = None if mean is None else bound - mean
        holds = (not admissible) or mean <= bound + tol
        if not holds:
            logger.warning("%s violated: mean=%r bound=%r", self.bound_short_name, mean, bound)
            if raise_on_violation:
                raise TheoremViolationError(self.bound_name, mean, bound)

        return {
            "bound_name": self.bound_name,
            "n": g.n_vertices,
            "m": m,
            "d0": d0,
            "k": k,
            "admissible": admissible,
            "mean": mean,
            "bound": bound,
            "trace_form": trace_form,
            "slack": slack,
            "sharp": bool(admissible and abs(slack) <= SHARP_TOL),
            "holds": bool(holds),
        }


def zagreb_bound_check(
    g: DirectedGraph,
    theta: ThetaAssignment,
    k: int,
    d0: Optional[int] = None,
    h: Optional[DirectedGraph] = None,
    tol: float = BOUND_TOL,
    raise_on_violation: bool = False,
) -> Dict[str, Any]:
    """Functional form of :meth:`ZagrebBound.run_check`.

    Examples
    --------
    >>> from maglap.generators import cycle_graph
    >>> from maglap.operator import constant_theta
    >>> c4 = cycle_graph(4)
    >>> report = zagreb_bound_check(c4, constant_theta(c4, 0.0), 2)
    >>> report["admissible"], report["sharp"], round(report["bound"], 12)
    (True, True, 1.0)
    """
    return ZagrebBound().run_check(
        g, theta, k, d0=d0, h=h, tol=tol, raise_on_violation=raise_on_violation
    )


def zagreb_bound_via_avp(
    g: DirectedGraph,
    theta: ThetaAssignment,
    k: int,
    d0: Optional[int] = None,
    h: Optional[DirectedGraph] = None,
    tol: float = BOUND_TOL,
) -> Dict[str, Any]:
    """Derive the Zagreb bound from the averaged principle on the pair space.

    Takes ``Z0`` the edges of ``G``, opposing test phases, ``a = 0`` and
    ``b = 2 (m / k - d0)``, so that ``C = m / k`` and the averaged hypothesis
    holds with equality. The certified bound is ``energy / (2 C k)``, which
    equals ``Z_G / (2 m) - 1``.

    Returns
    -------
    Dict[str, Any]
        The certification of :meth:`BoundContext.certify` plus ``n``, ``m``,
        ``d0``, ``a``, ``b``, ``admissible``, ``mean`` and ``bound`` as means.
    """
    check_bound_graph(g, "zagreb_bound_via_avp")
    theta = as_theta(g, theta)
    if isinstance(k, bool) or not isinstance(k, (int, np.integer)) or k < 1:
        raise ValueError(f"k should be a positive int, got {k}.")
    d0, h = resolve_host(g, d0=d0, h=h)
    m = g.n_edges
    report: Dict[str, Any] = {"n": g.n_vertices, "m": m, "d0": d0, "k": k}
    if k * d0 > m or k >= g.n_vertices:
        report.update(admissible=False, mean=None, bound=None, holds=True)
        return report

    b = 2 * (m / k - d0)
    ctx = BoundContext(g, theta, h=h, a=0.0, b=b)
    certificate = ctx.certify(k, tol=tol)
    expected_energy = zagreb_index(g) - 2 * m
    if abs(certificate["energy"] - expected_energy) > 1e-9 * max(1.0, expected_energy):
        raise ConsistencyError(
            f"edge energy {certificate['energy']!r} should equal Z_G - 2m = {expected_energy}."
        )
    report.update(certificate)
    report.update(
        a=0.0,
        b=b,
        admissible=True,
        mean=certificate["eigenvalue_sum"] / k,
        bound=certificate["bound"] / k,
    )
    return report
