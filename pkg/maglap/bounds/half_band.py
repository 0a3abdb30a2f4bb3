"""Half-band bound for subgraphs of regular graphs.

If ``G`` orients a connected subgraph of a ``d``-regular graph on ``n``
vertices, the mean of the ``k`` lowest eigenvalues is at most ``d - 1`` for
every integer ``k <= n / 2``.
"""
import logging
from typing import Any, Dict, Optional

from maglap.bounds.base_bound import BaseBound
from maglap.config import BOUND_TOL, SHARP_TOL
from maglap.exceptions import GraphConstructionError, TheoremViolationError
from maglap.graph import DirectedGraph, regular_supergraph
from maglap.operator import ThetaAssignment, extend_theta

logger = logging.getLogger(__name__)


def align_host(host: DirectedGraph, g: DirectedGraph) -> DirectedGraph:
    """Re-orient ``host`` to agree with ``g``: the edges of ``g`` first, then
    the remaining host edges in their own orientation."""
    view = g.undirected_view()
    rest = [(u, v) for u, v in host.edges if not view.adjacent(u, v)]
    return DirectedGraph(host.n_vertices, list(g.edges) + rest)


class HalfBandBound(BaseBound):
    """The ``d - 1`` bound on the mean of the lower half of the spectrum.

    Besides the mean on ``G`` the check evaluates the same mean on the host,
    with the angles extended by zero; adding edges never lowers eigenvalue
    sums, so the host mean sits between the two.
    """

    bound_name = "half-band eigenvalue-mean bound"
    bound_short_name = "halfband"

    def _check_host(self, g: DirectedGraph, d: int, host: Optional[DirectedGraph]) -> DirectedGraph:
        if host is None:
            return regular_supergraph(g, d)
        if host.n_vertices != g.n_vertices:
            raise GraphConstructionError(
                f"host has {host.n_vertices} vertices, g has {g.n_vertices}."
            )
        view = host.undirected_view()
        if not host.is_simple_orientation() or not view.is_regular(d):
            raise GraphConstructionError(f"host should be a loopless {d}-regular graph.")
        if not view.contains(g.undirected_view()):
            raise GraphConstructionError("host should contain every edge of g.")
        return host

    def run_check(
        self,
        g: DirectedGraph,
        theta: ThetaAssignment,
        k: int,
        d: int,
        host: Optional[DirectedGraph] = None,
        tol: float = BOUND_TOL,
        raise_on_violation: bool = False,
    ) -> Dict[str, Any]:
        """Check ``mean(lambda_0..lambda_{k-1}) <= d - 1``.

        Parameters
        ----------
        g : DirectedGraph
            A connected simple orientation.
        theta : ThetaAssignment
            Angles keyed to ``g``; None stands for zero angles.
        k : int
            Number of eigenvalues averaged; admissible when ``2 k <= n``.
        d : int
            Degree of the regular host.
        host : Optional[DirectedGraph], optional
            The ``d``-regular host, by default a completion of ``g`` by
            :func:`maglap.graph.regular_supergraph`.
        tol : float, optional
            Absolute tolerance, by default BOUND_TOL.
        raise_on_violation : bool, optional
            Raise instead of reporting ``holds=False``, by default False.

        Returns
        -------
        Dict[str, Any]
            ``n``, ``m``, ``d``, ``k``, ``admissible``, ``mean``, ``host_mean``,
            ``bound``, ``slack``, ``sharp`` and ``holds``.

        Raises
        ------
        GraphConstructionError
            if the host is not ``d``-regular or does not contain ``g``.
        TheoremViolationError
            if the bound or the host comparison fails and
            ``raise_on_violation`` is set.
        """
        theta = self._check_input(g, theta, k)
        host = self._check_host(g, d, host)
        n = g.n_vertices
        admissible = 2 * k <= n
        bound = float(d - 1)

        mean = self._lowest_mean(g, theta, k)
        aligned = align_host(host, g)
        host_mean = self._lowest_mean(aligned, extend_theta(theta, aligned), k)

        slack = None if mean is None else bound - mean
        holds = True
        if admissible:
            holds = mean <= bound + tol and mean <= host_mean + tol and host_mean <= bound + tol
        if not holds:
            logger.warning(
                "%s violated: mean=%r host_mean=%r bound=%r",
                self.bound_short_name, mean, host_mean, bound,
            )
            if raise_on_violation:
                raise TheoremViolationError(self.bound_name, max(mean, host_mean), bound)

        return {
            "bound_name": self.bound_name,
            "n": n,
            "m": g.n_edges,
            "d": d,
            "k": k,
            "admissible": admissible,
            "mean": mean,
            "host_mean": host_mean,
            "bound": bound,
            "slack": slack,
            "sharp": bool(admissible and abs(slack) <= SHARP_TOL),
            "holds": bool(holds),
        }


def half_band_check(
    g: DirectedGraph,
    theta: ThetaAssignment,
    d: int,
    k: int,
    host: Optional[DirectedGraph] = None,
    tol: float = BOUND_TOL,
    raise_on_violation: bool = False,
) -> Dict[str, Any]:
    """Functional form of :meth:`HalfBandBound.run_check`.

    Examples
    --------
    >>> from maglap.generators import petersen_graph
    >>> report = half_band_check(petersen_graph(), None, d=3, k=5)
    >>> round(report["mean"], 9), report["bound"], report["holds"]
    (1.6, 2.0, True)
    """
    return HalfBandBound().run_check(
        g, theta, k, d, host=host, tol=tol, raise_on_violation=raise_on_violation
    )
