"""Test vectors on ordered vertex pairs and the weights that average them.

Orient ``K_n`` so that it extends a ``d``-regular host ``H``, which in turn
extends ``G``. Every ordered pair ``uv`` gets a test vector ``b_uv`` and a
weight: 1 on pairs of ``H``, ``a`` on pairs of the complement of ``H`` in
``K_n`` and ``b`` on diagonal pairs. With these weights
``sum_Z w |<f, b_uv>|^2 = 2 C ||f||^2`` where ``C = d + a (n - 1 - d) + b / 2``.
"""
import logging
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from maglap.exceptions import (
    ConsistencyError,
    DisconnectedGraphError,
    GraphConstructionError,
)
from maglap.graph import (
    DirectedGraph,
    complement_in_complete,
    is_connected,
    min_regular_degree,
    orient_complete,
    regular_supergraph,
)
from maglap.avp import AvpInstance, check_sum_bound
from maglap.config import BOUND_TOL
from maglap.linalg import inner
from maglap.operator import (
    ThetaAssignment,
    extend_theta,
    laplacian,
    quadratic_form,
    unit_phase,
    wrap_angle,
)

logger = logging.getLogger(__name__)

Pair = Tuple[int, int]


def opposing_alpha(theta: ThetaAssignment) -> np.ndarray:
    """Angles ``alpha = wrap(pi - theta)`` so that ``cos(alpha + theta) = -1`` on every edge.

    Examples
    --------
    >>> from maglap.generators import cycle_graph
    >>> from maglap.operator import constant_theta
    >>> opposing_alpha(constant_theta(cycle_graph(4), 0.0)).tolist() == [np.pi] * 4
    True
    """
    return np.asarray(wrap_angle(np.pi - theta.values), dtype=float).reshape(-1)


def check_bound_graph(g: DirectedGraph, operation: str) -> None:
    """Require a connected simple orientation."""
    if not isinstance(g, DirectedGraph):
        raise TypeError(f"g should be a DirectedGraph, got {g}.")
    if not g.is_simple_orientation():
        raise GraphConstructionError(
            f"{operation} requires a simple orientation (no anti-parallel edges)."
        )
    if not is_connected(g):
        raise DisconnectedGraphError(operation)


def contains_oriented(host: DirectedGraph, g: DirectedGraph) -> bool:
    """Whether every directed edge of ``g`` is a directed edge of ``host``."""
    return host.n_vertices == g.n_vertices and all(host.has_edge(u, v) for u, v in g.edges)


class BoundContext:
    """Graph, angles, regular host and weights driving the eigenvalue-sum bounds.

    Parameters
    ----------
    g : DirectedGraph
        A connected simple orientation.
    theta : ThetaAssignment
        Angles keyed to ``g``.
    h : Optional[DirectedGraph], optional
        A regular supergraph of ``g`` containing its edges with the same
        orientation, by default the one found by
        :func:`maglap.graph.min_regular_degree`.
    a : float, optional
        Weight of pairs outside ``H``, by default 0.
    b : float, optional
        Weight of diagonal pairs, by default 0.
    alpha : Optional[Sequence[float]], optional
        Phase of the test vector on every edge of ``g``, by default
        :func:`opposing_alpha`. Edges of ``K_n`` outside ``g`` get phase 0.

    Raises
    ------
    GraphConstructionError
        if ``g`` is not a simple orientation or ``h`` is not a regular
        oriented supergraph of ``g``.
    DisconnectedGraphError
        if ``g`` is not connected.
    ValueError
        if ``a`` or ``b`` is negative.
    """

    def __init__(
        self,
        g: DirectedGraph,
        theta: ThetaAssignment,
        h: Optional[DirectedGraph] = None,
        a: float = 0.0,
        b: float = 0.0,
        alpha: Optional[Sequence[float]] = None,
    ):
        check_bound_graph(g, "BoundContext")
        theta.check_keyed_to(g)
        if a < 0 or b < 0:
            raise ValueError(f"weights a and b should be non-negative, got a={a}, b={b}.")

        if h is None:
            _, h = min_regular_degree(g)
        if not h.is_simple_orientation() or not contains_oriented(h, g):
            raise GraphConstructionError(
                "h should be a simple orientation containing every edge of g "
                "with the same direction."
            )
        degrees = h.degrees
        if g.n_vertices and not np.all(degrees == degrees[0]):
            raise GraphConstructionError(
                f"h should be regular, got degrees {degrees.tolist()}."
            )

        if alpha is None:
            alpha = opposing_alpha(theta)
        alpha = np.asarray(alpha, dtype=float).reshape(-1)
        if alpha.shape[0] != g.n_edges:
            raise ValueError(
                f"alpha should have one angle per edge of g ({g.n_edges}), got {alpha.shape[0]}."
            )

        self.g = g
        self.theta = theta
        self.h = h
        self.a = float(a)
        self.b = float(b)
        self.alpha = alpha
        self.kn = orient_complete(h)
        self.hc = complement_in_complete(h, self.kn)
        self.d = int(degrees[0]) if g.n_vertices else 0

        kn_alpha = np.zeros(self.kn.n_edges)
        for idx, (u, v) in enumerate(g.edges):
            kn_alpha[self.kn.edge_index(u, v)] = alpha[idx]
        self._kn_alpha = kn_alpha
        self._laplacian = laplacian(g, theta)

    @property
    def n(self) -> int:
        return self.g.n_vertices

    @property
    def laplacian(self) -> np.ndarray:
        return self._laplacian

    # -------------------------------------------------------------------------
    # ------------------------------ Pair space -------------------------------
    # -------------------------------------------------------------------------

    def pairs(self) -> List[Pair]:
        """All ordered pairs ``(u, v)``, diagonal included, row by row."""
        return [(u, v) for u in range(self.n) for v in range(self.n)]

    def edge_pairs(self) -> List[Pair]:
        """The directed edges of ``g`` as pairs."""
        return list(self.g.edges)

    def _check_pair(self, u: int, v: int) -> None:
        if not (0 <= u < self.n and 0 <= v < self.n):
            raise ValueError(f"pair ({u}, {v}) names a vertex outside 0..{self.n - 1}.")

    def test_vector(self, u: int, v: int) -> np.ndarray:
        """``b_uv``: ``v - exp(i alpha(uv)) u`` along an edge ``uv`` of the oriented
        ``K_n``, ``v + exp(-i alpha(vu)) u`` against one, and ``u`` on the diagonal.

        Vertices stand for their indicator vectors.
        """
        self._check_pair(u, v)
        b = np.zeros(self.n, dtype=complex)
        if u == v:
            b[u] = 1.0
            return b
        b[v] = 1.0
        forward = self.kn.edge_index(u, v)
        if forward is not None:
            b[u] = -unit_phase(self._kn_alpha[forward])
        else:
            b[u] = unit_phase(-self._kn_alpha[self.kn.edge_index(v, u)])
        return b

    def pair_weight(self, u: int, v: int) -> float:
        """1 on pairs of ``H``, ``a`` on pairs of its complement, ``b`` on the diagonal."""
        self._check_pair(u, v)
        if u == v:
            return self.b
        if self.h.has_edge(u, v) or self.h.has_edge(v, u):
            return 1.0
        return self.a

    def normalization_constant(self) -> float:
        """``C(a, b, d) = d + a (n - 1 - d) + b / 2``."""
        return self.d + self.a * (self.n - 1 - self.d) + self.b / 2

    # -------------------------------------------------------------------------
    # ---------------------------- Energy and mass ----------------------------
    # -------------------------------------------------------------------------

    def _pair_energy(self, u: int, v: int) -> float:
        degrees = self.g.degrees
        if u == v:
            return float(degrees[u])
        forward = self.g.edge_index(u, v)
        if forward is not None:
            return float(
                degrees[u] + degrees[v] + 2 * np.cos(self.alpha[forward] + self.theta.values[forward])
            )
        backward = self.g.edge_index(v, u)
        if backward is not None:
            return float(
                degrees[u] + degrees[v] - 2 * np.cos(self.alpha[backward] + self.theta.values[backward])
            )
        return float(degrees[u] + degrees[v])

    def energy_sum(self, z0: Iterable[Pair]) -> float:
        """``sum_{Z0} w(uv) <b_uv, L b_uv>`` from the closed-form pair energies.

        Along an edge of ``g`` the energy is ``d_u + d_v + 2 cos(alpha + theta)``
        (minus against it), between non-adjacent vertices ``d_u + d_v`` and on
        the diagonal ``d_u``.
        """
        total = 0.0
        for u, v in z0:
            self._check_pair(u, v)
            total += self.pair_weight(u, v) * self._pair_energy(u, v)
        return total

    def energy_sum_direct(self, z0: Iterable[Pair]) -> float:
        """Same sum as :meth:`energy_sum`, through the quadratic form of the Laplacian."""
        return float(
            sum(
                self.pair_weight(u, v) * quadratic_form(self.g, self.theta, self.test_vector(u, v))
                for u, v in z0
            )
        )

    def mass_sum(self, z0: Iterable[Pair]) -> float:
        """``sum_{Z0} w(uv) ||b_uv||^2`` by counting: 2 per pair of ``H``, ``2a`` per
        pair of its complement and ``b`` per diagonal pair."""
        in_h = in_hc = diagonal = 0
        for u, v in z0:
            self._check_pair(u, v)
            if u == v:
                diagonal += 1
            elif self.h.has_edge(u, v) or self.h.has_edge(v, u):
                in_h += 1
            else:
                in_hc += 1
        return 2 * in_h + 2 * self.a * in_hc + self.b * diagonal

    def mass_sum_direct(self, z0: Iterable[Pair]) -> float:
        return float(
            sum(
                self.pair_weight(u, v) * np.sum(np.abs(self.test_vector(u, v)) ** 2)
                for u, v in z0
            )
        )

    def weighted_overlap(self, f) -> float:
        """``sum_Z w(uv) |<f, b_uv>|^2``, equal to ``2 C ||f||^2``."""
        f = np.asarray(f, dtype=complex)
        return float(
            sum(
                self.pair_weight(u, v) * abs(inner(f, self.test_vector(u, v))) ** 2
                for u, v in self.pairs()
            )
        )

    def to_avp_instance(self, z0: Optional[Iterable[Pair]] = None) -> AvpInstance:
        """The weighted pair space as an instance of the averaged principle.

        Points are all ordered pairs; ``Z0`` defaults to the edges of ``g``.
        """
        z0 = set(self.edge_pairs() if z0 is None else (tuple(p) for p in z0))
        pairs = self.pairs()
        weights = [self.pair_weight(u, v) for u, v in pairs]
        vectors = np.array([self.test_vector(u, v) for u, v in pairs])
        mask = [pair in z0 for pair in pairs]
        return AvpInstance(self._laplacian, weights, vectors, mask)

    def certify(
        self, k: int, z0: Optional[Iterable[Pair]] = None, tol: float = BOUND_TOL
    ) -> Dict[str, Any]:
        """Bound ``sum_{j<k} lambda_j`` through the averaged principle.

        When ``2 k C <= sum_{Z0} w ||b_uv||^2`` the sum of the ``k`` lowest
        eigenvalues is at most ``energy_sum(Z0) / (2 C)``. The eigenvalue sum
        is read back from the averaged instance, whose eigenvector overlaps
        total ``2 C`` per eigenvector.

        Raises
        ------
        ConsistencyError
            if the closed-form energy differs from the one of the instance.
        """
        z0 = list(self.edge_pairs() if z0 is None else (tuple(p) for p in z0))
        c = self.normalization_constant()
        if c <= 0:
            raise ValueError("the normalization constant should be positive.")
        energy = self.energy_sum(z0)
        mass = self.mass_sum(z0)
        report = check_sum_bound(self.to_avp_instance(z0), k, tol=tol, raise_on_violation=False)
        if abs(report.sum_bound_rhs - energy) > 1e-9 * max(1.0, abs(energy)):
            raise ConsistencyError(
                f"closed-form energy {energy!r} differs from the averaged "
                f"instance value {report.sum_bound_rhs!r}."
            )
        return {
            "k": k,
            "C": c,
            "energy": energy,
            "mass": mass,
            "admissible": 2 * k * c <= mass + tol * max(1.0, mass),
            "condition_holds": report.condition_holds,
            "eigenvalue_sum": report.sum_bound_lhs / (2 * c),
            "bound": energy / (2 * c),
            "holds": report.holds,
        }

    def host_theta(self) -> ThetaAssignment:
        """``theta`` extended by zero to the host."""
        return extend_theta(self.theta, self.h)

    def __repr__(self) -> str:
        return (
            f"<BoundContext n={self.n} m={self.g.n_edges} d={self.d} "
            f"a={self.a} b={self.b}>"
        )


def resolve_host(
    g: DirectedGraph, d0: Optional[int] = None, h: Optional[DirectedGraph] = None
) -> Tuple[int, DirectedGraph]:
    """Degree and witness of the regular host of ``g``.

    An explicit ``h`` wins, then a requested degree ``d0`` completed with
    :func:`maglap.graph.regular_supergraph`, then the smallest degree found by
    :func:`maglap.graph.min_regular_degree`.
    """
    if h is not None:
        degrees = h.degrees
        if not contains_oriented(h, g) or not np.all(degrees == degrees[0]):
            raise GraphConstructionError(
                "h should be a regular supergraph containing every edge of g "
                "with the same direction."
            )
        if d0 is not None and d0 != int(degrees[0]):
            raise ValueError(f"d0={d0} disagrees with the degree {int(degrees[0])} of h.")
        return int(degrees[0]), h
    if d0 is not None:
        return int(d0), regular_supergraph(g, int(d0))
    return min_regular_degree(g)
