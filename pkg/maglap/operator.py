"""Theta assignments and the magnetic Laplacian.

For a directed graph with edge angles ``theta`` the magnetic Laplacian is
``D - A_theta`` where ``D`` counts incident edges and
``A[s, t] = exp(-i theta)``, ``A[t, s] = exp(i theta)`` for every edge
``s -> t``. It factors as ``d_theta d_theta*`` through the incidence matrix
and its quadratic form is ``sum |f(t) - exp(i theta) f(s)|**2``.
"""
import logging
from typing import Sequence, Tuple, Union

import numpy as np
from sklearn.utils import check_random_state

from maglap.config import ANGLE_TOL, UNIMODULAR_TOL
from maglap.exceptions import (
    AntisymmetryError,
    GraphConstructionError,
    NotUnimodularError,
    ThetaMismatchError,
)
from maglap.graph import DirectedGraph

logger = logging.getLogger(__name__)


# -----------------------------------------------------------------------------
# ---------------------------------- Angles -----------------------------------
# -----------------------------------------------------------------------------


def wrap_angle(x):
    """Canonical representative of an angle in ``(-pi, pi]``.

    Examples
    --------
    >>> float(wrap_angle(-np.pi)) == np.pi
    True
    >>> float(wrap_angle(3 * np.pi)) == np.pi
    True
    """
    w = np.pi - np.mod(np.pi - np.asarray(x, dtype=float), 2 * np.pi)
    w = np.where(w <= -np.pi, np.pi, w)
    return w if w.ndim else float(w)


def circle_distance(x, y):
    """Distance on the circle, ``|wrap(x - y)|``."""
    return np.abs(wrap_angle(np.asarray(x, dtype=float) - np.asarray(y, dtype=float)))


def unit_phase(angle):
    """``exp(i angle)`` computed from its cosine and sine."""
    angle = np.asarray(angle, dtype=float)
    return np.cos(angle) + 1j * np.sin(angle)


# -----------------------------------------------------------------------------
# ---------------------------- Theta assignments ------------------------------
# -----------------------------------------------------------------------------


class ThetaAssignment:
    """Edge angles of a directed graph, canonical in ``(-pi, pi]``.

    Parameters
    ----------
    graph : DirectedGraph
        The graph the angles are keyed to.
    values : Sequence[float]
        One angle per edge, in edge order.

    Raises
    ------
    ThetaMismatchError
        if the number of values differs from the number of edges.
    AntisymmetryError
        if an anti-parallel pair ``uv``, ``vu`` has ``theta(uv) != -theta(vu)``.
    """

    def __init__(self, graph: DirectedGraph, values: Sequence[float]):
        if not isinstance(graph, DirectedGraph):
            raise TypeError(f"graph should be a DirectedGraph, got {graph}.")
        values = np.asarray(values, dtype=float).reshape(-1)
        if values.shape[0] != graph.n_edges:
            raise ThetaMismatchError(
                f"theta has {values.shape[0]} values but the graph has "
                f"{graph.n_edges} edges."
            )
        if not np.all(np.isfinite(values)):
            raise ValueError("theta values should be finite.")
        values = np.asarray(wrap_angle(values), dtype=float).reshape(-1)

        for idx, (u, v) in enumerate(graph.edges):
            back = graph.edge_index(v, u)
            if back is not None and back > idx:
                if circle_distance(values[idx], -values[back]) > ANGLE_TOL:
                    raise AntisymmetryError(
                        f"theta({u}{v}) = {values[idx]} and theta({v}{u}) = "
                        f"{values[back]} should be opposite."
                    )
        values.setflags(write=False)
        self.graph = graph
        self.values = values

    def __len__(self) -> int:
        return self.values.shape[0]

    def __getitem__(self, index: int) -> float:
        return float(self.values[index])

    def along(self, u: int, v: int) -> float:
        """Angle seen when walking ``u -> v``: ``theta(uv)`` or ``-theta(vu)``."""
        idx = self.graph.edge_index(u, v)
        if idx is not None:
            return float(self.values[idx])
        idx = self.graph.edge_index(v, u)
        if idx is not None:
            return float(-self.values[idx])
        raise KeyError(f"{u} and {v} are not adjacent.")

    @property
    def phases(self) -> np.ndarray:
        return unit_phase(self.values)

    def check_keyed_to(self, g: DirectedGraph) -> None:
        if self.graph != g:
            raise ThetaMismatchError(
                "theta is keyed to a different graph than the one supplied."
            )

    def __eq__(self, other) -> bool:
        if not isinstance(other, ThetaAssignment):
            return False
        return self.graph == other.graph and bool(
            np.all(circle_distance(self.values, other.values) <= ANGLE_TOL)
        )

    def __repr__(self) -> str:
        return f"<ThetaAssignment m={len(self)} values={self.values.round(6).tolist()}>"


def constant_theta(g: DirectedGraph, angle: float) -> ThetaAssignment:
    """Every edge gets ``angle``.

    Raises
    ------
    AntisymmetryError
        if ``g`` has an anti-parallel pair and ``angle`` is not 0 or pi.

    Examples
    --------
    >>> from maglap.generators import complete_graph
    >>> constant_theta(complete_graph(3), -np.pi).values.tolist() == [np.pi] * 3
    True
    """
    return ThetaAssignment(g, np.full(g.n_edges, float(angle)))


def zero_theta(g: DirectedGraph) -> ThetaAssignment:
    return constant_theta(g, 0.0)


def random_theta(g: DirectedGraph, seed=None) -> ThetaAssignment:
    """Uniform angles in ``(-pi, pi]``, made opposite on anti-parallel pairs."""
    rs = check_random_state(seed)
    values = rs.uniform(-np.pi, np.pi, size=g.n_edges)
    for idx, (u, v) in enumerate(g.edges):
        back = g.edge_index(v, u)
        if back is not None and back > idx:
            values[back] = -values[idx]
    return ThetaAssignment(g, values)


def extend_theta(theta: ThetaAssignment, supergraph: DirectedGraph) -> ThetaAssignment:
    """Extend ``theta`` by zero to a supergraph with the same orientation on the old edges.

    Raises
    ------
    GraphConstructionError
        if an edge of ``theta.graph`` is not an edge of ``supergraph``.
    """
    g = theta.graph
    if supergraph.n_vertices != g.n_vertices:
        raise GraphConstructionError(
            "supergraph should have the same vertices as the graph of theta."
        )
    values = np.zeros(supergraph.n_edges)
    for idx, (u, v) in enumerate(g.edges):
        target = supergraph.edge_index(u, v)
        if target is None:
            raise GraphConstructionError(
                f"edge ({u}, {v}) is missing from the supergraph or reversed."
            )
        values[target] = theta.values[idx]
    return ThetaAssignment(supergraph, values)


def _keyed(g: DirectedGraph, theta: ThetaAssignment) -> None:
    if not isinstance(theta, ThetaAssignment):
        raise TypeError(f"theta should be a ThetaAssignment, got {theta}.")
    theta.check_keyed_to(g)


def _vertex_function(g: DirectedGraph, f) -> np.ndarray:
    f = np.asarray(f, dtype=complex).reshape(-1)
    if f.shape[0] != g.n_vertices:
        raise ValueError(
            f"vertex function has length {f.shape[0]}, graph has {g.n_vertices} vertices."
        )
    return f


# -----------------------------------------------------------------------------
# --------------------------------- Operators ---------------------------------
# -----------------------------------------------------------------------------


def incidence(g: DirectedGraph, theta: ThetaAssignment) -> np.ndarray:
    """The ``n x m`` matrix ``d_theta`` with column ``e`` equal to ``t_e - exp(-i theta) s_e``.

    Examples
    --------
    >>> g = DirectedGraph(2, [(0, 1)])
    >>> incidence(g, constant_theta(g, 0.0)).real.tolist()
    [[-1.0], [1.0]]
    """
    _keyed(g, theta)
    d = np.zeros((g.n_vertices, g.n_edges), dtype=complex)
    conj_phases = theta.phases.conj()
    for idx, (s, t) in enumerate(g.edges):
        d[t, idx] += 1.0
        d[s, idx] -= conj_phases[idx]
    return d


def degree_matrix(g: DirectedGraph) -> np.ndarray:
    return np.diag(g.degrees.astype(complex))


def adjacency_matrix(g: DirectedGraph, theta: ThetaAssignment) -> np.ndarray:
    """``A_theta`` with ``A[s, t] = exp(-i theta(st))`` and ``A[t, s] = exp(i theta(st))``."""
    _keyed(g, theta)
    a = np.zeros((g.n_vertices, g.n_vertices), dtype=complex)
    phases = theta.phases
    np.add.at(a, (g.sources, g.targets), phases.conj())
    np.add.at(a, (g.targets, g.sources), phases)
    return a


def laplacian(g: DirectedGraph, theta: ThetaAssignment) -> np.ndarray:
    """The magnetic Laplacian ``D - A_theta``, Hermitian and positive semidefinite.

    Examples
    --------
    >>> from maglap.generators import complete_graph
    >>> from maglap.linalg import eigh
    >>> k3 = complete_graph(3)
    >>> np.allclose(eigh(laplacian(k3, constant_theta(k3, np.pi))).eigenvalues, [1, 1, 4])
    True
    """
    return degree_matrix(g) - adjacency_matrix(g, theta)


def laplacian_stack(g: DirectedGraph, theta_rows: np.ndarray) -> np.ndarray:
    """Magnetic Laplacians of ``g`` for a batch of angle rows, shape ``(B, n, n)``.

    Rows are used as given; antisymmetry is the caller's concern.
    """
    theta_rows = np.atleast_2d(np.asarray(theta_rows, dtype=float))
    if theta_rows.shape[1] != g.n_edges:
        raise ThetaMismatchError(
            f"theta rows have {theta_rows.shape[1]} columns, graph has {g.n_edges} edges."
        )
    batch = theta_rows.shape[0]
    n = g.n_vertices
    stack = np.zeros((batch, n, n), dtype=complex)
    stack[:, np.arange(n), np.arange(n)] = g.degrees
    phases = unit_phase(theta_rows)
    for idx, (s, t) in enumerate(g.edges):
        stack[:, s, t] -= phases[:, idx].conj()
        stack[:, t, s] -= phases[:, idx]
    return stack


def apply_pointwise(g: DirectedGraph, theta: ThetaAssignment, f) -> np.ndarray:
    """Evaluate the magnetic Laplacian on ``f`` edge by edge, without a matrix.

    Each edge ``s -> t`` adds ``f(t) - exp(i theta) f(s)`` at ``t`` and
    ``f(s) - exp(-i theta) f(t)`` at ``s``.
    """
    _keyed(g, theta)
    f = _vertex_function(g, f)
    out = np.zeros(g.n_vertices, dtype=complex)
    phases = theta.phases
    for idx, (s, t) in enumerate(g.edges):
        out[t] += f[t] - phases[idx] * f[s]
        out[s] += f[s] - phases[idx].conjugate() * f[t]
    return out


def quadratic_form(g: DirectedGraph, theta: ThetaAssignment, f) -> float:
    """``Q_theta(f) = sum over edges of |f(t) - exp(i theta) f(s)|**2``."""
    _keyed(g, theta)
    f = _vertex_function(g, f)
    if g.n_edges == 0:
        return 0.0
    diffs = f[g.targets] - theta.phases * f[g.sources]
    return float(np.sum(np.abs(diffs) ** 2))


def gauge_conjugate(g: DirectedGraph, theta: ThetaAssignment, phase) -> ThetaAssignment:
    """Angles of ``U L U*`` for the diagonal unitary ``U = diag(phase)``.

    ``theta'(st) = wrap(theta(st) + arg phase(t) - arg phase(s))``.

    Raises
    ------
    NotUnimodularError
        if some ``|phase(v)|`` differs from 1 by more than UNIMODULAR_TOL.
    """
    _keyed(g, theta)
    phase = _vertex_function(g, phase)
    moduli = np.abs(phase)
    if np.any(np.abs(moduli - 1.0) > UNIMODULAR_TOL):
        worst = int(np.argmax(np.abs(moduli - 1.0)))
        raise NotUnimodularError(
            f"gauge phase should have modulus 1, got |phase({worst})| = {moduli[worst]}."
        )
    args = np.angle(phase)
    if g.n_edges == 0:
        return ThetaAssignment(g, [])
    return ThetaAssignment(g, theta.values + args[g.targets] - args[g.sources])


def reverse_edge(
    g: DirectedGraph, theta: ThetaAssignment, index: int
) -> Tuple[DirectedGraph, ThetaAssignment]:
    """Flip edge ``index`` and negate its angle; the Laplacian is unchanged."""
    _keyed(g, theta)
    flipped = g.reverse_edges([index])
    values = theta.values.copy()
    values[index] = -values[index]
    return flipped, ThetaAssignment(flipped, values)


def as_theta(g: DirectedGraph, theta: Union[None, float, Sequence[float], ThetaAssignment]) -> ThetaAssignment:
    """Coerce None (zero), a constant or a sequence into a ThetaAssignment keyed to ``g``."""
    if theta is None:
        return zero_theta(g)
    if isinstance(theta, ThetaAssignment):
        theta.check_keyed_to(g)
        return theta
    if np.isscalar(theta):
        return constant_theta(g, float(theta))
    return ThetaAssignment(g, theta)
