"""Fluxes through closed walks and gauge equivalence.

Two angle assignments on a connected graph give unitarily equivalent
Laplacians through a diagonal unitary exactly when they induce the same
fluxes through every closed walk, and it suffices to compare fluxes on a
fundamental cycle basis.
"""
import logging
from typing import List, Optional, Sequence

import numpy as np

from maglap.config import ANGLE_TOL, ZERO_EIGENVALUE_RTOL
from maglap.exceptions import ConsistencyError
from maglap.graph import DirectedGraph, cycle_basis
from maglap.linalg import eigh, zero_threshold
from maglap.operator import (
    ThetaAssignment,
    circle_distance,
    gauge_conjugate,
    laplacian,
    unit_phase,
    wrap_angle,
)

logger = logging.getLogger(__name__)


def walk_flux(
    g: DirectedGraph,
    theta: ThetaAssignment,
    walk: Sequence[int],
    closed: bool = True,
) -> float:
    """Sum of the angles met along a walk, wrapped to ``(-pi, pi]``.

    A step ``u -> v`` contributes ``theta(uv)`` when ``uv`` is an edge and
    ``-theta(vu)`` when only ``vu`` is.

    Parameters
    ----------
    g : DirectedGraph
        The graph.
    theta : ThetaAssignment
        Angles keyed to ``g``.
    walk : Sequence[int]
        Vertices ``v0, ..., vm``.
    closed : bool, optional
        Require ``v0 == vm``, by default True.

    Raises
    ------
    ValueError
        if the walk is empty, is not closed when required, or takes a step
        between non-adjacent vertices.

    Examples
    --------
    >>> from maglap.operator import constant_theta
    >>> k3 = DirectedGraph(3, [(0, 1), (1, 2), (2, 0)])
    >>> abs(walk_flux(k3, constant_theta(k3, 2 * np.pi / 3), [0, 1, 2, 0])) < 1e-12
    True
    """
    theta.check_keyed_to(g)
    walk = [int(v) for v in walk]
    if not walk:
        raise ValueError("walk should contain at least one vertex.")
    if closed and walk[0] != walk[-1]:
        raise ValueError(
            f"walk should be closed (first and last vertex equal), got {walk[0]} "
            f"and {walk[-1]}."
        )
    total = 0.0
    for u, v in zip(walk, walk[1:]):
        try:
            total += theta.along(u, v)
        except KeyError:
            raise ValueError(f"walk steps from {u} to {v}, which are not adjacent.")
    return wrap_angle(total)


def basis_fluxes(g: DirectedGraph, theta: ThetaAssignment) -> List[float]:
    """Fluxes through the fundamental cycles of :func:`maglap.graph.cycle_basis`."""
    basis = cycle_basis(g)
    return [walk_flux(g, theta, cycle) for cycle in basis.fundamental_cycles]


def walk_flux_via_basis(g: DirectedGraph, theta: ThetaAssignment, walk: Sequence[int]) -> float:
    """Flux of a closed walk recombined from basis fluxes.

    Every traversal of a non-tree edge adds the flux of its fundamental cycle,
    with a minus sign against the edge direction; tree steps contribute
    nothing.
    """
    basis = cycle_basis(g)
    fluxes = {
        idx: walk_flux(g, theta, cycle)
        for idx, cycle in zip(basis.non_tree_edges, basis.fundamental_cycles)
    }
    total = 0.0
    for u, v in zip(walk, walk[1:]):
        forward = g.edge_index(u, v)
        if forward is not None and forward in fluxes:
            total += fluxes[forward]
            continue
        backward = g.edge_index(v, u)
        if backward is not None and backward in fluxes:
            total -= fluxes[backward]
    return wrap_angle(total)


def gauge_equivalent(
    g: DirectedGraph,
    theta1: ThetaAssignment,
    theta2: ThetaAssignment,
    tol: float = ANGLE_TOL,
) -> bool:
    """Whether ``theta1`` and ``theta2`` induce the same basis fluxes mod 2 pi.

    Examples
    --------
    >>> from maglap.generators import cycle_graph
    >>> from maglap.operator import ThetaAssignment
    >>> c4 = cycle_graph(4)
    >>> spread = ThetaAssignment(c4, [np.pi / 8] * 4)
    >>> lumped = ThetaAssignment(c4, [np.pi / 2, 0, 0, 0])
    >>> gauge_equivalent(c4, spread, lumped)
    True
    """
    theta1.check_keyed_to(g)
    theta2.check_keyed_to(g)
    f1 = np.asarray(basis_fluxes(g, theta1), dtype=float)
    f2 = np.asarray(basis_fluxes(g, theta2), dtype=float)
    return bool(np.all(circle_distance(f1, f2) <= tol))


def construct_gauge(
    g: DirectedGraph,
    theta1: ThetaAssignment,
    theta2: ThetaAssignment,
    tol: float = ANGLE_TOL,
) -> Optional[np.ndarray]:
    """A unimodular phase turning ``theta1`` into ``theta2``, or None if none exists.

    The phase is 1 at the root of the breadth-first spanning tree and is
    propagated along tree edges so that every tree edge matches exactly; the
    non-tree edges then match because the fluxes agree.

    Returns
    -------
    Optional[np.ndarray]
        ``phase`` with ``gauge_conjugate(g, theta1, phase) == theta2``, or None
        when the assignments are not gauge equivalent.

    Raises
    ------
    ConsistencyError
        if the propagated phase fails to reproduce ``theta2``.
    """
    if not gauge_equivalent(g, theta1, theta2, tol=tol):
        return None
    basis = cycle_basis(g)
    args = np.zeros(g.n_vertices)
    for w in basis.order:
        if w == basis.root:
            continue
        u, idx = basis.parent[w]
        shift = theta2.values[idx] - theta1.values[idx]
        if g.edges[idx] == (u, w):
            args[w] = args[u] + shift
        else:
            args[w] = args[u] - shift
    phase = unit_phase(wrap_angle(args))

    conjugated = gauge_conjugate(g, theta1, phase)
    mismatch = circle_distance(conjugated.values, theta2.values)
    if mismatch.size and float(np.max(mismatch)) > tol:
        raise ConsistencyError(
            f"constructed gauge misses theta2 by {float(np.max(mismatch)):.3e} "
            "although the basis fluxes agree."
        )
    return phase


def equivalent_to_standard(
    g: DirectedGraph,
    theta: ThetaAssignment,
    rtol: float = ZERO_EIGENVALUE_RTOL,
    tol: float = ANGLE_TOL,
) -> bool:
    """Whether the magnetic Laplacian is gauge equivalent to the ordinary one.

    Decided twice: by a vanishing smallest eigenvalue and by all basis fluxes
    being zero. The flux verdict is returned. A flux ``phi`` only lifts the
    smallest eigenvalue by about ``phi ** 2 / n ** 2``, so fluxes below
    ``n * sqrt(m * threshold)`` cannot be told apart from zero by the kernel
    test and a kernel found next to them is not a disagreement.

    Raises
    ------
    DisconnectedGraphError
        if ``g`` is not connected.
    ConsistencyError
        if the two verdicts disagree.

    Examples
    --------
    >>> from maglap.generators import cycle_graph
    >>> from maglap.operator import constant_theta
    >>> c4 = cycle_graph(4)
    >>> equivalent_to_standard(c4, constant_theta(c4, np.pi / 4))
    False
    """
    fluxes = np.asarray(basis_fluxes(g, theta), dtype=float)
    by_flux = bool(np.all(circle_distance(fluxes, 0.0) <= tol))

    eigenvalues = eigh(laplacian(g, theta)).eigenvalues
    threshold = zero_threshold(eigenvalues, rtol=rtol)
    by_kernel = bool(eigenvalues[0] <= threshold)

    resolution = g.n_vertices * np.sqrt(max(g.n_edges, 1) * threshold)
    largest = float(np.max(circle_distance(fluxes, 0.0))) if fluxes.size else 0.0
    if by_kernel and not by_flux and largest <= resolution:
        logger.debug(
            "fluxes up to %.3e are below the kernel resolution %.3e", largest, resolution
        )
    elif by_flux != by_kernel:
        raise ConsistencyError(
            f"kernel test says {by_kernel} (lambda_min={eigenvalues[0]:.3e}, "
            f"threshold={threshold:.1e}) but flux test says {by_flux} "
            f"(fluxes={fluxes.tolist()})."
        )
    return by_flux
