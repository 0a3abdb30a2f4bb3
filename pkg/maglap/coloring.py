"""Spectral 2- and 3-colourability tests with combinatorial oracles.

A connected graph is bipartite iff the magnetic Laplacian with constant angle
``pi / k`` has a kernel for some orientation, and tripartite iff the one with
constant angle ``2 pi / 3`` does. A kernel vector satisfies
``f(t) = exp(i theta) f(s)`` along every edge, so it has constant modulus and
its phases, rounded to multiples of the angle, give the colour classes.
"""
import logging
from collections import deque
from typing import List, NamedTuple, Optional, Tuple

import numpy as np

from maglap.config import COLORING_BUDGET, WITNESS_TOL, ZERO_EIGENVALUE_RTOL
from maglap.exceptions import (
    BudgetExceededError,
    DisconnectedGraphError,
    WitnessExtractionError,
)
from maglap.graph import (
    DirectedGraph,
    check_orientation_budget,
    is_connected,
    orientation_at,
)
from maglap.linalg import eigh, eigvalsh_batch, zero_threshold
from maglap.operator import constant_theta, laplacian, laplacian_stack, unit_phase

logger = logging.getLogger(__name__)

SCAN_CHUNK = 4096


class PartitionWitness:
    """A vertex colouring given as the class index of every vertex."""

    def __init__(self, class_of, n_classes: int):
        self.class_of: Tuple[int, ...] = tuple(int(c) for c in class_of)
        self.n_classes = n_classes

    def classes(self) -> List[List[int]]:
        """Vertices of each class, ordered by class index."""
        return [
            [v for v, c in enumerate(self.class_of) if c == k] for k in range(self.n_classes)
        ]

    def is_proper(self, g: DirectedGraph) -> bool:
        """No edge joins two vertices of the same class."""
        return len(self.class_of) == g.n_vertices and all(
            self.class_of[u] != self.class_of[v] for u, v in g.edges
        )

    def __repr__(self) -> str:
        return f"<PartitionWitness classes={self.classes()}>"


class OrientationSearch(NamedTuple):
    """Outcome of a scan for an orientation whose Laplacian has a kernel.

    ``orientation`` is None when no orientation vanishes; ``checked`` counts
    the orientations examined, the hit included.
    """

    orientation: Optional[DirectedGraph]
    checked: int
    lambda_min: float


# -----------------------------------------------------------------------------
# ---------------------------------- Oracles ----------------------------------
# -----------------------------------------------------------------------------


def bipartite_oracle(g: DirectedGraph) -> Tuple[bool, Optional[PartitionWitness]]:
    """Breadth-first 2-colouring of the underlying undirected graph.

    Examples
    --------
    >>> from maglap.generators import cycle_graph
    >>> answer, witness = bipartite_oracle(cycle_graph(4))
    >>> answer, witness.classes()
    (True, [[0, 2], [1, 3]])
    """
    view = g.undirected_view()
    colour = [-1] * g.n_vertices
    for start in range(g.n_vertices):
        if colour[start] >= 0:
            continue
        colour[start] = 0
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for w in view.adjacency[u]:
                if colour[w] < 0:
                    colour[w] = 1 - colour[u]
                    queue.append(w)
                elif colour[w] == colour[u]:
                    return False, None
    return True, PartitionWitness(colour, 2)


def three_color_oracle(
    g: DirectedGraph, budget: int = COLORING_BUDGET
) -> Tuple[bool, Optional[PartitionWitness]]:
    """Backtracking 3-colouring of the underlying undirected graph.

    Raises
    ------
    BudgetExceededError
        if ``g`` has more than ``budget`` vertices.
    """
    n = g.n_vertices
    if n > budget:
        raise BudgetExceededError(
            f"3-colouring backtracking is limited to {budget} vertices, got {n}.",
            budget=budget,
            required=n,
        )
    view = g.undirected_view()
    # breadth-first order keeps every vertex after one of its neighbours
    order: List[int] = []
    seen = [False] * n
    for start in range(n):
        if seen[start]:
            continue
        seen[start] = True
        queue = deque([start])
        while queue:
            u = queue.popleft()
            order.append(u)
            for w in view.adjacency[u]:
                if not seen[w]:
                    seen[w] = True
                    queue.append(w)

    colour = [-1] * n

    def place(i: int) -> bool:
        if i == n:
            return True
        v = order[i]
        used = {colour[w] for w in view.adjacency[v]}
        for c in range(3):
            if c not in used:
                colour[v] = c
                if place(i + 1):
                    return True
        colour[v] = -1
        return False

    if place(0):
        return True, PartitionWitness(colour, 3)
    return False, None


# -----------------------------------------------------------------------------
# --------------------------------- Spectral ----------------------------------
# -----------------------------------------------------------------------------


def _require_connected(g: DirectedGraph, operation: str) -> None:
    if not is_connected(g):
        raise DisconnectedGraphError(operation)


def extract_witness(
    vector: np.ndarray, n_phases: int, n_classes: int, tol: float = WITNESS_TOL
) -> PartitionWitness:
    """Round a kernel vector to a colouring.

    The vector is divided by its first entry and every entry is rounded to the
    nearest ``n_phases``-th root of unity; the exponent modulo ``n_classes``
    is the class.

    Raises
    ------
    WitnessExtractionError
        if some entry is farther than ``tol`` from every allowed phase.
    """
    vector = np.asarray(vector, dtype=complex)
    if abs(vector[0]) == 0.0:
        raise WitnessExtractionError("kernel vector vanishes at vertex 0.")
    f = vector / vector[0]
    step = 2 * np.pi / n_phases
    exponents = np.mod(np.rint(np.angle(f) / step).astype(int), n_phases)
    residual = float(np.max(np.abs(f - unit_phase(exponents * step))))
    if residual > tol:
        logger.warning("kernel vector does not round to a colouring (residual %.3e)", residual)
        raise WitnessExtractionError(
            f"kernel vector is {residual:.3e} away from the allowed phases "
            f"(tolerance {tol:.1e}); refusing to report an unverified colouring."
        )
    return PartitionWitness(np.mod(exponents, n_classes), n_classes)


def find_vanishing_orientation(
    g: DirectedGraph,
    angle: float,
    budget: Optional[int] = None,
    rtol: float = ZERO_EIGENVALUE_RTOL,
) -> OrientationSearch:
    """First orientation, in bit-counter order, whose Laplacian at ``angle`` has a kernel.

    Orientations are scanned as sign patterns of the angle on the base
    orientation (every pair ``u < v`` oriented ``u -> v``), since reversing an
    edge and negating its angle leaves the Laplacian unchanged.

    Raises
    ------
    BudgetExceededError
        if the edge count exceeds the enumeration budget.
    """
    view = g.undirected_view()
    m = check_orientation_budget(view, budget)
    base = orientation_at(view, 0)
    total = 2 ** m
    # complementary orientations have conjugate Laplacians, and the smaller
    # index of a complementary pair always lies in the lower half
    half = max(total // 2, 1)
    bits = np.arange(m)
    smallest = np.inf

    for start in range(0, half, SCAN_CHUNK):
        indices = np.arange(start, min(start + SCAN_CHUNK, half))
        signs = 1.0 - 2.0 * ((indices[:, None] >> bits) & 1)
        eigenvalues = eigvalsh_batch(laplacian_stack(base, signs * angle))
        lambda_min = eigenvalues[:, 0]
        thresholds = rtol * np.maximum(1.0, eigenvalues[:, -1])
        hits = np.nonzero(lambda_min <= thresholds)[0]
        if hits.size:
            first = int(hits[0])
            return OrientationSearch(
                orientation_at(view, int(indices[first])),
                start + first + 1,
                float(lambda_min[first]),
            )
        smallest = min(smallest, float(lambda_min.min()))
    logger.debug("no vanishing orientation among %d (smallest lambda_min %.3e)", total, smallest)
    return OrientationSearch(None, total, smallest)


class ColoringSearch(NamedTuple):
    """Answer of a spectral colouring test with its witness and scan length.

    ``orientations_checked`` is 1 when a single decomposition decides.
    """

    answer: bool
    witness: Optional[PartitionWitness]
    orientations_checked: int


def _witness_from(
    g: DirectedGraph, orientation: DirectedGraph, angle: float, n_phases: int, n_classes: int
) -> PartitionWitness:
    decomposition = eigh(laplacian(orientation, constant_theta(orientation, angle)))
    witness = extract_witness(decomposition.eigenvectors[:, 0], n_phases, n_classes)
    if not witness.is_proper(g):
        logger.warning("rounded kernel vector is not a proper colouring: %r", witness)
        raise WitnessExtractionError("rounded kernel vector is not a proper colouring.")
    return witness


def bipartite_search(
    g: DirectedGraph,
    k: int = 1,
    budget: Optional[int] = None,
    rtol: float = ZERO_EIGENVALUE_RTOL,
) -> ColoringSearch:
    """Bipartiteness from a kernel at constant angle ``pi / k``.

    For ``k = 1`` the Laplacian does not depend on the orientation and one
    eigendecomposition decides; otherwise orientations are scanned with
    :func:`find_vanishing_orientation`.

    Raises
    ------
    DisconnectedGraphError
        if ``g`` is not connected.
    BudgetExceededError
        if ``k >= 2`` and the edge count exceeds the enumeration budget.

    Examples
    --------
    >>> from maglap.generators import cycle_graph
    >>> search = bipartite_search(cycle_graph(4), k=2)
    >>> search.answer, search.witness.is_proper(cycle_graph(4))
    (True, True)
    """
    if isinstance(k, bool) or not isinstance(k, (int, np.integer)) or k < 1:
        raise ValueError(f"k should be a positive int, got {k}.")
    _require_connected(g, "bipartite_search")
    angle = np.pi / k
    if k == 1:
        base = orientation_at(g.undirected_view(), 0)
        decomposition = eigh(laplacian(base, constant_theta(base, angle)))
        eigenvalues = decomposition.eigenvalues
        if eigenvalues[0] > zero_threshold(eigenvalues, rtol=rtol):
            return ColoringSearch(False, None, 1)
        return ColoringSearch(True, _witness_from(g, base, angle, 2, 2), 1)
    search = find_vanishing_orientation(g, angle, budget=budget, rtol=rtol)
    if search.orientation is None:
        return ColoringSearch(False, None, search.checked)
    # phases step by pi / k, so exponents mod 2 colour the graph
    witness = _witness_from(g, search.orientation, angle, 2 * k, 2)
    return ColoringSearch(True, witness, search.checked)


def tripartite_search(
    g: DirectedGraph,
    budget: Optional[int] = None,
    rtol: float = ZERO_EIGENVALUE_RTOL,
) -> ColoringSearch:
    """3-colourability from a kernel at constant angle ``2 pi / 3``, with the scan length.

    Raises
    ------
    DisconnectedGraphError
        if ``g`` is not connected.
    BudgetExceededError
        if the edge count exceeds the enumeration budget.
    """
    _require_connected(g, "tripartite_search")
    angle = 2 * np.pi / 3
    search = find_vanishing_orientation(g, angle, budget=budget, rtol=rtol)
    if search.orientation is None:
        return ColoringSearch(False, None, search.checked)
    return ColoringSearch(True, _witness_from(g, search.orientation, angle, 3, 3), search.checked)


def is_bipartite_spectral(
    g: DirectedGraph, rtol: float = ZERO_EIGENVALUE_RTOL
) -> Tuple[bool, Optional[PartitionWitness]]:
    """Bipartiteness from the smallest eigenvalue of the signless Laplacian.

    The Laplacian at constant angle pi does not depend on the orientation, so
    a single eigendecomposition decides.

    Raises
    ------
    DisconnectedGraphError
        if ``g`` is not connected.

    Examples
    --------
    >>> from maglap.generators import complete_graph, cycle_graph
    >>> answer, witness = is_bipartite_spectral(cycle_graph(4))
    >>> answer, witness.classes()
    (True, [[0, 2], [1, 3]])
    >>> is_bipartite_spectral(complete_graph(3))
    (False, None)
    """
    _require_connected(g, "is_bipartite_spectral")
    search = bipartite_search(g, 1, rtol=rtol)
    return search.answer, search.witness


def is_bipartite_spectral_k(
    g: DirectedGraph,
    k: int,
    budget: Optional[int] = None,
    rtol: float = ZERO_EIGENVALUE_RTOL,
) -> bool:
    """Bipartiteness from a kernel at constant angle ``pi / k`` over all orientations.

    See :func:`bipartite_search` for the witness and the scan length.

    Raises
    ------
    DisconnectedGraphError
        if ``g`` is not connected.
    BudgetExceededError
        if ``k >= 2`` and the edge count exceeds the enumeration budget.
    """
    if isinstance(k, bool) or not isinstance(k, (int, np.integer)) or k < 1:
        raise ValueError(f"k should be a positive int, got {k}.")
    _require_connected(g, "is_bipartite_spectral_k")
    return bipartite_search(g, k, budget=budget, rtol=rtol).answer


def is_tripartite_spectral(
    g: DirectedGraph,
    budget: Optional[int] = None,
    rtol: float = ZERO_EIGENVALUE_RTOL,
) -> Tuple[bool, Optional[PartitionWitness]]:
    """3-colourability from a kernel at constant angle ``2 pi / 3`` over all orientations.

    Raises
    ------
    DisconnectedGraphError
        if ``g`` is not connected.
    BudgetExceededError
        if the edge count exceeds the enumeration budget.

    Examples
    --------
    >>> from maglap.generators import complete_graph
    >>> answer, witness = is_tripartite_spectral(complete_graph(3))
    >>> answer, witness.is_proper(complete_graph(3))
    (True, True)
    """
    _require_connected(g, "is_tripartite_spectral")
    search = tripartite_search(g, budget=budget, rtol=rtol)
    return search.answer, search.witness
