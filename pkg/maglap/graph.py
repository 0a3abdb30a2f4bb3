"""Finite directed graphs given by source and target maps.

Vertices are the integers ``0..n-1`` and edges carry stable indices ``0..m-1``
in insertion order. Both are needed downstream: theta assignments are arrays
indexed by edge, and orientation families are indexed by bit patterns over
edges.
"""
import logging
from collections import deque
from typing import Dict, Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np

from maglap.config import SUPERGRAPH_BUDGET, get_enumeration_budget
from maglap.exceptions import (
    BudgetExceededError,
    ConsistencyError,
    DisconnectedGraphError,
    GraphConstructionError,
    SupergraphNotFoundError,
)

logger = logging.getLogger(__name__)

Edge = Tuple[int, int]


class DirectedGraph:
    """A loopless directed graph without repeated directed edges.

    The graph is immutable after construction and safe to share between
    threads.
    """

    def __init__(self, n_vertices: int, edges: Sequence[Edge] = ()):
        """Build a directed graph from a vertex count and an edge list.

        Parameters
        ----------
        n_vertices : int
            The number of vertices. Vertices are ``0..n_vertices-1``.
        edges : Sequence[Tuple[int, int]], optional
            Ordered ``(source, target)`` pairs, by default no edges.

        Raises
        ------
        TypeError
            if n_vertices is not an int.
        GraphConstructionError
            if some pair is a loop, is repeated or names a vertex out of range.

        Examples
        --------
        >>> g = DirectedGraph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
        >>> g.n_edges
        4
        >>> g.degrees.tolist()
        [2, 2, 2, 2]
        """
        if isinstance(n_vertices, bool) or not isinstance(
            n_vertices, (int, np.integer)
        ):
            raise TypeError(f"n_vertices should be an int, got {n_vertices}.")
        if n_vertices < 0:
            raise GraphConstructionError(
                f"n_vertices should be non-negative, got {n_vertices}."
            )

        n = int(n_vertices)
        checked: List[Edge] = []
        index: Dict[Edge, int] = {}
        for pair in edges:
            try:
                u, v = pair
                u, v = int(u), int(v)
            except (TypeError, ValueError):
                raise GraphConstructionError(
                    f"edges should be (source, target) pairs of ints, got {pair}."
                )
            if not (0 <= u < n and 0 <= v < n):
                raise GraphConstructionError(
                    f"edge ({u}, {v}) names a vertex outside 0..{n - 1}."
                )
            if u == v:
                raise GraphConstructionError(f"edge ({u}, {v}) is a loop.")
            if (u, v) in index:
                raise GraphConstructionError(f"edge ({u}, {v}) is repeated.")
            index[(u, v)] = len(checked)
            checked.append((u, v))

        self._n = n
        self._edges: Tuple[Edge, ...] = tuple(checked)
        self._index = index

        degrees = np.zeros(n, dtype=int)
        for u, v in self._edges:
            degrees[u] += 1
            degrees[v] += 1
        degrees.setflags(write=False)
        self._degrees = degrees

    @classmethod
    def from_edge_list(cls, n_vertices: int, pairs: Sequence[Edge]) -> "DirectedGraph":
        """Alias of the constructor, kept for symmetry with the text parser."""
        return cls(n_vertices, pairs)

    @property
    def n_vertices(self) -> int:
        return self._n

    @property
    def n_edges(self) -> int:
        return len(self._edges)

    @property
    def edges(self) -> Tuple[Edge, ...]:
        return self._edges

    @property
    def sources(self) -> np.ndarray:
        return np.array([u for u, _ in self._edges], dtype=int)

    @property
    def targets(self) -> np.ndarray:
        return np.array([v for _, v in self._edges], dtype=int)

    @property
    def degrees(self) -> np.ndarray:
        """Number of directed edges incident to each vertex (the diagonal of D)."""
        return self._degrees

    @property
    def max_degree(self) -> int:
        return int(self._degrees.max()) if self._n else 0

    def edge_index(self, u: int, v: int) -> Optional[int]:
        """Index of the directed edge ``u -> v`` or None."""
        return self._index.get((u, v))

    def has_edge(self, u: int, v: int) -> bool:
        return (u, v) in self._index

    def is_simple_orientation(self) -> bool:
        """Whether no anti-parallel pair ``uv``, ``vu`` is present."""
        return not any((v, u) in self._index for u, v in self._edges)

    def undirected_view(self) -> "UndirectedView":
        return UndirectedView(self._n, self._edges)

    def reverse_edges(self, indices: Sequence[int]) -> "DirectedGraph":
        """Return a copy with the listed edges flipped, keeping edge indices."""
        flip = set(int(i) for i in indices)
        for i in flip:
            if not 0 <= i < self.n_edges:
                raise IndexError(f"edge index {i} out of range 0..{self.n_edges - 1}.")
        edges = [(v, u) if i in flip else (u, v) for i, (u, v) in enumerate(self._edges)]
        return DirectedGraph(self._n, edges)

    def __eq__(self, other) -> bool:
        if not isinstance(other, DirectedGraph):
            return False
        return self._n == other._n and self._edges == other._edges

    def __hash__(self) -> int:
        return hash((self._n, self._edges))

    def __repr__(self) -> str:
        return f"<DirectedGraph n={self._n} m={self.n_edges} edges={list(self._edges)}>"


class UndirectedView:
    """The underlying undirected graph: ``u ~ v`` iff ``uv`` or ``vu`` is an edge."""

    def __init__(self, n_vertices: int, pairs: Sequence[Edge]):
        neighbors: List[set] = [set() for _ in range(n_vertices)]
        for u, v in pairs:
            neighbors[u].add(v)
            neighbors[v].add(u)
        self.n_vertices = n_vertices
        self.adjacency: Tuple[Tuple[int, ...], ...] = tuple(
            tuple(sorted(nb)) for nb in neighbors
        )
        self.pairs: Tuple[Edge, ...] = tuple(
            (u, v) for u in range(n_vertices) for v in self.adjacency[u] if u < v
        )

    @property
    def degrees(self) -> np.ndarray:
        return np.array([len(nb) for nb in self.adjacency], dtype=int)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def adjacent(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]

    def is_regular(self, d: int) -> bool:
        return all(len(nb) == d for nb in self.adjacency)

    def contains(self, other: "UndirectedView") -> bool:
        """Whether every pair of ``other`` is a pair of this view."""
        if other.n_vertices != self.n_vertices:
            return False
        return all(self.adjacent(u, v) for u, v in other.pairs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, UndirectedView):
            return False
        return self.n_vertices == other.n_vertices and self.pairs == other.pairs

    def __repr__(self) -> str:
        return f"<UndirectedView n={self.n_vertices} pairs={list(self.pairs)}>"


class CycleBasis:
    """Fundamental cycles of a connected graph with respect to a BFS tree.

    Attributes
    ----------
    root : int
        Root of the spanning tree.
    parent : Dict[int, Tuple[int, int]]
        For every non-root vertex, its tree parent and the index of the tree edge.
    tree_edges : frozenset
        Indices of the spanning-tree edges.
    non_tree_edges : Tuple[int, ...]
        Indices of the remaining edges, in edge order.
    fundamental_cycles : Tuple[Tuple[int, ...], ...]
        One closed walk per non-tree edge ``s -> t``: the tree path from ``t``
        to ``s`` followed by the edge itself, so the walk ends at ``t``.
    """

    def __init__(self, graph: DirectedGraph, root: int = 0):
        self.root = root
        self.order: List[int] = []
        self.parent: Dict[int, Tuple[int, int]] = {}
        self.depth: Dict[int, int] = {root: 0}

        incident: List[List[Tuple[int, int]]] = [[] for _ in range(graph.n_vertices)]
        for idx, (u, v) in enumerate(graph.edges):
            incident[u].append((v, idx))
            incident[v].append((u, idx))

        queue = deque([root])
        while queue:
            u = queue.popleft()
            self.order.append(u)
            for w, idx in sorted(incident[u]):
                if w not in self.depth:
                    self.depth[w] = self.depth[u] + 1
                    self.parent[w] = (u, idx)
                    queue.append(w)

        self.tree_edges = frozenset(idx for _, idx in self.parent.values())
        self.non_tree_edges = tuple(
            idx for idx in range(graph.n_edges) if idx not in self.tree_edges
        )
        cycles = []
        for idx in self.non_tree_edges:
            s, t = graph.edges[idx]
            cycles.append(tuple(self.tree_path(t, s)) + (t,))
        self.fundamental_cycles = tuple(cycles)

    def tree_path(self, u: int, v: int) -> List[int]:
        """Vertices of the tree path from ``u`` to ``v``, both included."""
        up, down = [u], [v]
        a, b = u, v
        while self.depth[a] > self.depth[b]:
            a = self.parent[a][0]
            up.append(a)
        while self.depth[b] > self.depth[a]:
            b = self.parent[b][0]
            down.append(b)
        while a != b:
            a = self.parent[a][0]
            b = self.parent[b][0]
            up.append(a)
            down.append(b)
        # up and down both end at the common ancestor
        return up + down[-2::-1]

    def __len__(self) -> int:
        return len(self.fundamental_cycles)


# -----------------------------------------------------------------------------
# ------------------------------- Construction --------------------------------
# -----------------------------------------------------------------------------


def from_edge_list(n_vertices: int, pairs: Sequence[Edge]) -> DirectedGraph:
    """Build a :class:`DirectedGraph`, edges kept in input order.

    Examples
    --------
    >>> from_edge_list(2, [(0, 0)])
    Traceback (most recent call last):
    ...
    maglap.exceptions.GraphConstructionError: edge (0, 0) is a loop.
    """
    return DirectedGraph(n_vertices, pairs)


def _as_view(graph: Union[DirectedGraph, UndirectedView]) -> UndirectedView:
    if isinstance(graph, DirectedGraph):
        return graph.undirected_view()
    if isinstance(graph, UndirectedView):
        return graph
    raise TypeError(
        f"graph should be a DirectedGraph or an UndirectedView, got {graph}."
    )


def _require_simple(g: DirectedGraph, operation: str) -> None:
    if not g.is_simple_orientation():
        raise GraphConstructionError(
            f"{operation} requires a simple orientation (no anti-parallel edges)."
        )


# -----------------------------------------------------------------------------
# ------------------------------- Connectivity --------------------------------
# -----------------------------------------------------------------------------


def connected_components(graph: Union[DirectedGraph, UndirectedView]) -> List[List[int]]:
    """Vertex sets of the connected components, ordered by smallest vertex."""
    view = _as_view(graph)
    seen = [False] * view.n_vertices
    components = []
    for start in range(view.n_vertices):
        if seen[start]:
            continue
        seen[start] = True
        component = [start]
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for w in view.adjacency[u]:
                if not seen[w]:
                    seen[w] = True
                    component.append(w)
                    queue.append(w)
        components.append(sorted(component))
    return components


def is_connected(graph: Union[DirectedGraph, UndirectedView]) -> bool:
    """Whether the underlying undirected graph is connected.

    Examples
    --------
    >>> is_connected(DirectedGraph(4, [(0, 1), (2, 3)]))
    False
    >>> is_connected(DirectedGraph(1))
    True
    """
    view = _as_view(graph)
    return len(connected_components(view)) <= 1


def induced_subgraph(
    g: DirectedGraph, vertices: Sequence[int]
) -> Tuple[DirectedGraph, List[int]]:
    """Subgraph induced on ``vertices``, relabelled to ``0..len(vertices)-1``.

    Returns
    -------
    Tuple[DirectedGraph, List[int]]
        The subgraph and the list mapping new vertex ids to original ids.
    """
    kept = sorted(set(int(v) for v in vertices))
    relabel = {v: i for i, v in enumerate(kept)}
    edges = [(relabel[u], relabel[v]) for u, v in g.edges if u in relabel and v in relabel]
    return DirectedGraph(len(kept), edges), kept


def cycle_basis(g: DirectedGraph) -> CycleBasis:
    """Fundamental cycle basis from a breadth-first spanning tree rooted at 0.

    Raises
    ------
    DisconnectedGraphError
        if ``g`` is not connected.

    Examples
    --------
    >>> basis = cycle_basis(DirectedGraph(4, [(0, 1), (1, 2), (2, 3), (3, 0)]))
    >>> len(basis), len(basis.fundamental_cycles[0])
    (1, 5)
    """
    if not is_connected(g):
        raise DisconnectedGraphError("cycle_basis")
    return CycleBasis(g, root=0)


# -----------------------------------------------------------------------------
# ---------------------------- Complete and regular ---------------------------
# -----------------------------------------------------------------------------


def orient_complete(g: DirectedGraph) -> DirectedGraph:
    """An orientation of K_n that restricts to the orientation of ``g``.

    Edges of ``g`` come first, in order; the missing pairs follow oriented
    from the lower to the higher vertex id.
    """
    _require_simple(g, "orient_complete")
    n = g.n_vertices
    view = g.undirected_view()
    extra = [(u, v) for u in range(n) for v in range(u + 1, n) if not view.adjacent(u, v)]
    return DirectedGraph(n, list(g.edges) + extra)


def complement_in_complete(h: DirectedGraph, kn: DirectedGraph) -> DirectedGraph:
    """Edges of the oriented complete graph ``kn`` that are not edges of ``h``.

    Raises
    ------
    ValueError
        if ``kn`` is not an orientation of K_n or ``h`` is not contained in it.
    """
    n = kn.n_vertices
    if (
        kn.n_edges != n * (n - 1) // 2
        or not kn.is_simple_orientation()
        or h.n_vertices != n
    ):
        raise ValueError(
            f"kn should be an orientation of the complete graph on {h.n_vertices} "
            f"vertices, got {kn}."
        )
    for u, v in h.edges:
        if not kn.has_edge(u, v):
            raise ValueError(
                f"edge ({u}, {v}) of h is not an edge of the K_n orientation."
            )
    return DirectedGraph(n, [e for e in kn.edges if not h.has_edge(*e)])


def regular_supergraph(
    g: DirectedGraph, d: int, budget: int = SUPERGRAPH_BUDGET
) -> DirectedGraph:
    """A ``d``-regular supergraph of ``g`` on the same vertices.

    New edges are oriented from the lower to the higher vertex id and appended
    after the edges of ``g``. The search adds edges at the smallest vertex
    still missing degree and backtracks when a vertex can no longer be
    completed.

    Parameters
    ----------
    g : DirectedGraph
        A simple orientation.
    d : int
        Target degree.
    budget : int, optional
        Maximum number of tentative edge insertions, by default SUPERGRAPH_BUDGET.

    Raises
    ------
    ValueError
        if ``d`` is below the maximum degree of ``g``, above ``n - 1``, or
        ``n * d`` is odd.
    SupergraphNotFoundError
        if the search is exhausted without a solution.
    BudgetExceededError
        if the search needs more than ``budget`` insertions.

    Examples
    --------
    >>> path = DirectedGraph(4, [(0, 1), (1, 2), (2, 3)])
    >>> regular_supergraph(path, 2).edges
    ((0, 1), (1, 2), (2, 3), (0, 3))
    """
    _require_simple(g, "regular_supergraph")
    n = g.n_vertices
    if d < g.max_degree or d > max(n - 1, 0) or (n * d) % 2:
        raise ValueError(
            f"degree {d} is not admissible for a graph with {n} vertices and "
            f"maximum degree {g.max_degree} (need max degree <= d <= n-1 and n*d even)."
        )

    neighbors = [set(nb) for nb in g.undirected_view().adjacency]
    deficit = [d - int(x) for x in g.degrees]
    added: List[Edge] = []
    tried = 0

    def search(prev_vertex: int, last_partner: int) -> bool:
        nonlocal tried
        v = next((u for u in range(n) if deficit[u] > 0), None)
        if v is None:
            return True
        for u in range(v, n):
            if deficit[u] > 0:
                room = sum(
                    1 for w in range(n) if w != u and deficit[w] > 0 and w not in neighbors[u]
                )
                if room < deficit[u]:
                    return False
        start = last_partner + 1 if v == prev_vertex else v + 1
        partners = [
            w for w in range(start, n) if deficit[w] > 0 and w not in neighbors[v]
        ]
        if len(partners) < deficit[v]:
            return False
        for w in partners:
            tried += 1
            if tried > budget:
                raise BudgetExceededError(
                    f"regular completion to degree {d} exceeded the search budget "
                    f"of {budget} insertions.",
                    budget=budget,
                )
            neighbors[v].add(w)
            neighbors[w].add(v)
            deficit[v] -= 1
            deficit[w] -= 1
            added.append((v, w))
            if search(v, w):
                return True
            added.pop()
            deficit[v] += 1
            deficit[w] += 1
            neighbors[v].discard(w)
            neighbors[w].discard(v)
        return False

    if not search(-1, -1):
        raise SupergraphNotFoundError(d, tried)
    logger.debug("%d-regular completion found after %d insertions", d, tried)
    return DirectedGraph(n, list(g.edges) + added)


def min_regular_degree(
    g: DirectedGraph, budget: int = SUPERGRAPH_BUDGET
) -> Tuple[int, DirectedGraph]:
    """Smallest ``d`` admitting a ``d``-regular supergraph, with a witness.

    A degree whose search runs out of ``budget`` is skipped with a warning, so
    the returned degree is then an upper bound on the smallest one. Degree
    ``n - 1`` needs no search: the witness is :func:`orient_complete`.

    Examples
    --------
    >>> star = DirectedGraph(4, [(0, 1), (0, 2), (0, 3)])
    >>> d, h = min_regular_degree(star)
    >>> d, h.n_edges
    (3, 6)
    """
    if not is_connected(g):
        raise DisconnectedGraphError("min_regular_degree")
    n = g.n_vertices
    for d in range(g.max_degree, max(n, 1)):
        if d == n - 1:
            return d, orient_complete(g)
        if (n * d) % 2:
            continue
        try:
            return d, regular_supergraph(g, d, budget=budget)
        except SupergraphNotFoundError as e:
            logger.debug("no %d-regular supergraph (%d insertions tried)", d, e.tried)
        except BudgetExceededError:
            logger.warning("%d-regular completion search exceeded its budget; trying d=%d", d, d + 1)
    # K_n is (n-1)-regular and n(n-1) is even, so the loop always returns.
    raise ConsistencyError(f"no regular supergraph found for {g}.")


def zagreb_index(g: DirectedGraph) -> int:
    """First Zagreb index, the sum of squared degrees.

    Examples
    --------
    >>> zagreb_index(DirectedGraph(4, [(0, 1), (0, 2), (0, 3)]))
    12
    """
    return int(np.sum(g.degrees.astype(np.int64) ** 2))


# -----------------------------------------------------------------------------
# -------------------------------- Orientations -------------------------------
# -----------------------------------------------------------------------------


def orientation_at(graph: Union[DirectedGraph, UndirectedView], index: int) -> DirectedGraph:
    """The orientation number ``index``: bit ``i`` set reverses pair ``i``.

    Pairs are the sorted ``(u, v)``, ``u < v``, of the undirected view, and an
    unset bit orients a pair from ``u`` to ``v``.
    """
    view = _as_view(graph)
    edges = [
        (v, u) if (index >> i) & 1 else (u, v) for i, (u, v) in enumerate(view.pairs)
    ]
    return DirectedGraph(view.n_vertices, edges)


def enumerate_orientations(
    graph: Union[DirectedGraph, UndirectedView], budget: Optional[int] = None
) -> Iterator[DirectedGraph]:
    """All ``2**m`` orientations of an undirected graph, in bit-counter order.

    Parameters
    ----------
    graph : Union[DirectedGraph, UndirectedView]
        The graph whose underlying undirected graph is oriented.
    budget : Optional[int], optional
        Maximum number of edges, see :func:`maglap.config.get_enumeration_budget`.

    Raises
    ------
    BudgetExceededError
        if the edge count exceeds the budget. Raised by this call, before any
        orientation is produced.

    Examples
    --------
    >>> triangle = DirectedGraph(3, [(0, 1), (1, 2), (2, 0)])
    >>> len(list(enumerate_orientations(triangle)))
    8
    """
    view = _as_view(graph)
    m = check_orientation_budget(view, budget)
    return (orientation_at(view, index) for index in range(2 ** m))


def check_orientation_budget(
    graph: Union[DirectedGraph, UndirectedView], budget: Optional[int] = None
) -> int:
    """Return the number of undirected edges after checking it against the budget."""
    view = _as_view(graph)
    budget = get_enumeration_budget(budget)
    m = len(view.pairs)
    if m > budget:
        raise BudgetExceededError(
            f"{m} edges exceed the orientation enumeration budget of {budget}; "
            "raise it with --budget or the MAGLAP_BUDGET environment variable.",
            budget=budget,
            required=m,
        )
    return m
