"""Named and random graph families used by the checks and the campaigns."""
import logging
from typing import List, Optional, Union

import numpy as np
from sklearn.utils import check_random_state

from maglap.config import RANDOM_GRAPH_RETRIES
from maglap.exceptions import BudgetExceededError, DisconnectedGraphError
from maglap.graph import DirectedGraph, Edge, UndirectedView, is_connected

logger = logging.getLogger(__name__)

RandomState = Union[None, int, np.random.RandomState]


def _check_order(n: int, minimum: int, name: str) -> None:
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)):
        raise TypeError(f"n should be an int, got {n}.")
    if n < minimum:
        raise ValueError(f"{name} needs n >= {minimum}, got {n}.")


def cycle_graph(n: int) -> DirectedGraph:
    """The directed cycle ``0 -> 1 -> ... -> n-1 -> 0``."""
    _check_order(n, 3, "cycle_graph")
    return DirectedGraph(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> DirectedGraph:
    """The directed path ``0 -> 1 -> ... -> n-1``."""
    _check_order(n, 1, "path_graph")
    return DirectedGraph(n, [(i, i + 1) for i in range(n - 1)])


def complete_graph(n: int) -> DirectedGraph:
    """K_n with every edge oriented from the lower to the higher vertex id."""
    _check_order(n, 1, "complete_graph")
    return DirectedGraph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def star_graph(n: int) -> DirectedGraph:
    """The star on ``n`` vertices with centre 0 and edges ``0 -> i``."""
    _check_order(n, 1, "star_graph")
    return DirectedGraph(n, [(0, i) for i in range(1, n)])


def petersen_graph() -> DirectedGraph:
    """The Petersen graph: outer 5-cycle, spokes ``i -> i+5`` and inner pentagram.

    Examples
    --------
    >>> g = petersen_graph()
    >>> g.n_vertices, g.n_edges, set(g.degrees.tolist())
    (10, 15, {3})
    """
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return DirectedGraph(10, outer + spokes + inner)


def _random_orient(pairs: List[Edge], rs: np.random.RandomState) -> List[Edge]:
    flips = rs.random_sample(len(pairs)) < 0.5
    return [(v, u) if flip else (u, v) for (u, v), flip in zip(pairs, flips)]


def random_graph(
    n: int,
    p: float,
    seed: RandomState = None,
    max_retries: int = RANDOM_GRAPH_RETRIES,
) -> DirectedGraph:
    """A connected Erdos-Renyi graph with a random orientation.

    Each of the ``n(n-1)/2`` pairs is kept with probability ``p``; draws are
    repeated until the result is connected.

    Parameters
    ----------
    n : int
        Number of vertices.
    p : float
        Edge probability in ``(0, 1]``.
    seed : Union[None, int, np.random.RandomState], optional
        Seed or random state, by default None.
    max_retries : int, optional
        Number of draws before giving up, by default RANDOM_GRAPH_RETRIES.

    Raises
    ------
    BudgetExceededError
        if no connected graph was drawn within ``max_retries`` attempts.
    """
    _check_order(n, 1, "random_graph")
    if not 0 < p <= 1:
        raise ValueError(f"p should be in (0, 1], got {p}.")
    rs = check_random_state(seed)
    all_pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]

    for attempt in range(max_retries):
        keep = rs.random_sample(len(all_pairs)) < p
        pairs = [pair for pair, k in zip(all_pairs, keep) if k]
        g = DirectedGraph(n, _random_orient(pairs, rs))
        if is_connected(g):
            logger.debug("connected G(%d, %.3f) drawn after %d attempts", n, p, attempt + 1)
            return g

    raise BudgetExceededError(
        f"no connected G({n}, {p}) graph drawn in {max_retries} attempts.",
        budget=max_retries,
    )


def random_regular(
    n: int, d: int, seed: RandomState = None, switches: int = 0
) -> DirectedGraph:
    """A connected ``d``-regular graph on ``n`` vertices with a random orientation.

    The graph is a circulant with offsets ``1..d//2``, plus the antipodal
    offset ``n/2`` when ``d`` is odd, under a random relabelling. With
    ``switches > 0`` that many random double edge switches
    ``{a, b}, {c, d} -> {a, c}, {b, d}`` are attempted afterwards; a switch is
    kept only when it creates no repeated edge and leaves the graph connected.

    Parameters
    ----------
    n : int
        Number of vertices.
    d : int
        Degree.
    seed : Union[None, int, np.random.RandomState], optional
        Seed or random state, by default None.
    switches : int, optional
        Number of attempted edge switches, by default 0 (plain circulant).

    Raises
    ------
    ValueError
        if ``n * d`` is odd or ``d`` is not in ``[2, n-1]``.

    Examples
    --------
    >>> g = random_regular(6, 3, seed=0)
    >>> set(g.degrees.tolist()), g.n_edges
    ({3}, 9)
    """
    _check_order(n, 3, "random_regular")
    if (n * d) % 2:
        raise ValueError(f"no {d}-regular graph on {n} vertices: n*d is odd.")
    if not 2 <= d <= n - 1:
        raise ValueError(f"d should be in [2, {n - 1}], got {d}.")
    if isinstance(switches, bool) or not isinstance(switches, (int, np.integer)) or switches < 0:
        raise ValueError(f"switches should be a non-negative int, got {switches}.")
    rs = check_random_state(seed)

    offsets = list(range(1, d // 2 + 1))
    present = set()
    for i in range(n):
        for offset in offsets:
            j = (i + offset) % n
            present.add((min(i, j), max(i, j)))
        if d % 2:
            j = (i + n // 2) % n
            present.add((min(i, j), max(i, j)))
    relabel = rs.permutation(n)
    present = {
        (int(min(relabel[u], relabel[v])), int(max(relabel[u], relabel[v])))
        for u, v in present
    }
    pairs = sorted(present)

    accepted = 0
    for _ in range(switches):
        i, j = rs.choice(len(pairs), size=2, replace=False)
        (a, b), (c, e) = pairs[i], pairs[j]
        if rs.random_sample() < 0.5:
            c, e = e, c
        if len({a, b, c, e}) < 4:
            continue
        first, second = (min(a, c), max(a, c)), (min(b, e), max(b, e))
        if first in present or second in present:
            continue
        candidate = list(pairs)
        candidate[i], candidate[j] = first, second
        if not is_connected(UndirectedView(n, candidate)):
            continue
        present -= {pairs[i], pairs[j]}
        present |= {first, second}
        pairs = candidate
        accepted += 1
    if switches:
        logger.debug("random_regular(%d, %d): %d of %d switches accepted", n, d, accepted, switches)

    return DirectedGraph(n, _random_orient(sorted(pairs), rs))


def random_subgraph(
    host: DirectedGraph, keep_probability: float, seed: RandomState = None
) -> DirectedGraph:
    """A random connected spanning subgraph of ``host``.

    A random spanning tree is always kept; every other edge survives with
    probability ``keep_probability``. Orientations and relative edge order
    are inherited from ``host``.

    Raises
    ------
    DisconnectedGraphError
        if ``host`` is not connected.
    """
    if not is_connected(host):
        raise DisconnectedGraphError("random_subgraph")
    if not 0 <= keep_probability <= 1:
        raise ValueError(
            f"keep_probability should be in [0, 1], got {keep_probability}."
        )
    rs = check_random_state(seed)

    parent = list(range(host.n_vertices))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    kept = np.zeros(host.n_edges, dtype=bool)
    for idx in rs.permutation(host.n_edges):
        u, v = host.edges[idx]
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            kept[idx] = True
    extra = rs.random_sample(host.n_edges) < keep_probability
    kept |= extra
    return DirectedGraph(
        host.n_vertices, [e for e, k in zip(host.edges, kept) if k]
    )


def named_graph(name: str, n: Optional[int] = None) -> DirectedGraph:
    """Build one of the named families by name: cycle, path, complete, star, petersen."""
    builders = {
        "cycle": cycle_graph,
        "path": path_graph,
        "complete": complete_graph,
        "star": star_graph,
    }
    if name == "petersen":
        return petersen_graph()
    if name not in builders:
        raise ValueError(
            f"unknown graph family {name!r}, expected one of "
            f"{sorted(list(builders) + ['petersen'])}."
        )
    if n is None:
        raise ValueError(f"the {name} family needs a vertex count.")
    return builders[name](n)
