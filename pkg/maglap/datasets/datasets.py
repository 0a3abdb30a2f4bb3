"""Module with functions to load the bundled reference graphs."""
import json
from typing import Any, Dict, List, NamedTuple

import pkg_resources

from maglap.graph import DirectedGraph
from maglap.operator import ThetaAssignment


class ReferenceGraph(NamedTuple):
    """A bundled graph with its angles and its known spectrum."""

    name: str
    description: str
    graph: DirectedGraph
    theta: ThetaAssignment
    spectrum: List[float]


def _load_raw() -> Dict[str, Dict[str, Any]]:
    resource_package = __name__
    resource_path = "/".join(("data", "reference_graphs.json"))
    raw = pkg_resources.resource_string(resource_package, resource_path)
    return json.loads(raw.decode())


def _build(name: str, entry: Dict[str, Any]) -> ReferenceGraph:
    graph = DirectedGraph(entry["n_vertices"], [tuple(e) for e in entry["edges"]])
    return ReferenceGraph(
        name,
        entry["description"],
        graph,
        ThetaAssignment(graph, entry["theta"]),
        list(entry["spectrum"]),
    )


def load_reference_graphs() -> Dict[str, ReferenceGraph]:
    """Load every bundled reference graph.

    The collection holds the triangle at constant angles 2pi/3 (cyclic) and
    pi, the 4-cycle with fluxes 0 and pi, the path and the star on four
    vertices, K4, the 5- and 6-cycles and the Petersen graph, each with the
    ascending spectrum of its magnetic Laplacian.

    Returns
    -------
    Dict[str, ReferenceGraph]
        Reference graphs by name, in file order.

    Examples
    --------
    >>> graphs = load_reference_graphs()
    >>> graphs["triangle_pi"].spectrum
    [1.0, 1.0, 4.0]
    """
    return {name: _build(name, entry) for name, entry in _load_raw().items()}


def load_reference_graph(name: str) -> ReferenceGraph:
    """Load a single reference graph by name.

    Raises
    ------
    KeyError
        if no bundled graph has that name.
    """
    data = _load_raw()
    if name not in data:
        raise KeyError(
            f"no reference graph named {name!r}; available: {', '.join(data)}."
        )
    return _build(name, data[name])
