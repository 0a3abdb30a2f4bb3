"""Plain-text graph files.

The first non-comment line is ``n m``; it is followed by ``m`` lines
``u v [theta]`` with 0-based vertex ids and an optional angle in radians
(default 0). Lines starting with ``#`` and blank lines are ignored.
"""
import logging
from pathlib import Path
from typing import List, Optional, Tuple, Union

import numpy as np

from maglap.config import THETA_INPUT_SLACK
from maglap.exceptions import GraphConstructionError, GraphFormatError
from maglap.graph import DirectedGraph
from maglap.operator import ThetaAssignment

logger = logging.getLogger(__name__)

EDGE_LINE_HINT = "expected 'u v [theta]'"
HEADER_HINT = "expected 'n m'"


def _parse_int(token: str) -> Optional[int]:
    try:
        return int(token)
    except ValueError:
        return None


def _parse_angle(token: str, line: int, slack: float) -> float:
    try:
        value = float(token)
    except ValueError:
        raise GraphFormatError(f"{EDGE_LINE_HINT}, got theta {token!r}", line=line)
    if not np.isfinite(value):
        raise GraphFormatError(f"theta should be finite, got {token!r}", line=line)
    if abs(value) > np.pi + slack:
        raise GraphFormatError(f"theta {value} is outside [-pi, pi]", line=line)
    return value


def parse_graph(
    text: str, slack: float = THETA_INPUT_SLACK
) -> Tuple[DirectedGraph, ThetaAssignment]:
    """Parse the graph text format.

    Parameters
    ----------
    text : str
        File contents.
    slack : float, optional
        Angles may exceed ``[-pi, pi]`` by this much, by default THETA_INPUT_SLACK.

    Returns
    -------
    Tuple[DirectedGraph, ThetaAssignment]
        The graph and its canonicalised angles.

    Raises
    ------
    GraphFormatError
        with the 1-based line number of the first offending line.

    Examples
    --------
    >>> g, theta = parse_graph("# triangle\\n3 3\\n0 1\\n1 2\\n2 0 3.14159\\n")
    >>> g.edges
    ((0, 1), (1, 2), (2, 0))
    >>> parse_graph("2 1\\n0 x\\n")
    Traceback (most recent call last):
    ...
    maglap.exceptions.GraphFormatError: line 2: expected 'u v [theta]'
    """
    header: Optional[Tuple[int, int]] = None
    edges: List[Tuple[int, int]] = []
    angles: List[float] = []
    seen = set()
    last_line = 0

    for number, raw in enumerate(text.splitlines(), start=1):
        last_line = number
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        tokens = stripped.split()

        if header is None:
            values = [_parse_int(t) for t in tokens]
            if len(tokens) != 2 or None in values or min(values) < 0:
                raise GraphFormatError(HEADER_HINT, line=number)
            header = (values[0], values[1])
            continue

        n, m = header
        if len(edges) == m:
            raise GraphFormatError(f"more than the {m} declared edge lines", line=number)
        if len(tokens) not in (2, 3):
            raise GraphFormatError(EDGE_LINE_HINT, line=number)
        u, v = _parse_int(tokens[0]), _parse_int(tokens[1])
        if u is None or v is None:
            raise GraphFormatError(EDGE_LINE_HINT, line=number)
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(f"edge ({u}, {v}) names a vertex outside 0..{n - 1}", line=number)
        if u == v:
            raise GraphFormatError(f"edge ({u}, {v}) is a loop", line=number)
        if (u, v) in seen:
            raise GraphFormatError(f"edge ({u}, {v}) is repeated", line=number)
        seen.add((u, v))
        edges.append((u, v))
        angles.append(_parse_angle(tokens[2], number, slack) if len(tokens) == 3 else 0.0)

    if header is None:
        raise GraphFormatError(HEADER_HINT, line=last_line + 1)
    n, m = header
    if len(edges) != m:
        raise GraphFormatError(
            f"expected {m} edge lines, found {len(edges)}", line=last_line + 1
        )

    try:
        g = DirectedGraph(n, edges)
    except GraphConstructionError as e:
        raise GraphFormatError(str(e))
    return g, ThetaAssignment(g, angles)


def read_graph(path: Union[str, Path]) -> Tuple[DirectedGraph, ThetaAssignment]:
    """Read a graph file, see :func:`parse_graph`."""
    text = Path(path).read_text(encoding="utf-8")
    g, theta = parse_graph(text)
    logger.info("read %s: n=%d m=%d", path, g.n_vertices, g.n_edges)
    return g, theta


def format_graph(g: DirectedGraph, theta: Optional[ThetaAssignment] = None) -> str:
    """Render a graph and its angles in the text format read by :func:`parse_graph`.

    Angles are written with 17 significant digits so they read back exactly.
    """
    lines = [f"{g.n_vertices} {g.n_edges}"]
    for idx, (u, v) in enumerate(g.edges):
        if theta is None:
            lines.append(f"{u} {v}")
        else:
            lines.append(f"{u} {v} {format(theta[idx], '.17g')}")
    return "\n".join(lines) + "\n"


def write_graph(
    path: Union[str, Path], g: DirectedGraph, theta: Optional[ThetaAssignment] = None
) -> None:
    if theta is not None:
        theta.check_keyed_to(g)
    Path(path).write_text(format_graph(g, theta), encoding="utf-8")
