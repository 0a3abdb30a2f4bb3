from abc import ABC, abstractmethod
from typing import Any, Dict, Optional

import numpy as np

from maglap.bounds.context import check_bound_graph
from maglap.graph import DirectedGraph
from maglap.linalg import eigh
from maglap.operator import ThetaAssignment, as_theta, laplacian


class BaseBound(ABC):
    """A base class for checks of an upper bound on the mean of the lowest
    eigenvalues of a magnetic Laplacian.

    It holds the name of the bound, the shared input validation and the
    abstract ``run_check``, which every bound extending this class implements
    and which returns a report dictionary.
    """

    # The name of the bound
    bound_name: str

    # The initials or short name of the bound
    bound_short_name: str

    def _check_input(self, g: DirectedGraph, theta, k: int) -> ThetaAssignment:
        """Validate the graph, the angles and the eigenvalue count.

        Parameters
        ----------
        g : DirectedGraph
            The graph.
        theta : Union[None, float, Sequence[float], ThetaAssignment]
            Angles keyed to ``g``, a constant, or None for zero.
        k : int
            Number of eigenvalues averaged.

        Returns
        -------
        ThetaAssignment
            The angles as an assignment keyed to ``g``.

        Raises
        ------
        TypeError
            if g is not a DirectedGraph or k is not an int.
        ValueError
            if k is not positive.
        GraphConstructionError
            if g has anti-parallel edges.
        DisconnectedGraphError
            if g is not connected.
        """
        check_bound_graph(g, self.bound_short_name)
        if isinstance(k, bool) or not isinstance(k, (int, np.integer)):
            raise TypeError(f"k should be an int, got {k}.")
        if k < 1:
            raise ValueError(f"k should be a positive int, got {k}.")
        return as_theta(g, theta)

    @staticmethod
    def _lowest_mean(g: DirectedGraph, theta: ThetaAssignment, k: int) -> Optional[float]:
        """Mean of the ``k`` lowest eigenvalues, None when ``k > n``."""
        if k > g.n_vertices:
            return None
        eigenvalues = eigh(laplacian(g, theta)).eigenvalues
        return float(np.mean(eigenvalues[:k]))

    @abstractmethod
    def run_check(
        self, g: DirectedGraph, theta: ThetaAssignment, k: int, *args: Any, **kwargs: Any
    ) -> Dict[str, Any]:
        raise NotImplementedError()
