"""Exceptions raised by maglap.

The command line maps these onto exit codes: theorem violations and internal
inconsistencies exit with 1, input errors with 2 and exhausted budgets with 3.
"""
from typing import Optional

import numpy as np


class MaglapError(Exception):
    """Base class of every maglap error."""


class GraphConstructionError(MaglapError, ValueError):
    """A directed graph violates the loop, duplicate or vertex-range rules."""


class GraphFormatError(MaglapError, ValueError):
    """A graph text file could not be parsed."""

    def __init__(self, message: str, line: Optional[int] = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class DisconnectedGraphError(MaglapError, ValueError):
    """An operation that needs a connected graph received a disconnected one."""

    def __init__(self, operation: str):
        super().__init__(
            f"{operation} requires a connected graph. Split the graph with "
            "maglap.graph.connected_components and apply it to each component."
        )
        self.operation = operation


class NotHermitianError(MaglapError, ValueError):
    """A matrix expected to be Hermitian is not."""


class NotOrthonormalError(MaglapError, ValueError):
    """A family of vectors expected to be orthonormal is not."""

    def __init__(self, deviation: float, tol: float):
        super().__init__(
            f"vectors are not orthonormal: max Gram deviation {deviation:.3e} "
            f"exceeds {tol:.1e}."
        )
        self.deviation = deviation


class NotUnimodularError(MaglapError, ValueError):
    """A gauge phase has an entry whose modulus is not 1."""


class ThetaMismatchError(MaglapError, ValueError):
    """A theta assignment is keyed to a different graph."""


class AntisymmetryError(MaglapError, ValueError):
    """theta(uv) != -theta(vu) on an anti-parallel pair of edges."""


class EighConvergenceError(MaglapError, np.linalg.LinAlgError):
    """The Jacobi eigensolver did not converge."""

    def __init__(self, residual: float, sweeps: int):
        super().__init__(
            f"Jacobi eigensolver did not converge after {sweeps} sweeps "
            f"(off-diagonal norm {residual:.3e})."
        )
        self.residual = residual
        self.sweeps = sweeps


class BudgetExceededError(MaglapError):
    """A search or enumeration would exceed its configured budget."""

    def __init__(self, message: str, budget: int, required: Optional[int] = None):
        super().__init__(message)
        self.budget = budget
        self.required = required


class SupergraphNotFoundError(MaglapError):
    """No regular supergraph of the requested degree exists."""

    def __init__(self, degree: int, tried: int):
        super().__init__(
            f"no {degree}-regular supergraph found after exhausting the search "
            f"({tried} nodes tried)."
        )
        self.degree = degree
        self.tried = tried


class WitnessExtractionError(MaglapError):
    """A kernel vector exists but does not round to a proper colouring."""


class TheoremViolationError(MaglapError, AssertionError):
    """A proven inequality failed numerically, which indicates a bug."""

    def __init__(self, name: str, lhs: float, rhs: float):
        super().__init__(f"{name} violated: lhs={lhs!r} > rhs={rhs!r}.")
        self.name = name
        self.lhs = lhs
        self.rhs = rhs


class ConsistencyError(MaglapError, AssertionError):
    """Two independent computations of the same quantity disagree."""
