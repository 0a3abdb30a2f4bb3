"""Averaged variational principle over finite weighted families of test vectors.

For a Hermitian ``M`` with eigenpairs ``(mu_j, u_j)``, weights ``w(z) >= 0``,
vectors ``phi(z)`` and a subset ``Z0`` of the points, for every index ``k``::

    mu_k (sum_{Z0} w |phi|^2 - sum_{j<k} sum_Z w |<phi, u_j>|^2)
        <= sum_{Z0} w <phi, M phi> - sum_{j<k} mu_j sum_Z w |<phi, u_j>|^2

Whenever ``mu_k sum_{j<k} sum_Z w |<phi, u_j>|^2 <= mu_k sum_{Z0} w |phi|^2``
this yields the eigenvalue-sum bound
``sum_{j<k} mu_j sum_Z w |<phi, u_j>|^2 <= sum_{Z0} w <phi, M phi>``.
"""
import logging
from typing import Dict, NamedTuple, Optional

import numpy as np
from sklearn.utils import check_random_state
from tqdm import tqdm

from maglap.config import BOUND_TOL, ORTHONORMAL_TOL
from maglap.exceptions import TheoremViolationError
from maglap.linalg import (
    SpectralDecomposition,
    as_frame,
    check_hermitian,
    eigh,
    extend_frame,
    random_frame,
    random_hermitian,
    restricted_trace,
)

logger = logging.getLogger(__name__)


class AvpInstance:
    """A Hermitian matrix with a finite weighted family of test vectors.

    Parameters
    ----------
    matrix : array_like
        Hermitian ``n x n`` matrix.
    weights : array_like
        Non-negative weight of every point.
    vectors : array_like
        One length-``n`` vector per point, as the rows of a 2-d array.
    z0_mask : array_like
        Boolean membership of every point in ``Z0``.

    Raises
    ------
    ValueError
        if a weight is negative or the shapes disagree.
    """

    def __init__(self, matrix, weights, vectors, z0_mask):
        self.matrix = check_hermitian(matrix)
        n = self.matrix.shape[0]
        self.weights = np.asarray(weights, dtype=float).reshape(-1)
        if n == 0:
            raise ValueError("matrix should have at least one row.")
        self.vectors = np.asarray(vectors, dtype=complex).reshape(-1, n)
        self.z0_mask = np.asarray(z0_mask, dtype=bool).reshape(-1)

        if np.any(self.weights < 0) or not np.all(np.isfinite(self.weights)):
            raise ValueError("weights should be finite and non-negative.")
        if not (self.weights.shape[0] == self.vectors.shape[0] == self.z0_mask.shape[0]):
            raise ValueError(
                f"got {self.weights.shape[0]} weights, {self.vectors.shape[0]} vectors "
                f"and {self.z0_mask.shape[0]} Z0 flags; they should match."
            )
        self._decomposition: Optional[SpectralDecomposition] = None

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    @property
    def decomposition(self) -> SpectralDecomposition:
        if self._decomposition is None:
            self._decomposition = eigh(self.matrix)
        return self._decomposition

    def scale(self) -> float:
        """Tolerance scale ``max(1, ||M||_F * sum_Z w |phi|^2)``."""
        mass = float(np.sum(self.weights * np.sum(np.abs(self.vectors) ** 2, axis=1)))
        return max(1.0, float(np.linalg.norm(self.matrix)) * mass)

    def scaled(self, factor: float) -> "AvpInstance":
        """The same instance with every weight multiplied by ``factor``."""
        return AvpInstance(self.matrix, self.weights * factor, self.vectors, self.z0_mask)

    def __repr__(self) -> str:
        return (
            f"<AvpInstance n={self.n} points={self.weights.shape[0]} "
            f"z0={int(self.z0_mask.sum())}>"
        )


class AvpReport(NamedTuple):
    """Both sides of the averaged inequality and of the eigenvalue-sum bound."""

    k: int
    lhs: float
    rhs: float
    condition_lhs: float
    condition_rhs: float
    condition_holds: bool
    sum_bound_lhs: float
    sum_bound_rhs: float
    holds: bool

    def to_dict(self) -> Dict[str, float]:
        return self._asdict()


def _evaluate(instance: AvpInstance, k: int, tol: float):
    if isinstance(k, bool) or not isinstance(k, (int, np.integer)):
        raise TypeError(f"k should be an int, got {k}.")
    if not 0 <= k <= instance.n - 1:
        raise ValueError(f"k should be in [0, {instance.n - 1}], got {k}.")

    mu, u = instance.decomposition
    w, phi, z0 = instance.weights, instance.vectors, instance.z0_mask

    # |<phi(z), u_j>|^2 for j < k, one row per point
    overlaps = np.abs(phi.conj() @ u[:, :k]) ** 2
    weighted_overlaps = w @ overlaps
    projected_mass = float(np.sum(weighted_overlaps))
    projected_energy = float(np.sum(mu[:k] * weighted_overlaps))

    norms = np.sum(np.abs(phi) ** 2, axis=1)
    rayleigh = np.sum(phi.conj() * (phi @ instance.matrix.T), axis=1).real
    mass0 = float(np.sum((w * norms)[z0]))
    energy0 = float(np.sum((w * rayleigh)[z0]))

    mu_k = float(mu[k])
    scale = instance.scale()
    return (
        mu_k * (mass0 - projected_mass),
        energy0 - projected_energy,
        mu_k * projected_mass,
        mu_k * mass0,
        projected_energy,
        energy0,
        tol * scale,
    )


def check_theorem(
    instance: AvpInstance, k: int, tol: float = BOUND_TOL, raise_on_violation: bool = True
) -> AvpReport:
    """Evaluate the averaged variational inequality at index ``k``.

    Parameters
    ----------
    instance : AvpInstance
        Matrix and weighted test vectors.
    k : int
        Eigenvalue index, ``0 <= k <= n - 1``; the eigenvector sums run over
        ``j < k``.
    tol : float, optional
        Relative tolerance, scaled by :meth:`AvpInstance.scale`, by default BOUND_TOL.
    raise_on_violation : bool, optional
        Raise when the inequality fails, by default True.

    Raises
    ------
    TheoremViolationError
        if ``lhs > rhs`` beyond tolerance and ``raise_on_violation`` is set.
    """
    lhs, rhs, c_lhs, c_rhs, s_lhs, s_rhs, slack = _evaluate(instance, k, tol)
    holds = lhs <= rhs + slack
    if not holds and raise_on_violation:
        raise TheoremViolationError("averaged variational principle", lhs, rhs)
    return AvpReport(k, lhs, rhs, c_lhs, c_rhs, c_lhs <= c_rhs + slack, s_lhs, s_rhs, holds)


def check_sum_bound(
    instance: AvpInstance, k: int, tol: float = BOUND_TOL, raise_on_violation: bool = True
) -> AvpReport:
    """Evaluate the eigenvalue-sum bound that follows when its hypothesis holds.

    The report always carries the hypothesis and conclusion values; ``holds``
    is vacuously true when the hypothesis fails.

    Raises
    ------
    TheoremViolationError
        if the hypothesis holds, the conclusion fails beyond tolerance and
        ``raise_on_violation`` is set.
    """
    lhs, rhs, c_lhs, c_rhs, s_lhs, s_rhs, slack = _evaluate(instance, k, tol)
    condition = c_lhs <= c_rhs + slack
    holds = (not condition) or s_lhs <= s_rhs + slack
    if not holds and raise_on_violation:
        raise TheoremViolationError("eigenvalue-sum bound", s_lhs, s_rhs)
    return AvpReport(k, lhs, rhs, c_lhs, c_rhs, condition, s_lhs, s_rhs, holds)


def basis_instance(matrix, frame, k: Optional[int] = None, tol: float = ORTHONORMAL_TOL) -> AvpInstance:
    """Counting measure on an orthonormal basis with ``Z0`` the first ``k`` vectors.

    A frame of fewer than ``n`` vectors is completed to a basis first. With
    this instance the sum bound reads ``sum_{j<k} mu_j <= sum_{l<k} <v_l, M v_l>``.

    Raises
    ------
    NotOrthonormalError
        if the frame is not orthonormal.
    """
    given_frame = as_frame(frame)
    basis = extend_frame(given_frame, tol=tol)
    n = basis.shape[0]
    given = given_frame.shape[1] if k is None else k
    if not 0 <= given <= n:
        raise ValueError(f"k should be in [0, {n}], got {given}.")
    mask = np.zeros(n, dtype=bool)
    mask[:given] = True
    return AvpInstance(matrix, np.ones(n), basis.T, mask)


def fan_minimum(matrix, k: int) -> float:
    """``sum_{j<k} mu_j``, the infimum of ``Tr(M|_V)`` over ``k``-dimensional ``V``.

    Examples
    --------
    >>> round(fan_minimum(np.diag([3.0, 1.0, 2.0]), 2), 12)
    3.0
    """
    a = check_hermitian(matrix)
    if not 1 <= k <= a.shape[0]:
        raise ValueError(f"k should be in [1, {a.shape[0]}], got {k}.")
    return float(np.sum(eigh(a).eigenvalues[:k]))


# -----------------------------------------------------------------------------
# --------------------------------- Self test ---------------------------------
# -----------------------------------------------------------------------------


def random_instance(n: int, n_points: int, seed=None) -> AvpInstance:
    """Random Hermitian matrix, weights in ``[0, 2)``, Gaussian vectors and ``Z0``."""
    rs = check_random_state(seed)
    matrix = random_hermitian(n, rs)
    weights = rs.uniform(0.0, 2.0, size=n_points)
    vectors = rs.normal(size=(n_points, n)) + 1j * rs.normal(size=(n_points, n))
    z0 = rs.random_sample(n_points) < 0.5
    return AvpInstance(matrix, weights, vectors, z0)


def run_selftest(
    trials: int = 300, seed=None, max_n: int = 8, verbose: bool = False, tol: float = 1e-9
) -> Dict[str, Dict[str, int]]:
    """Run the random suites and count passes and failures.

    Suites: ``theorem`` (the averaged inequality), ``sum_bound`` (the
    conclusion under its hypothesis) and ``basis`` (the orthonormal-basis
    instance reproduces ``sum mu_j <= Tr(M|_V)`` within ``tol``).

    Returns
    -------
    Dict[str, Dict[str, int]]
        ``{suite: {"passed": p, "failed": f}}``.
    """
    rs = check_random_state(seed)
    counts = {
        name: {"passed": 0, "failed": 0} for name in ("theorem", "sum_bound", "basis")
    }

    def tally(name: str, ok: bool) -> None:
        counts[name]["passed" if ok else "failed"] += 1

    for _ in tqdm(range(trials), disable=not verbose):
        n = int(rs.randint(1, max_n + 1))
        instance = random_instance(n, int(rs.randint(1, 3 * n + 1)), rs)
        k = int(rs.randint(0, n))
        tally("theorem", check_theorem(instance, k, raise_on_violation=False).holds)
        tally("sum_bound", check_sum_bound(instance, k, raise_on_violation=False).holds)

        kk = int(rs.randint(1, n + 1))
        norm = max(1.0, float(np.linalg.norm(instance.matrix)))
        frame = random_frame(n, kk, rs)
        if kk < n:
            report = check_sum_bound(basis_instance(instance.matrix, frame), kk, raise_on_violation=False)
            ok = (
                report.condition_holds
                and report.holds
                and abs(report.sum_bound_lhs - fan_minimum(instance.matrix, kk)) <= tol * norm
                and abs(report.sum_bound_rhs - restricted_trace(instance.matrix, frame)) <= tol * norm
            )
        else:
            ok = fan_minimum(instance.matrix, kk) <= restricted_trace(instance.matrix, frame) + tol * norm
        tally("basis", ok)

    failed = sum(c["failed"] for c in counts.values())
    logger.info("averaged variational self test: %d trials, %d failures", trials, failed)
    if counts["theorem"]["failed"] or counts["sum_bound"]["failed"]:
        logger.warning("self test found violations: %s", counts)
    return counts

