"""Dense complex Hermitian kernel.

Matrices are plain ``numpy`` arrays. Inner products are conjugate linear in
the first argument. The default eigensolver is a cyclic complex Jacobi
iteration, deterministic for a fixed input; ``method="lapack"`` delegates to
:func:`scipy.linalg.eigh` as an independent reference.
"""
import logging
from typing import NamedTuple, Sequence, Union

import numpy as np
import scipy.linalg
from scipy.stats import unitary_group
from sklearn.utils import check_random_state

from maglap.config import (
    EIGH_MAX_SWEEPS,
    EIGH_TOL,
    HERMITIAN_TOL,
    ORTHONORMAL_TOL,
    ZERO_EIGENVALUE_RTOL,
)
from maglap.exceptions import (
    EighConvergenceError,
    NotHermitianError,
    NotOrthonormalError,
)

logger = logging.getLogger(__name__)

Frame = Union[np.ndarray, Sequence[np.ndarray]]


class SpectralDecomposition(NamedTuple):
    """Ascending eigenvalues and the matching orthonormal eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def residual(self, m: np.ndarray) -> float:
        """Largest ``||M u_j - mu_j u_j||_2`` over the eigenpairs."""
        r = m @ self.eigenvectors - self.eigenvectors * self.eigenvalues
        return float(np.max(np.linalg.norm(r, axis=0))) if r.size else 0.0

    def orthonormality(self) -> float:
        """Largest entry of ``|U*U - I|``."""
        u = self.eigenvectors
        return float(np.max(np.abs(u.conj().T @ u - np.eye(u.shape[1])))) if u.size else 0.0

    def reconstruct(self) -> np.ndarray:
        u = self.eigenvectors
        return (u * self.eigenvalues) @ u.conj().T


# -----------------------------------------------------------------------------
# ------------------------------- Validation ----------------------------------
# -----------------------------------------------------------------------------


def as_matrix(m) -> np.ndarray:
    """Convert to a finite complex 2-d array."""
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2:
        raise ValueError(f"a matrix should be 2-dimensional, got shape {a.shape}.")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix entries should be finite.")
    return a


def check_hermitian(m, tol: float = HERMITIAN_TOL) -> np.ndarray:
    """Return ``m`` as a complex array after checking it is Hermitian.

    The test is ``||M - M*||_max <= tol * max(1, ||M||_max)``.

    Raises
    ------
    NotHermitianError
        if ``m`` is not square or not Hermitian within ``tol``.
    """
    a = as_matrix(m)
    if a.shape[0] != a.shape[1]:
        raise NotHermitianError(f"a Hermitian matrix should be square, got {a.shape}.")
    if a.size == 0:
        return a
    deviation = np.max(np.abs(a - a.conj().T))
    scale = max(1.0, float(np.max(np.abs(a))))
    if deviation > tol * scale:
        raise NotHermitianError(
            f"matrix is not Hermitian: max |M - M*| = {deviation:.3e}."
        )
    return a


def orthonormal_deviation(frame: Frame) -> float:
    f = as_frame(frame)
    if f.size == 0:
        return 0.0
    return float(np.max(np.abs(f.conj().T @ f - np.eye(f.shape[1]))))


def as_frame(frame: Frame) -> np.ndarray:
    """Stack a list of vectors as columns; 2-d arrays are taken as columns already."""
    if isinstance(frame, np.ndarray) and frame.ndim == 2:
        return frame.astype(complex)
    vectors = [np.asarray(v, dtype=complex) for v in frame]
    if not vectors:
        raise ValueError("frame should contain at least one vector.")
    return np.column_stack(vectors)


def check_orthonormal(frame: Frame, tol: float = ORTHONORMAL_TOL) -> np.ndarray:
    """Return the frame as columns after checking ``||F*F - I||_max <= tol``."""
    f = as_frame(frame)
    deviation = orthonormal_deviation(f)
    if deviation > tol:
        raise NotOrthonormalError(deviation, tol)
    return f


# -----------------------------------------------------------------------------
# ------------------------------- Eigensolvers --------------------------------
# -----------------------------------------------------------------------------


def _off_diagonal_norm(a: np.ndarray) -> float:
    return float(np.linalg.norm(a - np.diag(np.diagonal(a))))


def _jacobi(a: np.ndarray, tol: float, max_sweeps: int) -> SpectralDecomposition:
    a = a.copy()
    n = a.shape[0]
    v = np.eye(n, dtype=complex)
    np.fill_diagonal(a, np.diagonal(a).real)
    threshold = tol * max(1.0, float(np.linalg.norm(a)))
    # entries below this never push the off-diagonal norm past threshold
    negligible = threshold / max(n, 1)

    sweep = 0
    off = _off_diagonal_norm(a)
    while off > threshold:
        if sweep == max_sweeps:
            raise EighConvergenceError(off, sweep)
        for p in range(n - 1):
            for q in range(p + 1, n):
                r = abs(a[p, q])
                if r <= negligible:
                    continue
                phi = np.angle(a[p, q])
                # e^{-i phi} and its conjugate
                e_minus = complex(np.cos(phi), -np.sin(phi))
                e_plus = e_minus.conjugate()

                theta = (a[q, q].real - a[p, p].real) / (2.0 * r)
                if theta == 0.0:
                    t = 1.0
                elif abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = np.sign(theta) / (abs(theta) + np.sqrt(theta * theta + 1.0))
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c

                col_p, col_q = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * col_p - s * e_minus * col_q
                a[:, q] = s * col_p + c * e_minus * col_q
                row_p, row_q = a[p, :].copy(), a[q, :].copy()
                a[p, :] = c * row_p - s * e_plus * row_q
                a[q, :] = s * row_p + c * e_plus * row_q
                a[p, q] = a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real

                vec_p, vec_q = v[:, p].copy(), v[:, q].copy()
                v[:, p] = c * vec_p - s * e_minus * vec_q
                v[:, q] = s * vec_p + c * e_minus * vec_q
        sweep += 1
        off = _off_diagonal_norm(a)

    logger.debug("Jacobi converged in %d sweeps (n=%d, off=%.2e)", sweep, n, off)
    w = np.diagonal(a).real.copy()
    order = np.argsort(w, kind="stable")
    return SpectralDecomposition(w[order], v[:, order])


def eigh(
    m,
    method: str = "jacobi",
    tol: float = EIGH_TOL,
    max_sweeps: int = EIGH_MAX_SWEEPS,
) -> SpectralDecomposition:
    """Eigendecomposition of a Hermitian matrix, eigenvalues ascending.

    Parameters
    ----------
    m : array_like
        A Hermitian matrix.
    method : str, optional
        ``"jacobi"`` (cyclic complex Jacobi, the default) or ``"lapack"``
        (:func:`scipy.linalg.eigh`).
    tol : float, optional
        Jacobi stops when the off-diagonal Frobenius norm is at most
        ``tol * max(1, ||M||_F)``, by default EIGH_TOL.
    max_sweeps : int, optional
        Maximum number of Jacobi sweeps, by default EIGH_MAX_SWEEPS.

    Returns
    -------
    SpectralDecomposition
        Eigenvalues in ascending order and orthonormal eigenvector columns.

    Raises
    ------
    NotHermitianError
        if ``m`` is not Hermitian.
    EighConvergenceError
        if Jacobi does not converge within ``max_sweeps`` sweeps.

    Examples
    --------
    >>> np.allclose(eigh([[1, -1], [-1, 1]]).eigenvalues, [0, 2])
    True
    """
    a = check_hermitian(m)
    if method == "jacobi":
        return _jacobi(a, tol, max_sweeps)
    if method == "lapack":
        w, v = scipy.linalg.eigh(a)
        return SpectralDecomposition(w, v)
    raise ValueError(f"method should be 'jacobi' or 'lapack', got {method!r}.")


def eigvalsh(m, method: str = "jacobi") -> np.ndarray:
    """Ascending eigenvalues of a Hermitian matrix."""
    return eigh(m, method=method).eigenvalues


def eigvalsh_batch(stack: np.ndarray) -> np.ndarray:
    """Ascending eigenvalues of a stack of Hermitian matrices, shape ``(..., n)``."""
    stack = np.asarray(stack, dtype=complex)
    if stack.ndim < 2 or stack.shape[-1] != stack.shape[-2]:
        raise ValueError(f"expected a stack of square matrices, got shape {stack.shape}.")
    return np.linalg.eigvalsh(stack)


def zero_threshold(eigenvalues: np.ndarray, rtol: float = ZERO_EIGENVALUE_RTOL) -> float:
    """Level below which an eigenvalue counts as zero: ``rtol * max(1, lambda_max)``."""
    eigenvalues = np.asarray(eigenvalues, dtype=float)
    top = float(np.max(eigenvalues)) if eigenvalues.size else 0.0
    return rtol * max(1.0, top)


# -----------------------------------------------------------------------------
# ------------------------------- Basic algebra -------------------------------
# -----------------------------------------------------------------------------


def determinant(m) -> float:
    """Determinant of a Hermitian matrix as the product of its eigenvalues.

    Examples
    --------
    >>> determinant(np.eye(3))
    1.0
    """
    return float(np.prod(eigh(m).eigenvalues))


def trace(m) -> float:
    """Real part of the trace."""
    a = as_matrix(m)
    if a.shape[0] != a.shape[1]:
        raise ValueError(f"trace needs a square matrix, got shape {a.shape}.")
    return float(np.trace(a).real)


def matmul(a, b) -> np.ndarray:
    a, b = as_matrix(a), as_matrix(b)
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"shape mismatch: {a.shape} @ {b.shape}.")
    return a @ b


def adjoint(a) -> np.ndarray:
    """Conjugate transpose."""
    return as_matrix(a).conj().T


def inner(f, g) -> complex:
    """``<f, g> = sum conj(f) g``, conjugate linear in ``f``.

    Examples
    --------
    >>> inner([1j, 0], [1j, 0]).real
    1.0
    """
    f, g = np.asarray(f, dtype=complex), np.asarray(g, dtype=complex)
    if f.shape != g.shape:
        raise ValueError(f"vectors should have equal shapes, got {f.shape} and {g.shape}.")
    return complex(np.vdot(f, g))


def restricted_trace(m, basis: Frame, tol: float = ORTHONORMAL_TOL) -> float:
    """``Tr(M|_V) = sum_i <v_i, M v_i>`` for an orthonormal basis of ``V``.

    Parameters
    ----------
    m : array_like
        A Hermitian matrix.
    basis : Union[np.ndarray, Sequence[np.ndarray]]
        Orthonormal vectors, as a list or as the columns of a 2-d array.
    tol : float, optional
        Orthonormality tolerance, by default ORTHONORMAL_TOL.

    Raises
    ------
    NotOrthonormalError
        if the vectors are not orthonormal; the error carries the largest
        Gram deviation.
    """
    a = check_hermitian(m)
    f = check_orthonormal(basis, tol=tol)
    if f.shape[0] != a.shape[0]:
        raise ValueError(
            f"basis vectors have length {f.shape[0]}, matrix has order {a.shape[0]}."
        )
    return float(np.trace(f.conj().T @ a @ f).real)


# -----------------------------------------------------------------------------
# ------------------------------- Random inputs -------------------------------
# -----------------------------------------------------------------------------


def random_hermitian(n: int, seed=None, scale: float = 1.0) -> np.ndarray:
    """A random Hermitian matrix with Gaussian entries."""
    rs = check_random_state(seed)
    x = rs.normal(scale=scale, size=(n, n)) + 1j * rs.normal(scale=scale, size=(n, n))
    return (x + x.conj().T) / 2


def random_unitary(n: int, seed=None) -> np.ndarray:
    """A Haar-random ``n x n`` unitary matrix."""
    rs = check_random_state(seed)
    if n == 1:
        phi = rs.uniform(-np.pi, np.pi)
        return np.array([[complex(np.cos(phi), np.sin(phi))]])
    return unitary_group.rvs(n, random_state=rs)


def random_frame(n: int, k: int, seed=None) -> np.ndarray:
    """``k`` random orthonormal columns in ``C^n``."""
    if not 0 <= k <= n:
        raise ValueError(f"k should be in [0, {n}], got {k}.")
    return random_unitary(n, seed)[:, :k]


def extend_frame(frame: Frame, tol: float = ORTHONORMAL_TOL) -> np.ndarray:
    """Complete an orthonormal frame to an orthonormal basis of ``C^n``.

    The given vectors stay the leading columns.
    """
    f = check_orthonormal(frame, tol=tol)
    complement = scipy.linalg.null_space(f.conj().T)
    return np.hstack([f, complement])
