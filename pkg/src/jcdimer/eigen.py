"""Dense eigensolver for small real symmetric matrices.

Cyclic Jacobi rotations: for the tiny (<= ~20 dimensional) matrices built
here they give high relative accuracy, are fully deterministic, and do not
depend on a LAPACK backend.  The core accepts a leading batch axis so a
parameter sweep can diagonalize thousands of matrices in one vectorized
pass; each batch entry stops rotating as soon as its own off-diagonal norm
passes the tolerance, so batched and one-at-a-time runs produce identical
results.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

DEFAULT_TOL = 1e-12
DEFAULT_MAX_SWEEPS = 100
DEFAULT_DEGENERACY_TOL = 1e-9


class JacobiConvergenceError(RuntimeError):
    """Off-diagonal norm failed to reach tolerance within the sweep budget."""

    def __init__(self, message, indices=None, off_norms=None):
        super().__init__(message)
        self.indices = indices
        self.off_norms = off_norms


@dataclass(frozen=True)
class Spectrum:
    """Eigendecomposition of a real symmetric matrix.

    ``eigenvalues`` are sorted ascending, ``eigenvectors`` holds the matching
    orthonormal columns, and ``residual_norm`` is the largest 2-norm of
    ``H v_i - lambda_i v_i`` over all pairs, measured against the input
    matrix.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    residual_norm: float

    def __len__(self) -> int:
        return len(self.eigenvalues)


class GroundState(NamedTuple):
    energy: float
    vector: np.ndarray
    degenerate: bool


def offdiagonal_norm(matrices: np.ndarray) -> np.ndarray:
    """Frobenius norm of the off-diagonal part, per matrix in the stack.

    Summed over the off-diagonal entries only; subtracting the diagonal
    from the full norm would cancel catastrophically once the off-diagonal
    part is tiny against the diagonal.
    """
    off = matrices.copy()
    np.einsum("...ii->...i", off)[...] = 0.0
    return np.sqrt((off * off).sum(axis=(-2, -1)))


def _validate_stack(matrices) -> np.ndarray:
    a = np.asarray(matrices, dtype=float)
    if a.ndim != 3 or a.shape[-1] != a.shape[-2]:
        raise ValueError(f"expected a stack of square matrices, got shape {a.shape}")
    if not np.array_equal(a, np.swapaxes(a, -1, -2)):
        raise ValueError("matrix is not exactly symmetric")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix contains non-finite entries")
    return a


def _jacobi(a: np.ndarray, tol: float, max_sweeps: int):
    """Run cyclic Jacobi sweeps in place on a stack ``a`` of shape (B, n, n).

    Returns the accumulated rotation stack ``v`` (columns will become
    eigenvectors) and the number of sweeps used.  Raises
    :class:`JacobiConvergenceError` if any entry fails to converge.
    """
    n = a.shape[-1]
    v = np.broadcast_to(np.eye(n), a.shape).copy()
    if n < 2:
        return v, 0
    for sweep in range(max_sweeps):
        active = offdiagonal_norm(a) > tol
        if not active.any():
            return v, sweep
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[:, p, q]
                rotate = active & (apq != 0.0)
                if not rotate.any():
                    continue
                app = a[:, p, p]
                aqq = a[:, q, q]
                denom = np.where(rotate, 2.0 * apq, 1.0)
                # theta may overflow to inf for denormal apq; the limit
                # t -> 0 (no rotation beyond zeroing the entry) is correct
                with np.errstate(over="ignore"):
                    theta = (aqq - app) / denom
                    sign = np.where(theta >= 0.0, 1.0, -1.0)
                    t = sign / (np.abs(theta) + np.sqrt(theta * theta + 1.0))
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                c = np.where(rotate, c, 1.0)[:, None]
                s = np.where(rotate, s, 0.0)[:, None]

                colp = a[:, :, p].copy()
                colq = a[:, :, q].copy()
                a[:, :, p] = c * colp - s * colq
                a[:, :, q] = s * colp + c * colq
                rowp = a[:, p, :].copy()
                rowq = a[:, q, :].copy()
                a[:, p, :] = c * rowp - s * rowq
                a[:, q, :] = s * rowp + c * rowq
                # the annihilated pair is zeroed exactly: keeps the matrix
                # bit-symmetric and immune to last-ulp row/column mismatch
                annihilated = np.where(rotate, 0.0, a[:, p, q])
                a[:, p, q] = annihilated
                a[:, q, p] = annihilated

                vp = v[:, :, p].copy()
                vq = v[:, :, q].copy()
                v[:, :, p] = c * vp - s * vq
                v[:, :, q] = s * vp + c * vq
    off = offdiagonal_norm(a)
    bad = np.flatnonzero(off > tol)
    if bad.size == 0:
        return v, max_sweeps
    raise JacobiConvergenceError(
        f"Jacobi failed to converge within {max_sweeps} sweeps for "
        f"{bad.size} matrix(es); worst off-diagonal norm {off.max():.3e} "
        f"(tolerance {tol:.3e})",
        indices=bad, off_norms=off[bad])


def eigen_decompose_batch(matrices, tol: float = DEFAULT_TOL,
                          max_sweeps: int = DEFAULT_MAX_SWEEPS):
    """Diagonalize a stack of symmetric matrices, shape ``(B, n, n)``.

    Returns ``(eigenvalues, eigenvectors)`` with shapes ``(B, n)`` (each row
    ascending) and ``(B, n, n)`` (orthonormal columns aligned with the
    values).
    """
    if not tol > 0:
        raise ValueError(f"tolerance must be positive, got {tol}")
    a = _validate_stack(matrices).copy()
    v, _ = _jacobi(a, tol, max_sweeps)
    vals = np.einsum("...ii->...i", a).copy()
    order = np.argsort(vals, axis=-1, kind="stable")
    vals = np.take_along_axis(vals, order, axis=-1)
    vecs = np.take_along_axis(v, order[:, None, :], axis=-1)
    return vals, vecs


def eigen_decompose(matrix, tol: float = DEFAULT_TOL,
                    max_sweeps: int = DEFAULT_MAX_SWEEPS) -> Spectrum:
    """Diagonalize one symmetric matrix and package the result.

    The input must be exactly symmetric (``m[i, j] == m[j, i]`` bitwise);
    anything else is a contract violation.  ``tol`` bounds the off-diagonal
    Frobenius norm at convergence.
    """
    m = np.asarray(matrix, dtype=float)
    if m.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got shape {m.shape}")
    vals, vecs = eigen_decompose_batch(m[None], tol=tol, max_sweeps=max_sweeps)
    values, vectors = vals[0], vecs[0]
    residual = float(np.linalg.norm(m @ vectors - vectors * values[None, :], axis=0).max())
    return Spectrum(eigenvalues=values, eigenvectors=vectors, residual_norm=residual)


def fix_sign(vector: np.ndarray) -> np.ndarray:
    """Flip the global sign so the largest-magnitude component is positive."""
    lead = vector[int(np.argmax(np.abs(vector)))]
    return -vector if lead < 0.0 else vector


def ground_state(spectrum: Spectrum,
                 degeneracy_tol: float = DEFAULT_DEGENERACY_TOL) -> GroundState:
    """Lowest eigenpair with a deterministic sign convention.

    The ``degenerate`` flag is set when the gap to the next eigenvalue is
    below ``degeneracy_tol``; the returned vector is then still well defined
    thanks to the fixed rotation order and the sign convention, but it spans
    an arbitrary direction within the degenerate subspace.
    """
    if len(spectrum) == 0:
        raise ValueError("empty spectrum")
    energy = float(spectrum.eigenvalues[0])
    degenerate = (len(spectrum) > 1
                  and float(spectrum.eigenvalues[1]) - energy < degeneracy_tol)
    vector = fix_sign(spectrum.eigenvectors[:, 0].copy())
    return GroundState(energy=energy, vector=vector, degenerate=degenerate)
