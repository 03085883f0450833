"""Dense complex linear-algebra kernel.

Matrices are plain ``numpy`` complex arrays; everything in this package is
small (n <= 64), dense, and double precision.  The three operations here are
thin, contract-checked wrappers over LAPACK: extreme Hermitian eigenpair,
operator 2-norm, and a pivot-audited linear solve.
"""

from __future__ import annotations

import numpy as np
import scipy.linalg

from .config import TOL


class NonHermitianError(ValueError):
    """Input fails the Hermitian check; ``index`` is the offending entry."""

    def __init__(self, index, deviation):
        self.index = index
        self.deviation = deviation
        super().__init__(
            f"matrix is not Hermitian: |H - H*| = {deviation:.3e} at entry {index}"
        )


class SingularMatrixError(ValueError):
    """Pivot collapsed during elimination; ``stage`` is the failing column."""

    def __init__(self, stage, pivot):
        self.stage = stage
        self.pivot = pivot
        super().__init__(f"singular to tolerance at pivot stage {stage}: |u| = {pivot:.3e}")


def as_matrix(entries) -> np.ndarray:
    """Coerce to a square, finite complex matrix (copying)."""
    m = np.array(entries, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    if not np.isfinite(m).all():
        raise ValueError("matrix contains NaN or Inf entries")
    return m


def herm_eig_max(h, tol: float | None = None):
    """Largest eigenvalue and a unit eigenvector of a Hermitian matrix.

    Rejects input whose entrywise deviation from ``H*`` exceeds ``tol``
    (default ``TOL.hermitian_check``).
    """
    h = as_matrix(h)
    tol = TOL.hermitian_check if tol is None else tol
    dev = np.abs(h - h.conj().T)
    worst = np.unravel_index(np.argmax(dev), dev.shape)
    if dev[worst] > tol:
        raise NonHermitianError(worst, float(dev[worst]))
    w, v = np.linalg.eigh(h)
    return float(w[-1]), v[:, -1]


def op2norm(m) -> float:
    """Operator 2-norm (largest singular value)."""
    return float(np.linalg.norm(as_matrix(m), 2))


def solve(m, b) -> np.ndarray:
    """Solve ``M X = B`` by partially pivoted LU, auditing the pivots.

    A pivot of magnitude below ``TOL.pivot_ratio * max|M|`` raises
    :class:`SingularMatrixError` carrying the failing stage.
    """
    m = as_matrix(m)
    b = np.array(b, dtype=complex)
    lu, piv = scipy.linalg.lu_factor(m, check_finite=False)
    pivots = np.abs(np.diag(lu))
    floor = TOL.pivot_ratio * max(np.abs(m).max(), 1e-300)
    bad = np.nonzero(pivots <= floor)[0]
    if bad.size:
        raise SingularMatrixError(int(bad[0]), float(pivots[bad[0]]))
    return scipy.linalg.lu_solve((lu, piv), b, check_finite=False)
