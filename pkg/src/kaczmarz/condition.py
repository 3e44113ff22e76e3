"""Singular values and the scaled condition number.

Singular values come from a one-sided Jacobi sweep: columns of the working
matrix are rotated in pairs until all pairwise inner products are negligible
relative to the column norms, at which point the column norms are the
singular values.  Convergence is driven to a 1e-12 relative off-diagonal
threshold, which is far tighter than any tolerance the callers assert.
"""

from __future__ import annotations

import numpy as np

from .errors import DimensionError, SingularMatrixError
from .linalg import as_matrix

_OFFDIAG_TOL = 1e-12
_MAX_SWEEPS = 60
_RANK_TOL = 1e-12


def singular_values(a: np.ndarray) -> np.ndarray:
    """All min(m, n) singular values of a, descending."""
    a = as_matrix(a, "a")
    m, n = a.shape
    # work on the tall orientation so columns are the short dimension
    work = a.copy() if m >= n else a.T.copy()
    cols = work.shape[1]
    for _ in range(_MAX_SWEEPS):
        off = 0.0
        for p in range(cols - 1):
            for q in range(p + 1, cols):
                app = float(work[:, p] @ work[:, p])
                aqq = float(work[:, q] @ work[:, q])
                apq = float(work[:, p] @ work[:, q])
                if app * aqq == 0.0:
                    continue
                rel = abs(apq) / np.sqrt(app * aqq)
                off = max(off, rel)
                if rel <= _OFFDIAG_TOL:
                    continue
                theta = 0.5 * np.arctan2(2.0 * apq, app - aqq)
                c, s = np.cos(theta), np.sin(theta)
                wp = c * work[:, p] + s * work[:, q]
                wq = -s * work[:, p] + c * work[:, q]
                work[:, p], work[:, q] = wp, wq
        if off <= _OFFDIAG_TOL:
            break
    sv = np.sqrt(np.sum(work * work, axis=0))
    return np.sort(sv)[::-1]


def charpoly_singular_values(a: np.ndarray) -> np.ndarray:
    """Singular values from closed-form Gram eigenvalues, descending.

    Brute-force cross-check for tiny matrices: eigenvalues of A^T A (or
    A A^T, whichever is smaller) come from the explicit quadratic or cubic
    characteristic polynomial, so no iterative method is involved.  Only
    Gram sizes 1, 2, and 3 are supported.
    """
    a = as_matrix(a, "a")
    m, n = a.shape
    g = a.T @ a if n <= m else a @ a.T
    size = g.shape[0]
    if size == 1:
        eig = np.array([g[0, 0]])
    elif size == 2:
        tr = g[0, 0] + g[1, 1]
        det = g[0, 0] * g[1, 1] - g[0, 1] * g[1, 0]
        disc = max(tr * tr - 4.0 * det, 0.0)
        root = np.sqrt(disc)
        eig = np.array([(tr + root) / 2.0, (tr - root) / 2.0])
    elif size == 3:
        # trigonometric closed form for symmetric 3x3 eigenvalues
        q = np.trace(g) / 3.0
        p1 = g[0, 1] ** 2 + g[0, 2] ** 2 + g[1, 2] ** 2
        p2 = sum((g[i, i] - q) ** 2 for i in range(3)) + 2.0 * p1
        if p2 == 0.0:
            eig = np.array([q, q, q])
        else:
            p = np.sqrt(p2 / 6.0)
            bmat = (g - q * np.eye(3)) / p
            detb = (
                bmat[0, 0] * (bmat[1, 1] * bmat[2, 2] - bmat[1, 2] * bmat[2, 1])
                - bmat[0, 1] * (bmat[1, 0] * bmat[2, 2] - bmat[1, 2] * bmat[2, 0])
                + bmat[0, 2] * (bmat[1, 0] * bmat[2, 1] - bmat[1, 1] * bmat[2, 0])
            )
            r = min(max(detb / 2.0, -1.0), 1.0)
            phi = np.arccos(r) / 3.0
            hi = q + 2.0 * p * np.cos(phi)
            lo = q + 2.0 * p * np.cos(phi + 2.0 * np.pi / 3.0)
            eig = np.array([hi, 3.0 * q - hi - lo, lo])
    else:
        raise DimensionError(
            f"closed-form singular values support min(m, n) <= 3, got {min(m, n)}"
        )
    eig = np.clip(eig, 0.0, None)
    return np.sort(np.sqrt(eig))[::-1]


def scaled_condition_number(a: np.ndarray) -> float:
    """Frobenius norm divided by the smallest singular value.

    Requires full column rank (after transposing wide inputs); raises
    SingularMatrixError when the smallest singular value vanishes to
    working precision.
    """
    a = as_matrix(a, "a")
    sv = singular_values(a)
    frob = float(np.sqrt(np.sum(a * a)))
    smallest = float(sv[-1])
    if smallest <= _RANK_TOL * frob:
        raise SingularMatrixError(
            f"smallest singular value {smallest:.3e} is zero to working precision"
        )
    return frob / smallest
