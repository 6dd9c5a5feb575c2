"""Small dense linear-algebra kernel: partial-pivoting LU and triangular solves.

The majorization matrix is factored once per solver run; every iteration
then costs O(n^2).  Matrices here are small (n <= a few hundred) and, for
strong M-tensors, well conditioned, so plain partial pivoting suffices.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import solve_triangular

from .errors import SingularMatrix, ZeroDiagonal

# A pivot below this fraction of the matrix magnitude flags singularity.
PIVOT_TOL = 1e-14


@dataclass(frozen=True)
class LuFactorization:
    """Packed LU factors with a row permutation: P A = L U.

    `packed` holds the unit-lower factor strictly below the diagonal and
    the upper factor on and above it; `perm` maps factor rows to input rows.
    """

    packed: np.ndarray
    perm: np.ndarray

    @property
    def dim(self) -> int:
        return self.packed.shape[0]

    @property
    def lower(self) -> np.ndarray:
        return np.tril(self.packed, -1) + np.eye(self.dim)

    @property
    def upper(self) -> np.ndarray:
        return np.triu(self.packed)


def lu_factor(A) -> LuFactorization:
    """Factor a square matrix as P A = L U with partial (row) pivoting."""
    A = np.array(A, dtype=np.float64)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError("lu_factor requires a square matrix")
    n = A.shape[0]
    threshold = PIVOT_TOL * max(np.abs(A).max(), 1e-300)
    perm = np.arange(n)
    for k in range(n - 1):
        p = k + int(np.argmax(np.abs(A[k:, k])))
        if abs(A[p, k]) < threshold:
            raise SingularMatrix(f"pivot {A[p, k]:.3e} at column {k} below threshold")
        if p != k:
            A[[k, p]] = A[[p, k]]
            perm[[k, p]] = perm[[p, k]]
        A[k + 1 :, k] /= A[k, k]
        A[k + 1 :, k + 1 :] -= np.outer(A[k + 1 :, k], A[k, k + 1 :])
    if n > 0 and abs(A[n - 1, n - 1]) < threshold:
        raise SingularMatrix(f"pivot {A[n - 1, n - 1]:.3e} at column {n - 1} below threshold")
    return LuFactorization(A, perm)


def lu_solve(F: LuFactorization, rhs) -> np.ndarray:
    """Solve A y = rhs given the factorization of A."""
    rhs = np.asarray(rhs, dtype=np.float64)
    if rhs.shape != (F.dim,):
        raise ValueError(f"rhs length {rhs.shape} does not match dim {F.dim}")
    y = solve_triangular(F.packed, rhs[F.perm], lower=True, unit_diagonal=True)
    return solve_triangular(F.packed, y, lower=False)


def lower_tri_solve(A, rhs) -> np.ndarray:
    """Forward substitution for a lower-triangular A with nonzero diagonal."""
    A = np.asarray(A, dtype=np.float64)
    rhs = np.asarray(rhs, dtype=np.float64)
    d = np.diag(A)
    if np.any(d == 0.0):
        raise ZeroDiagonal("lower triangular solve with a zero diagonal entry")
    return solve_triangular(A, rhs, lower=True)
