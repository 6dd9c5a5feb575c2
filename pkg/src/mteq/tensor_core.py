"""Dense tensor storage and the contraction primitives used by every solver.

A tensor of order m and dimension n is stored as a dense numpy array of
shape (n,) * m.  Indices are 1-based in external formats and 0-based
internally.  All operations here are pure functions over immutable inputs.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatch, NegativePowerRHS

# Entries of x^[m-1] in [-ROOT_CLAMP_TOL, 0) are treated as rounding noise
# and clamped to zero before taking the (m-1)-th root.
ROOT_CLAMP_TOL = 1e-14


@dataclass(frozen=True)
class DenseTensor:
    """Order-m, dimension-n real tensor with dense storage."""

    array: np.ndarray

    def __post_init__(self):
        arr = np.ascontiguousarray(np.asarray(self.array, dtype=np.float64))
        if arr.ndim < 2:
            raise ValueError("tensor order must be at least 2")
        n = arr.shape[0]
        if any(s != n for s in arr.shape):
            raise ValueError("all tensor modes must have equal dimension")
        if not np.all(np.isfinite(arr)):
            raise ValueError("tensor entries must be finite")
        arr.flags.writeable = False
        object.__setattr__(self, "array", arr)

    @property
    def order(self) -> int:
        return self.array.ndim

    @property
    def dim(self) -> int:
        return self.array.shape[0]

    @classmethod
    def from_entries(cls, order: int, dim: int, entries) -> "DenseTensor":
        """Build a tensor from sparse records [i1, ..., im, value], 1-based.

        Unlisted positions are zero; duplicate index tuples are an error.
        """
        arr = np.zeros((dim,) * order)
        seen = set()
        for rec in entries:
            *idx, value = rec
            if len(idx) != order:
                raise ValueError(f"entry record has {len(idx)} indices, expected {order}")
            key = tuple(int(i) for i in idx)
            if any(i < 1 or i > dim for i in key):
                raise ValueError(f"index {key} out of range for dim {dim}")
            if key in seen:
                raise ValueError(f"duplicate entry at index {key}")
            seen.add(key)
            arr[tuple(i - 1 for i in key)] = float(value)
        return cls(arr)

    def entry(self, *index: int) -> float:
        """Entry at a 1-based multi-index."""
        return float(self.array[tuple(i - 1 for i in index)])


@dataclass(frozen=True)
class MajorizationMatrix:
    """The n x n matrix M with m_ij = m_{ij...j}, plus a cached LU factorization."""

    values: np.ndarray
    _lu_cache: list = field(default_factory=list, repr=False, compare=False)

    def __post_init__(self):
        vals = np.ascontiguousarray(np.asarray(self.values, dtype=np.float64))
        if vals.ndim != 2 or vals.shape[0] != vals.shape[1]:
            raise ValueError("majorization matrix must be square")
        vals.flags.writeable = False
        object.__setattr__(self, "values", vals)

    @property
    def dim(self) -> int:
        return self.values.shape[0]

    @property
    def diagonal(self) -> np.ndarray:
        return np.diag(self.values)

    def lu(self):
        """LU factorization with partial pivoting, computed once and reused."""
        if not self._lu_cache:
            from .dense_linalg import lu_factor

            self._lu_cache.append(lu_factor(self.values))
        return self._lu_cache[0]


@dataclass(frozen=True)
class ScaledSystem:
    """A system divided through by the largest absolute entry of (tensor, rhs)."""

    tensor: DenseTensor
    rhs: np.ndarray
    scale: float


def _as_vector(x, n: int) -> np.ndarray:
    v = np.asarray(x, dtype=np.float64)
    if v.shape != (n,):
        raise DimensionMismatch(f"expected vector of length {n}, got shape {v.shape}")
    return v


def contract_full(T: DenseTensor, x) -> np.ndarray:
    """The vector T x^{m-1}: entry i is the sum over trailing multi-indices
    of T(i, i2, ..., im) * x_{i2} ... x_{im}."""
    x = _as_vector(x, T.dim)
    a = T.array
    for _ in range(T.order - 1):
        a = np.tensordot(a, x, axes=([-1], [0]))
    return a


def contract_matrix(T: DenseTensor, x) -> np.ndarray:
    """The n x n matrix T x^{m-2}; satisfies (T x^{m-2}) x = T x^{m-1}."""
    x = _as_vector(x, T.dim)
    a = T.array
    for _ in range(T.order - 2):
        a = np.tensordot(a, x, axes=([-1], [0]))
    return a


def residual(T: DenseTensor, b, x) -> np.ndarray:
    """F(x) = T x^{m-1} - b."""
    b = _as_vector(b, T.dim)
    return contract_full(T, x) - b


def elementwise_power(x, p: float) -> np.ndarray:
    """Entrywise power x^[p].  Fractional p requires nonnegative entries."""
    x = np.asarray(x, dtype=np.float64)
    if p != int(p) and np.any(x < 0):
        raise NegativePowerRHS(f"negative entry under fractional power {p}")
    return x**p

def elementwise_root(v, m: int) -> np.ndarray:
    """x = v^[1/(m-1)], clamping rounding-scale negatives to zero.

    Raises NegativePowerRHS if any entry is below -ROOT_CLAMP_TOL.
    """
    v = np.asarray(v, dtype=np.float64)
    if np.any(v < -ROOT_CLAMP_TOL):
        raise NegativePowerRHS(
            f"cannot take a real (m-1)-th root: min entry {v.min():.3e}"
        )
    v = np.where(v < 0.0, 0.0, v)
    return v ** (1.0 / (m - 1))


def majorization(T: DenseTensor) -> MajorizationMatrix:
    """Extract the majorization matrix M with M[i, j] = T(i, j, j, ..., j)."""
    j = np.arange(T.dim)
    vals = T.array[(slice(None),) + (j,) * (T.order - 1)]
    return MajorizationMatrix(np.array(vals))


def split_offmajor(T: DenseTensor) -> DenseTensor:
    """The off-major part: T with all (i, j, ..., j) entries zeroed.

    The complement (T minus the result) acts on x as M x^[m-1].
    """
    arr = T.array.copy()
    j = np.arange(T.dim)
    arr[(slice(None),) + (j,) * (T.order - 1)] = 0.0
    return DenseTensor(arr)


def identity_tensor(m: int, n: int) -> DenseTensor:
    """The tensor with ones on the main diagonal (i, i, ..., i) and zeros elsewhere."""
    arr = np.zeros((n,) * m)
    i = np.arange(n)
    arr[(i,) * m] = 1.0
    return DenseTensor(arr)


def semi_symmetrize(T: DenseTensor) -> DenseTensor:
    """Average over all permutations of the trailing m-1 indices.

    Leaves contract_full unchanged for every x and is idempotent.
    """
    m = T.order
    perms = list(itertools.permutations(range(1, m)))
    acc = np.zeros_like(T.array)
    for p in perms:
        acc += np.transpose(T.array, (0,) + p)
    return DenseTensor(acc / len(perms))


def scale_system(T: DenseTensor, b) -> ScaledSystem:
    """Divide tensor and right side by their joint largest absolute entry."""
    b = _as_vector(b, T.dim)
    w = max(np.abs(T.array).max(), np.abs(b).max())
    if w == 0.0:
        raise ValueError("cannot scale an identically zero system")
    return ScaledSystem(DenseTensor(T.array / w), b / w, float(w))
