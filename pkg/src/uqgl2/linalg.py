"""Sparse square matrices over complex numbers or Laurent polynomials.

Indices are 1-based.  On a tensor product of spaces of dimensions
``(m1, m2)`` the basis vector ``e_i (x) e_j`` has index ``(i - 1) * m2 + j``;
three-fold products nest the same rule.  Everything downstream, including the
exported files, depends on this convention.
"""
from __future__ import annotations

import warnings
from typing import Iterable, Mapping, Sequence

import numpy as np
import scipy.linalg

from .errors import DimensionMismatchError, SingularMatrixError
from .rings import DEFAULT_TOL, LaurentPoly


def _is_zero(v) -> bool:
    if isinstance(v, LaurentPoly):
        return v.is_zero
    return v == 0


def _abs(v) -> float:
    if isinstance(v, LaurentPoly):
        return v.max_abs_coefficient()
    return abs(v)


class SquareMatrix:
    """Immutable sparse ``dim x dim`` matrix keyed by 1-based ``(row, col)``."""

    __slots__ = ("dim", "entries")

    def __init__(self, dim: int, entries: Mapping[tuple[int, int], object] | None = None):
        if dim < 1:
            raise ValueError("dim must be positive")
        self.dim = int(dim)
        clean = {}
        for (r, c), v in (entries or {}).items():
            if not (1 <= r <= dim and 1 <= c <= dim):
                raise IndexError(f"entry ({r}, {c}) outside 1..{dim}")
            if not _is_zero(v):
                clean[(int(r), int(c))] = v
        self.entries = clean

    # constructors
    @classmethod
    def identity(cls, dim: int, one=1.0) -> "SquareMatrix":
        return cls(dim, {(i, i): one for i in range(1, dim + 1)})

    @classmethod
    def diag(cls, values: Sequence) -> "SquareMatrix":
        return cls(len(values), {(i, i): v for i, v in enumerate(values, 1)})

    @classmethod
    def unit(cls, dim: int, i: int, j: int, value=1.0) -> "SquareMatrix":
        """The matrix unit ``e_ij``."""
        return cls(dim, {(i, j): value})

    @classmethod
    def from_dense(cls, array) -> "SquareMatrix":
        a = np.asarray(array)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise DimensionMismatchError(f"not a square array: shape {a.shape}")
        rows, cols = np.nonzero(a)
        return cls(a.shape[0], {(int(r) + 1, int(c) + 1): complex(a[r, c]) for r, c in zip(rows, cols)})

    def to_dense(self) -> np.ndarray:
        out = np.zeros((self.dim, self.dim), dtype=complex)
        for (r, c), v in self.entries.items():
            if isinstance(v, LaurentPoly):
                raise TypeError("polynomial matrix has no dense numeric form; evaluate it first")
            out[r - 1, c - 1] = v
        return out

    # access
    def __getitem__(self, key):
        r, c = key
        return self.entries.get((r, c), 0)

    def __len__(self):
        return len(self.entries)

    def __repr__(self):
        return f"SquareMatrix(dim={self.dim}, nnz={len(self.entries)})"

    @property
    def is_polynomial(self) -> bool:
        return any(isinstance(v, LaurentPoly) for v in self.entries.values())

    def max_abs(self) -> float:
        return max((_abs(v) for v in self.entries.values()), default=0.0)

    def map(self, fn) -> "SquareMatrix":
        return SquareMatrix(self.dim, {k: fn(v) for k, v in self.entries.items()})

    # arithmetic
    def _check(self, other: "SquareMatrix"):
        if self.dim != other.dim:
            raise DimensionMismatchError(f"dimension {self.dim} vs {other.dim}")

    def __add__(self, other: "SquareMatrix") -> "SquareMatrix":
        self._check(other)
        out = dict(self.entries)
        for k, v in other.entries.items():
            out[k] = out[k] + v if k in out else v
        return SquareMatrix(self.dim, out)

    def __neg__(self):
        return self.map(lambda v: -v)

    def __sub__(self, other: "SquareMatrix") -> "SquareMatrix":
        return self + (-other)

    def __mul__(self, scalar) -> "SquareMatrix":
        if isinstance(scalar, SquareMatrix):
            raise TypeError("use @ for matrix products")
        return self.map(lambda v: v * scalar)

    __rmul__ = __mul__

    def __truediv__(self, scalar) -> "SquareMatrix":
        return self.map(lambda v: v / scalar)

    def __matmul__(self, other: "SquareMatrix") -> "SquareMatrix":
        self._check(other)
        rows: dict[int, list] = {}
        for (k, c), v in other.entries.items():
            rows.setdefault(k, []).append((c, v))
        out: dict = {}
        for (r, k), a in self.entries.items():
            for c, b in rows.get(k, ()):
                p = a * b
                key = (r, c)
                out[key] = out[key] + p if key in out else p
        return SquareMatrix(self.dim, out)

    def __eq__(self, other):
        if not isinstance(other, SquareMatrix):
            return NotImplemented
        return self.dim == other.dim and self.entries == other.entries

    __hash__ = None


def identity(dim: int) -> SquareMatrix:
    return SquareMatrix.identity(dim)


def kron(a: SquareMatrix, b: SquareMatrix) -> SquareMatrix:
    db = b.dim
    out = {}
    for (i, j), x in a.entries.items():
        for (k, l), y in b.entries.items():
            out[((i - 1) * db + k, (j - 1) * db + l)] = x * y
    return SquareMatrix(a.dim * db, out)


def kron_all(mats: Iterable[SquareMatrix]) -> SquareMatrix:
    mats = list(mats)
    out = mats[0]
    for m in mats[1:]:
        out = kron(out, m)
    return out


def flip_matrix(m: int, m2: int | None = None) -> SquareMatrix:
    """Flip ``e_i (x) e_j -> e_j (x) e_i`` from ``V_m (x) V_m2`` to ``V_m2 (x) V_m``."""
    if m < 1:
        raise ValueError("m must be positive")
    m2 = m if m2 is None else m2
    return SquareMatrix(m * m2, {((j - 1) * m + i, (i - 1) * m2 + j): 1.0
                                 for i in range(1, m + 1) for j in range(1, m2 + 1)})


def _triple_dims(dims) -> tuple[int, int, int]:
    if isinstance(dims, int):
        return (dims, dims, dims)
    dims = tuple(int(d) for d in dims)
    if len(dims) != 3:
        raise ValueError("need three leg dimensions")
    return dims


def triple_index(x: Sequence[int], dims: Sequence[int]) -> int:
    return ((x[0] - 1) * dims[1] + (x[1] - 1)) * dims[2] + x[2]


def embed_pair(r: SquareMatrix, legs: tuple[int, int], dims) -> SquareMatrix:
    """Let a two-leg operator act on legs ``legs = (p, q)`` of a three-leg space.

    ``dims`` is either a single dimension ``m`` or a triple ``(m1, m2, m3)``;
    the operator's first tensor factor is leg ``p`` and its second is leg ``q``.
    """
    p, q = legs
    if not (1 <= p < q <= 3):
        raise ValueError(f"legs must satisfy 1 <= p < q <= 3, got {legs}")
    dims = _triple_dims(dims)
    dp, dq = dims[p - 1], dims[q - 1]
    if r.dim != dp * dq:
        raise DimensionMismatchError(f"operator of dim {r.dim} cannot act on legs of dims {dp}x{dq}")
    other = ({1, 2, 3} - {p, q}).pop()
    out = {}
    for (row, col), v in r.entries.items():
        a, c = divmod(row - 1, dq)
        a2, c2 = divmod(col - 1, dq)
        for b in range(1, dims[other - 1] + 1):
            x = [0, 0, 0]
            y = [0, 0, 0]
            x[p - 1], x[q - 1], x[other - 1] = a + 1, c + 1, b
            y[p - 1], y[q - 1], y[other - 1] = a2 + 1, c2 + 1, b
            out[(triple_index(x, dims), triple_index(y, dims))] = v
    return SquareMatrix(dims[0] * dims[1] * dims[2], out)


def inverse(a: SquareMatrix, tol: float = DEFAULT_TOL) -> SquareMatrix:
    """Dense LU inverse with partial pivoting.

    Rows are scaled to unit max-modulus first, so the pivot threshold ``tol``
    is relative to each row's size.
    """
    if a.is_polynomial:
        raise TypeError("inverse is only available for numeric matrices")
    dense = a.to_dense()
    scale = np.abs(dense).max(axis=1)
    if np.any(scale == 0):
        raise SingularMatrixError("matrix has a zero row", pivot=0.0)
    scaled = dense / scale[:, None]
    with warnings.catch_warnings():
        # exact zero pivots are reported below with their magnitude
        warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
        lu, piv = scipy.linalg.lu_factor(scaled, check_finite=True)
    pivots = np.abs(np.diag(lu))
    if pivots.min() <= tol:
        raise SingularMatrixError(f"matrix is numerically singular (smallest pivot {pivots.min():.3e})",
                                  pivot=float(pivots.min()))
    inv = scipy.linalg.lu_solve((lu, piv), np.eye(a.dim, dtype=complex)) / scale[None, :]
    return SquareMatrix.from_dense(inv)


def residual_norm(a: SquareMatrix, b: SquareMatrix) -> float:
    """Max entrywise distance, relative to ``max(1, largest entry of a or b)``.

    Polynomial entries are measured by their largest coefficient modulus.
    """
    if a.dim != b.dim:
        raise DimensionMismatchError(f"dimension {a.dim} vs {b.dim}")
    worst = 0.0
    for k in set(a.entries) | set(b.entries):
        x, y = a.entries.get(k, 0), b.entries.get(k, 0)
        worst = max(worst, _abs(x - y))
    return worst / max(1.0, a.max_abs(), b.max_abs())
