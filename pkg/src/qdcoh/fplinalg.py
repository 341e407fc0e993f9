"""Dense exact linear algebra over prime fields F_p.

Matrices are numpy ``int64`` arrays with entries reduced to ``[0, p)``.
Row reduction is blocked so that almost all arithmetic happens inside
BLAS matrix products on ``float32``/``float64`` work arrays; with block
width ``PANEL`` every accumulated integer stays below
``(p - 1)**2 * PANEL``, so the float arithmetic is exact whenever that
bound fits the mantissa.  Primes too large for the ``float64`` mantissa
fall back to a plain vectorised ``int64`` elimination (valid for
``p < 2**31`` because a single product then fits ``int64``).

All outputs are canonical: the reduced row echelon form of a matrix is
unique, pivot columns are the lexicographically first independent
columns, and kernel bases are read off the RREF in free-column order.
Results are therefore reproducible bit for bit across runs, block
sizes and elimination paths.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "FpMatrix",
    "rank_and_reduce",
    "kernel_basis",
    "cokernel_data",
    "matmul_mod",
]

#: Column-panel width for the blocked elimination.  Exactness bounds
#: below are stated in terms of this constant; change with care.
PANEL = 128

_F32_LIMIT = 2**24  # float32 integers are exact strictly below this
_F64_LIMIT = 2**53  # float64 integers are exact strictly below this


def _work_dtype(p: int):
    """Float dtype whose mantissa holds every intermediate value, or None."""
    bound = (p - 1) ** 2 * PANEL
    if bound < _F32_LIMIT:
        return np.float32
    if bound < _F64_LIMIT:
        return np.float64
    return None


def _as_mod_array(data, p: int) -> np.ndarray:
    a = np.asarray(data, dtype=np.int64)
    if a.ndim != 2:
        raise ValueError(f"expected a 2-d array, got shape {a.shape}")
    return np.mod(a, p)


def _inverse(v: int, p: int) -> int:
    return pow(int(v), p - 2, p)


def _rref_float(a: np.ndarray, p: int, dtype) -> tuple[int, np.ndarray, list[int]]:
    """Blocked RREF.  Returns (rank, rref int64 array, pivot columns)."""
    m, n = a.shape
    w = a.astype(dtype)
    pivots: list[int] = []
    r = 0
    for c0 in range(0, n, PANEL):
        if r >= m:
            break
        c1 = min(c0 + PANEL, n)
        r0 = r
        panel_cols: list[int] = []
        # In-panel elimination below each pivot; trailing columns deferred.
        # Multipliers are stashed in the (otherwise zeroed) pivot columns:
        # for rows r0..r-1 they form a unit-free lower-triangular record,
        # for rows >= r the plain multiplier of that row against the pivot.
        for c in range(c0, c1):
            if r >= m:
                break
            col = w[r:, c]
            nz = np.nonzero(col)[0]
            if nz.size == 0:
                continue
            i = r + int(nz[0])
            if i != r:
                w[[r, i], c0:] = w[[i, r], c0:]
            piv = int(w[r, c])
            inv = _inverse(piv, p)
            below = w[r + 1 :, c]
            nzb = np.nonzero(below)[0]
            if nzb.size:
                f = np.mod(below[nzb] * inv, p)
                rows = r + 1 + nzb
                w[rows, c:c1] = np.mod(
                    w[rows, c:c1] - np.outer(f, w[r, c:c1]), p
                )
                w[rows, c] = f  # stash multipliers for the panel update
            pivots.append(c)
            panel_cols.append(c)
            r += 1
        npv = r - r0
        if npv and c1 < n:
            mult = w[r0:, panel_cols]  # (active rows) x npv multiplier record
            trail = w[r0:r, c1:]
            # Pivot rows must first absorb earlier panel pivots (small
            # in-place lower-triangular sweep), then the bulk update runs
            # as one BLAS product per panel.
            for k in range(1, npv):
                row_mult = mult[k, :k]
                if np.any(row_mult):
                    trail[k] = np.mod(trail[k] - row_mult @ trail[:k], p)
            if r < m:
                w[r:, c1:] = np.mod(w[r:, c1:] - mult[npv:] @ trail, p)
        # Clear the multiplier stashes: below-block and strict lower part.
        if npv:
            w[r:, panel_cols] = 0
            for k in range(1, npv):
                w[r0 + k, panel_cols[:k]] = 0
    rank = r
    # Back substitution: normalise pivot rows, then eliminate above the
    # pivots in reverse groups so the bulk work is again one product per
    # group.
    for k in range(rank):
        piv = int(w[k, pivots[k]])
        if piv != 1:
            w[k, pivots[k] :] = np.mod(w[k, pivots[k] :] * _inverse(piv, p), p)
    k1 = rank
    while k1 > 0:
        k0 = max(0, k1 - PANEL)
        base = pivots[k0]
        for k in range(k0 + 1, k1):
            c = pivots[k]
            coeff = w[k0:k, c]
            nz = np.nonzero(coeff)[0]
            if nz.size:
                rows = k0 + nz
                w[rows, base:] = np.mod(
                    w[rows, base:] - np.outer(coeff[nz], w[k, base:]), p
                )
        if k0 > 0:
            cols = pivots[k0:k1]
            coeff = w[:k0, cols]
            if np.any(coeff):
                w[:k0, base:] = np.mod(
                    w[:k0, base:] - coeff @ w[k0:k1, base:], p
                )
        k1 = k0
    return rank, np.asarray(w, dtype=np.int64), tuple(pivots)


def _rref_int(a: np.ndarray, p: int) -> tuple[int, np.ndarray, list[int]]:
    """Unblocked vectorised RREF in int64; exact for p < 2**31."""
    if p >= 2**31:
        raise ValueError(f"prime {p} too large for exact int64 elimination")
    w = a.copy()
    m, n = w.shape
    pivots: list[int] = []
    r = 0
    for c in range(n):
        if r >= m:
            break
        col = w[r:, c]
        nz = np.nonzero(col)[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            w[[r, i]] = w[[i, r]]
        inv = _inverse(int(w[r, c]), p)
        w[r, c:] = np.mod(w[r, c:] * inv, p)
        coeff = w[:, c].copy()
        coeff[r] = 0
        rows = np.nonzero(coeff)[0]
        if rows.size:
            w[rows, c:] = np.mod(
                w[rows, c:] - coeff[rows, None] * w[r, c:][None, :], p
            )
        pivots.append(c)
        r += 1
    return r, w, tuple(pivots)


def _rref(a: np.ndarray, p: int, method: str | None = None):
    if method not in (None, "blas", "int"):
        raise ValueError(f"unknown elimination method {method!r}")
    if a.shape[0] == 0 or a.shape[1] == 0:
        return 0, a.copy(), ()
    dtype = _work_dtype(p)
    if method == "int" or (method is None and dtype is None):
        return _rref_int(a, p)
    if dtype is None:
        raise ValueError(f"prime {p} too large for the BLAS elimination path")
    return _rref_float(a, p, dtype)


class FpMatrix:
    """An exact matrix over F_p backed by a reduced ``int64`` numpy array."""

    __slots__ = ("p", "a")

    def __init__(self, p: int, data):
        if p < 2:
            raise ValueError(f"modulus must be a prime >= 2, got {p}")
        self.p = int(p)
        self.a = _as_mod_array(data, self.p)

    # -- constructors ------------------------------------------------
    @classmethod
    def zeros(cls, p: int, rows: int, cols: int) -> "FpMatrix":
        return cls(p, np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def identity(cls, p: int, size: int) -> "FpMatrix":
        return cls(p, np.eye(size, dtype=np.int64))

    # -- basic protocol ----------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return self.a.shape

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FpMatrix)
            and self.p == other.p
            and self.a.shape == other.a.shape
            and bool(np.array_equal(self.a, other.a))
        )

    def __hash__(self):  # pragma: no cover - mutable payload
        raise TypeError("FpMatrix is not hashable")

    def __repr__(self) -> str:
        return f"FpMatrix(p={self.p}, shape={self.a.shape})"

    def __matmul__(self, other: "FpMatrix") -> "FpMatrix":
        if self.p != other.p:
            raise ValueError("matmul over different primes")
        return FpMatrix(self.p, matmul_mod(self.a, other.a, self.p))

    def transpose(self) -> "FpMatrix":
        return FpMatrix(self.p, self.a.T.copy())

    def to_lists(self) -> list[list[int]]:
        return self.a.tolist()


def matmul_mod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Exact product of two reduced int64 arrays mod p.

    The accumulation runs in float64 over inner-dimension chunks small
    enough to stay below the mantissa bound; very large primes use an
    object-free int64 loop over chunks of columns.
    """
    a = np.mod(np.asarray(a, dtype=np.int64), p)
    b = np.mod(np.asarray(b, dtype=np.int64), p)
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"shape mismatch {a.shape} @ {b.shape}")
    inner = a.shape[1]
    if inner == 0:
        return np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    per = max(1, (p - 1) ** 2)
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    if per < _F64_LIMIT:
        chunk = max(1, min(inner, int(_F64_LIMIT // per)))
        af = a.astype(np.float64)
        bf = b.astype(np.float64)
        for k0 in range(0, inner, chunk):
            k1 = min(k0 + chunk, inner)
            out = np.mod(
                out + np.asarray(af[:, k0:k1] @ bf[k0:k1], dtype=np.int64), p
            )
    else:
        # huge primes: a single product still fits int64 (p < 2**31), so
        # accumulate one exact rank-1 update at a time
        for k in range(inner):
            out = np.mod(out + a[:, k : k + 1] * b[k : k + 1, :], p)
    return out


def rank_and_reduce(
    mat: FpMatrix, method: str | None = None
) -> tuple[int, FpMatrix, tuple[int, ...]]:
    """Rank, canonical reduced row echelon form, and pivot columns."""
    rank, rref, pivots = _rref(mat.a, mat.p, method=method)
    return rank, FpMatrix(mat.p, rref), tuple(pivots)


def kernel_basis(mat: FpMatrix, method: str | None = None) -> FpMatrix:
    """Canonical basis of the right kernel, one column per free column."""
    ker = kernel_array(mat.a, mat.p, method=method)
    return FpMatrix(mat.p, ker)


def cokernel_data(mat: FpMatrix, method: str | None = None) -> tuple[int, tuple[int, ...]]:
    """Dimension and canonical coordinate basis of ``F_p^rows / col span``.

    The returned indices are the non-pivot coordinates of the column
    space in reduced echelon position; the corresponding unit vectors
    project to a basis of the cokernel.
    """
    rank, _, pivots = _rref(mat.a.T.copy(), mat.p, method=method)
    m = mat.a.shape[0]
    pivot_set = set(pivots)
    free = tuple(i for i in range(m) if i not in pivot_set)
    return m - rank, free


# -- raw ndarray entry points for internal hot paths -----------------

def rref_array(a: np.ndarray, p: int, method: str | None = None):
    """(rank, rref, pivots) for a reduced int64 array."""
    return _rref(np.ascontiguousarray(a, dtype=np.int64), p, method=method)


def rank_array(a: np.ndarray, p: int, method: str | None = None) -> int:
    return _rref(np.ascontiguousarray(a, dtype=np.int64), p, method=method)[0]


def kernel_array(a: np.ndarray, p: int, method: str | None = None) -> np.ndarray:
    """Canonical kernel basis (columns) of a reduced int64 array."""
    a = np.ascontiguousarray(a, dtype=np.int64)
    m, n = a.shape
    rank, rref, pivots = _rref(a, p, method=method)
    pivot_set = set(pivots)
    free = [c for c in range(n) if c not in pivot_set]
    ker = np.zeros((n, len(free)), dtype=np.int64)
    if free:
        ker[free, np.arange(len(free))] = 1
        if rank:
            piv = np.asarray(pivots, dtype=np.int64)
            ker[piv, :] = np.mod(-rref[:rank][:, free], p)
    return ker
