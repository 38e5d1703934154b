"""Small dense linear algebra over exact scalars or floats.

Matrices are numpy arrays; dtype=object holding ExactScalar in exact mode,
complex128 (or float64) in float mode. Elimination is plain Gauss-Jordan
with exact zero tests, or partial pivoting with tolerance for floats.
"""
from __future__ import annotations

import numpy as np

from .exactfield import TOL, ExactScalar, is_zero, lower

EXACT = "exact"
FLOAT = "float"


def zeros(shape, mode: str = EXACT):
    if mode == EXACT:
        return np.full(shape, ExactScalar(), dtype=object)
    return np.zeros(shape, dtype=complex)


def eye(n: int, mode: str = EXACT):
    out = zeros((n, n), mode)
    one = ExactScalar(1) if mode == EXACT else 1.0
    for i in range(n):
        out[i, i] = one
    return out


def exact_array(rows) -> np.ndarray:
    arr = np.array(rows, dtype=object)
    flat = arr.reshape(-1)
    for k, v in enumerate(flat):
        flat[k] = ExactScalar(v)
    return arr


def lower_array(arr) -> np.ndarray:
    """Float twin of an exact array (complex dtype)."""
    if arr.dtype != object:
        return arr
    out = np.empty(arr.shape, dtype=complex)
    flat_in = arr.reshape(-1)
    flat_out = out.reshape(-1)
    for k, v in enumerate(flat_in):
        flat_out[k] = complex(lower(v))
    return out


def mode_of(arr) -> str:
    return EXACT if arr.dtype == object else FLOAT


def array_is_zero(arr, tol: float = TOL) -> bool:
    if arr.dtype == object:
        return all(not v for v in arr.reshape(-1))
    return bool(np.all(np.abs(arr) <= tol))


def arrays_equal(a, b, tol: float = TOL) -> bool:
    if a.shape != b.shape:
        return False
    if a.dtype == object and b.dtype == object:
        return array_is_zero(a - b)
    return bool(np.all(np.abs(lower_array(a) - lower_array(b)) <= tol * max(1.0, float(np.max(np.abs(lower_array(b)), initial=0.0)))))


def commutator(a, b):
    return a @ b - b @ a


def rref(mat, tol: float = TOL):
    """Reduced row echelon form; returns (R, pivot_columns)."""
    m = np.array(mat, dtype=mat.dtype, copy=True)
    rows, cols = m.shape
    exact = m.dtype == object
    pivots = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        if exact:
            p = next((i for i in range(r, rows) if m[i, c]), None)
        else:
            col = np.abs(m[r:, c])
            k = int(np.argmax(col)) if len(col) else 0
            p = r + k if len(col) and col[k] > tol else None
        if p is None:
            continue
        if p != r:
            m[[r, p]] = m[[p, r]]
        inv = 1 / m[r, c]
        m[r] = m[r] * inv
        for i in range(rows):
            if i != r and not is_zero(m[i, c], 0.0 if exact else 0.0):
                m[i] = m[i] - m[i, c] * m[r]
        if not exact:
            m[np.abs(m) <= tol] = 0
        pivots.append(c)
        r += 1
    return m, pivots


def rank(mat, tol: float = TOL) -> int:
    if mat.shape[0] == 0:
        return 0
    return len(rref(mat, tol)[1])


def nullspace(mat, tol: float = TOL) -> list:
    """Basis of {v : mat @ v = 0}, as a list of 1-D arrays."""
    rows, cols = mat.shape
    exact = mat.dtype == object
    if rows == 0:
        return list(eye(cols, EXACT if exact else FLOAT))
    R, piv = rref(mat, tol)
    free = [c for c in range(cols) if c not in piv]
    basis = []
    for f in free:
        v = zeros(cols, EXACT if exact else FLOAT)
        v[f] = ExactScalar(1) if exact else 1.0
        for r, pc in enumerate(piv):
            v[pc] = -R[r, f]
        basis.append(v)
    return basis


def span_matrix(vectors, n: int, mode: str):
    if not vectors:
        return zeros((0, n), mode)
    return np.array([list(v) for v in vectors], dtype=object if mode == EXACT else complex)


def same_span(a: list, b: list, n: int, mode: str = EXACT, tol: float = TOL) -> bool:
    """True iff the two families span the same subspace."""
    ra = rank(span_matrix(a, n, mode), tol)
    rb = rank(span_matrix(b, n, mode), tol)
    rab = rank(span_matrix(list(a) + list(b), n, mode), tol)
    return ra == rb == rab


def trace(mat):
    acc = mat[0, 0] * 0
    for i in range(mat.shape[0]):
        acc = acc + mat[i, i]
    return acc


def charpoly(mat) -> list:
    """Characteristic polynomial coefficients (lowest degree first), monic,
    by the Faddeev-LeVerrier recursion."""
    n = mat.shape[0]
    mode = mode_of(mat)
    ident = eye(n, mode)
    coeffs = [None] * (n + 1)
    coeffs[n] = ExactScalar(1) if mode == EXACT else 1.0
    M = zeros((n, n), mode)
    c_prev = coeffs[n]
    for k in range(1, n + 1):
        M = mat @ M + ident * c_prev
        c_prev = -trace(mat @ M) / k
        coeffs[n - k] = c_prev
    return coeffs
